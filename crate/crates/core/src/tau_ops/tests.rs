use super::*;
use crate::algebra::examples;
use crate::field::Field;
use crate::module::is_isomorphic;

const Q: Field = Field::Rational;

fn cycle() -> Arc<BasicAlgebra> {
    examples::three_cycle(Q)
}

fn pair(a: &Arc<BasicAlgebra>, ms: Vec<Module>, ps: Vec<usize>) -> TauPair {
    TauPair::from_parts(a, ms, ps)
}

fn p(a: &Arc<BasicAlgebra>, v: usize) -> Module {
    Module::projective(a, v)
}

fn s(a: &Arc<BasicAlgebra>, v: usize) -> Module {
    Module::simple(a, v)
}

#[test]
fn mutation_of_regular_pair_at_first_slot() {
    let a = cycle();
    let reg = TauPair::regular(&a);
    let (m, dir) = mutate_pair(&reg, 0).unwrap();
    assert_eq!(dir, Direction::Left);
    assert!(m.same_as(&pair(&a, vec![s(&a, 2), p(&a, 1), p(&a, 2)], vec![])));
    let k = m.parts().iter().position(|x| x.g == vec![-1, 0, 1]).unwrap();
    let (back, dir2) = mutate_pair(&m, k).unwrap();
    assert_eq!(dir2, Direction::Right);
    assert!(back.same_as(&reg));
}

#[test]
fn the_minimum_only_mutates_right() {
    let a = cycle();
    let bottom = TauPair::shifted_regular(&a);
    for k in 0..3 {
        assert_eq!(mutate_pair(&bottom, k).unwrap().1, Direction::Right);
    }
}

#[test]
fn mutation_is_an_involution_on_slots() {
    let a = cycle();
    let t = pair(&a, vec![s(&a, 2)], vec![1, 0]);
    for k in 0..3 {
        let (m, _) = mutate_pair(&t, k).unwrap();
        let new = m.parts().iter().position(|x| !t.parts().iter().any(|y| y.is_isomorphic(x))).unwrap();
        assert!(mutate_pair(&m, new).unwrap().0.same_as(&t));
    }
}

#[test]
fn dagger_examples() {
    let a = cycle();
    let op = a.opposite();
    let d = dagger(&TauPair::regular(&a)).unwrap();
    assert!(d.same_as(&TauPair::shifted_regular(&op)));
    let d = dagger(&TauPair::shifted_regular(&a)).unwrap();
    assert!(d.same_as(&TauPair::regular(&op)));

    let l = examples::linear_a(Q, 2);
    let lop = l.opposite();
    let d = dagger(&pair(&l, vec![s(&l, 0)], vec![])).unwrap();
    let ms = d.m_summands();
    assert_eq!(ms.len(), 1);
    assert!(d.p_vertices().is_empty());
    assert!(is_isomorphic(ms[0], &Module::simple(&lop, 1)).is_some());
}

#[test]
fn dagger_is_an_involution() {
    let a = cycle();
    let t = pair(&a, vec![s(&a, 2), p(&a, 2)], vec![1]);
    let back = rebase_pair(&dagger(&dagger(&t).unwrap()).unwrap(), &a).unwrap();
    assert!(back.same_as(&t));
}

#[test]
fn star_membership_examples() {
    let a = cycle();
    let u = p(&a, 0);
    let m = s(&a, 2).direct_sum(&p(&a, 1)).direct_sum(&p(&a, 2));
    assert!(star_membership(&u, &m, &u).unwrap());
    assert!(star_membership(&u, &m, &m).unwrap());
    assert!(star_membership(&u, &m, &u.direct_sum(&s(&a, 0))).unwrap());
    let zero = Module::zero(&a);
    for x in [s(&a, 0), s(&a, 2), p(&a, 1)] {
        assert_eq!(star_membership(&zero, &m, &x).unwrap(), in_fac(&m, &x).unwrap());
    }
}

#[test]
fn left_completions_along_the_worked_chain() {
    let a = cycle();
    let rel = pair(&a, vec![p(&a, 0)], vec![]);
    let chain = [
        TauPair::regular(&a),
        pair(&a, vec![s(&a, 2), p(&a, 1), p(&a, 2)], vec![]),
        pair(&a, vec![s(&a, 2), p(&a, 2)], vec![1]),
        pair(&a, vec![s(&a, 2)], vec![1, 0]),
        TauPair::shifted_regular(&a),
    ];
    let big = pair(&a, vec![p(&a, 0), s(&a, 0), p(&a, 2)], vec![]);
    let expect = [
        TauPair::regular(&a),
        TauPair::regular(&a),
        big.clone(),
        big,
        pair(&a, vec![p(&a, 0), s(&a, 0)], vec![2]),
    ];
    for (t, e) in chain.iter().zip(&expect) {
        let b = left_bongartz(&rel, t).unwrap();
        assert!(b.same_as(e), "{} -> {}", t.label(), b.label());
    }
}

#[test]
fn completion_of_a_summand_is_the_anchor() {
    let a = cycle();
    let t = pair(&a, vec![s(&a, 2), p(&a, 2)], vec![1]);
    let rel = t.without(&[0]);
    assert!(left_bongartz(&rel, &t).unwrap().same_as(&t));
    assert!(right_bongartz(&rel, &t).unwrap().same_as(&t));
}

#[test]
fn left_completion_rejects_anchor_outside_perp() {
    let a = cycle();
    let rel = pair(&a, vec![s(&a, 2)], vec![1]);
    // Hom(P2, P2) != 0, so (A,0) is outside P2^⊥.
    assert!(matches!(
        left_bongartz(&rel, &TauPair::regular(&a)),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn right_completion_examples() {
    let a = cycle();
    let rel = pair(&a, vec![p(&a, 0)], vec![]);
    let reg = TauPair::regular(&a);
    assert!(right_bongartz(&rel, &reg).unwrap().same_as(&reg));

    let l = examples::linear_a(Q, 2);
    let q2 = pair(&l, vec![], vec![1]);
    let bottom = TauPair::shifted_regular(&l);
    assert!(right_bongartz(&q2, &bottom).unwrap().same_as(&bottom));
    // Absolute right completion of (0, P2): Fac = P2^⊥ = add S1.
    let b = bongartz_completion(&q2).unwrap();
    assert!(b.same_as(&pair(&l, vec![s(&l, 0)], vec![1])));
    // Absolute left completion of (P1, 0): Fac = Fac P1.
    let c = co_bongartz_completion(&pair(&l, vec![p(&l, 0)], vec![])).unwrap();
    assert!(c.same_as(&pair(&l, vec![p(&l, 0), s(&l, 0)], vec![])));
}

#[test]
fn brick_label_examples() {
    let a = cycle();
    let top = TauPair::regular(&a);
    let next = pair(&a, vec![s(&a, 2), p(&a, 1), p(&a, 2)], vec![]);
    let d = brick_label(&top, &next).unwrap();
    assert!(is_isomorphic(&d, &s(&a, 0)).is_some());

    let l = examples::linear_a(Q, 2);
    let d = brick_label(&TauPair::regular(&l), &pair(&l, vec![p(&l, 0), s(&l, 0)], vec![])).unwrap();
    assert!(is_isomorphic(&d, &s(&l, 1)).is_some());
    let d = brick_label(&pair(&l, vec![s(&l, 0)], vec![1]), &TauPair::shifted_regular(&l)).unwrap();
    assert!(is_isomorphic(&d, &s(&l, 0)).is_some());
}
