use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::algebra::{examples, BasicAlgebra};
use crate::field::Field;
use crate::module::{hom_dim, hom_basis, in_fac, torsion_part, Module};
use crate::pair::TauPair;

const Q: Field = Field::Rational;

fn p(a: &Arc<BasicAlgebra>, v: usize) -> Module {
    Module::projective(a, v - 1)
}

fn s(a: &Arc<BasicAlgebra>, v: usize) -> Module {
    Module::simple(a, v - 1)
}

fn pair(a: &Arc<BasicAlgebra>, ms: Vec<Module>, ps: &[usize]) -> TauPair {
    TauPair::from_parts(a, ms, ps.iter().map(|v| v - 1).collect())
}

/// The displayed chain on the 3-cycle, top first.
fn cycle_chain(a: &Arc<BasicAlgebra>) -> Vec<TauPair> {
    vec![
        TauPair::regular(a),
        pair(a, vec![s(a, 3), p(a, 2), p(a, 3)], &[]),
        pair(a, vec![s(a, 3), p(a, 3)], &[2]),
        pair(a, vec![s(a, 3)], &[2, 1]),
        TauPair::shifted_regular(a),
    ]
}

/// Indecomposables of the representation-finite test algebras, listed by hand.
fn indecomposables(name: &str, a: &Arc<BasicAlgebra>) -> Vec<Module> {
    match name {
        "A2" => vec![p(a, 1), p(a, 2), s(a, 1)],
        "A3" => {
            let p1 = p(a, 1);
            let p2 = p(a, 2);
            let s3 = s(a, 3);
            vec![
                torsion_part(&s3, &p1).unwrap().quot,
                p1,
                torsion_part(&s3, &p2).unwrap().quot,
                p2,
                s(a, 1),
                s3,
            ]
        }
        "3-cycle" => (1..=3).flat_map(|v| [p(a, v), s(a, v)]).collect(),
        _ => unreachable!(),
    }
}

/// Torsion classes by brute force: `⊥(S^⊥)` for every set `S` of indecomposables,
/// recorded as the set of indecomposables they contain.
fn brute_force_torsion_classes(inds: &[Module]) -> BTreeSet<Vec<usize>> {
    let k = inds.len();
    let hom: Vec<Vec<bool>> = inds
        .iter()
        .map(|x| inds.iter().map(|y| hom_dim(x, y).unwrap() != 0).collect())
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << k) {
        let gens: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        let free: Vec<usize> = (0..k).filter(|&y| gens.iter().all(|&x| !hom[x][y])).collect();
        let tors: Vec<usize> = (0..k).filter(|&x| free.iter().all(|&y| !hom[x][y])).collect();
        out.insert(tors);
    }
    out
}

/// Number of covers in the inclusion order.
fn cover_count(classes: &BTreeSet<Vec<usize>>) -> usize {
    let sets: Vec<BTreeSet<usize>> = classes.iter().map(|c| c.iter().copied().collect()).collect();
    let mut n = 0;
    for a in &sets {
        for b in &sets {
            if a.len() < b.len() && a.is_subset(b) && !sets.iter().any(|c| a.len() < c.len() && c.len() < b.len() && a.is_subset(c) && c.is_subset(b)) {
                n += 1;
            }
        }
    }
    n
}

fn graph_classes(g: &ExchangeGraph, inds: &[Module]) -> BTreeSet<Vec<usize>> {
    g.nodes()
        .iter()
        .map(|p| {
            let m = p.m_module();
            (0..inds.len()).filter(|&i| in_fac(&m, &inds[i]).unwrap()).collect()
        })
        .collect()
}

#[test]
fn field_has_two_pairs_and_one_edge() {
    let a = examples::point(Q);
    let g = build_exchange_graph(&a, 100).unwrap();
    assert!(g.is_complete());
    assert_eq!(g.len(), 2);
    assert_eq!(g.edges().len(), 1);
    assert_eq!((g.edges()[0].from, g.edges()[0].to), (g.top(), g.bottom().unwrap()));
}

#[test]
fn graphs_match_brute_force_torsion_classes() {
    for (name, a) in test_algebras() {
        let g = build_exchange_graph(&a, 1000).unwrap();
        assert!(g.is_complete(), "{name}");
        let inds = indecomposables(&name, &a);
        let oracle = brute_force_torsion_classes(&inds);
        assert_eq!(g.len(), oracle.len(), "{name}");
        assert_eq!(graph_classes(&g, &inds), oracle, "{name}");
        assert_eq!(g.edges().len(), cover_count(&oracle), "{name}");
    }
}

#[test]
fn linear_a2_is_a_pentagon() {
    let a = examples::linear_a(Q, 2);
    let g = build_exchange_graph(&a, 100).unwrap();
    assert_eq!(g.len(), 5);
    assert_eq!(g.edges().len(), 5);
    for i in 0..5 {
        assert_eq!(g.down(i).len() + g.up(i).len(), 2);
    }
    let top = g.find(&pair(&a, vec![p(&a, 1), p(&a, 2)], &[])).unwrap();
    let mgs = maximal_green_sequences(&g, top, 100).unwrap();
    let mut lens: Vec<usize> = mgs.iter().map(|m| m.len() - 1).collect();
    lens.sort();
    assert_eq!(lens, vec![2, 3]);
    for m in &mgs {
        assert_eq!(m[0], g.bottom().unwrap());
        for w in m.windows(2) {
            assert!(g.has_edge(w[1], w[0]));
        }
    }
}

#[test]
fn three_cycle_graph_contains_the_chain() {
    let a = examples::three_cycle(Q);
    let g = build_exchange_graph(&a, 1000).unwrap();
    assert!(g.is_complete());
    let idx: Vec<usize> = cycle_chain(&a).iter().map(|p| g.find(p).unwrap()).collect();
    for w in idx.windows(2) {
        assert!(g.has_edge(w[0], w[1]));
    }
    let mgs = maximal_green_sequences(&g, g.top(), 10_000).unwrap();
    let want: Vec<usize> = idx.iter().rev().copied().collect();
    assert!(mgs.contains(&want));
    let bottom = g.bottom().unwrap();
    assert_eq!(maximal_green_sequences(&g, bottom, 10).unwrap(), vec![vec![bottom]]);
}

#[test]
fn mgs_refuses_incomplete_graphs() {
    let a = examples::three_cycle(Q);
    let g = build_exchange_graph(&a, 3).unwrap();
    assert!(!g.is_complete());
    assert_eq!(g.len(), 3);
    assert!(matches!(maximal_green_sequences(&g, 0, 10), Err(crate::Error::IncompleteGraph)));
    assert!(matches!(g.require_complete(), Err(crate::Error::BudgetExceeded(3))));
}

#[test]
fn mgs_limit_is_enforced() {
    let a = examples::linear_a(Q, 2);
    let g = build_exchange_graph(&a, 100).unwrap();
    assert!(matches!(maximal_green_sequences(&g, g.top(), 1), Err(crate::Error::BudgetExceeded(1))));
}

#[test]
fn dot_export_lists_nodes_and_labelled_edges() {
    let a = examples::linear_a(Q, 2);
    let g = build_exchange_graph(&a, 100).unwrap();
    let bricks = g.brick_labels().unwrap();
    let dot = g.to_dot(Some(&bricks));
    assert_eq!(dot.matches("[label=").count(), 10);
    assert!(dot.contains("(P1+P2, 0)"));
    let r = g.report(Some(&bricks));
    assert_eq!(r.nodes.len(), 5);
    assert!(r.edges.iter().all(|e| e.brick.is_some()));
}

#[test]
fn reduction_of_the_regular_pair_is_zero() {
    let a = examples::three_cycle(Q);
    let rd = tau_reduction(&TauPair::regular(&a)).unwrap();
    assert_eq!(rd.quotient().dim(), 0);
    assert_eq!(rd.quotient().n(), 0);
    assert_eq!(rd.ideal_dim(), rd.endomorphism_algebra().dim());
}

#[test]
fn reduction_of_the_zero_pair_is_the_algebra() {
    for (_, a) in test_algebras() {
        let rd = tau_reduction(&pair(&a, vec![], &[])).unwrap();
        let c = rd.quotient();
        assert_eq!(c.dim(), a.dim());
        assert_eq!(c.n(), a.n());
        assert_eq!(rd.ideal_dim(), 0);
        assert_eq!(c.is_path_algebra(), a.is_path_algebra());
        let arrows = |x: &BasicAlgebra| -> Vec<(usize, usize)> {
            let mut v: Vec<(usize, usize)> = x.gabriel_quiver().arrows.iter().map(|r| (r.src, r.dst)).collect();
            v.sort();
            v
        };
        assert_eq!(arrows(c), arrows(&a));
    }
}

#[test]
fn reduction_at_p1_on_the_three_cycle() {
    let a = examples::three_cycle(Q);
    let rel = pair(&a, vec![p(&a, 1)], &[]);
    let rd = tau_reduction(&rel).unwrap();
    assert!(rd.bongartz().same_as(&TauPair::regular(&a)));
    let c = rd.quotient();
    assert_eq!(c.dim(), 3);
    assert_eq!(rd.ideal_dim() + c.dim(), rd.endomorphism_algebra().dim());
    assert!(c.is_path_algebra());
    assert_eq!(c.vertex_labels(), &["2'".to_string(), "3'".to_string()]);
    let q = c.gabriel_quiver();
    assert_eq!(q.arrows.len(), 1);
    assert_eq!((q.arrows[0].src, q.arrows[0].dst), (0, 1));
}

#[test]
fn reduction_functor_examples() {
    let a = examples::three_cycle(Q);
    let rd = tau_reduction(&pair(&a, vec![p(&a, 1)], &[])).unwrap();
    let zero = reduction_functor(&rd, &Module::zero(&a)).unwrap();
    assert!(zero.is_zero());
    let f = reduction_functor(&rd, &s(&a, 3)).unwrap();
    assert_eq!(f.dims(), &[0, 1]);
    assert!(crate::module::is_isomorphic(&f, &Module::simple(rd.quotient(), 1)).is_some());
    let x = p(&a, 2);
    let fx = reduction_functor(&rd, &x).unwrap();
    assert_eq!(fx.dim(), hom_dim(&Module::regular(&a), &x).unwrap());
    assert!(crate::module::is_isomorphic(&fx, &Module::projective(rd.quotient(), 0)).is_some());
    assert!(matches!(reduction_functor(&rd, &p(&a, 3)), Err(crate::Error::NotInWide)));
    assert!(matches!(reduction_functor(&rd, &s(&a, 1)), Err(crate::Error::NotInWide)));
}

#[test]
fn reduction_functor_respects_composition() {
    let a = examples::three_cycle(Q);
    let rd = tau_reduction(&pair(&a, vec![p(&a, 1)], &[])).unwrap();
    let (x, y, z) = (s(&a, 3), p(&a, 2), p(&a, 2));
    let h = &hom_basis(&y, &z).unwrap()[0];
    let g0 = &hom_basis(&x, &y).unwrap()[0];
    let lhs = reduction_functor_map(&rd, &x, &z, &h.compose(g0)).unwrap();
    let rhs = reduction_functor_map(&rd, &y, &z, h)
        .unwrap()
        .compose(&reduction_functor_map(&rd, &x, &y, g0).unwrap());
    assert_eq!(lhs, rhs);
    assert!(!lhs.is_zero());
    assert!(lhs.is_valid(&reduction_functor(&rd, &x).unwrap(), &reduction_functor(&rd, &z).unwrap()));
}

#[test]
fn reduction_bijection_examples() {
    let a = examples::three_cycle(Q);
    let g = build_exchange_graph(&a, 1000).unwrap();
    let r = reduction_bijection_with(&tau_reduction(&pair(&a, vec![p(&a, 1)], &[])).unwrap(), &g, 1000).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.containing, 5);
    let r = reduction_bijection_with(&tau_reduction(&TauPair::regular(&a)).unwrap(), &g, 1000).unwrap();
    assert!(r.passed());
    assert_eq!((r.containing, r.reduced), (1, 1));
    let r = reduction_bijection_with(&tau_reduction(&pair(&a, vec![], &[])).unwrap(), &g, 1000).unwrap();
    assert!(r.passed());
    assert_eq!(r.containing, g.len());
}

#[test]
fn transport_of_the_length_four_sequence() {
    let a = examples::three_cycle(Q);
    let rel = pair(&a, vec![p(&a, 1)], &[]);
    let rd = tau_reduction(&rel).unwrap();
    let mgs: Vec<TauPair> = cycle_chain(&a).into_iter().rev().collect();
    let t = transport_mgs(&rd, &mgs, 1000).unwrap();
    let expect = [
        pair(&a, vec![p(&a, 1), s(&a, 1)], &[3]),
        pair(&a, vec![p(&a, 1), s(&a, 1), p(&a, 3)], &[]),
        pair(&a, vec![p(&a, 1), s(&a, 1), p(&a, 3)], &[]),
        TauPair::regular(&a),
        TauPair::regular(&a),
    ];
    assert_eq!(t.completions.len(), 5);
    for (x, y) in t.completions.iter().zip(&expect) {
        assert!(x.same_as(y), "{} vs {}", x.label(), y.label());
    }
    assert_eq!(t.chain.len(), 3);
    assert_eq!(t.len(), 2);
    let c = rd.quotient();
    assert!(t.reduced[0].same_as(&TauPair::shifted_regular(c)));
    assert!(t.reduced[2].same_as(&TauPair::regular(c)));
    let mid = t.reduced[1].m_module();
    assert!(crate::module::is_isomorphic(&mid, &Module::simple(c, 1)).is_some());
}

#[test]
fn transport_trivial_cases() {
    let a = examples::linear_a(Q, 2);
    let g = build_exchange_graph(&a, 100).unwrap();
    let mgs = maximal_green_sequences(&g, g.top(), 100).unwrap();
    let seq: Vec<TauPair> = mgs[0].iter().map(|&i| g.node(i).clone()).collect();
    let rd = tau_reduction(&pair(&a, vec![], &[])).unwrap();
    let t = transport_mgs(&rd, &seq, 100).unwrap();
    assert_eq!(t.len(), seq.len() - 1);
    let rd = tau_reduction(&TauPair::regular(&a)).unwrap();
    let t = transport_mgs(&rd, &seq, 100).unwrap();
    assert!(t.is_empty());
    assert_eq!(rd.quotient().n(), 0);
}

#[test]
fn transport_rejects_a_bad_sequence() {
    let a = examples::three_cycle(Q);
    let rd = tau_reduction(&pair(&a, vec![p(&a, 1)], &[])).unwrap();
    let mut mgs: Vec<TauPair> = cycle_chain(&a).into_iter().rev().collect();
    mgs.remove(2);
    assert!(matches!(transport_mgs(&rd, &mgs, 1000), Err(crate::Error::PreconditionViolated(_))));
}

#[test]
fn connect_fixed_summand_on_the_chain() {
    let a = examples::three_cycle(Q);
    let rel = pair(&a, vec![p(&a, 1)], &[]);
    let out = connect_fixed_summand(&cycle_chain(&a), &rel).unwrap();
    let expect = [
        TauPair::regular(&a),
        pair(&a, vec![p(&a, 1), s(&a, 1), p(&a, 3)], &[]),
        pair(&a, vec![p(&a, 1), s(&a, 1)], &[3]),
    ];
    assert_eq!(out.len(), 3);
    for (x, y) in out.iter().zip(&expect) {
        assert!(x.same_as(y), "{} vs {}", x.label(), y.label());
    }
    let trivial = connect_fixed_summand(&cycle_chain(&a), &TauPair::regular(&a)).unwrap();
    assert_eq!(trivial.len(), 1);
    let same = connect_fixed_summand(&cycle_chain(&a), &pair(&a, vec![], &[])).unwrap();
    assert_eq!(same.len(), 5);
    for (x, y) in same.iter().zip(&cycle_chain(&a)) {
        assert!(x.same_as(y));
    }
    let bad = pair(&a, vec![s(&a, 3)], &[]);
    assert!(matches!(connect_fixed_summand(&cycle_chain(&a), &bad), Err(crate::Error::PreconditionViolated(_))));
}

#[test]
fn mutation_compat_on_the_three_cycle() {
    let a = examples::three_cycle(Q);
    let g = build_exchange_graph(&a, 1000).unwrap();
    let r = verify_mutation_compat(&pair(&a, vec![p(&a, 1)], &[]), &g).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.edges_checked, g.edges().len());
    let idx: Vec<usize> = cycle_chain(&a).iter().map(|p| g.find(p).unwrap()).collect();
    let steps: Vec<Step> = idx
        .windows(2)
        .map(|w| r.cases.iter().find(|c| (c.from, c.to) == (w[0], w[1])).unwrap().observed)
        .collect();
    assert_eq!(steps, vec![Step::Identity, Step::LeftMutation, Step::Identity, Step::LeftMutation]);
}

#[test]
fn mutation_compat_with_the_zero_pair_is_the_graph_itself() {
    let a = examples::three_cycle(Q);
    let g = build_exchange_graph(&a, 1000).unwrap();
    let r = verify_mutation_compat(&pair(&a, vec![], &[]), &g).unwrap();
    assert!(r.passed());
    assert_eq!(r.edges_checked, g.edges().len());
    for c in &r.cases {
        assert_eq!(c.observed, Step::LeftMutation);
        assert_eq!(c.completions, (c.from, c.to));
    }
}

#[test]
fn mutation_compat_sweep_on_a2() {
    let a = examples::linear_a(Q, 2);
    let g = build_exchange_graph(&a, 100).unwrap();
    let rels: Vec<TauPair> = rigid_pairs(&g).into_iter().filter(|p| p.len() == 1).collect();
    assert_eq!(rels.len(), 5);
    for rel in rels {
        let r = verify_mutation_compat(&rel, &g).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn search_route_finds_the_displayed_completions() {
    let a = examples::three_cycle(Q);
    let g = build_exchange_graph(&a, 1000).unwrap();
    let rel = pair(&a, vec![p(&a, 1)], &[]);
    let i = left_bongartz_by_search(&g, &rel, &TauPair::shifted_regular(&a)).unwrap();
    assert!(g.node(i).same_as(&pair(&a, vec![p(&a, 1), s(&a, 1)], &[3])));
}

#[test]
fn all_suites_pass_on_a2() {
    let a = examples::linear_a(Q, 2);
    let opts = VerifyOptions {
        samples: 20,
        ..VerifyOptions::default()
    };
    for suite in Suite::ALL {
        let r = run_suite(suite, "A2", &a, &opts).unwrap();
        assert!(r.passed(), "{suite}: {:?}", r.failures);
        assert!(r.checks > 0, "{suite}");
    }
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}

