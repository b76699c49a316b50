//! Two-term silting objects: tests, mutation and Bongartz-type completions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::BasicAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::proj::PMat;

use super::approx::{min_left_approx, min_right_approx};
use super::homk::hom_k;
use super::{basic_part, cmp_g, decompose_complex, Indec, ProjComplex, TwoTermComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SiltingStatus {
    NotPresilting,
    Presilting,
    Silting,
}

fn cxs(parts: &[Indec]) -> Vec<TwoTermComplex> {
    parts.iter().map(|p| p.cx.clone()).collect()
}

/// Whether `Hom(X, Y[1]) = 0` for all summands.
pub(crate) fn no_hom1(alg: &BasicAlgebra, xs: &[Indec], ys: &[Indec]) -> bool {
    xs.iter().all(|x| ys.iter().all(|y| hom_k(alg, &x.cx, &y.cx, 1).is_zero()))
}

/// Rows are the g-vectors of the summands in the given (sorted) order.
pub fn g_matrix(parts: &[Indec]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = parts.iter().map(|p| p.g.clone()).collect();
    rows.sort_by(|a, b| cmp_g(a, b));
    rows
}

pub(crate) fn int_det(rows: &[Vec<i64>]) -> i64 {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_ints(Field::Rational, &refs)
        .det()
        .to_i64()
        .expect("integer determinant")
}

fn status_of(alg: &BasicAlgebra, parts: &[Indec]) -> SiltingStatus {
    if !no_hom1(alg, parts, parts) {
        return SiltingStatus::NotPresilting;
    }
    let basic = basic_part(parts.to_vec());
    if basic.len() == alg.n() && int_det(&g_matrix(&basic)).abs() == 1 {
        SiltingStatus::Silting
    } else {
        SiltingStatus::Presilting
    }
}

pub fn is_two_silting(alg: &Arc<BasicAlgebra>, t: &TwoTermComplex) -> Result<SiltingStatus> {
    Ok(status_of(alg, &decompose_complex(alg, t)?))
}

/// `T' <= T` iff `Hom(T, T'[1]) = 0`.
pub fn silting_leq(alg: &BasicAlgebra, t2: &[Indec], t: &[Indec]) -> bool {
    no_hom1(alg, t, t2)
}

fn assert_silting(alg: &BasicAlgebra, parts: &[Indec], what: &str) -> Result<()> {
    match status_of(alg, parts) {
        SiltingStatus::Silting => Ok(()),
        s => Err(Error::InvariantViolation(format!("{what} is {s:?}, expected silting"))),
    }
}

/// `B_U^-(T)`: the basic part of `U ⊕ cone(T[-1] -> U')` for a minimal left
/// `add U`-approximation.
pub fn left_completion_silting(alg: &Arc<BasicAlgebra>, u: &[Indec], t: &[Indec]) -> Result<Vec<Indec>> {
    if !no_hom1(alg, u, t) {
        return Err(Error::PreconditionViolated("Hom(U, T[1]) is nonzero".into()));
    }
    let ucx = cxs(u);
    let mut parts: Vec<Indec> = u.to_vec();
    for tk in t {
        let f = min_left_approx(alg, &tk.cx, &ucx, 1);
        let up = &f.target;
        let g = f
            .map
            .comp(-1)
            .cloned()
            .unwrap_or_else(|| PMat::zero(alg, &up.m0, &tk.cx.m1));
        let top = up.d.hcat(&g);
        let bottom = PMat::zero(alg, &tk.cx.m0, &up.m1).hcat(&tk.cx.d);
        let d = top.vcat(&bottom);
        let cone = TwoTermComplex {
            m1: d.cols.clone(),
            m0: d.rows.clone(),
            d,
        };
        parts.extend(decompose_complex(alg, &cone)?);
    }
    let out = basic_part(parts);
    assert_silting(alg, &out, "left completion")?;
    Ok(out)
}

/// `B_U^+(T)`: the basic part of `U ⊕ cocone(U' -> T[1])` for a minimal right
/// `add U`-approximation.
pub fn right_completion_silting(alg: &Arc<BasicAlgebra>, u: &[Indec], t: &[Indec]) -> Result<Vec<Indec>> {
    if !no_hom1(alg, t, u) {
        return Err(Error::PreconditionViolated("Hom(T, U[1]) is nonzero".into()));
    }
    let ucx = cxs(u);
    let mut parts: Vec<Indec> = u.to_vec();
    for tk in t {
        let f = min_right_approx(alg, &tk.cx, &ucx, 1);
        let up = &f.target;
        let g = f
            .map
            .comp(-1)
            .cloned()
            .unwrap_or_else(|| PMat::zero(alg, &tk.cx.m0, &up.m1));
        let top = tk.cx.d.hcat(&g);
        let bottom = PMat::zero(alg, &up.m0, &tk.cx.m1).hcat(&up.d);
        let d = top.vcat(&bottom);
        let cocone = TwoTermComplex {
            m1: d.cols.clone(),
            m0: d.rows.clone(),
            d,
        };
        parts.extend(decompose_complex(alg, &cocone)?);
    }
    let out = basic_part(parts);
    assert_silting(alg, &out, "right completion")?;
    Ok(out)
}

fn single_summand(alg: &Arc<BasicAlgebra>, c: &ProjComplex) -> Result<Option<Indec>> {
    let Some(t) = c.to_two_term(alg) else {
        return Ok(None);
    };
    let mut parts = decompose_complex(alg, &t)?;
    if parts.len() != 1 {
        return Err(Error::InvariantViolation(format!(
            "mutation produced {} summands instead of one",
            parts.len()
        )));
    }
    Ok(parts.pop())
}

/// Replaces summand `k` of a basic two-term silting object by the other
/// complement, returning the new object (sorted) and the direction.
pub fn mutate_complex(alg: &Arc<BasicAlgebra>, t: &[Indec], k: usize) -> Result<(Vec<Indec>, Direction)> {
    if k >= t.len() {
        return Err(Error::PreconditionViolated(format!("slot {k} out of range 0..{}", t.len())));
    }
    let tk = &t[k].cx;
    let u: Vec<Indec> = t.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, p)| p.clone()).collect();
    let ucx = cxs(&u);

    let f = min_left_approx(alg, tk, &ucx, 0);
    let up = &f.target;
    let f1 = f.map.comp(-1).cloned().unwrap_or_else(|| PMat::zero(alg, &up.m1, &tk.m1));
    let f0 = f.map.comp(0).cloned().unwrap_or_else(|| PMat::zero(alg, &up.m0, &tk.m0));
    let cone = ProjComplex {
        lo: -2,
        terms: vec![
            tk.m1.clone(),
            up.m1.iter().chain(&tk.m0).copied().collect(),
            up.m0.clone(),
        ],
        diffs: vec![f1.vcat(&tk.d.neg(alg)), up.d.hcat(&f0)],
    };
    debug_assert!(cone.is_valid(alg));
    let (new, dir) = match single_summand(alg, &cone.minimalize(alg))? {
        Some(x) => (x, Direction::Left),
        None => {
            let g = min_right_approx(alg, tk, &ucx, 0);
            let up = &g.target;
            let g1 = g.map.comp(-1).cloned().unwrap_or_else(|| PMat::zero(alg, &tk.m1, &up.m1));
            let g0 = g.map.comp(0).cloned().unwrap_or_else(|| PMat::zero(alg, &tk.m0, &up.m0));
            let cocone = ProjComplex {
                lo: -1,
                terms: vec![
                    up.m1.clone(),
                    up.m0.iter().chain(&tk.m1).copied().collect(),
                    tk.m0.clone(),
                ],
                diffs: vec![up.d.vcat(&g1.neg(alg)), g0.hcat(&tk.d)],
            };
            debug_assert!(cocone.is_valid(alg));
            let x = single_summand(alg, &cocone.minimalize(alg))?.ok_or_else(|| {
                Error::InvariantViolation("neither mutation stays two-term".into())
            })?;
            (x, Direction::Right)
        }
    };
    let mut out = u;
    out.push(new);
    out.sort_by(|a, b| cmp_g(&a.g, &b.g));
    let leq = silting_leq(alg, &out, t);
    if leq != (dir == Direction::Left) {
        return Err(Error::InvariantViolation("mutation direction disagrees with the silting order".into()));
    }
    Ok((out, dir))
}
