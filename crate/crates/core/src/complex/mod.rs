//! Complexes of projective modules, with the two-term complexes in degrees
//! -1 and 0 as the main case.

mod approx;
mod homk;
mod silting;

use std::sync::Arc;

use crate::algebra::BasicAlgebra;
use crate::error::Result;
use crate::module::{decompose_with_maps, is_isomorphic, min_proj_presentation, Module};
use crate::proj::{pmat_cokernel, PMat};

pub use approx::{min_left_approx, min_right_approx, Approx};
pub use homk::{compose, hom_complex, hom_k, ChainMap, HomK};
pub use silting::{
    g_matrix, is_two_silting, left_completion_silting, mutate_complex, right_completion_silting, silting_leq,
    Direction, SiltingStatus,
};
pub(crate) use silting::{int_det, no_hom1};

/// A bounded complex of projectives: `terms[k]` sits in degree `lo + k` and
/// `diffs[k]: terms[k] -> terms[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjComplex {
    pub lo: i32,
    pub terms: Vec<Vec<usize>>,
    pub diffs: Vec<PMat>,
}

impl ProjComplex {
    pub fn term(&self, deg: i32) -> &[usize] {
        let k = deg - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// Differential leaving degree `deg`; `None` when one side is outside the range.
    pub fn diff(&self, deg: i32) -> Option<&PMat> {
        let k = deg - self.lo;
        if k < 0 || k as usize >= self.diffs.len() {
            None
        } else {
            Some(&self.diffs[k as usize])
        }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Degrees with nonzero terms.
    pub fn support(&self) -> Vec<i32> {
        (self.lo..=self.hi()).filter(|&d| !self.term(d).is_empty()).collect()
    }

    /// Checks `d^{k+1} d^k = 0` and shape consistency.
    pub fn is_valid(&self, alg: &BasicAlgebra) -> bool {
        if self.diffs.len() + 1 != self.terms.len() && !(self.terms.is_empty() && self.diffs.is_empty()) {
            return false;
        }
        for (k, d) in self.diffs.iter().enumerate() {
            if d.cols != self.terms[k] || d.rows != self.terms[k + 1] {
                return false;
            }
        }
        self.diffs.windows(2).all(|w| w[1].mul(alg, &w[0]).is_zero())
    }

    /// Removes contractible summands `P --u--> P` with `u` a unit until none remain.
    pub fn minimalize(&self, alg: &BasicAlgebra) -> ProjComplex {
        let mut c = self.clone();
        loop {
            let found = c
                .diffs
                .iter()
                .enumerate()
                .find_map(|(k, d)| d.find_unit().map(|(i, j)| (k, i, j)));
            let Some((k, i, j)) = found else {
                break;
            };
            let d = &c.diffs[k];
            let v = d.rows[i];
            let uinv = alg.local_inverse(&d.entries[i][j], v);
            let keep_r: Vec<usize> = (0..d.nrows()).filter(|&r| r != i).collect();
            let keep_c: Vec<usize> = (0..d.ncols()).filter(|&x| x != j).collect();
            let mut nd = d.select(&keep_r, &keep_c);
            for (a, &r) in keep_r.iter().enumerate() {
                let left = alg.mul(&d.entries[r][j], &uinv);
                if alg.is_zero(&left) {
                    continue;
                }
                for (b, &x) in keep_c.iter().enumerate() {
                    let corr = alg.mul(&left, &d.entries[i][x]);
                    nd.entries[a][b] = alg.sub(&nd.entries[a][b], &corr);
                }
            }
            c.diffs[k] = nd;
            if k > 0 {
                let prev = &c.diffs[k - 1];
                let rows: Vec<usize> = (0..prev.nrows()).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..prev.ncols()).collect();
                c.diffs[k - 1] = prev.select(&rows, &cols);
            }
            if k + 1 < c.diffs.len() {
                let next = &c.diffs[k + 1];
                let rows: Vec<usize> = (0..next.nrows()).collect();
                let cols: Vec<usize> = (0..next.ncols()).filter(|&x| x != i).collect();
                c.diffs[k + 1] = next.select(&rows, &cols);
            }
            c.terms[k].remove(j);
            c.terms[k + 1].remove(i);
        }
        c
    }

    pub fn from_two_term(t: &TwoTermComplex) -> ProjComplex {
        ProjComplex {
            lo: -1,
            terms: vec![t.m1.clone(), t.m0.clone()],
            diffs: vec![t.d.clone()],
        }
    }

    /// The part in degrees -1 and 0, if the complex is concentrated there.
    pub fn to_two_term(&self, alg: &BasicAlgebra) -> Option<TwoTermComplex> {
        if self.support().iter().any(|&d| d != -1 && d != 0) {
            return None;
        }
        let m1 = self.term(-1).to_vec();
        let m0 = self.term(0).to_vec();
        let d = self.diff(-1).cloned().unwrap_or_else(|| PMat::zero(alg, &m0, &m1));
        Some(TwoTermComplex { m1, m0, d })
    }
}

/// `P^{-1} --d--> P^0`; `d` has rows indexed by `m0` and columns by `m1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermComplex {
    pub m1: Vec<usize>,
    pub m0: Vec<usize>,
    pub d: PMat,
}

impl TwoTermComplex {
    pub fn new(alg: &BasicAlgebra, m1: Vec<usize>, m0: Vec<usize>, d: PMat) -> Result<Self> {
        if d.rows != m0 || d.cols != m1 {
            return Err(crate::Error::InvariantViolation("differential shape does not match the terms".into()));
        }
        for (i, &r) in m0.iter().enumerate() {
            for (j, &c) in m1.iter().enumerate() {
                let x = &d.entries[i][j];
                if x.len() != alg.dim() || alg.peirce_part(x, r, c) != *x {
                    return Err(crate::Error::InvariantViolation(format!(
                        "entry ({i}, {j}) does not lie in e{} A e{}",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(TwoTermComplex { m1, m0, d })
    }

    pub fn zero() -> Self {
        TwoTermComplex {
            m1: Vec::new(),
            m0: Vec::new(),
            d: PMat {
                rows: Vec::new(),
                cols: Vec::new(),
                entries: Vec::new(),
            },
        }
    }

    /// `0 -> P_v` with `P_v` in degree 0.
    pub fn stalk0(alg: &BasicAlgebra, v: usize) -> Self {
        TwoTermComplex {
            m1: Vec::new(),
            m0: vec![v],
            d: PMat::zero(alg, &[v], &[]),
        }
    }

    /// `P_v -> 0` with `P_v` in degree -1.
    pub fn stalk1(alg: &BasicAlgebra, v: usize) -> Self {
        TwoTermComplex {
            m1: vec![v],
            m0: Vec::new(),
            d: PMat::zero(alg, &[], &[v]),
        }
    }

    /// `0 -> A` (the regular module in degree 0).
    pub fn regular(alg: &BasicAlgebra) -> Self {
        let vs: Vec<usize> = (0..alg.n()).collect();
        TwoTermComplex {
            m1: Vec::new(),
            m0: vs.clone(),
            d: PMat::zero(alg, &vs, &[]),
        }
    }

    /// `A -> 0`.
    pub fn shifted_regular(alg: &BasicAlgebra) -> Self {
        let vs: Vec<usize> = (0..alg.n()).collect();
        TwoTermComplex {
            m1: vs.clone(),
            m0: Vec::new(),
            d: PMat::zero(alg, &[], &vs),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m1.is_empty() && self.m0.is_empty()
    }

    pub fn direct_sum(alg: &BasicAlgebra, parts: &[TwoTermComplex]) -> TwoTermComplex {
        let ds: Vec<PMat> = parts.iter().map(|p| p.d.clone()).collect();
        let d = PMat::block_diag(alg, &ds);
        TwoTermComplex {
            m1: d.cols.clone(),
            m0: d.rows.clone(),
            d,
        }
    }

    /// Degree-0 multiplicities minus degree-(-1) multiplicities.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0i64; n];
        for &v in &self.m0 {
            g[v] += 1;
        }
        for &v in &self.m1 {
            g[v] -= 1;
        }
        g
    }

    pub fn minimalize(&self, alg: &BasicAlgebra) -> TwoTermComplex {
        ProjComplex::from_two_term(self)
            .minimalize(alg)
            .to_two_term(alg)
            .expect("minimalization keeps the degree range")
    }

    pub fn is_minimal(&self) -> bool {
        !self.d.has_unit()
    }

    /// `H^0 = coker d`.
    pub fn h0(&self, alg: &Arc<BasicAlgebra>) -> Module {
        pmat_cokernel(alg, &self.d).0
    }

    /// The dual complex `Hom(-, A)` shifted back into degrees -1, 0, read over the opposite algebra.
    pub fn dual(&self) -> TwoTermComplex {
        TwoTermComplex {
            m1: self.m0.clone(),
            m0: self.m1.clone(),
            d: self.d.transpose(),
        }
    }
}

/// The shape of an indecomposable two-term presilting summand.
#[derive(Clone, Debug)]
pub enum Kind {
    /// The minimal presentation of an indecomposable module.
    Presentation(Module),
    /// An indecomposable projective in degree -1.
    Shifted(usize),
}

/// An indecomposable two-term complex with its g-vector and module data.
#[derive(Clone, Debug)]
pub struct Indec {
    pub cx: TwoTermComplex,
    pub g: Vec<i64>,
    pub kind: Kind,
}

impl Indec {
    pub fn from_module(m: &Module) -> Indec {
        let alg = m.algebra();
        let pres = min_proj_presentation(m);
        let cx = TwoTermComplex {
            m1: pres.p1,
            m0: pres.p0,
            d: pres.d,
        };
        Indec {
            g: cx.g_vector(alg.n()),
            cx,
            kind: Kind::Presentation(m.clone()),
        }
    }

    pub fn shifted(alg: &BasicAlgebra, v: usize) -> Indec {
        let cx = TwoTermComplex::stalk1(alg, v);
        Indec {
            g: cx.g_vector(alg.n()),
            cx,
            kind: Kind::Shifted(v),
        }
    }

    pub fn module(&self) -> Option<&Module> {
        match &self.kind {
            Kind::Presentation(m) => Some(m),
            Kind::Shifted(_) => None,
        }
    }

    pub fn shifted_vertex(&self) -> Option<usize> {
        match self.kind {
            Kind::Shifted(v) => Some(v),
            Kind::Presentation(_) => None,
        }
    }

    pub fn is_isomorphic(&self, o: &Indec) -> bool {
        if self.g != o.g {
            return false;
        }
        match (&self.kind, &o.kind) {
            (Kind::Shifted(a), Kind::Shifted(b)) => a == b,
            (Kind::Presentation(a), Kind::Presentation(b)) => is_isomorphic(a, b).is_some(),
            _ => false,
        }
    }
}

/// Splits a two-term complex into indecomposables (with repetition), sorted by
/// g-vector. A minimal two-term complex is the minimal presentation of its
/// `H^0` plus a stalk complex in degree -1.
pub fn decompose_complex(alg: &Arc<BasicAlgebra>, t: &TwoTermComplex) -> Result<Vec<Indec>> {
    let t = t.minimalize(alg);
    let h0 = t.h0(alg);
    let mut out = Vec::new();
    let mut rest = vec![0i64; alg.n()];
    for &v in &t.m1 {
        rest[v] += 1;
    }
    for piece in decompose_with_maps(&h0, 0)? {
        let ind = Indec::from_module(&piece.module);
        for &v in &ind.cx.m1 {
            rest[v] -= 1;
        }
        out.push(ind);
    }
    for (v, &k) in rest.iter().enumerate() {
        assert!(k >= 0, "minimal complex has fewer degree -1 terms than its cohomology needs");
        for _ in 0..k {
            out.push(Indec::shifted(alg, v));
        }
    }
    out.sort_by(|a, b| cmp_g(&a.g, &b.g));
    Ok(out)
}

/// Canonical order on g-vectors: by the first nonzero coordinate, then
/// lexicographically. Puts `P_1, ..., P_n` and `P_1[1], ..., P_n[1]` in vertex order.
pub fn cmp_g(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let lead = |v: &[i64]| v.iter().position(|&x| x != 0).unwrap_or(v.len());
    lead(a).cmp(&lead(b)).then_with(|| b.cmp(a))
}

/// Removes repeated summands up to isomorphism, keeping g-vector order.
pub fn basic_part(parts: Vec<Indec>) -> Vec<Indec> {
    let mut out: Vec<Indec> = Vec::new();
    for p in parts {
        if !out.iter().any(|q| q.is_isomorphic(&p)) {
            out.push(p);
        }
    }
    out.sort_by(|a, b| cmp_g(&a.g, &b.g));
    out
}
