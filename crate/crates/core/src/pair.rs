//! Support τ-rigid pairs `(M, P)` and their two-term complexes.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::BasicAlgebra;
use crate::complex::{basic_part, decompose_complex, g_matrix, no_hom1, Indec, TwoTermComplex};
use crate::error::{Error, Result};
use crate::module::{ar_translate, decompose, hom_dim, is_isomorphic, is_projective, top_dims, Module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    NotTauRigid,
    TauRigid,
    AlmostTauTilting,
    TauTilting,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::NotTauRigid => "not τ-rigid",
            Role::TauRigid => "τ-rigid",
            Role::AlmostTauTilting => "almost τ-tilting",
            Role::TauTilting => "τ-tilting",
        };
        f.write_str(s)
    }
}

/// A basic pair, stored as its indecomposable two-term complexes sorted by
/// g-vector. Slot `k` of a pair is `parts()[k]`.
#[derive(Clone, Debug)]
pub struct TauPair {
    alg: Arc<BasicAlgebra>,
    parts: Vec<Indec>,
}

/// Sorted g-vectors; they determine a τ-rigid pair up to isomorphism.
pub type Fingerprint = Vec<Vec<i64>>;

impl TauPair {
    /// Builds the basic pair from arbitrary modules `M` and projective `P`.
    pub fn new(m: &Module, p: &Module) -> Result<TauPair> {
        if !crate::algebra::same_algebra(m.algebra(), p.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if !is_projective(p) {
            return Err(Error::NotProjective);
        }
        let alg = m.algebra().clone();
        let ms: Vec<Module> = decompose(m)?.into_iter().map(|(x, _)| x).collect();
        let mut ps: Vec<usize> = top_dims(p)
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(v, _)| v)
            .collect();
        ps.sort();
        Ok(TauPair::from_parts(&alg, ms, ps))
    }

    pub fn from_parts(alg: &Arc<BasicAlgebra>, ms: Vec<Module>, ps: Vec<usize>) -> TauPair {
        let mut parts: Vec<Indec> = ms.iter().map(Indec::from_module).collect();
        parts.extend(ps.into_iter().map(|v| Indec::shifted(alg, v)));
        TauPair::from_indecs(alg, parts)
    }

    pub fn from_indecs(alg: &Arc<BasicAlgebra>, parts: Vec<Indec>) -> TauPair {
        TauPair {
            alg: alg.clone(),
            parts: basic_part(parts),
        }
    }

    /// `(A, 0)`.
    pub fn regular(alg: &Arc<BasicAlgebra>) -> TauPair {
        let ms = (0..alg.n()).map(|v| Module::projective(alg, v)).collect();
        TauPair::from_parts(alg, ms, Vec::new())
    }

    /// `(0, A)`.
    pub fn shifted_regular(alg: &Arc<BasicAlgebra>) -> TauPair {
        TauPair::from_parts(alg, Vec::new(), (0..alg.n()).collect())
    }

    pub fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.alg
    }

    pub fn parts(&self) -> &[Indec] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn m_summands(&self) -> Vec<&Module> {
        self.parts.iter().filter_map(Indec::module).collect()
    }

    pub fn p_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.iter().filter_map(Indec::shifted_vertex).collect();
        v.sort();
        v
    }

    pub fn m_module(&self) -> Module {
        let ms: Vec<Module> = self.m_summands().into_iter().cloned().collect();
        Module::direct_sum_of(&self.alg, &ms)
    }

    pub fn p_module(&self) -> Module {
        let ps: Vec<Module> = self.p_vertices().iter().map(|&v| Module::projective(&self.alg, v)).collect();
        Module::direct_sum_of(&self.alg, &ps)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.parts.iter().map(|p| p.g.clone()).collect()
    }

    pub fn g_matrix(&self) -> Vec<Vec<i64>> {
        g_matrix(&self.parts)
    }

    pub fn is_tau_rigid(&self) -> bool {
        let m = self.m_module();
        let p = self.p_module();
        hom_dim(&m, &ar_translate(&m)).map(|d| d == 0).unwrap_or(false)
            && hom_dim(&p, &m).map(|d| d == 0).unwrap_or(false)
    }

    pub fn role(&self) -> Role {
        if !self.is_tau_rigid() {
            return Role::NotTauRigid;
        }
        let n = self.alg.n();
        match self.len() {
            k if k == n => Role::TauTilting,
            k if k + 1 == n => Role::AlmostTauTilting,
            _ => Role::TauRigid,
        }
    }

    pub fn is_tau_tilting(&self) -> bool {
        self.role() == Role::TauTilting
    }

    /// The two-term complex `(minimal presentation of M) ⊕ (P -> 0)`.
    pub fn complex(&self) -> TwoTermComplex {
        let cs: Vec<TwoTermComplex> = self.parts.iter().map(|p| p.cx.clone()).collect();
        TwoTermComplex::direct_sum(&self.alg, &cs)
    }

    /// Whether `(U, Q)` is a direct summand of this pair.
    pub fn contains(&self, o: &TauPair) -> bool {
        o.parts.iter().all(|x| self.parts.iter().any(|y| y.is_isomorphic(x)))
    }

    /// Summands with the given slots removed.
    pub fn without(&self, slots: &[usize]) -> TauPair {
        let parts = self
            .parts
            .iter()
            .enumerate()
            .filter(|(i, _)| !slots.contains(i))
            .map(|(_, p)| p.clone())
            .collect();
        TauPair {
            alg: self.alg.clone(),
            parts,
        }
    }

    pub fn join(&self, o: &TauPair) -> TauPair {
        let mut parts = self.parts.clone();
        parts.extend(o.parts.iter().cloned());
        TauPair::from_indecs(&self.alg, parts)
    }

    /// Isomorphism of pairs (summand by summand).
    pub fn same_as(&self, o: &TauPair) -> bool {
        self.len() == o.len() && self.contains(o)
    }

    pub fn label(&self) -> String {
        let ms: Vec<String> = self.m_summands().iter().map(|m| module_label(m)).collect();
        let ps: Vec<String> = self
            .p_vertices()
            .iter()
            .map(|&v| format!("P{}", self.alg.vertex_labels()[v]))
            .collect();
        let join = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join("+") };
        format!("({}, {})", join(ms), join(ps))
    }
}

/// `P<v>` for an indecomposable projective, else `S<v>` for a simple, else
/// the dimension vector.
pub fn module_label(m: &Module) -> String {
    let alg = m.algebra();
    let labels = alg.vertex_labels();
    let nonzero: Vec<usize> = (0..m.n()).filter(|&v| m.dims()[v] > 0).collect();
    let top = top_dims(m);
    if top.iter().sum::<usize>() == 1 {
        let v = top.iter().position(|&d| d == 1).unwrap();
        let p = Module::projective(alg, v);
        if p.dims() == m.dims() && is_isomorphic(&p, m).is_some() {
            return format!("P{}", labels[v]);
        }
    }
    if m.dim() == 1 {
        return format!("S{}", labels[nonzero[0]]);
    }
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    format!("M[{}]", dims.join(","))
}

pub fn check_pair(m: &Module, p: &Module) -> Result<Role> {
    Ok(TauPair::new(m, p)?.role())
}

pub fn from_tau_pair(pair: &TauPair) -> TwoTermComplex {
    pair.complex()
}

/// Reads a presilting two-term complex back as a pair.
pub fn to_tau_pair(alg: &Arc<BasicAlgebra>, t: &TwoTermComplex) -> Result<TauPair> {
    let parts = decompose_complex(alg, t)?;
    if !no_hom1(alg, &parts, &parts) {
        return Err(Error::NotPresilting);
    }
    Ok(TauPair::from_indecs(alg, parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::examples;
    use crate::field::Field;

    const Q: Field = Field::Rational;

    #[test]
    fn roles_on_the_three_cycle() {
        let a = examples::three_cycle(Q);
        let reg = Module::regular(&a);
        let zero = Module::zero(&a);
        assert_eq!(check_pair(&reg, &zero).unwrap(), Role::TauTilting);
        let s3 = Module::simple(&a, 2);
        let p21 = Module::projective(&a, 1).direct_sum(&Module::projective(&a, 0));
        assert_eq!(check_pair(&s3, &p21).unwrap(), Role::TauTilting);
        assert_eq!(check_pair(&s3, &Module::projective(&a, 1)).unwrap(), Role::AlmostTauTilting);
    }

    #[test]
    fn non_projective_second_entry_is_rejected() {
        let a = examples::three_cycle(Q);
        let s = Module::simple(&a, 0);
        assert!(matches!(check_pair(&s, &s), Err(Error::NotProjective)));
    }

    #[test]
    fn hom_from_p_into_m_breaks_rigidity() {
        let a = examples::linear_a(Q, 2);
        // Hom(P1, S1) != 0.
        let r = check_pair(&Module::simple(&a, 0), &Module::projective(&a, 0)).unwrap();
        assert_eq!(r, Role::NotTauRigid);
    }

    #[test]
    fn simple_one_with_shifted_p2() {
        let a = examples::linear_a(Q, 2);
        let pair = TauPair::new(&Module::simple(&a, 0), &Module::projective(&a, 1)).unwrap();
        let t = from_tau_pair(&pair);
        assert_eq!(t.m0, vec![0]);
        let mut m1 = t.m1.clone();
        m1.sort();
        assert_eq!(m1, vec![1, 1]);
        let mut g = pair.g_matrix();
        g.sort();
        assert_eq!(g, vec![vec![0, -1], vec![1, -1]]);
        let back = to_tau_pair(&a, &t).unwrap();
        assert!(back.same_as(&pair));
        assert_eq!(back.label(), "(S1, P2)");
    }
}
