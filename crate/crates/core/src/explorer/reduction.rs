//! τ-tilting reduction: `End(M) / ⟨e_U⟩` for the Bongartz completion `(M, P)`
//! of `(U, Q)`, the functor `Hom(M, -)` and the induced bijection.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{BasicAlgebra, BasisElem};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Echelon, Matrix};
use crate::module::{hom_basis, in_fac, in_wide, is_projective, map_coordinates, torsion_part, Module, ModuleMap};
use crate::pair::{module_label, TauPair};
use crate::poly::single_eigenvalue;
use crate::tau_ops::bongartz_completion;

use super::graph::{build_exchange_graph, ExchangeGraph};

/// One basis element of `B = End(M)`: a map `M_t -> M_s` (Peirce type `(s, t)`).
#[derive(Clone, Debug)]
struct EndBasis {
    s: usize,
    t: usize,
    map: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct ReductionData {
    rel: TauPair,
    bongartz: TauPair,
    /// Indecomposable summands `M_k` of `M`, in slot order.
    summands: Vec<Module>,
    /// Whether `M_k` is a summand of `U`.
    in_u: Vec<bool>,
    b: Arc<BasicAlgebra>,
    b_basis: Vec<EndBasis>,
    ideal_dim: usize,
    quotient: Arc<BasicAlgebra>,
    /// `B`-basis indices of the quotient basis, in quotient order.
    kept: Vec<usize>,
    /// Summand index of each quotient vertex.
    vertices: Vec<usize>,
}

fn block_diag(m: &ModuleMap) -> Matrix {
    let f = m.blocks.first().map(|b| b.field).expect("module over a nonzero algebra");
    Matrix::block_diag(f, &m.blocks)
}

/// Basis of `Hom(M_t, M_s)`; for `s == t` the identity followed by nilpotent parts.
fn end_block(ms: &[Module], s: usize, t: usize) -> Result<Vec<ModuleMap>> {
    let hs = hom_basis(&ms[t], &ms[s])?;
    if s != t {
        return Ok(hs);
    }
    let f = ms[s].field();
    let id = ModuleMap::identity(&ms[s]);
    let mut out = vec![id.clone()];
    let mut ech = Echelon::new(f, id.flatten().len());
    ech.insert(&id.flatten());
    for h in hs {
        let lam = single_eigenvalue(&block_diag(&h)).ok_or_else(|| {
            Error::InvariantViolation(format!("End({}) is not split local", module_label(&ms[s])))
        })?;
        let nil = h.shift(&lam);
        if ech.insert(&nil.flatten()) {
            out.push(nil);
        }
    }
    Ok(out)
}

fn vertex_label(m: &Module) -> String {
    let l = module_label(m);
    match l.strip_prefix('P') {
        Some(v) if is_projective(m) => format!("{v}'"),
        _ => format!("{l}'"),
    }
}

/// Structure constants of a graded algebra given per basis element the block
/// and coordinates of products; `coords(i, j)` returns the product in global indices.
fn build_algebra(
    field: crate::field::Field,
    vertices: Vec<String>,
    basis: Vec<BasisElem>,
    product: impl Fn(usize, usize) -> Vec<(usize, Scalar)>,
) -> Result<BasicAlgebra> {
    let d = basis.len();
    let table = (0..d).map(|i| (0..d).map(|j| product(i, j)).collect()).collect();
    BasicAlgebra::from_table(field, vertices, basis, table)
}

impl ReductionData {
    pub fn rel(&self) -> &TauPair {
        &self.rel
    }

    /// The Bongartz completion `(M, P)` of `(U, Q)`.
    pub fn bongartz(&self) -> &TauPair {
        &self.bongartz
    }

    pub fn summands(&self) -> &[Module] {
        &self.summands
    }

    pub fn endomorphism_algebra(&self) -> &Arc<BasicAlgebra> {
        &self.b
    }

    /// `e_U` as an element of `B`.
    pub fn e_u(&self) -> Vec<Scalar> {
        let f = self.b.field();
        (0..self.b.dim())
            .map(|i| if i < self.summands.len() && self.in_u[i] { f.one() } else { f.zero() })
            .collect()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal_dim
    }

    /// `A_(U,Q) = B / B e_U B`.
    pub fn quotient(&self) -> &Arc<BasicAlgebra> {
        &self.quotient
    }

    /// Summand index of each quotient vertex.
    pub fn quotient_vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Maps `M_t -> M_s` lifting the quotient basis.
    pub fn quotient_basis_maps(&self) -> Vec<(usize, usize, &ModuleMap)> {
        self.kept
            .iter()
            .map(|&i| (self.b_basis[i].s, self.b_basis[i].t, &self.b_basis[i].map))
            .collect()
    }
}

/// `A_(U,Q)` together with the data used to build it.
pub fn tau_reduction(rel: &TauPair) -> Result<ReductionData> {
    if !rel.is_tau_rigid() {
        return Err(Error::PreconditionViolated("pair is not τ-rigid".into()));
    }
    let alg = rel.algebra();
    let f = alg.field();
    let bongartz = bongartz_completion(rel)?;
    let summands: Vec<Module> = bongartz.m_summands().into_iter().cloned().collect();
    let r = summands.len();
    let u_parts = rel.m_summands();
    let in_u: Vec<bool> = bongartz
        .parts()
        .iter()
        .filter(|p| p.module().is_some())
        .map(|p| rel.parts().iter().any(|q| q.is_isomorphic(p)))
        .collect();
    debug_assert_eq!(in_u.iter().filter(|&&b| b).count(), u_parts.len());

    // Basis of B: idempotents first, then radical blocks.
    let blocks: Vec<Vec<Vec<ModuleMap>>> = (0..r)
        .map(|s| (0..r).map(|t| end_block(&summands, s, t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut b_basis: Vec<EndBasis> = Vec::new();
    // index_of[s][t][c]: global index of the c-th map in block (s, t).
    let mut index_of: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); r]; r];
    for (s, row) in blocks.iter().enumerate() {
        b_basis.push(EndBasis { s, t: s, map: row[s][0].clone() });
        index_of[s][s].push(s);
    }
    for s in 0..r {
        for t in 0..r {
            let skip = usize::from(s == t);
            for m in &blocks[s][t][skip..] {
                index_of[s][t].push(b_basis.len());
                b_basis.push(EndBasis { s, t, map: m.clone() });
            }
        }
    }
    // Product coordinates in block (s, u) for x (s, t) and y (t, u).
    let coords = |s: usize, u: usize, m: &ModuleMap| -> Vec<Scalar> {
        map_coordinates(&blocks[s][u], m).expect("composition stays in the block span")
    };
    let product = |i: usize, j: usize| -> Vec<(usize, Scalar)> {
        let (x, y) = (&b_basis[i], &b_basis[j]);
        if x.t != y.s {
            return Vec::new();
        }
        let c = coords(x.s, y.t, &x.map.compose(&y.map));
        c.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (index_of[x.s][y.t][k], v))
            .collect()
    };
    let names: Vec<String> = summands.iter().map(vertex_label).collect();
    let basis_elems: Vec<BasisElem> = b_basis
        .iter()
        .enumerate()
        .map(|(i, e)| BasisElem {
            name: if i < r { format!("e{}", names[e.s]) } else { format!("h{i}") },
            src: e.s,
            dst: e.t,
        })
        .collect();
    let b = Arc::new(build_algebra(f, names.clone(), basis_elems, product)?);

    // The ideal B e_U B, block by block: products x ∘ y through a U-summand.
    let mut ideal: Vec<Vec<Echelon>> = (0..r)
        .map(|s| (0..r).map(|u| Echelon::new(f, blocks[s][u].len())).collect())
        .collect();
    for k in (0..r).filter(|&k| in_u[k]) {
        for s in 0..r {
            for u in 0..r {
                for x in &blocks[s][k] {
                    for y in &blocks[k][u] {
                        ideal[s][u].insert(&coords(s, u, &x.compose(y)));
                    }
                }
            }
        }
    }
    let ideal_dim: usize = ideal.iter().flatten().map(Echelon::rank).sum();

    // Quotient basis: surviving idempotents, then non-pivot radical coordinates.
    let vertices: Vec<usize> = (0..r).filter(|&k| !in_u[k]).collect();
    let qpos = |s: usize| vertices.iter().position(|&v| v == s);
    let mut kept: Vec<usize> = vertices.clone();
    // kept_coord[s][u][c] = quotient index of block coordinate c if kept.
    let mut kept_coord: Vec<Vec<Vec<Option<usize>>>> = (0..r)
        .map(|s| (0..r).map(|u| vec![None; blocks[s][u].len()]).collect())
        .collect();
    for (q, &s) in vertices.iter().enumerate() {
        kept_coord[s][s][0] = Some(q);
    }
    for &s in &vertices {
        for &u in &vertices {
            let ech = &ideal[s][u];
            let skip = usize::from(s == u);
            for c in skip..blocks[s][u].len() {
                let mut e = vec![f.zero(); blocks[s][u].len()];
                e[c] = f.one();
                // A coordinate is a pivot exactly when its unit vector reduces to something with a zero there.
                if !ech.reduce(&e)[c].is_zero() {
                    kept_coord[s][u][c] = Some(kept.len());
                    kept.push(index_of[s][u][c]);
                }
            }
        }
    }
    if kept.len() + ideal_dim != b.dim() {
        return Err(Error::InvariantViolation(format!(
            "quotient dimension {} plus ideal dimension {ideal_dim} differs from dim B = {}",
            kept.len(),
            b.dim()
        )));
    }
    let qbasis: Vec<BasisElem> = kept
        .iter()
        .enumerate()
        .map(|(q, &i)| {
            let e = &b_basis[i];
            BasisElem {
                name: if q < vertices.len() { format!("e{}", names[e.s]) } else { format!("r{}", q - vertices.len() + 1) },
                src: qpos(e.s).expect("kept element between surviving vertices"),
                dst: qpos(e.t).expect("kept element between surviving vertices"),
            }
        })
        .collect();
    let qnames: Vec<String> = vertices.iter().map(|&k| names[k].clone()).collect();
    let qproduct = |a: usize, c: usize| -> Vec<(usize, Scalar)> {
        let (x, y) = (&b_basis[kept[a]], &b_basis[kept[c]]);
        if x.t != y.s {
            return Vec::new();
        }
        let v = ideal[x.s][y.t].reduce(&coords(x.s, y.t, &x.map.compose(&y.map)));
        v.into_iter()
            .enumerate()
            .filter(|(_, val)| !val.is_zero())
            .map(|(k, val)| (kept_coord[x.s][y.t][k].expect("reduced coordinates are non-pivots"), val))
            .collect()
    };
    let quotient = Arc::new(build_algebra(f, qnames, qbasis, qproduct)?);
    quotient.verify()?;
    Ok(ReductionData {
        rel: rel.clone(),
        bongartz,
        summands,
        in_u,
        b,
        b_basis,
        ideal_dim,
        quotient,
        kept,
        vertices,
    })
}

/// `F(X) = Hom(M, X)` as a module over `A_(U,Q)`, for `X` in the wide subcategory.
pub fn reduction_functor(rd: &ReductionData, x: &Module) -> Result<Module> {
    if !in_wide(&rd.rel.m_module(), &rd.rel.p_module(), x)? {
        return Err(Error::NotInWide);
    }
    let homs: Vec<Vec<ModuleMap>> = rd
        .vertices
        .iter()
        .map(|&k| hom_basis(&rd.summands[k], x))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = homs.iter().map(Vec::len).collect();
    let f = rd.quotient.field();
    let nv = rd.vertices.len();
    let mut acts = Vec::new();
    for &i in &rd.kept[nv..] {
        let e = &rd.b_basis[i];
        let (s, t) = (
            rd.vertices.iter().position(|&v| v == e.s).expect("kept vertex"),
            rd.vertices.iter().position(|&v| v == e.t).expect("kept vertex"),
        );
        // f ∘ b for f in Hom(M_s, X) lands in Hom(M_t, X).
        let cols: Vec<Vec<Scalar>> = homs[s]
            .iter()
            .map(|h| map_coordinates(&homs[t], &h.compose(&e.map)).expect("Hom(M_t, X) is closed under precomposition"))
            .collect();
        acts.push(if cols.is_empty() { Matrix::zeros(f, dims[t], 0) } else { Matrix::from_cols(f, dims[t], &cols) });
    }
    Module::new(rd.quotient.clone(), dims, acts)
}

/// `F(h)` for `h: X -> Y` in the wide subcategory.
pub fn reduction_functor_map(rd: &ReductionData, x: &Module, y: &Module, h: &ModuleMap) -> Result<ModuleMap> {
    if !h.is_valid(x, y) {
        return Err(Error::PreconditionViolated("not a module map".into()));
    }
    let f = rd.quotient.field();
    let mut blocks = Vec::new();
    for &k in &rd.vertices {
        let hx = hom_basis(&rd.summands[k], x)?;
        let hy = hom_basis(&rd.summands[k], y)?;
        let cols: Vec<Vec<Scalar>> = hx
            .iter()
            .map(|g| map_coordinates(&hy, &h.compose(g)).expect("postcomposition stays in Hom(M_k, Y)"))
            .collect();
        blocks.push(if cols.is_empty() { Matrix::zeros(f, hy.len(), 0) } else { Matrix::from_cols(f, hy.len(), &cols) });
    }
    Ok(ModuleMap { blocks })
}

/// The image of a pair containing `(U, Q)` on the reduced side: `F(M' / t_U M')`.
pub fn reduce_generator(rd: &ReductionData, pair: &TauPair) -> Result<Module> {
    if !pair.contains(&rd.rel) {
        return Err(Error::PreconditionViolated(format!("{} does not contain {}", pair.label(), rd.rel.label())));
    }
    let x = torsion_part(&rd.rel.m_module(), &pair.m_module())?.quot;
    reduction_functor(rd, &x)
}

/// Node of `qg` whose torsion class is `Fac gen`.
pub fn match_torsion_class(qg: &ExchangeGraph, gen: &Module) -> Result<usize> {
    for (i, p) in qg.nodes().iter().enumerate() {
        let m = p.m_module();
        if in_fac(&m, gen)? && in_fac(gen, &m)? {
            return Ok(i);
        }
    }
    Err(Error::MatchFailure(format!("no reduced pair has torsion class Fac {}", module_label(gen))))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub rel: String,
    pub quotient_dim: usize,
    pub quotient_vertices: usize,
    pub containing: usize,
    pub reduced: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Comparable pairs checked, both directions.
    pub order_checks: usize,
    pub order_violations: Vec<(String, String)>,
    /// `(A-side label, reduced label)`.
    pub matching: Vec<(String, String)>,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.containing == self.reduced && self.order_violations.is_empty()
    }
}

/// Matches the pairs of `A` containing `(U, Q)` with all pairs of `A_(U,Q)`
/// and checks that the matching is an order isomorphism.
pub fn reduction_bijection_check(rd: &ReductionData, budget: usize) -> Result<ReductionReport> {
    let g = build_exchange_graph(rd.rel.algebra(), budget)?;
    g.require_complete()?;
    reduction_bijection_with(rd, &g, budget)
}

pub fn reduction_bijection_with(rd: &ReductionData, g: &ExchangeGraph, budget: usize) -> Result<ReductionReport> {
    let qg = build_exchange_graph(&rd.quotient, budget)?;
    qg.require_complete()?;
    let side: Vec<usize> = (0..g.len()).filter(|&i| g.node(i).contains(&rd.rel)).collect();
    let image: Vec<usize> = side
        .iter()
        .map(|&i| match_torsion_class(&qg, &reduce_generator(rd, g.node(i))?))
        .collect::<Result<Vec<_>>>()?;
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == image.len();
    let surjective = sorted.len() == qg.len();
    let mut order_checks = 0;
    let mut order_violations = Vec::new();
    for (a, &i) in side.iter().enumerate() {
        for (b, &j) in side.iter().enumerate() {
            if a == b {
                continue;
            }
            order_checks += 1;
            let up = g.fac_leq(i, j)?;
            let down = qg.fac_leq(image[a], image[b])?;
            if up != down {
                order_violations.push((g.node(i).label(), g.node(j).label()));
            }
        }
    }
    Ok(ReductionReport {
        rel: rd.rel.label(),
        quotient_dim: rd.quotient.dim(),
        quotient_vertices: rd.quotient.n(),
        containing: side.len(),
        reduced: qg.len(),
        injective,
        surjective,
        order_checks,
        order_violations,
        matching: side
            .iter()
            .zip(&image)
            .map(|(&i, &q)| (g.node(i).label(), qg.node(q).label()))
            .collect(),
    })
}
