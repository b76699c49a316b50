//! Projective covers and presentations, the transpose, the K-dual and the
//! Auslander–Reiten translate.

use std::sync::Arc;

use super::hom::hom_basis;
use super::{Module, ModuleMap};
use crate::algebra::{same_algebra, BasicAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{rank_of, Matrix};
use crate::proj::{pmat_cokernel, vector_to_column, PMat};

/// A minimal projective presentation `⊕P_{p1} --d--> ⊕P_{p0} --cover--> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
    pub d: PMat,
    pub cover: ModuleMap,
}

/// Multiplicities of the simple modules in `top M = M / rad M`.
pub fn top_dims(m: &Module) -> Vec<usize> {
    m.radical_basis()
        .iter()
        .zip(&m.dims)
        .map(|(r, d)| d - r.cols)
        .collect()
}

/// Top generators `(vertex, vector)` and the projective cover built from them.
pub fn projective_cover(m: &Module) -> (Vec<(usize, Vec<Scalar>)>, ModuleMap) {
    let f = m.field();
    let rad = m.radical_basis();
    let mut gens = Vec::new();
    for v in 0..m.n() {
        for u in rad[v].complement_units() {
            let mut x = vec![f.zero(); m.dims[v]];
            x[u] = f.one();
            gens.push((v, x));
        }
    }
    let mut blocks: Vec<Matrix> = (0..m.n()).map(|t| Matrix::zeros(f, m.dims[t], 0)).collect();
    for (v, x) in &gens {
        let piece = m.map_from_projective(*v, x);
        for t in 0..m.n() {
            blocks[t] = blocks[t].hstack(&piece.blocks[t]);
        }
    }
    (gens, ModuleMap { blocks })
}

/// `Ω M` with its inclusion into the projective cover, and the cover vertices.
pub fn syzygy(m: &Module) -> (Module, ModuleMap, Vec<usize>) {
    let (gens, cover) = projective_cover(m);
    let p0: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let p = crate::proj::proj_sum(m.algebra(), &p0);
    let fact = p.factorize(m, &cover);
    (fact.kernel, fact.kernel_incl, p0)
}

pub fn min_proj_presentation(m: &Module) -> ProjPresentation {
    let alg = m.algebra();
    let (gens, cover) = projective_cover(m);
    let p0: Vec<usize> = gens.iter().map(|g| g.0).collect();
    let p = crate::proj::proj_sum(alg, &p0);
    let fact = p.factorize(m, &cover);
    let (kgens, _) = projective_cover(&fact.kernel);
    let p1: Vec<usize> = kgens.iter().map(|g| g.0).collect();
    let mut d = PMat::zero(alg, &p0, &p1);
    for (j, (w, x)) in kgens.iter().enumerate() {
        let y = fact.kernel_incl.blocks[*w].mul_vec(x);
        let col = vector_to_column(alg, &p0, *w, &y);
        for (i, e) in col.into_iter().enumerate() {
            d.entries[i][j] = e;
        }
    }
    ProjPresentation { p0, p1, d, cover }
}

pub fn is_projective(m: &Module) -> bool {
    let alg = m.algebra();
    let top = top_dims(m);
    let cover_dim: usize = top
        .iter()
        .enumerate()
        .map(|(v, &k)| k * (0..alg.n()).map(|t| alg.peirce_basis(v, t).len()).sum::<usize>())
        .sum();
    cover_dim == m.dim()
}

/// `Tr M`, a module over the opposite algebra; zero on projectives.
pub fn transpose(m: &Module) -> Module {
    let pres = min_proj_presentation(m);
    let op = m.algebra().opposite();
    pmat_cokernel(&op, &pres.d.transpose()).0
}

/// The K-dual of `m`, a module over `target`, which must be the opposite of `m`'s algebra.
pub fn k_dual(m: &Module, target: &Arc<BasicAlgebra>) -> Result<Module> {
    if !same_algebra(target, &m.algebra().opposite()) {
        return Err(Error::AlgebraMismatch);
    }
    let acts = m.acts().iter().map(Matrix::transpose).collect();
    Module::new(target.clone(), m.dims().to_vec(), acts)
}

/// `τ M = D Tr M`, over the same algebra handle as `m`.
pub fn ar_translate(m: &Module) -> Module {
    let tr = transpose(m);
    k_dual(&tr, m.algebra()).expect("double opposite is the original algebra")
}

/// `dim Ext^1(x, y)`, computed as `Hom(Ωx, y)` modulo maps extending to the projective cover.
pub fn ext1_dim(x: &Module, y: &Module) -> Result<usize> {
    super::check_same(x, y)?;
    let (omega, incl, p0) = syzygy(x);
    let h = hom_basis(&omega, y)?;
    if h.is_empty() {
        return Ok(0);
    }
    let p = crate::proj::proj_sum(x.algebra(), &p0);
    let restricted: Vec<Vec<Scalar>> = hom_basis(&p, y)?
        .iter()
        .map(|f| f.compose(&incl).flatten())
        .collect();
    let len = h[0].flatten().len();
    Ok(h.len() - rank_of(x.field(), len, &restricted))
}
