//! Traces, torsion parts, perpendicular categories, bricks and filtrations.

use super::hom::hom_basis;
use super::{check_same, Module, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{charpoly, roots};

/// The trace of `gen` in `x`: the sum of the images of all maps `gen -> x`.
pub fn trace_basis(gen: &Module, x: &Module) -> Result<Vec<Matrix>> {
    check_same(gen, x)?;
    let f = x.field();
    let maps = hom_basis(gen, x)?;
    Ok((0..x.n())
        .map(|v| {
            let mut m = Matrix::zeros(f, x.dims()[v], 0);
            for h in &maps {
                m = m.hstack(&h.blocks[v]);
            }
            m.col_space()
        })
        .collect())
}

/// The canonical sequence `0 -> t X -> X -> X / t X -> 0` for the torsion class `Fac gen`.
#[derive(Clone, Debug)]
pub struct TorsionPart {
    pub sub: Module,
    pub incl: ModuleMap,
    pub quot: Module,
    pub proj: ModuleMap,
}

pub fn torsion_part(gen: &Module, x: &Module) -> Result<TorsionPart> {
    let basis = trace_basis(gen, x)?;
    let (sub, incl) = x.submodule(&basis);
    let (quot, proj) = x.quotient(&basis);
    Ok(TorsionPart { sub, incl, quot, proj })
}

/// Whether `x ∈ Fac gen`.
pub fn in_fac(gen: &Module, x: &Module) -> Result<bool> {
    let t = trace_basis(gen, x)?;
    Ok(t.iter().zip(x.dims()).all(|(b, &d)| b.cols == d))
}

/// Whether `x ∈ ⊥(τU) ∩ Q^⊥`, given `τU`.
pub fn in_perp_pair_with(tau_u: &Module, q: &Module, x: &Module) -> Result<bool> {
    Ok(hom_basis(x, tau_u)?.is_empty() && hom_basis(q, x)?.is_empty())
}

/// Whether `x ∈ ⊥(τU) ∩ Q^⊥`.
pub fn in_perp_pair(u: &Module, q: &Module, x: &Module) -> Result<bool> {
    in_perp_pair_with(&super::ar_translate(u), q, x)
}

/// Whether `x` lies in the wide subcategory `U^⊥ ∩ ⊥(τU) ∩ Q^⊥`.
pub fn in_wide(u: &Module, q: &Module, x: &Module) -> Result<bool> {
    Ok(hom_basis(u, x)?.is_empty() && in_perp_pair(u, q, x)?)
}

/// Whether `End(m)` is the ground field.
pub fn is_brick(m: &Module) -> bool {
    !m.is_zero() && hom_basis(m, m).map(|b| b.len() == 1).unwrap_or(false)
}

fn singular_endomorphism(y: &Module) -> Option<ModuleMap> {
    let basis = hom_basis(y, y).ok()?;
    if let Some(p) = basis.iter().find(|p| !p.is_zero() && !p.is_iso()) {
        return Some(p.clone());
    }
    for p in &basis {
        let full = Matrix::block_diag(y.field(), &p.blocks);
        for l in roots(&charpoly(&full)) {
            let q = p.shift(&l);
            if !q.is_zero() && !q.is_iso() {
                return Some(q);
            }
        }
    }
    None
}

/// Shrinks `y` by images of singular endomorphisms until it is a brick.
pub fn brick_shrink(y: &Module) -> Result<Module> {
    if y.is_zero() {
        return Err(Error::PreconditionViolated("brick_shrink needs a nonzero module".into()));
    }
    let mut cur = y.clone();
    for _ in 0..=y.dim() {
        if is_brick(&cur) {
            return Ok(cur);
        }
        let Some(psi) = singular_endomorphism(&cur) else {
            return Err(Error::NotConverged(
                "no singular endomorphism with eigenvalue in the field".into(),
            ));
        };
        cur = cur.factorize(&cur, &psi).image;
    }
    Err(Error::NotConverged(format!("more than {} shrinking steps", y.dim())))
}

/// Whether `x ∈ Filt(d)` for a brick `d`. `Filt(d)` is wide, so any nonzero
/// map from a member onto `d` is surjective with kernel again a member; one
/// nonzero map per step therefore decides membership.
pub fn filt_member(d: &Module, x: &Module) -> Result<bool> {
    check_same(d, x)?;
    if d.is_zero() {
        return Err(Error::PreconditionViolated("filtration by the zero module".into()));
    }
    let mut cur = x.clone();
    loop {
        if cur.is_zero() {
            return Ok(true);
        }
        if !cur.dim().is_multiple_of(d.dim()) {
            return Ok(false);
        }
        let h = hom_basis(&cur, d)?;
        let Some(f) = h.first() else {
            return Ok(false);
        };
        if !f.is_surjective() {
            return Ok(false);
        }
        cur = cur.factorize(d, f).kernel;
    }
}
