//! Mutation of τ-tilting pairs, the dagger duality, relative Bongartz
//! completions and brick labels.

use std::sync::Arc;

use crate::algebra::BasicAlgebra;
use crate::complex::{left_completion_silting, mutate_complex, Direction, Indec, Kind};
use crate::error::{Error, Result};
use crate::module::{
    brick_shrink, filt_member, hom_dim, in_fac, in_perp_pair, is_brick, is_projective, torsion_part, transpose,
    Module,
};
use crate::pair::TauPair;

fn tau_tilting_or_err(p: &TauPair, what: &str) -> Result<()> {
    if p.is_tau_tilting() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("{what} is {}, expected τ-tilting", p.role())))
    }
}

/// Mutation at slot `k`, computed on the silting side and certified by
/// comparing torsion classes.
pub fn mutate_pair(pair: &TauPair, k: usize) -> Result<(TauPair, Direction)> {
    let (parts, dir) = mutate_complex(pair.algebra(), pair.parts(), k)?;
    let out = TauPair::from_indecs(pair.algebra(), parts);
    let (big, small) = match dir {
        Direction::Left => (pair, &out),
        Direction::Right => (&out, pair),
    };
    let (bm, sm) = (big.m_module(), small.m_module());
    if !in_fac(&bm, &sm)? || in_fac(&sm, &bm)? {
        return Err(Error::InvariantViolation(format!(
            "mutation of {} at slot {k} is not a {dir:?} mutation on torsion classes",
            pair.label()
        )));
    }
    Ok((out, dir))
}

/// `(U, Q)^† = (Q^* ⊕ Tr U_np, U_pr^*)` over the opposite algebra.
pub fn dagger(pair: &TauPair) -> Result<TauPair> {
    let alg = pair.algebra();
    let op = alg.opposite();
    let mut parts = Vec::with_capacity(pair.len());
    for p in pair.parts() {
        let q = match &p.kind {
            Kind::Shifted(v) => Indec::from_module(&Module::projective(&op, *v)),
            Kind::Presentation(m) => {
                if is_projective(m) {
                    Indec::shifted(&op, p.cx.m0[0])
                } else {
                    Indec::from_module(&transpose(m))
                }
            }
        };
        let neg: Vec<i64> = p.g.iter().map(|x| -x).collect();
        if q.g != neg {
            return Err(Error::InvariantViolation(format!(
                "dual g-vector {:?} is not the negative of {:?}",
                q.g, p.g
            )));
        }
        parts.push(q);
    }
    let out = TauPair::from_indecs(&op, parts);
    if pair.is_tau_rigid() && !out.is_tau_rigid() {
        return Err(Error::InvariantViolation("dagger of a τ-rigid pair is not τ-rigid".into()));
    }
    Ok(out)
}

/// `X ∈ Fac U ∗ Fac M`: the quotient by the trace of `U` lies in `Fac M`.
pub fn star_membership(ugen: &Module, mgen: &Module, x: &Module) -> Result<bool> {
    let t = torsion_part(ugen, x)?;
    in_fac(mgen, &t.quot)
}

/// The precondition `M ∈ ⊥(τU) ∩ Q^⊥` of the left completion.
pub fn left_bongartz_applies(rel: &TauPair, anchor: &TauPair) -> Result<bool> {
    in_perp_pair(&rel.m_module(), &rel.p_module(), &anchor.m_module())
}

/// Checks `U, M ∈ Fac M⁻` and `M⁻ ∈ Fac U ∗ Fac M`, which pin down
/// `Fac M⁻ = Fac U ∗ Fac M`, and that `(U, Q)` is a summand.
pub fn left_bongartz_certificate(rel: &TauPair, anchor: &TauPair, result: &TauPair) -> Result<bool> {
    let u = rel.m_module();
    let m = anchor.m_module();
    let r = result.m_module();
    Ok(result.is_tau_tilting()
        && result.contains(rel)
        && in_fac(&r, &u)?
        && in_fac(&r, &m)?
        && star_membership(&u, &m, &r)?)
}

/// `B^-_{(U,Q)}(M,P)`, through the silting cone, with the torsion certificate enforced.
pub fn left_bongartz(rel: &TauPair, anchor: &TauPair) -> Result<TauPair> {
    tau_tilting_or_err(anchor, "anchor")?;
    if !rel.is_tau_rigid() {
        return Err(Error::PreconditionViolated("relative pair is not τ-rigid".into()));
    }
    if !left_bongartz_applies(rel, anchor)? {
        return Err(Error::PreconditionViolated("M is not in ⊥(τU) ∩ Q^⊥".into()));
    }
    let parts = left_completion_silting(rel.algebra(), rel.parts(), anchor.parts())?;
    let out = TauPair::from_indecs(rel.algebra(), parts);
    if !left_bongartz_certificate(rel, anchor, &out)? {
        return Err(Error::InvariantViolation(format!(
            "left completion {} of {} at {} fails the torsion certificate",
            out.label(),
            rel.label(),
            anchor.label()
        )));
    }
    Ok(out)
}

/// Reads a pair over an algebra equal to `alg` (for instance `(A^op)^op`) as a pair over `alg`.
pub fn rebase_pair(pair: &TauPair, alg: &Arc<BasicAlgebra>) -> Result<TauPair> {
    let mut parts = Vec::with_capacity(pair.len());
    for p in pair.parts() {
        parts.push(match &p.kind {
            Kind::Shifted(v) => Indec::shifted(alg, *v),
            Kind::Presentation(m) => Indec::from_module(&m.rebase(alg)?),
        });
    }
    Ok(TauPair::from_indecs(alg, parts))
}

/// `B^+_{(U,Q)}(M,P) = (B^-_{(U,Q)^†}((M,P)^†))^†`.
pub fn right_bongartz(rel: &TauPair, anchor: &TauPair) -> Result<TauPair> {
    let alg = rel.algebra();
    let out = dagger(&left_bongartz(&dagger(rel)?, &dagger(anchor)?)?)?;
    let out = rebase_pair(&out, alg)?;
    if !out.contains(rel) || !in_fac(&out.m_module(), &rel.m_module())? {
        return Err(Error::InvariantViolation("right completion does not contain the relative pair".into()));
    }
    Ok(out)
}

/// The smallest τ-tilting pair containing `(U, Q)`: `Fac = Fac U`.
pub fn co_bongartz_completion(rel: &TauPair) -> Result<TauPair> {
    left_bongartz(rel, &TauPair::shifted_regular(rel.algebra()))
}

/// The largest τ-tilting pair containing `(U, Q)`: `Fac = ⊥(τU) ∩ Q^⊥`.
pub fn bongartz_completion(rel: &TauPair) -> Result<TauPair> {
    right_bongartz(rel, &TauPair::regular(rel.algebra()))
}

/// The brick labelling a left mutation `from -> to`: the unique brick in
/// `N^⊥ ∩ Fac M`, shrunk out of `X / t_N X` for the exchanged summand `X`.
pub fn brick_label(from: &TauPair, to: &TauPair) -> Result<Module> {
    let removed: Vec<&Indec> = from
        .parts()
        .iter()
        .filter(|p| !to.parts().iter().any(|q| q.is_isomorphic(p)))
        .collect();
    let [x] = removed.as_slice() else {
        return Err(Error::PreconditionViolated(format!(
            "{} and {} differ in {} summands",
            from.label(),
            to.label(),
            removed.len()
        )));
    };
    let Some(x) = x.module() else {
        return Err(Error::PreconditionViolated("exchanged summand is a shifted projective".into()));
    };
    let m = from.m_module();
    let n = to.m_module();
    if !in_fac(&m, &n)? || in_fac(&n, &m)? {
        return Err(Error::PreconditionViolated("edge is not a left mutation".into()));
    }
    let y = torsion_part(&n, x)?.quot;
    let d = brick_shrink(&y)?;
    if !is_brick(&d) || hom_dim(&n, &d)? != 0 || !in_fac(&m, &d)? || !filt_member(&d, &y)? {
        return Err(Error::InvariantViolation("brick label fails its certificate".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests;
