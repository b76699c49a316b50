//! Krull–Schmidt decomposition by Fitting splitting, and isomorphism search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hom::hom_basis;
use super::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{charpoly, roots, single_eigenvalue};

/// An indecomposable piece of a module with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub incl: ModuleMap,
    pub proj: ModuleMap,
}

const RANDOM_TRIES: usize = 12;

fn random_combination(f: Field, basis: &[ModuleMap], rng: &mut ChaCha8Rng) -> ModuleMap {
    let mut acc = basis[0].scale(&f.zero());
    for b in basis {
        let c = f.int(rng.gen_range(-7..=7));
        if !c.is_zero() {
            acc = acc.add(&b.scale(&c));
        }
    }
    acc
}

fn block_power(phi: &ModuleMap, e: usize) -> ModuleMap {
    ModuleMap {
        blocks: phi.blocks.iter().map(|b| b.pow(e)).collect(),
    }
}

/// Fitting split of `m` along `psi`: `(ker psi^N, im psi^N)` unless trivial.
fn fitting(m: &Module, psi: &ModuleMap) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let f = m.field();
    let p = block_power(psi, m.dim().max(1));
    if p.is_zero() || p.is_iso() {
        return None;
    }
    let ker = (0..m.n())
        .map(|v| Matrix::from_cols(f, m.dims[v], &p.blocks[v].nullspace()))
        .collect();
    let img = (0..m.n()).map(|v| p.blocks[v].col_space()).collect();
    Some((ker, img))
}

fn eigen_candidates(phi: &ModuleMap, dim: usize) -> Vec<Scalar> {
    let f = phi.blocks.first().map(|b| b.field).unwrap();
    let mut out: Vec<Scalar> = Vec::new();
    if !f.divides(dim as u64) {
        let mut tr = f.zero();
        for b in &phi.blocks {
            for i in 0..b.rows {
                tr = tr.add(b.get(i, i));
            }
        }
        out.push(tr.div(&f.int(dim as i64)));
    }
    for b in &phi.blocks {
        if b.rows == 0 {
            continue;
        }
        for r in roots(&charpoly(b)) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Certificate that `End(m)` is local with residue field the ground field.
fn certify_local(m: &Module, basis: &[ModuleMap]) -> bool {
    let f = m.field();
    let mut nil = Vec::new();
    for phi in basis {
        // The eigenvalue is common to all blocks, so test the full map.
        let full = Matrix::block_diag(f, &phi.blocks);
        let Some(l) = single_eigenvalue(&full) else {
            return false;
        };
        nil.push(phi.shift(&l));
    }
    let len = nil.first().map_or(0, |x| x.flatten().len());
    let mut j = Echelon::new(f, len);
    let mut jb = Vec::new();
    for x in &nil {
        if j.insert(&x.flatten()) {
            jb.push(x.clone());
        }
    }
    if j.rank() + 1 != basis.len() {
        return false;
    }
    // J is closed under composition and nilpotent.
    let mut power = jb.clone();
    for _ in 0..=m.dim() {
        if power.is_empty() {
            return true;
        }
        let mut e = Echelon::new(f, len);
        let mut next = Vec::new();
        for x in &power {
            for y in &jb {
                let p = x.compose(y);
                let pf = p.flatten();
                if !j.contains(&pf) {
                    return false;
                }
                if e.insert(&pf) {
                    next.push(p);
                }
            }
        }
        power = next;
    }
    false
}

enum Split {
    Local,
    Pieces(Vec<Matrix>, Vec<Matrix>),
}

fn try_split(m: &Module, rng: &mut ChaCha8Rng) -> Result<Split> {
    let basis = hom_basis(m, m)?;
    if basis.len() <= 1 {
        return Ok(Split::Local);
    }
    let dim = m.dim();
    for phi in &basis {
        if let Some((k, i)) = fitting(m, phi) {
            return Ok(Split::Pieces(k, i));
        }
        for l in eigen_candidates(phi, dim) {
            if let Some((k, i)) = fitting(m, &phi.shift(&l)) {
                return Ok(Split::Pieces(k, i));
            }
        }
    }
    for _ in 0..RANDOM_TRIES {
        let phi = random_combination(m.field(), &basis, rng);
        for l in std::iter::once(m.field().zero()).chain(eigen_candidates(&phi, dim)) {
            if let Some((k, i)) = fitting(m, &phi.shift(&l)) {
                return Ok(Split::Pieces(k, i));
            }
        }
    }
    if certify_local(m, &basis) {
        Ok(Split::Local)
    } else {
        Err(Error::DecompositionFailure(format!(
            "no splitting endomorphism found and locality not certified (dim {dim})"
        )))
    }
}

/// Splits `m` into indecomposables, returning each piece with its inclusion and projection.
pub fn decompose_with_maps(m: &Module, seed: u64) -> Result<Vec<Summand>> {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pieces: Vec<(Module, Vec<Matrix>)> = Vec::new();
    let id: Vec<Matrix> = m.dims.iter().map(|&d| Matrix::identity(f, d)).collect();
    let mut stack = vec![(m.clone(), id)];
    while let Some((x, b)) = stack.pop() {
        if x.is_zero() {
            continue;
        }
        match try_split(&x, &mut rng)? {
            Split::Local => pieces.push((x, b)),
            Split::Pieces(k, i) => {
                let (km, _) = x.submodule(&k);
                let (im, _) = x.submodule(&i);
                let kb: Vec<Matrix> = b.iter().zip(&k).map(|(p, q)| p.mul(q)).collect();
                let ib: Vec<Matrix> = b.iter().zip(&i).map(|(p, q)| p.mul(q)).collect();
                // Pushed in reverse so pieces come out in a stable order.
                stack.push((im, ib));
                stack.push((km, kb));
            }
        }
    }
    let n = m.n();
    let mut projs: Vec<Vec<Matrix>> = vec![Vec::new(); pieces.len()];
    for v in 0..n {
        if m.dims[v] == 0 {
            for (pi, (p, _)) in pieces.iter().enumerate() {
                projs[pi].push(Matrix::zeros(f, p.dims[v], 0));
            }
            continue;
        }
        let mut full = Matrix::zeros(f, m.dims[v], 0);
        for (_, b) in &pieces {
            full = full.hstack(&b[v]);
        }
        let inv = full.inverse().expect("pieces span the module");
        let mut row = 0;
        for (pi, (p, _)) in pieces.iter().enumerate() {
            let rows: Vec<usize> = (row..row + p.dims[v]).collect();
            projs[pi].push(inv.select_rows(&rows));
            row += p.dims[v];
        }
    }
    Ok(pieces
        .into_iter()
        .zip(projs)
        .map(|((module, b), p)| Summand {
            module,
            incl: ModuleMap { blocks: b },
            proj: ModuleMap { blocks: p },
        })
        .collect())
}

/// Krull–Schmidt decomposition with isomorphic pieces grouped.
pub fn decompose_seeded(m: &Module, seed: u64) -> Result<Vec<(Module, usize)>> {
    let pieces = decompose_with_maps(m, seed)?;
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for s in pieces {
        match groups
            .iter_mut()
            .find(|(g, _)| is_isomorphic_seeded(g, &s.module, seed).is_some())
        {
            Some(g) => g.1 += 1,
            None => groups.push((s.module, 1)),
        }
    }
    Ok(groups)
}

pub fn decompose(m: &Module) -> Result<Vec<(Module, usize)>> {
    decompose_seeded(m, 0)
}

const EXHAUSTIVE_CAP: u64 = 4096;

/// An isomorphism `m -> n` if one exists.
pub fn is_isomorphic_seeded(m: &Module, n: &Module, seed: u64) -> Option<ModuleMap> {
    if m.dims != n.dims || super::check_same(m, n).is_err() {
        return None;
    }
    if m.is_zero() {
        return Some(ModuleMap::zero(m, n));
    }
    let basis = hom_basis(m, n).ok()?;
    if basis.is_empty() {
        return None;
    }
    if let Some(b) = basis.iter().find(|b| b.is_iso()) {
        return Some(b.clone());
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES * 2 {
        let c = random_combination(f, &basis, &mut rng);
        if c.is_iso() {
            return Some(c);
        }
    }
    if let Field::Prime(p) = f {
        let total = (p as u128).checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
        if total <= EXHAUSTIVE_CAP as u128 {
            for code in 0..total as u64 {
                let mut c = code;
                let mut acc = basis[0].scale(&f.zero());
                for b in &basis {
                    acc = acc.add(&b.scale(&f.int((c % p) as i64)));
                    c /= p;
                }
                if acc.is_iso() {
                    return Some(acc);
                }
            }
        }
    }
    None
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Option<ModuleMap> {
    is_isomorphic_seeded(m, n, 0)
}
