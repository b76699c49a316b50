//! Finite-dimensional right modules as representations: one vector space per
//! vertex and one matrix per radical basis element.

mod decompose;
mod hom;
mod present;
mod torsion;

use std::sync::Arc;

use crate::algebra::{same_algebra, BasicAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

pub use decompose::{decompose, decompose_seeded, decompose_with_maps, is_isomorphic, is_isomorphic_seeded, Summand};
pub use hom::{hom_basis, hom_dim, map_coordinates};
pub use present::{
    ar_translate, ext1_dim, is_projective, k_dual, min_proj_presentation, projective_cover, syzygy, top_dims,
    transpose, ProjPresentation,
};
pub use torsion::{
    brick_shrink, filt_member, in_fac, in_perp_pair, in_perp_pair_with, in_wide, is_brick, torsion_part,
    trace_basis, TorsionPart,
};

#[derive(Clone, Debug)]
pub struct Module {
    alg: Arc<BasicAlgebra>,
    dims: Vec<usize>,
    acts: Vec<Matrix>,
}

impl PartialEq for Module {
    fn eq(&self, o: &Self) -> bool {
        same_algebra(&self.alg, &o.alg) && self.dims == o.dims && self.acts == o.acts
    }
}

impl Eq for Module {}

/// A module homomorphism as one matrix per vertex (target rows, source columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

impl ModuleMap {
    pub fn zero(src: &Module, dst: &Module) -> Self {
        let f = src.field();
        ModuleMap {
            blocks: (0..src.n()).map(|v| Matrix::zeros(f, dst.dims[v], src.dims[v])).collect(),
        }
    }

    pub fn identity(m: &Module) -> Self {
        let f = m.field();
        ModuleMap {
            blocks: m.dims.iter().map(|&d| Matrix::identity(f, d)).collect(),
        }
    }

    /// `self ∘ g` (apply `g` first).
    pub fn compose(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        Some(ModuleMap {
            blocks: self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?,
        })
    }

    /// Flattened coordinates (all blocks row-major, concatenated).
    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.data().iter().cloned()).collect()
    }

    /// `self - c * id` for endomorphisms.
    pub fn shift(&self, c: &Scalar) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().map(|b| b.shift(c)).collect(),
        }
    }

    /// Whether the map commutes with every generator action.
    pub fn is_valid(&self, src: &Module, dst: &Module) -> bool {
        if self.blocks.len() != src.n() {
            return false;
        }
        for v in 0..src.n() {
            let b = &self.blocks[v];
            if b.rows != dst.dims[v] || b.cols != src.dims[v] {
                return false;
            }
        }
        src.alg.generators().iter().all(|&g| {
            let (s, t) = src.alg.peirce(g);
            self.blocks[t].mul(src.act(g)) == dst.act(g).mul(&self.blocks[s])
        })
    }
}

/// Kernel, image and cokernel of a map with their canonical maps.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub kernel: Module,
    pub kernel_incl: ModuleMap,
    pub image: Module,
    pub coimage: ModuleMap,
    pub image_incl: ModuleMap,
    pub cokernel: Module,
    pub coker_proj: ModuleMap,
}

impl Module {
    /// Builds a module from dimensions and one action matrix per radical basis
    /// element, checking every structure-constant identity.
    pub fn new(alg: Arc<BasicAlgebra>, dims: Vec<usize>, acts: Vec<Matrix>) -> Result<Self> {
        let m = Module { alg, dims, acts };
        m.validate()?;
        Ok(m)
    }

    fn new_unchecked(alg: Arc<BasicAlgebra>, dims: Vec<usize>, acts: Vec<Matrix>) -> Self {
        let m = Module { alg, dims, acts };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// Builds a module from generator (arrow) matrices; other actions are derived.
    pub fn from_generators(alg: Arc<BasicAlgebra>, dims: Vec<usize>, gens: Vec<Matrix>) -> Result<Self> {
        let f = alg.field();
        let n = alg.n();
        if dims.len() != n || gens.len() != alg.generators().len() {
            return Err(Error::InvariantViolation("wrong number of dimensions or generator matrices".into()));
        }
        for (&g, m) in alg.generators().iter().zip(&gens) {
            let (s, t) = alg.peirce(g);
            if m.rows != dims[t] || m.cols != dims[s] {
                return Err(Error::InvariantViolation(format!(
                    "matrix for {} must be {}x{}",
                    alg.basis()[g].name, dims[t], dims[s]
                )));
            }
        }
        let mut acts = Vec::new();
        for (ri, b) in alg.radical().enumerate() {
            let (s, t) = alg.peirce(b);
            let mut acc = Matrix::zeros(f, dims[t], dims[s]);
            for (c, w) in &alg.words()[ri] {
                let mut m = Matrix::identity(f, dims[s]);
                for &gi in w {
                    m = gens[gi].mul(&m);
                }
                acc = acc.add(&m.scale(c));
            }
            acts.push(acc);
        }
        Module::new(alg, dims, acts)
    }

    fn validate(&self) -> Result<()> {
        let a = &self.alg;
        let n = a.n();
        let bad = |m: String| Err(Error::InvariantViolation(m));
        if self.dims.len() != n || self.acts.len() != a.dim() - n {
            return bad("module data does not match the algebra".into());
        }
        for b in a.radical() {
            let (s, t) = a.peirce(b);
            let m = &self.acts[b - n];
            if m.rows != self.dims[t] || m.cols != self.dims[s] {
                return bad(format!("action of {} has the wrong shape", a.basis()[b].name));
            }
        }
        for i in a.radical() {
            for j in a.radical() {
                let (_, t) = a.peirce(i);
                let (s2, _) = a.peirce(j);
                if t != s2 {
                    continue;
                }
                let lhs = self.act(j).mul(self.act(i));
                let (s, _) = a.peirce(i);
                let (_, t2) = a.peirce(j);
                let mut rhs = Matrix::zeros(a.field(), self.dims[t2], self.dims[s]);
                for (k, c) in a.table_entry(i, j) {
                    rhs = rhs.add(&self.act(*k).scale(c));
                }
                if lhs != rhs {
                    return bad(format!(
                        "action violates {} * {}",
                        a.basis()[i].name,
                        a.basis()[j].name
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Arc<BasicAlgebra>) -> Self {
        let f = alg.field();
        let dims = vec![0; alg.n()];
        let acts = alg.radical().map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module::new_unchecked(alg.clone(), dims, acts)
    }

    pub fn simple(alg: &Arc<BasicAlgebra>, v: usize) -> Self {
        let f = alg.field();
        let mut dims = vec![0; alg.n()];
        dims[v] = 1;
        let acts = alg
            .radical()
            .map(|b| {
                let (s, t) = alg.peirce(b);
                Matrix::zeros(f, dims[t], dims[s])
            })
            .collect();
        Module::new_unchecked(alg.clone(), dims, acts)
    }

    /// The indecomposable projective `P_v = e_v A`.
    pub fn projective(alg: &Arc<BasicAlgebra>, v: usize) -> Self {
        let f = alg.field();
        let n = alg.n();
        let spaces: Vec<Vec<usize>> = (0..n).map(|t| alg.peirce_basis(v, t)).collect();
        let dims: Vec<usize> = spaces.iter().map(Vec::len).collect();
        let mut pos = vec![usize::MAX; alg.dim()];
        for sp in &spaces {
            for (i, &b) in sp.iter().enumerate() {
                pos[b] = i;
            }
        }
        let acts = alg
            .radical()
            .map(|r| {
                let (s, t) = alg.peirce(r);
                let mut m = Matrix::zeros(f, dims[t], dims[s]);
                for (col, &b) in spaces[s].iter().enumerate() {
                    for (k, c) in alg.table_entry(b, r) {
                        m.set(pos[*k], col, c.clone());
                    }
                }
                m
            })
            .collect();
        Module::new_unchecked(alg.clone(), dims, acts)
    }

    /// The regular module `A_A = P_1 ⊕ ... ⊕ P_n`.
    pub fn regular(alg: &Arc<BasicAlgebra>) -> Self {
        let ps: Vec<Module> = (0..alg.n()).map(|v| Module::projective(alg, v)).collect();
        Module::direct_sum_of(alg, &ps)
    }

    pub fn direct_sum_of(alg: &Arc<BasicAlgebra>, ms: &[Module]) -> Module {
        let f = alg.field();
        let n = alg.n();
        let dims: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
        let acts = alg
            .radical()
            .map(|b| {
                let blocks: Vec<Matrix> = ms.iter().map(|m| m.act(b).clone()).collect();
                Matrix::block_diag(f, &blocks)
            })
            .collect();
        Module::new_unchecked(alg.clone(), dims, acts)
    }

    pub fn direct_sum(&self, o: &Module) -> Module {
        Module::direct_sum_of(&self.alg, &[self.clone(), o.clone()])
    }

    /// `self^k`.
    pub fn power(&self, k: usize) -> Module {
        Module::direct_sum_of(&self.alg, &vec![self.clone(); k])
    }

    /// Inclusions and projections of the summands of `⊕ ms`.
    pub fn sum_maps(ms: &[Module]) -> (Vec<ModuleMap>, Vec<ModuleMap>) {
        let Some(first) = ms.first() else {
            return (Vec::new(), Vec::new());
        };
        let f = first.field();
        let n = first.n();
        let tot: Vec<usize> = (0..n).map(|v| ms.iter().map(|m| m.dims[v]).sum()).collect();
        let mut off = vec![0; n];
        let mut incs = Vec::new();
        let mut projs = Vec::new();
        for m in ms {
            let mut inc = Vec::new();
            let mut proj = Vec::new();
            for v in 0..n {
                let mut i = Matrix::zeros(f, tot[v], m.dims[v]);
                let mut p = Matrix::zeros(f, m.dims[v], tot[v]);
                for k in 0..m.dims[v] {
                    i.set(off[v] + k, k, f.one());
                    p.set(k, off[v] + k, f.one());
                }
                off[v] += m.dims[v];
                inc.push(i);
                proj.push(p);
            }
            incs.push(ModuleMap { blocks: inc });
            projs.push(ModuleMap { blocks: proj });
        }
        (incs, projs)
    }

    pub fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action matrix of radical basis element `b` (a basis index).
    pub fn act(&self, b: usize) -> &Matrix {
        &self.acts[b - self.alg.n()]
    }

    pub fn acts(&self) -> &[Matrix] {
        &self.acts
    }

    /// Image of `x` under the action of an algebra element, for `x` in the space at `v`.
    pub fn act_elem(&self, x: &[Scalar], v: usize, elem: &[Scalar]) -> Vec<Vec<Scalar>> {
        let f = self.field();
        let mut out: Vec<Vec<Scalar>> = self.dims.iter().map(|&d| vec![f.zero(); d]).collect();
        for (b, c) in elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (s, t) = self.alg.peirce(b);
            if s != v {
                continue;
            }
            let y = if b < self.n() {
                x.to_vec()
            } else {
                self.act(b).mul_vec(x)
            };
            for (o, yi) in out[t].iter_mut().zip(y) {
                *o = o.add(&yi.mul(c));
            }
        }
        out
    }

    /// The module map `P_v -> self` sending `e_v` to `x` (a vector in the space at `v`).
    pub fn map_from_projective(&self, v: usize, x: &[Scalar]) -> ModuleMap {
        let f = self.field();
        let a = &self.alg;
        let blocks = (0..self.n())
            .map(|t| {
                let basis = a.peirce_basis(v, t);
                let mut m = Matrix::zeros(f, self.dims[t], basis.len());
                for (col, &b) in basis.iter().enumerate() {
                    let y = if b < self.n() { x.to_vec() } else { self.act(b).mul_vec(x) };
                    for (r, yi) in y.into_iter().enumerate() {
                        m.set(r, col, yi);
                    }
                }
                m
            })
            .collect();
        ModuleMap { blocks }
    }

    /// Submodule spanned per vertex by the columns of `basis[v]` (assumed
    /// independent and invariant); returns the module and its inclusion.
    pub fn submodule(&self, basis: &[Matrix]) -> (Module, ModuleMap) {
        let f = self.field();
        let dims: Vec<usize> = basis.iter().map(|b| b.cols).collect();
        let acts = self
            .alg
            .radical()
            .map(|r| {
                let (s, t) = self.alg.peirce(r);
                if dims[s] == 0 || dims[t] == 0 {
                    return Matrix::zeros(f, dims[t], dims[s]);
                }
                let img = self.act(r).mul(&basis[s]);
                basis[t].solve_matrix(&img).expect("subspace is not invariant")
            })
            .collect();
        let sub = Module::new_unchecked(self.alg.clone(), dims, acts);
        (sub, ModuleMap { blocks: basis.to_vec() })
    }

    /// Quotient by the submodule spanned by `basis[v]`, with the projection.
    pub fn quotient(&self, basis: &[Matrix]) -> (Module, ModuleMap) {
        let f = self.field();
        let n = self.n();
        let mut comps = Vec::new();
        let mut coords = Vec::new();
        for v in 0..n {
            let units = basis[v].complement_units();
            let mut c = Matrix::zeros(f, self.dims[v], units.len());
            for (j, &u) in units.iter().enumerate() {
                c.set(u, j, f.one());
            }
            let full = basis[v].hstack(&c);
            let inv = full.inverse().expect("complement completes a basis");
            let rows: Vec<usize> = (basis[v].cols..self.dims[v]).collect();
            coords.push(inv.select_rows(&rows));
            comps.push(c);
        }
        let dims: Vec<usize> = comps.iter().map(|c| c.cols).collect();
        let acts = self
            .alg
            .radical()
            .map(|r| {
                let (s, t) = self.alg.peirce(r);
                coords[t].mul(&self.act(r).mul(&comps[s]))
            })
            .collect();
        let q = Module::new_unchecked(self.alg.clone(), dims, acts);
        (q, ModuleMap { blocks: coords })
    }

    /// Smallest submodule containing the given vectors (per vertex).
    pub fn generated_submodule(&self, gens: &[Vec<Vec<Scalar>>]) -> Vec<Matrix> {
        let f = self.field();
        let n = self.n();
        let mut cols: Vec<Vec<Vec<Scalar>>> = gens.to_vec();
        for v in 0..n {
            for r in self.alg.radical() {
                let (s, t) = self.alg.peirce(r);
                if s != v {
                    continue;
                }
                let imgs: Vec<Vec<Scalar>> = gens[v].iter().map(|x| self.act(r).mul_vec(x)).collect();
                cols[t].extend(imgs);
            }
        }
        (0..n)
            .map(|v| {
                if cols[v].is_empty() || self.dims[v] == 0 {
                    Matrix::zeros(f, self.dims[v], 0)
                } else {
                    Matrix::from_cols(f, self.dims[v], &cols[v]).col_space()
                }
            })
            .collect()
    }

    pub fn factorize(&self, target: &Module, f: &ModuleMap) -> Factorization {
        let fl = self.field();
        let n = self.n();
        let ker_basis: Vec<Matrix> = (0..n)
            .map(|v| {
                let ns = f.blocks[v].nullspace();
                Matrix::from_cols(fl, self.dims[v], &ns)
            })
            .collect();
        let img_basis: Vec<Matrix> = (0..n).map(|v| f.blocks[v].col_space()).collect();
        let (kernel, kernel_incl) = self.submodule(&ker_basis);
        let (image, image_incl) = target.submodule(&img_basis);
        let coimage = ModuleMap {
            blocks: (0..n)
                .map(|v| {
                    if img_basis[v].cols == 0 {
                        Matrix::zeros(fl, 0, self.dims[v])
                    } else {
                        img_basis[v].solve_matrix(&f.blocks[v]).expect("image contains the map")
                    }
                })
                .collect(),
        };
        let (cokernel, coker_proj) = target.quotient(&img_basis);
        Factorization {
            kernel,
            kernel_incl,
            image,
            coimage,
            image_incl,
            cokernel,
            coker_proj,
        }
    }

    /// Radical per vertex: span of the images of all radical actions.
    pub fn radical_basis(&self) -> Vec<Matrix> {
        let f = self.field();
        (0..self.n())
            .map(|v| {
                let mut cols = Vec::new();
                for r in self.alg.radical() {
                    let (s, t) = self.alg.peirce(r);
                    if t == v && self.dims[s] > 0 {
                        cols.extend(self.act(r).col_vecs());
                    }
                }
                if cols.is_empty() || self.dims[v] == 0 {
                    Matrix::zeros(f, self.dims[v], 0)
                } else {
                    Matrix::from_cols(f, self.dims[v], &cols).col_space()
                }
            })
            .collect()
    }

    /// Moves the module to a structurally equal algebra handle.
    pub fn rebase(&self, alg: &Arc<BasicAlgebra>) -> Result<Module> {
        if !same_algebra(&self.alg, alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module {
            alg: alg.clone(),
            dims: self.dims.clone(),
            acts: self.acts.clone(),
        })
    }

    /// Conjugates by the given per-vertex change of basis (new = P * old).
    pub fn conjugate(&self, p: &[Matrix]) -> Module {
        let inv: Vec<Matrix> = p.iter().map(|m| m.inverse().expect("invertible change of basis")).collect();
        let acts = self
            .alg
            .radical()
            .map(|r| {
                let (s, t) = self.alg.peirce(r);
                p[t].mul(self.act(r)).mul(&inv[s])
            })
            .collect();
        Module::new_unchecked(self.alg.clone(), self.dims.clone(), acts)
    }
}

pub(crate) fn check_same(a: &Module, b: &Module) -> Result<()> {
    if same_algebra(&a.alg, &b.alg) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

#[cfg(test)]
mod tests;
