//! Maps between direct sums of indecomposable projectives, written as
//! matrices of algebra elements.
//!
//! A map `⊕ P_{c_j} -> ⊕ P_{r_i}` has entry `(i, j)` in `e_{r_i} A e_{c_j}`,
//! acting by left multiplication, so composition is the ordinary matrix
//! product with entries multiplied in the algebra.

use std::sync::Arc;

use crate::algebra::{BasicAlgebra, Elem};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::module::{Module, ModuleMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMat {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<Elem>>,
}

impl PMat {
    pub fn zero(alg: &BasicAlgebra, rows: &[usize], cols: &[usize]) -> Self {
        PMat {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries: vec![vec![alg.zero(); cols.len()]; rows.len()],
        }
    }

    pub fn identity(alg: &BasicAlgebra, verts: &[usize]) -> Self {
        let mut m = PMat::zero(alg, verts, verts);
        for (i, &v) in verts.iter().enumerate() {
            m.entries[i][i] = alg.unit(v);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|x| x.iter().all(Scalar::is_zero))
    }

    /// `self ∘ o`.
    pub fn mul(&self, alg: &BasicAlgebra, o: &PMat) -> PMat {
        assert_eq!(self.cols, o.rows, "incompatible projective maps");
        let mut r = PMat::zero(alg, &self.rows, &o.cols);
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.entries[i][k];
                if alg.is_zero(a) {
                    continue;
                }
                for j in 0..o.ncols() {
                    let b = &o.entries[k][j];
                    if alg.is_zero(b) {
                        continue;
                    }
                    let p = alg.mul(a, b);
                    r.entries[i][j] = alg.add(&r.entries[i][j], &p);
                }
            }
        }
        r
    }

    pub fn add(&self, alg: &BasicAlgebra, o: &PMat) -> PMat {
        assert_eq!((&self.rows, &self.cols), (&o.rows, &o.cols));
        let mut r = self.clone();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                r.entries[i][j] = alg.add(&self.entries[i][j], &o.entries[i][j]);
            }
        }
        r
    }

    pub fn scale(&self, alg: &BasicAlgebra, c: &Scalar) -> PMat {
        let mut r = self.clone();
        for row in r.entries.iter_mut() {
            for x in row.iter_mut() {
                *x = alg.scale(c, x);
            }
        }
        r
    }

    pub fn neg(&self, alg: &BasicAlgebra) -> PMat {
        self.scale(alg, &alg.field().int(-1))
    }

    pub fn sub(&self, alg: &BasicAlgebra, o: &PMat) -> PMat {
        self.add(alg, &o.neg(alg))
    }

    /// The transposed matrix, read over the opposite algebra.
    pub fn transpose(&self) -> PMat {
        let entries = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        PMat {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PMat {
        PMat {
            rows: rows.iter().map(|&i| self.rows[i]).collect(),
            cols: cols.iter().map(|&j| self.cols[j]).collect(),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// `[self | o]`.
    pub fn hcat(&self, o: &PMat) -> PMat {
        assert_eq!(self.rows, o.rows);
        let mut r = self.clone();
        r.cols.extend(&o.cols);
        for (row, orow) in r.entries.iter_mut().zip(&o.entries) {
            row.extend(orow.iter().cloned());
        }
        r
    }

    /// `[self ; o]`.
    pub fn vcat(&self, o: &PMat) -> PMat {
        assert_eq!(self.cols, o.cols);
        let mut r = self.clone();
        r.rows.extend(&o.rows);
        r.entries.extend(o.entries.iter().cloned());
        r
    }

    pub fn block_diag(alg: &BasicAlgebra, blocks: &[PMat]) -> PMat {
        let rows: Vec<usize> = blocks.iter().flat_map(|b| b.rows.clone()).collect();
        let cols: Vec<usize> = blocks.iter().flat_map(|b| b.cols.clone()).collect();
        let mut m = PMat::zero(alg, &rows, &cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    m.entries[r0 + i][c0 + j] = b.entries[i][j].clone();
                }
            }
            r0 += b.nrows();
            c0 += b.ncols();
        }
        m
    }

    /// Whether some entry has a nonzero idempotent coefficient (an invertible component).
    pub fn has_unit(&self) -> bool {
        self.find_unit().is_some()
    }

    pub fn find_unit(&self) -> Option<(usize, usize)> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if self.rows[i] == self.cols[j] && !self.entries[i][j][self.rows[i]].is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn to_string(&self, alg: &BasicAlgebra) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| alg.element_to_string(x)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// `⊕ P_v` over the listed vertices.
pub fn proj_sum(alg: &Arc<BasicAlgebra>, verts: &[usize]) -> Module {
    let ps: Vec<Module> = verts.iter().map(|&v| Module::projective(alg, v)).collect();
    Module::direct_sum_of(alg, &ps)
}

/// Vector of `⊕ P_{rows}` at vertex `a` whose `i`-th component is `col[i] ∈ e_{rows[i]} A e_a`.
fn column_vector(alg: &BasicAlgebra, rows: &[usize], a: usize, col: &[Elem]) -> Vec<Scalar> {
    let mut v = Vec::new();
    for (i, &r) in rows.iter().enumerate() {
        for b in alg.peirce_basis(r, a) {
            v.push(col[i][b].clone());
        }
    }
    v
}

/// The module map `⊕ P_{cols} -> ⊕ P_{rows}` of a projective matrix.
pub fn pmat_to_map(alg: &Arc<BasicAlgebra>, m: &PMat) -> ModuleMap {
    let f = alg.field();
    let dst = proj_sum(alg, &m.rows);
    let mut blocks: Vec<Matrix> = (0..alg.n()).map(|t| Matrix::zeros(f, dst.dims()[t], 0)).collect();
    for (j, &a) in m.cols.iter().enumerate() {
        let col: Vec<Elem> = (0..m.nrows()).map(|i| m.entries[i][j].clone()).collect();
        let x = column_vector(alg, &m.rows, a, &col);
        let piece = dst.map_from_projective(a, &x);
        for t in 0..alg.n() {
            blocks[t] = blocks[t].hstack(&piece.blocks[t]);
        }
    }
    ModuleMap { blocks }
}

/// Reads a vector of `⊕ P_{rows}` at vertex `a` back as a column of algebra elements.
pub fn vector_to_column(alg: &BasicAlgebra, rows: &[usize], a: usize, x: &[Scalar]) -> Vec<Elem> {
    let mut out = Vec::new();
    let mut k = 0;
    for &r in rows {
        let mut e = alg.zero();
        for b in alg.peirce_basis(r, a) {
            e[b] = x[k].clone();
            k += 1;
        }
        out.push(e);
    }
    out
}

/// Cokernel of a projective matrix as a module.
pub fn pmat_cokernel(alg: &Arc<BasicAlgebra>, m: &PMat) -> (Module, ModuleMap) {
    let dst = proj_sum(alg, &m.rows);
    let map = pmat_to_map(alg, m);
    let img: Vec<Matrix> = map.blocks.iter().map(Matrix::col_space).collect();
    dst.quotient(&img)
}
