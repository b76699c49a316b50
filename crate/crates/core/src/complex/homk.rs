//! Morphisms in the homotopy category of complexes of projectives.

use std::collections::BTreeMap;

use crate::algebra::BasicAlgebra;
use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, Matrix};
use crate::proj::PMat;

use super::{ProjComplex, TwoTermComplex};

/// Components `f^i: X^i -> Y^{i + shift}`; absent components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub shift: i32,
    pub comps: BTreeMap<i32, PMat>,
}

impl ChainMap {
    pub fn comp(&self, deg: i32) -> Option<&PMat> {
        self.comps.get(&deg)
    }

    pub fn zero(shift: i32) -> Self {
        ChainMap {
            shift,
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(alg: &BasicAlgebra, x: &ProjComplex) -> Self {
        let comps = (x.lo..=x.hi())
            .filter(|&d| !x.term(d).is_empty())
            .map(|d| (d, PMat::identity(alg, x.term(d))))
            .collect();
        ChainMap { shift: 0, comps }
    }

    /// Whether `d_Y f = (-1)^shift f d_X` holds degreewise.
    pub fn is_chain_map(&self, alg: &BasicAlgebra, x: &ProjComplex, y: &ProjComplex) -> bool {
        let hk = hom_complex(alg, x, y, self.shift);
        let v = hk.to_vec(self);
        hk.differential(alg, x, y).mul_vec(&v).iter().all(Scalar::is_zero)
    }
}

/// `u ∘ f`.
pub fn compose(alg: &BasicAlgebra, u: &ChainMap, f: &ChainMap) -> ChainMap {
    let mut comps = BTreeMap::new();
    for (&i, fi) in &f.comps {
        if let Some(ui) = u.comps.get(&(i + f.shift)) {
            comps.insert(i, ui.mul(alg, fi));
        }
    }
    ChainMap {
        shift: u.shift + f.shift,
        comps,
    }
}

#[derive(Clone, Debug)]
struct Cell {
    offset: usize,
    basis: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Block {
    deg: i32,
    rows: Vec<usize>,
    cols: Vec<usize>,
    cells: Vec<Vec<Cell>>,
}

/// Coordinates on the graded space `∏_i Hom(X^i, Y^{i+k})`.
#[derive(Clone, Debug)]
struct Layout {
    shift: i32,
    blocks: Vec<Block>,
    len: usize,
}

impl Layout {
    fn new(alg: &BasicAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> Layout {
        let mut blocks = Vec::new();
        let mut off = 0;
        for deg in x.lo..=x.hi() {
            let cols = x.term(deg).to_vec();
            let rows = y.term(deg + k).to_vec();
            if cols.is_empty() || rows.is_empty() {
                continue;
            }
            let cells = rows
                .iter()
                .map(|&r| {
                    cols.iter()
                        .map(|&c| {
                            let basis = alg.peirce_basis(r, c);
                            let cell = Cell { offset: off, basis };
                            off += cell.basis.len();
                            cell
                        })
                        .collect()
                })
                .collect();
            blocks.push(Block { deg, rows, cols, cells });
        }
        Layout {
            shift: k,
            blocks,
            len: off,
        }
    }

    fn block(&self, deg: i32) -> Option<&Block> {
        self.blocks.iter().find(|b| b.deg == deg)
    }

    fn to_vec(&self, field: Field, f: &ChainMap) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.len];
        for b in &self.blocks {
            let Some(m) = f.comps.get(&b.deg) else { continue };
            assert_eq!((&m.rows, &m.cols), (&b.rows, &b.cols), "chain map shape mismatch");
            for (i, row) in b.cells.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    for (t, &e) in cell.basis.iter().enumerate() {
                        v[cell.offset + t] = m.entries[i][j][e].clone();
                    }
                }
            }
        }
        v
    }

    fn from_vec(&self, alg: &BasicAlgebra, v: &[Scalar]) -> ChainMap {
        let mut comps = BTreeMap::new();
        for b in &self.blocks {
            let mut m = PMat::zero(alg, &b.rows, &b.cols);
            for (i, row) in b.cells.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    for (t, &e) in cell.basis.iter().enumerate() {
                        m.entries[i][j][e] = v[cell.offset + t].clone();
                    }
                }
            }
            comps.insert(b.deg, m);
        }
        ChainMap {
            shift: self.shift,
            comps,
        }
    }

    /// Adds `c * x` into the cell `(i, j)` of the block at `deg`.
    fn accumulate(&self, out: &mut [Scalar], deg: i32, i: usize, j: usize, c: &Scalar, x: &[Scalar]) {
        let b = self.block(deg).expect("target block exists");
        let cell = &b.cells[i][j];
        for (t, &e) in cell.basis.iter().enumerate() {
            if !x[e].is_zero() {
                out[cell.offset + t] = out[cell.offset + t].add(&c.mul(&x[e]));
            }
        }
    }
}

/// The matrix of `D(f) = d_Y f - (-1)^k f d_X` from degree-`k` maps to degree-`k+1` maps.
fn hom_differential(alg: &BasicAlgebra, x: &ProjComplex, y: &ProjComplex, src: &Layout, dst: &Layout) -> Matrix {
    let field = alg.field();
    let k = src.shift;
    let sign = if k % 2 == 0 { field.int(-1) } else { field.one() };
    let one = field.one();
    let mut cols = Vec::with_capacity(src.len);
    for b in &src.blocks {
        let i = b.deg;
        for (r, row) in b.cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                for &e in &cell.basis {
                    let mut out = vec![field.zero(); dst.len];
                    let unit = alg.unit(e);
                    // d_Y^{i+k} E lives in Hom(X^i, Y^{i+k+1}).
                    if let Some(dy) = y.diff(i + k) {
                        for r2 in 0..dy.nrows() {
                            let p = alg.mul(&dy.entries[r2][r], &unit);
                            if !alg.is_zero(&p) {
                                dst.accumulate(&mut out, i, r2, c, &one, &p);
                            }
                        }
                    }
                    // E d_X^{i-1} lives in Hom(X^{i-1}, Y^{i+k}).
                    if let Some(dx) = x.diff(i - 1) {
                        for c2 in 0..dx.ncols() {
                            let p = alg.mul(&unit, &dx.entries[c][c2]);
                            if !alg.is_zero(&p) {
                                dst.accumulate(&mut out, i - 1, r, c2, &sign, &p);
                            }
                        }
                    }
                    cols.push(out);
                }
            }
        }
    }
    Matrix::from_cols(field, dst.len, &cols)
}

/// `Hom(X, Y[k])` in the homotopy category: cycles modulo boundaries, with
/// chosen cycle representatives of a basis.
#[derive(Clone, Debug)]
pub struct HomK {
    field: Field,
    layout: Layout,
    next: Layout,
    boundaries: Echelon,
    reps: Vec<Vec<Scalar>>,
    alg_dim: usize,
}

impl HomK {
    pub fn shift(&self) -> i32 {
        self.layout.shift
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn to_vec(&self, f: &ChainMap) -> Vec<Scalar> {
        self.layout.to_vec(self.field, f)
    }

    pub fn basis(&self, alg: &BasicAlgebra) -> Vec<ChainMap> {
        debug_assert_eq!(alg.dim(), self.alg_dim);
        self.reps.iter().map(|v| self.layout.from_vec(alg, v)).collect()
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.boundaries.contains(&self.to_vec(f))
    }

    /// Dimension of the span of the classes of the given cycles.
    pub fn class_rank(&self, maps: &[ChainMap]) -> usize {
        let mut e = self.boundaries.clone();
        let base = e.rank();
        for m in maps {
            e.insert(&self.to_vec(m));
        }
        e.rank() - base
    }

    fn differential(&self, alg: &BasicAlgebra, x: &ProjComplex, y: &ProjComplex) -> Matrix {
        hom_differential(alg, x, y, &self.layout, &self.next)
    }
}

pub fn hom_complex(alg: &BasicAlgebra, x: &ProjComplex, y: &ProjComplex, k: i32) -> HomK {
    let field = alg.field();
    let prev = Layout::new(alg, x, y, k - 1);
    let layout = Layout::new(alg, x, y, k);
    let next = Layout::new(alg, x, y, k + 1);
    let z = hom_differential(alg, x, y, &layout, &next).nullspace();
    let mut boundaries = Echelon::new(field, layout.len);
    if prev.len > 0 && layout.len > 0 {
        let b = hom_differential(alg, x, y, &prev, &layout);
        for c in b.col_vecs() {
            boundaries.insert(&c);
        }
    }
    let mut span = boundaries.clone();
    let reps = z.into_iter().filter(|v| span.insert(v)).collect();
    HomK {
        field,
        layout,
        next,
        boundaries,
        reps,
        alg_dim: alg.dim(),
    }
}

/// `Hom(T, T'[k])` for two-term complexes.
pub fn hom_k(alg: &BasicAlgebra, t: &TwoTermComplex, t2: &TwoTermComplex, k: i32) -> HomK {
    hom_complex(alg, &ProjComplex::from_two_term(t), &ProjComplex::from_two_term(t2), k)
}
