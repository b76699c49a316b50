//! Finite-dimensional basic algebras given by structure constants, and their
//! construction from bound quivers.
//!
//! Conventions: right modules, paths compose left to right, and a basis
//! element of Peirce type `(s, t)` satisfies `e_s b e_t = b`, i.e. it is a
//! path from `s` to `t`. The basis lists the idempotents first.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, Matrix};

/// An algebra element as coordinates over the basis.
pub type Elem = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> Self {
        Quiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|&(l, s, t)| Arrow {
                    label: l.to_string(),
                    src: s,
                    dst: t,
                })
                .collect(),
        }
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    src: a.dst,
                    dst: a.src,
                })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.dst] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.dst] -= 1;
                if indeg[a.dst] == 0 {
                    stack.push(a.dst);
                }
            }
        }
        seen == n
    }

    /// Number of paths (including trivial ones) of an acyclic quiver.
    pub fn path_count(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let n = self.vertices.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn from(q: &Quiver, v: usize, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(c) = memo[v] {
                return c;
            }
            let c = 1 + q
                .arrows
                .iter()
                .filter(|a| a.src == v)
                .map(|a| from(q, a.dst, memo))
                .sum::<usize>();
            memo[v] = Some(c);
            c
        }
        Some((0..n).map(|v| from(self, v, &mut memo)).sum())
    }
}

/// A linear combination of parallel paths, each a sequence of arrow indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(field: Field, path: Vec<usize>) -> Self {
        Relation {
            terms: vec![(field.one(), path)],
        }
    }
}

/// The bound quiver an algebra was compiled from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub bound: usize,
    /// Basis index of each arrow.
    pub arrow_basis: Vec<usize>,
    /// All paths up to the bound, largest first, and the reduced ideal rows over them.
    pub paths: Vec<Vec<usize>>,
    pub ideal: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElem {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

pub struct BasicAlgebra {
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElem>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    gens: Vec<usize>,
    words: Vec<Vec<(Scalar, Vec<usize>)>>,
    presentation: Option<Presentation>,
    fingerprint: u64,
    op: OnceLock<Arc<BasicAlgebra>>,
}

impl std::fmt::Debug for BasicAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasicAlgebra")
            .field("field", &self.field)
            .field("vertices", &self.vertices)
            .field("dim", &self.dim())
            .finish()
    }
}

impl PartialEq for BasicAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.fingerprint == o.fingerprint
            && self.field == o.field
            && self.vertices.len() == o.vertices.len()
            && self.basis.iter().map(|b| (b.src, b.dst)).eq(o.basis.iter().map(|b| (b.src, b.dst)))
            && self.table == o.table
    }
}

impl Eq for BasicAlgebra {}

/// Whether two handles denote the same algebra (pointer or table equality).
pub fn same_algebra(a: &BasicAlgebra, b: &BasicAlgebra) -> bool {
    std::ptr::eq(a, b) || a == b
}

impl BasicAlgebra {
    /// Builds an algebra from a structure-constant table. `table[i][j]` lists
    /// the nonzero coefficients of `b_i * b_j`. The first `vertices.len()`
    /// basis elements must be the idempotents.
    pub fn from_table(
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
    ) -> Result<Self> {
        Self::build(field, vertices, basis, table, None)
    }

    fn build(
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElem>,
        table: Vec<Vec<Vec<(usize, Scalar)>>>,
        presentation: Option<Presentation>,
    ) -> Result<Self> {
        let mut h = DefaultHasher::new();
        field.hash(&mut h);
        vertices.len().hash(&mut h);
        for b in &basis {
            (b.src, b.dst).hash(&mut h);
        }
        table.hash(&mut h);
        let mut alg = BasicAlgebra {
            field,
            vertices,
            basis,
            table,
            gens: Vec::new(),
            words: Vec::new(),
            presentation,
            fingerprint: h.finish(),
            op: OnceLock::new(),
        };
        alg.validate()?;
        alg.compute_generators();
        Ok(alg)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of vertices, i.e. of simple modules.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn peirce(&self, b: usize) -> (usize, usize) {
        (self.basis[b].src, self.basis[b].dst)
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Radical basis indices (all non-idempotent basis elements).
    pub fn radical(&self) -> std::ops::Range<usize> {
        self.n()..self.dim()
    }

    /// Basis indices of generators: a complement of rad^2 in rad.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Each radical basis element as a combination of words in the generators
    /// (indices into `generators()`), indexed by radical position.
    pub fn words(&self) -> &[Vec<(Scalar, Vec<usize>)>] {
        &self.words
    }

    pub fn table_entry(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Elem {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit(&self, b: usize) -> Elem {
        let mut v = self.zero();
        v[b] = self.field.one();
        v
    }

    pub fn one(&self) -> Elem {
        let mut v = self.zero();
        for i in 0..self.n() {
            v[i] = self.field.one();
        }
        v
    }

    pub fn is_zero(&self, x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    pub fn scale(&self, c: &Scalar, x: &[Scalar]) -> Elem {
        x.iter().map(|a| a.mul(c)).collect()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        let mut r = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.table[i][j] {
                    r[*k] = r[*k].add(&ab.mul(c));
                }
            }
        }
        r
    }

    /// Basis indices spanning `e_i A e_j`.
    pub fn peirce_basis(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.basis[b].src == i && self.basis[b].dst == j)
            .collect()
    }

    /// `e_i x e_j`.
    pub fn peirce_part(&self, x: &[Scalar], i: usize, j: usize) -> Elem {
        let mut r = self.zero();
        for b in self.peirce_basis(i, j) {
            r[b] = x[b].clone();
        }
        r
    }

    /// Coefficient of the idempotent `e_v`.
    pub fn idem_coeff<'a>(&self, x: &'a [Scalar], v: usize) -> &'a Scalar {
        &x[v]
    }

    /// Inverse of a unit of `e_v A e_v` (an element with nonzero `e_v` coefficient).
    pub fn local_inverse(&self, u: &[Scalar], v: usize) -> Elem {
        let lam = u[v].clone();
        assert!(!lam.is_zero(), "element is not a unit");
        let li = lam.inv();
        // u = lam (e - r) with r radical, so u^{-1} = lam^{-1} (e + r + r^2 + ...).
        let mut r = self.scale(&li.neg(), u);
        r[v] = self.field.zero();
        let mut term = self.unit(v);
        let mut acc = self.unit(v);
        loop {
            term = self.mul(&term, &r);
            if self.is_zero(&term) {
                break;
            }
            acc = self.add(&acc, &term);
        }
        self.scale(&li, &acc)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        let d = self.dim();
        let bad = |m: String| Err(Error::InvariantViolation(m));
        if self.table.len() != d || self.table.iter().any(|r| r.len() != d) {
            return bad("structure table has wrong shape".into());
        }
        for i in 0..n {
            if self.basis[i].src != i || self.basis[i].dst != i {
                return bad(format!("basis element {i} is not the idempotent of vertex {i}"));
            }
        }
        for b in &self.basis {
            if b.src >= n || b.dst >= n {
                return bad(format!("basis element {} has an invalid Peirce type", b.name));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let (s, t) = self.peirce(i);
                let (s2, t2) = self.peirce(j);
                for (k, c) in &self.table[i][j] {
                    if c.is_zero() {
                        return bad("explicit zero in structure table".into());
                    }
                    if t != s2 || self.peirce(*k) != (s, t2) {
                        return bad(format!("product of {} and {} breaks Peirce homogeneity", self.basis[i].name, self.basis[j].name));
                    }
                    if i >= n && j >= n && *k < n {
                        return bad("radical is not closed under products".into());
                    }
                }
            }
        }
        for v in 0..n {
            for j in 0..d {
                let (s, t) = self.peirce(j);
                let left = self.mul(&self.unit(v), &self.unit(j));
                let right = self.mul(&self.unit(j), &self.unit(v));
                let expect_l = if s == v { self.unit(j) } else { self.zero() };
                let expect_r = if t == v { self.unit(j) } else { self.zero() };
                if left != expect_l || right != expect_r {
                    return bad(format!("idempotent e{v} acts incorrectly on {}", self.basis[j].name));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &self.table[i][j];
                for k in 0..d {
                    let mut lhs = self.zero();
                    for (m, c) in ij {
                        for (r, c2) in &self.table[*m][k] {
                            lhs[*r] = lhs[*r].add(&c.mul(c2));
                        }
                    }
                    let mut rhs = self.zero();
                    for (m, c) in &self.table[j][k] {
                        for (r, c2) in &self.table[i][*m] {
                            rhs[*r] = rhs[*r].add(&c.mul(c2));
                        }
                    }
                    if lhs != rhs {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[i].name, self.basis[j].name, self.basis[k].name
                        ));
                    }
                }
            }
        }
        // The radical must be nilpotent.
        let mut power: Vec<Elem> = self.radical().map(|b| self.unit(b)).collect();
        for _ in 0..=d {
            if power.is_empty() {
                return Ok(());
            }
            let mut next = Echelon::new(self.field, d);
            let mut kept = Vec::new();
            for x in &power {
                for g in self.radical() {
                    let p = self.mul(x, &self.unit(g));
                    if next.insert(&p) {
                        kept.push(p);
                    }
                }
            }
            power = kept;
        }
        bad("radical is not nilpotent".into())
    }

    fn compute_generators(&mut self) {
        let d = self.dim();
        let n = self.n();
        let mut rad2 = Echelon::new(self.field, d);
        for i in self.radical() {
            for j in self.radical() {
                let p = self.mul(&self.unit(i), &self.unit(j));
                rad2.insert(&p);
            }
        }
        let mut gens = Vec::new();
        for b in self.radical() {
            if rad2.insert(&self.unit(b)) {
                gens.push(b);
            }
        }
        // Words in the generators, grown by length and pruned to an independent set.
        let mut span = Echelon::new(self.field, d);
        let mut mons: Vec<(Vec<usize>, Elem)> = Vec::new();
        let mut frontier: Vec<(Vec<usize>, Elem)> = Vec::new();
        for (gi, &g) in gens.iter().enumerate() {
            let x = self.unit(g);
            if span.insert(&x) {
                frontier.push((vec![gi], x.clone()));
                mons.push((vec![gi], x));
            }
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (w, x) in &frontier {
                for (gi, &g) in gens.iter().enumerate() {
                    let y = self.mul(x, &self.unit(g));
                    if self.is_zero(&y) || !span.insert(&y) {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(gi);
                    next.push((w2.clone(), y.clone()));
                    mons.push((w2, y));
                }
            }
            frontier = next;
        }
        let cols: Vec<Elem> = mons.iter().map(|(_, x)| x.clone()).collect();
        let m = Matrix::from_cols(self.field, d, &cols);
        let mut words = Vec::new();
        for b in n..d {
            let coeffs = if cols.is_empty() {
                Vec::new()
            } else {
                m.solve(&self.unit(b)).expect("radical is generated by its top")
            };
            let w: Vec<(Scalar, Vec<usize>)> = coeffs
                .into_iter()
                .zip(&mons)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, (w, _))| (c, w.clone()))
                .collect();
            words.push(w);
        }
        self.gens = gens;
        self.words = words;
    }

    /// The opposite algebra, cached so repeated calls share one handle.
    pub fn opposite(self: &Arc<Self>) -> Arc<BasicAlgebra> {
        self.op.get_or_init(|| Arc::new(self.build_opposite())).clone()
    }

    fn build_opposite(&self) -> BasicAlgebra {
        let d = self.dim();
        let mut table = vec![vec![Vec::new(); d]; d];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.table[j][i].clone();
            }
        }
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElem {
                name: reverse_name(&b.name),
                src: b.dst,
                dst: b.src,
            })
            .collect();
        let presentation = self.presentation.as_ref().map(|p| Presentation {
            quiver: p.quiver.reversed(),
            relations: p
                .relations
                .iter()
                .map(|r| Relation {
                    terms: r
                        .terms
                        .iter()
                        .map(|(c, w)| (c.clone(), w.iter().rev().cloned().collect()))
                        .collect(),
                })
                .collect(),
            bound: p.bound,
            arrow_basis: p.arrow_basis.clone(),
            paths: p.paths.iter().map(|w| w.iter().rev().cloned().collect()).collect(),
            ideal: p.ideal.clone(),
        });
        BasicAlgebra::build(self.field, self.vertices.clone(), basis, table, presentation)
            .expect("opposite of a valid algebra is valid")
    }

    /// Gabriel quiver: one arrow per generator, labelled by its basis name.
    pub fn gabriel_quiver(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .gens
                .iter()
                .map(|&g| Arrow {
                    label: self.basis[g].name.clone(),
                    src: self.basis[g].src,
                    dst: self.basis[g].dst,
                })
                .collect(),
        }
    }

    /// Certifies that the algebra is the path algebra of its (acyclic) Gabriel quiver.
    pub fn is_path_algebra(&self) -> bool {
        let q = self.gabriel_quiver();
        q.path_count() == Some(self.dim())
    }

    /// The zero algebra (no vertices).
    pub fn zero_algebra(field: Field) -> BasicAlgebra {
        BasicAlgebra::from_table(field, Vec::new(), Vec::new(), Vec::new()).expect("zero algebra")
    }

    pub fn element_to_string(&self, x: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = &self.basis[i].name;
            if c.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("{c}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Checks the table-level axioms; construction already enforces them.
    pub fn verify(&self) -> Result<()> {
        self.validate()
    }
}

fn reverse_name(name: &str) -> String {
    if name.contains('*') {
        name.split('*').rev().collect::<Vec<_>>().join("*")
    } else {
        name.to_string()
    }
}

fn cmp_paths(q: &Quiver, a: &[usize], b: &[usize], va: usize, vb: usize) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        if a.is_empty() {
            va.cmp(&vb)
        } else {
            let la = a.iter().map(|&x| q.arrows[x].label.as_str());
            let lb = b.iter().map(|&x| q.arrows[x].label.as_str());
            la.cmp(lb)
        }
    })
}

/// Compiles `KQ/I` where `I` is generated by `relations`, certifying
/// finite-dimensionality by requiring every path of length `bound` to reduce to
/// shorter ones.
pub fn compile_bound_quiver(
    field: Field,
    quiver: &Quiver,
    relations: &[Relation],
    bound: usize,
) -> Result<BasicAlgebra> {
    if bound == 0 {
        return Err(Error::MalformedRelation("length bound must be positive".into()));
    }
    let n = quiver.vertices.len();
    for a in &quiver.arrows {
        if a.src >= n || a.dst >= n {
            return Err(Error::MalformedRelation(format!("arrow {} has an undeclared endpoint", a.label)));
        }
    }
    let mut labels: Vec<&str> = quiver.arrows.iter().map(|a| a.label.as_str()).collect();
    labels.sort();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedRelation("duplicate arrow label".into()));
    }
    let ends = |w: &[usize]| -> Option<(usize, usize)> {
        for p in w.windows(2) {
            if quiver.arrows[p[0]].dst != quiver.arrows[p[1]].src {
                return None;
            }
        }
        Some((quiver.arrows[*w.first()?].src, quiver.arrows[*w.last()?].dst))
    };
    let mut rel_ends = Vec::new();
    for r in relations {
        let mut e = None;
        for (_, w) in &r.terms {
            if w.len() < 2 {
                return Err(Error::MalformedRelation("relation paths must have length at least 2".into()));
            }
            let Some(st) = ends(w) else {
                return Err(Error::MalformedRelation("relation path is not composable".into()));
            };
            if e.is_some_and(|x| x != st) {
                return Err(Error::MalformedRelation("relation paths are not parallel".into()));
            }
            e = Some(st);
        }
        if let Some(st) = e {
            rel_ends.push(st);
        } else {
            rel_ends.push((usize::MAX, usize::MAX));
        }
    }
    // Paths: (src, dst, word); trivial paths have empty words.
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|v| (v, v, Vec::new())).collect();
    let mut layer: Vec<(usize, usize, Vec<usize>)> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.src, a.dst, vec![i]))
        .collect();
    for len in 1..=bound {
        paths.extend(layer.iter().cloned());
        if len == bound {
            break;
        }
        let mut next = Vec::new();
        for (s, t, w) in &layer {
            for (i, a) in quiver.arrows.iter().enumerate() {
                if a.src == *t {
                    let mut w2 = w.clone();
                    w2.push(i);
                    next.push((*s, a.dst, w2));
                }
            }
        }
        layer = next;
    }
    // Columns are ordered largest first.
    paths.sort_by(|a, b| cmp_paths(quiver, &b.2, &a.2, b.0, a.0));
    let index: HashMap<(usize, Vec<usize>), usize> = paths
        .iter()
        .enumerate()
        .map(|(i, (s, _, w))| ((*s, w.clone()), i))
        .collect();
    let np = paths.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (r, &(rs, rt)) in relations.iter().zip(&rel_ends) {
        if rs == usize::MAX {
            continue;
        }
        for pre in paths.iter().filter(|p| p.1 == rs) {
            for post in paths.iter().filter(|p| p.0 == rt) {
                let mut row = vec![field.zero(); np];
                let mut any = false;
                for (c, w) in &r.terms {
                    let len = pre.2.len() + w.len() + post.2.len();
                    if len > bound {
                        continue;
                    }
                    let mut full = pre.2.clone();
                    full.extend(w);
                    full.extend(&post.2);
                    let col = index[&(pre.0, full)];
                    row[col] = row[col].add(c);
                    any = true;
                }
                if any && row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let (red, pivots) = if rows.is_empty() {
        (Matrix::zeros(field, 0, np), Vec::new())
    } else {
        Matrix::from_rows(field, rows, np).rref()
    };
    let mut pivot_row = vec![None; np];
    for (r, &p) in pivots.iter().enumerate() {
        pivot_row[p] = Some(r);
    }
    for (i, p) in paths.iter().enumerate() {
        if p.2.len() == bound && bound > 0 && !p.2.is_empty() && pivot_row[i].is_none() {
            return Err(Error::NotFiniteDimensional(bound));
        }
    }
    // Basis: idempotents, then non-pivot paths smallest first.
    let mut basis_paths: Vec<usize> = (0..np)
        .filter(|&i| pivot_row[i].is_none() && !paths[i].2.is_empty())
        .collect();
    basis_paths.reverse();
    let mut order: Vec<usize> = (0..n).map(|v| index[&(v, Vec::new())]).collect();
    order.extend(basis_paths);
    let mut basis_of_path = vec![None; np];
    for (b, &p) in order.iter().enumerate() {
        basis_of_path[p] = Some(b);
    }
    let dim = order.len();
    // Normal form of a path column as basis coordinates.
    let normal = |col: usize| -> Vec<(usize, Scalar)> {
        if let Some(b) = basis_of_path[col] {
            return vec![(b, field.one())];
        }
        let r = pivot_row[col].expect("non-basis path is a pivot");
        let mut out = Vec::new();
        for j in 0..np {
            if j == col {
                continue;
            }
            let c = red.get(r, j);
            if !c.is_zero() {
                let b = basis_of_path[j].expect("reduced row only involves basis paths");
                out.push((b, c.neg()));
            }
        }
        out
    };
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (i, &pi) in order.iter().enumerate() {
        for (j, &pj) in order.iter().enumerate() {
            let (s1, t1, w1) = &paths[pi];
            let (s2, _, w2) = &paths[pj];
            if t1 != s2 {
                continue;
            }
            let entry = if w1.is_empty() {
                vec![(j, field.one())]
            } else if w2.is_empty() {
                vec![(i, field.one())]
            } else if w1.len() + w2.len() > bound {
                Vec::new()
            } else {
                let mut w = w1.clone();
                w.extend(w2);
                normal(index[&(*s1, w)])
            };
            table[i][j] = entry;
        }
    }
    let basis: Vec<BasisElem> = order
        .iter()
        .map(|&p| {
            let (s, t, w) = &paths[p];
            let name = if w.is_empty() {
                format!("e{}", quiver.vertices[*s])
            } else {
                w.iter().map(|&a| quiver.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
            };
            BasisElem { name, src: *s, dst: *t }
        })
        .collect();
    let arrow_basis = (0..quiver.arrows.len())
        .map(|a| basis_of_path[index[&(quiver.arrows[a].src, vec![a])]].ok_or_else(|| {
            Error::MalformedRelation(format!("arrow {} lies in the ideal", quiver.arrows[a].label))
        }))
        .collect::<Result<Vec<_>>>()?;
    let presentation = Presentation {
        quiver: quiver.clone(),
        relations: relations.to_vec(),
        bound,
        arrow_basis,
        paths: paths.iter().map(|p| p.2.clone()).collect(),
        ideal: red.row_vecs(),
    };
    BasicAlgebra::build(field, quiver.vertices.clone(), basis, table, Some(presentation))
}

/// Ready-made algebras used throughout tests and benches.
pub mod examples {
    use super::*;

    /// The oriented 3-cycle a3: 1->2, a1: 2->3, a2: 3->1 with all length-2 paths zero.
    pub fn three_cycle(field: Field) -> Arc<BasicAlgebra> {
        let q = Quiver::new(&["1", "2", "3"], &[("a3", 0, 1), ("a1", 1, 2), ("a2", 2, 0)]);
        let a = |l: &str| q.arrow_index(l).unwrap();
        let rels = vec![
            Relation::monomial(field, vec![a("a1"), a("a2")]),
            Relation::monomial(field, vec![a("a2"), a("a3")]),
            Relation::monomial(field, vec![a("a3"), a("a1")]),
        ];
        Arc::new(compile_bound_quiver(field, &q, &rels, 3).expect("3-cycle compiles"))
    }

    /// Path algebra of the linearly oriented A_n quiver 1 -> 2 -> ... -> n.
    pub fn linear_a(field: Field, n: usize) -> Arc<BasicAlgebra> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let names: Vec<String> = (1..n).map(|i| format!("b{i}")).collect();
        let arrows: Vec<(&str, usize, usize)> = if n == 2 {
            vec![("a", 0, 1)]
        } else {
            names.iter().enumerate().map(|(i, l)| (l.as_str(), i, i + 1)).collect()
        };
        let verts: Vec<&str> = labels.iter().map(String::as_str).collect();
        let q = Quiver::new(&verts, &arrows);
        Arc::new(compile_bound_quiver(field, &q, &[], n.max(1)).expect("linear quiver compiles"))
    }

    /// The ground field as a one-vertex algebra.
    pub fn point(field: Field) -> Arc<BasicAlgebra> {
        let q = Quiver::new(&["1"], &[]);
        Arc::new(compile_bound_quiver(field, &q, &[], 1).expect("point compiles"))
    }
}
