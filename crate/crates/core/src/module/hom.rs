use super::{check_same, Module, ModuleMap};
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Matrix;

/// Basis of `Hom(m, n)`: solutions of `φ_t ρ_M(g) = ρ_N(g) φ_s` over the generators.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    check_same(m, n)?;
    let f = m.field();
    let nv = m.n();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    }
    let nvar = off[nv];
    if nvar == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, r: usize, c: usize| off[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &g in m.alg.generators() {
        let (s, t) = m.alg.peirce(g);
        let rm = m.act(g);
        let rn = n.act(g);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); nvar];
                let mut any = false;
                for k in 0..m.dims[t] {
                    let x = rm.get(k, c);
                    if !x.is_zero() {
                        let i = var(t, r, k);
                        row[i] = row[i].add(x);
                        any = true;
                    }
                }
                for k in 0..n.dims[s] {
                    let x = rn.get(r, k);
                    if !x.is_zero() {
                        let i = var(s, k, c);
                        row[i] = row[i].sub(x);
                        any = true;
                    }
                }
                if any {
                    rows.push(row);
                }
            }
        }
    }
    let sols = if rows.is_empty() {
        Matrix::identity(f, nvar).col_vecs()
    } else {
        Matrix::from_rows(f, rows, nvar).nullspace()
    };
    Ok(sols
        .into_iter()
        .map(|x| ModuleMap {
            blocks: (0..nv)
                .map(|v| Matrix::from_flat(f, n.dims[v], m.dims[v], x[off[v]..off[v + 1]].to_vec()))
                .collect(),
        })
        .collect())
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// Coordinates of `f` in the span of `basis`, if it lies there.
pub fn map_coordinates(basis: &[ModuleMap], f: &ModuleMap) -> Option<Vec<Scalar>> {
    let target = f.flatten();
    if basis.is_empty() {
        return target.iter().all(Scalar::is_zero).then(Vec::new);
    }
    let field = target.first().map(|x| x.field()).unwrap_or_else(|| {
        basis[0].blocks.first().map(|b| b.field).expect("nonempty map")
    });
    if target.is_empty() {
        return Some(vec![field.zero(); basis.len()]);
    }
    let cols: Vec<Vec<Scalar>> = basis.iter().map(ModuleMap::flatten).collect();
    Matrix::from_cols(field, target.len(), &cols).solve(&target)
}
