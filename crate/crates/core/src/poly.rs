//! Characteristic polynomials and roots lying in the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Coefficients of the characteristic polynomial, lowest degree first; monic.
pub fn charpoly(m: &Matrix) -> Vec<Scalar> {
    assert!(m.is_square());
    let f = m.field;
    let n = m.rows;
    let mut h = m.clone();
    // Hessenberg reduction by similarity transformations.
    for c in 1..n.saturating_sub(1) {
        let Some(p) = (c..n).find(|&i| !h.get(i, c - 1).is_zero()) else {
            continue;
        };
        if p != c {
            for j in 0..n {
                let a = h.get(p, j).clone();
                let b = h.get(c, j).clone();
                h.set(p, j, b);
                h.set(c, j, a);
            }
            for i in 0..n {
                let a = h.get(i, p).clone();
                let b = h.get(i, c).clone();
                h.set(i, p, b);
                h.set(i, c, a);
            }
        }
        let inv = h.get(c, c - 1).inv();
        for i in c + 1..n {
            let t = h.get(i, c - 1).mul(&inv);
            if t.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = h.get(i, j).sub(&t.mul(h.get(c, j)));
                h.set(i, j, v);
            }
            for r in 0..n {
                let v = h.get(r, c).add(&t.mul(h.get(r, i)));
                h.set(r, c, v);
            }
        }
    }
    let mut ps: Vec<Vec<Scalar>> = vec![vec![f.one()]];
    for k in 1..=n {
        // (x - h_kk) p_{k-1}
        let prev = &ps[k - 1];
        let mut pk = vec![f.zero(); k + 1];
        for (d, c) in prev.iter().enumerate() {
            pk[d + 1] = pk[d + 1].add(c);
            pk[d] = pk[d].sub(&c.mul(h.get(k - 1, k - 1)));
        }
        let mut prod = f.one();
        for i in (1..k).rev() {
            prod = prod.mul(h.get(i, i - 1));
            let coef = h.get(i - 1, k - 1).mul(&prod);
            if coef.is_zero() {
                continue;
            }
            for (d, c) in ps[i - 1].iter().enumerate() {
                pk[d] = pk[d].sub(&coef.mul(c));
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

pub fn eval(p: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

const DIVISOR_CAP: u64 = 10_000_000;
const ENUM_CAP: u64 = 100_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_CAP {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct roots of `p` in the ground field. Over the rationals the rational
/// root test is applied when the extreme coefficients are small enough; over
/// small prime fields all residues are tried. Roots may be missed beyond those
/// caps, never invented.
pub fn roots(p: &[Scalar]) -> Vec<Scalar> {
    let Some(top) = p.iter().rposition(|c| !c.is_zero()) else {
        return Vec::new();
    };
    let p = &p[..=top];
    let field = p[0].field();
    match field {
        Field::Prime(q) => {
            if q > ENUM_CAP {
                return if p[0].is_zero() { vec![field.zero()] } else { Vec::new() };
            }
            (0..q)
                .map(|v| Scalar::Fp(v, q))
                .filter(|x| eval(p, x).is_zero())
                .collect()
        }
        Field::Rational => {
            let low = p.iter().position(|c| !c.is_zero()).unwrap();
            let mut out = Vec::new();
            if low > 0 {
                out.push(field.zero());
            }
            let q = &p[low..];
            if q.len() == 1 {
                return out;
            }
            let lcm = q.iter().fold(BigInt::one(), |acc, c| {
                acc.lcm(c.as_rational().unwrap().denom())
            });
            let ints: Vec<BigInt> = q
                .iter()
                .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(lcm.clone())).to_integer())
                .collect();
            let (Some(a0), Some(an)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
                return out;
            };
            let mut seen = std::collections::HashSet::new();
            for &num in &a0 {
                for &den in &an {
                    for sign in [1i64, -1] {
                        let r = BigRational::new(BigInt::from(sign) * BigInt::from(num), BigInt::from(den));
                        if !seen.insert(r.clone()) {
                            continue;
                        }
                        let x = Scalar::Q(r);
                        if eval(q, &x).is_zero() {
                            out.push(x);
                        }
                    }
                }
            }
            out.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
            out
        }
    }
}

/// Whether a square matrix is nilpotent.
pub fn is_nilpotent(m: &Matrix) -> bool {
    m.rows == 0 || m.pow(m.rows).is_zero()
}

/// The unique eigenvalue `l` with `m - l` nilpotent, if there is one in the field.
pub fn single_eigenvalue(m: &Matrix) -> Option<Scalar> {
    let f = m.field;
    if m.rows == 0 {
        return Some(f.zero());
    }
    let mut tr = f.zero();
    for i in 0..m.rows {
        tr = tr.add(m.get(i, i));
    }
    let cands: Vec<Scalar> = if !f.divides(m.rows as u64) {
        vec![tr.div(&f.int(m.rows as i64))]
    } else {
        roots(&charpoly(m))
    };
    cands.into_iter().find(|l| is_nilpotent(&m.shift(l)))
}
