//! Minimal add(U)-approximations in the homotopy category.

use crate::algebra::BasicAlgebra;
use crate::proj::PMat;

use super::homk::{compose, hom_complex, ChainMap, HomK};
use super::{ProjComplex, TwoTermComplex};

/// An approximation together with the chosen summands of `U`.
#[derive(Clone, Debug)]
pub struct Approx {
    /// Indices into the list of indecomposables of `U`, with repetition.
    pub summands: Vec<usize>,
    /// `U' = ⊕ U_{summands[c]}`.
    pub target: TwoTermComplex,
    /// Left: `X -> U'[shift]`. Right: `U' -> X[shift]`.
    pub map: ChainMap,
}

struct Candidates {
    homs: Vec<HomK>,
    /// `images[idx][j]`: classes in `homs[j]` reached from candidate `idx`.
    images: Vec<Vec<Vec<ChainMap>>>,
    comps: Vec<(usize, ChainMap)>,
}

impl Candidates {
    fn approximates(&self, keep: &[bool]) -> bool {
        self.homs.iter().enumerate().all(|(j, h)| {
            let maps: Vec<ChainMap> = (0..self.comps.len())
                .filter(|&i| keep[i])
                .flat_map(|i| self.images[i][j].iter().cloned())
                .collect();
            h.class_rank(&maps) == h.dim()
        })
    }

    /// Drops candidates one at a time while the rest still approximate.
    fn minimal(&self) -> Vec<usize> {
        let mut keep = vec![true; self.comps.len()];
        for i in (0..self.comps.len()).rev() {
            keep[i] = false;
            if !self.approximates(&keep) {
                keep[i] = true;
            }
        }
        (0..keep.len()).filter(|&i| keep[i]).collect()
    }
}

fn end_bases(alg: &BasicAlgebra, us: &[ProjComplex]) -> Vec<Vec<Vec<ChainMap>>> {
    us.iter()
        .map(|a| us.iter().map(|b| hom_complex(alg, a, b, 0).basis(alg)).collect())
        .collect()
}

fn degrees(x: &ProjComplex, shift: i32, us: &[&ProjComplex]) -> Vec<i32> {
    let mut ds: Vec<i32> = (x.lo..=x.hi()).collect();
    for u in us {
        ds.extend((u.lo..=u.hi()).map(|d| d - shift));
    }
    ds.sort();
    ds.dedup();
    ds
}

/// A minimal left `add U`-approximation `X -> U'[shift]`, where `us` lists the
/// indecomposable summands of `U`.
pub fn min_left_approx(alg: &BasicAlgebra, x: &TwoTermComplex, us: &[TwoTermComplex], shift: i32) -> Approx {
    let xc = ProjComplex::from_two_term(x);
    let ucs: Vec<ProjComplex> = us.iter().map(ProjComplex::from_two_term).collect();
    let homs: Vec<HomK> = ucs.iter().map(|u| hom_complex(alg, &xc, u, shift)).collect();
    let ends = end_bases(alg, &ucs);
    let comps: Vec<(usize, ChainMap)> = homs
        .iter()
        .enumerate()
        .flat_map(|(i, h)| h.basis(alg).into_iter().map(move |g| (i, g)))
        .collect();
    let images = comps
        .iter()
        .map(|(c, g)| {
            (0..us.len())
                .map(|j| ends[*c][j].iter().map(|u| compose(alg, u, g)).collect())
                .collect()
        })
        .collect();
    let cand = Candidates { homs, images, comps };
    let chosen = cand.minimal();
    let summands: Vec<usize> = chosen.iter().map(|&i| cand.comps[i].0).collect();
    let parts: Vec<TwoTermComplex> = summands.iter().map(|&i| us[i].clone()).collect();
    let target = TwoTermComplex::direct_sum(alg, &parts);
    let tc = ProjComplex::from_two_term(&target);
    let mut map = ChainMap::zero(shift);
    let parts_c: Vec<&ProjComplex> = summands.iter().map(|&i| &ucs[i]).collect();
    for d in degrees(&xc, shift, &parts_c) {
        let src = xc.term(d);
        let dst = tc.term(d + shift);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let mut stacked: Option<PMat> = None;
        for (&i, &ci) in chosen.iter().zip(&summands) {
            let rows = ucs[ci].term(d + shift);
            let piece = cand.comps[i]
                .1
                .comp(d)
                .cloned()
                .unwrap_or_else(|| PMat::zero(alg, rows, src));
            stacked = Some(match stacked {
                None => piece,
                Some(s) => s.vcat(&piece),
            });
        }
        if let Some(s) = stacked {
            map.comps.insert(d, s);
        }
    }
    Approx { summands, target, map }
}

/// A minimal right `add U`-approximation `U' -> X[shift]`.
pub fn min_right_approx(alg: &BasicAlgebra, x: &TwoTermComplex, us: &[TwoTermComplex], shift: i32) -> Approx {
    let xc = ProjComplex::from_two_term(x);
    let ucs: Vec<ProjComplex> = us.iter().map(ProjComplex::from_two_term).collect();
    let homs: Vec<HomK> = ucs.iter().map(|u| hom_complex(alg, u, &xc, shift)).collect();
    let ends = end_bases(alg, &ucs);
    let comps: Vec<(usize, ChainMap)> = homs
        .iter()
        .enumerate()
        .flat_map(|(i, h)| h.basis(alg).into_iter().map(move |g| (i, g)))
        .collect();
    let images = comps
        .iter()
        .map(|(c, g)| {
            (0..us.len())
                .map(|j| ends[j][*c].iter().map(|u| compose(alg, g, u)).collect())
                .collect()
        })
        .collect();
    let cand = Candidates { homs, images, comps };
    let chosen = cand.minimal();
    let summands: Vec<usize> = chosen.iter().map(|&i| cand.comps[i].0).collect();
    let parts: Vec<TwoTermComplex> = summands.iter().map(|&i| us[i].clone()).collect();
    let target = TwoTermComplex::direct_sum(alg, &parts);
    let tc = ProjComplex::from_two_term(&target);
    let mut map = ChainMap::zero(shift);
    for d in -1..=0 {
        let src = tc.term(d);
        let dst = xc.term(d + shift);
        if src.is_empty() || dst.is_empty() {
            continue;
        }
        let mut joined: Option<PMat> = None;
        for (&i, &ci) in chosen.iter().zip(&summands) {
            let cols = ucs[ci].term(d);
            let piece = cand.comps[i]
                .1
                .comp(d)
                .cloned()
                .unwrap_or_else(|| PMat::zero(alg, dst, cols));
            joined = Some(match joined {
                None => piece,
                Some(s) => s.hcat(&piece),
            });
        }
        if let Some(s) = joined {
            map.comps.insert(d, s);
        }
    }
    Approx { summands, target, map }
}
