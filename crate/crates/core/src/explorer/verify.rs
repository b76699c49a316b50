//! Verification suites: exhaustive sweeps over small algebras with one
//! pass/fail entry per check and counterexample payloads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{examples, BasicAlgebra};
use crate::complex::{hom_k, int_det, left_completion_silting, no_hom1, Indec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::in_perp_pair;
use crate::pair::{Fingerprint, TauPair};
use crate::tau_ops::{dagger, left_bongartz, left_bongartz_applies, rebase_pair};

use super::graph::{build_exchange_graph, ExchangeGraph};
use super::reduction::{reduction_bijection_with, tau_reduction};
use super::transport::{left_bongartz_by_search, verify_mutation_compat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Thmair,
    Mainthm,
    Mainthm3,
    Mainthm4,
    Dagger,
    Reduction,
    Compare1,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Thmair,
        Suite::Mainthm,
        Suite::Mainthm3,
        Suite::Mainthm4,
        Suite::Dagger,
        Suite::Reduction,
        Suite::Compare1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thmair => "thmair",
            Suite::Mainthm => "mainthm",
            Suite::Mainthm3 => "mainthm3",
            Suite::Mainthm4 => "mainthm4",
            Suite::Dagger => "dagger",
            Suite::Reduction => "reduction",
            Suite::Compare1 => "compare1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownCommand(format!("verify {s}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub budget: usize,
    /// Random (presilting, silting) samples for the structural Hom checks.
    pub samples: usize,
    /// Sizes of the relative pairs used by the reduction suite.
    pub reduction_sizes: Vec<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            budget: 10_000,
            samples: 200,
            reduction_sizes: vec![1, 2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub algebra: String,
    pub checks: usize,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    checks: usize,
    failures: Vec<Counterexample>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Counterexample {
                check: check.to_string(),
                detail: detail(),
            });
        }
    }

    fn absorb(&mut self, o: Tally) {
        self.checks += o.checks;
        self.failures.extend(o.failures);
    }
}

/// The algebras swept by the acceptance suites: linear A2, linear A3 and the 3-cycle.
pub fn test_algebras() -> Vec<(String, Arc<BasicAlgebra>)> {
    vec![
        ("A2".into(), examples::linear_a(Field::Rational, 2)),
        ("A3".into(), examples::linear_a(Field::Rational, 3)),
        ("3-cycle".into(), examples::three_cycle(Field::Rational)),
    ]
}

/// Every basic τ-rigid pair, as the summands of graph nodes, sorted by size then g-vectors.
pub fn rigid_pairs(g: &ExchangeGraph) -> Vec<TauPair> {
    let mut seen: HashMap<Fingerprint, TauPair> = HashMap::new();
    for p in g.nodes() {
        let n = p.len();
        for mask in 0u32..(1 << n) {
            let drop: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
            let q = p.without(&drop);
            seen.entry(q.fingerprint()).or_insert(q);
        }
    }
    let mut out: Vec<TauPair> = seen.into_values().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.fingerprint().cmp(&b.fingerprint())));
    out
}

fn complete_graph(alg: &Arc<BasicAlgebra>, budget: usize) -> Result<ExchangeGraph> {
    let g = build_exchange_graph(alg, budget)?;
    g.require_complete()?;
    Ok(g)
}

pub fn run_suite(suite: Suite, name: &str, alg: &Arc<BasicAlgebra>, opts: &VerifyOptions) -> Result<SuiteReport> {
    let g = complete_graph(alg, opts.budget)?;
    run_suite_on(suite, name, &g, opts)
}

pub fn run_suite_on(suite: Suite, name: &str, g: &ExchangeGraph, opts: &VerifyOptions) -> Result<SuiteReport> {
    g.require_complete()?;
    let t = match suite {
        Suite::Thmair => thmair(g, opts)?,
        Suite::Mainthm => mainthm(g)?,
        Suite::Mainthm3 => mainthm3(g)?,
        Suite::Mainthm4 => mainthm4(g)?,
        Suite::Dagger => dagger_suite(g, opts)?,
        Suite::Reduction => reduction_suite(g, opts)?,
        Suite::Compare1 => compare1(g)?,
    };
    Ok(SuiteReport {
        suite,
        algebra: name.to_string(),
        checks: t.checks,
        failures: t.failures,
    })
}

/// Exchange-graph structure: `n` neighbours per node, every almost-pair in
/// exactly two nodes, unique source and sink, edges shrink `Fac`,
/// unimodular g-matrices, and `Hom(U, T[i]) = 0` for `i >= 2` on random samples.
fn thmair(g: &ExchangeGraph, opts: &VerifyOptions) -> Result<Tally> {
    let alg = g.algebra();
    let n = alg.n();
    let mut t = Tally::new();
    let mut almost: HashMap<Fingerprint, BTreeSet<usize>> = HashMap::new();
    for (i, p) in g.nodes().iter().enumerate() {
        let nb: BTreeSet<usize> = (0..p.len()).filter_map(|k| g.neighbor(i, k)).collect();
        t.check(nb.len() == n && !nb.contains(&i), "n distinct neighbours", || {
            format!("{} has neighbours {nb:?}", p.label())
        });
        let det = int_det(&p.g_matrix());
        t.check(det.abs() == 1, "det g-matrix = ±1", || format!("{} has det {det}", p.label()));
        for k in 0..p.len() {
            almost.entry(p.without(&[k]).fingerprint()).or_default().insert(i);
        }
    }
    let mut keys: Vec<&Fingerprint> = almost.keys().collect();
    keys.sort();
    for k in keys {
        let c = almost[k].len();
        t.check(c == 2, "almost-pair completes twice", || format!("almost-pair {k:?} lies in {c} nodes"));
    }
    let sources = g.sources();
    t.check(sources == vec![g.top()], "unique source (A,0)", || format!("sources {sources:?}"));
    let sinks = g.sinks();
    t.check(g.bottom().map(|b| vec![b]) == Some(sinks.clone()), "unique sink (0,A)", || format!("sinks {sinks:?}"));
    let edge_checks: Vec<(bool, String)> = g
        .edges()
        .par_iter()
        .map(|e| -> Result<(bool, String)> {
            let ok = g.fac_leq(e.to, e.from)? && !g.fac_leq(e.from, e.to)?;
            Ok((ok, format!("{} -> {}", g.node(e.from).label(), g.node(e.to).label())))
        })
        .collect::<Result<Vec<_>>>()?;
    for (ok, d) in edge_checks {
        t.check(ok, "edge shrinks Fac", || d);
    }
    let rigid = rigid_pairs(g);
    let mut combos: Vec<(usize, usize)> = (0..rigid.len()).flat_map(|u| (0..g.len()).map(move |s| (u, s))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    combos.shuffle(&mut rng);
    for &(u, s) in combos.iter().cycle().take(opts.samples) {
        let (uc, tc) = (rigid[u].complex(), g.node(s).complex());
        for i in 2..=3 {
            let z = hom_k(alg, &uc, &tc, i).is_zero();
            t.check(z, "Hom(U,T[i]) = 0 for i >= 2", || {
                format!("U = {}, T = {}, i = {i}", rigid[u].label(), g.node(s).label())
            });
        }
    }
    Ok(t)
}

/// Brick dichotomy for `B^-` along every edge, for every τ-rigid `(U, Q)`.
fn mainthm(g: &ExchangeGraph) -> Result<Tally> {
    let reports = rigid_pairs(g)
        .par_iter()
        .map(|rel| verify_mutation_compat(rel, g))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    for r in reports {
        for c in &r.cases {
            t.check(c.passed, "identity-vs-mutation prediction", || {
                format!(
                    "U = {}, edge {} -> {}, brick {}, predicted {:?}, observed {:?}, routes agree {}",
                    r.rel,
                    g.node(c.from).label(),
                    g.node(c.to).label(),
                    c.brick,
                    c.predicted,
                    c.observed,
                    c.routes_agree
                )
            });
        }
    }
    Ok(t)
}

/// Silting side: along every left mutation `M -> N` with `Hom(U, M[1]) = 0`,
/// `Hom(U, N[1]) = 0`, `B^-_U(N)` equals or is a left mutation of `B^-_U(M)`,
/// and the two share at least `n - 1` summands.
fn mainthm3(g: &ExchangeGraph) -> Result<Tally> {
    let alg = g.algebra();
    let n = alg.n();
    let tallies = rigid_pairs(g)
        .par_iter()
        .map(|rel| -> Result<Tally> {
            let u = rel.parts();
            let mut t = Tally::new();
            let mut cache: HashMap<usize, Vec<Indec>> = HashMap::new();
            for e in g.edges() {
                let (m, nn) = (g.node(e.from).parts(), g.node(e.to).parts());
                if !no_hom1(alg, u, m) {
                    continue;
                }
                t.check(no_hom1(alg, u, nn), "Hom(U,N[1]) = 0", || {
                    format!("U = {}, N = {}", rel.label(), g.node(e.to).label())
                });
                if !no_hom1(alg, u, nn) {
                    continue;
                }
                for i in [e.from, e.to] {
                    if let std::collections::hash_map::Entry::Vacant(v) = cache.entry(i) {
                        v.insert(left_completion_silting(alg, u, g.node(i).parts())?);
                    }
                }
                let bm = TauPair::from_indecs(alg, cache[&e.from].clone());
                let bn = TauPair::from_indecs(alg, cache[&e.to].clone());
                let (im, inn) = (g.find_or_err(&bm)?, g.find_or_err(&bn)?);
                t.check(im == inn || g.has_edge(im, inn), "B^-_U(N) = B^-_U(M) or a left mutation", || {
                    format!("U = {}, edge {} -> {}, images {} and {}", rel.label(), g.node(e.from).label(), g.node(e.to).label(), bm.label(), bn.label())
                });
                let common = bm.parts().iter().filter(|p| bn.parts().iter().any(|q| q.is_isomorphic(p))).count();
                t.check(common + 1 >= n, "at least n-1 common summands", || {
                    format!("U = {}, images {} and {} share {common}", rel.label(), bm.label(), bn.label())
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.absorb(x));
    Ok(t)
}

/// Silting-route and torsion-certificate-route completions coincide.
fn mainthm4(g: &ExchangeGraph) -> Result<Tally> {
    let tallies = rigid_pairs(g)
        .par_iter()
        .map(|rel| -> Result<Tally> {
            let mut t = Tally::new();
            for p in g.nodes() {
                if !left_bongartz_applies(rel, p)? {
                    continue;
                }
                let a = left_bongartz(rel, p)?;
                let b = left_bongartz_by_search(g, rel, p)?;
                t.check(g.find(&a) == Some(b), "silting route = torsion route", || {
                    format!("U = {}, M = {}: {} vs {}", rel.label(), p.label(), a.label(), g.node(b).label())
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.absorb(x));
    Ok(t)
}

/// `†† ≅ id` on nodes, and `†` reverses every edge of the graph.
fn dagger_suite(g: &ExchangeGraph, opts: &VerifyOptions) -> Result<Tally> {
    let alg = g.algebra();
    let op = alg.opposite();
    let og = complete_graph(&op, opts.budget)?;
    let mut t = Tally::new();
    let daggers: Vec<TauPair> = g.nodes().par_iter().map(dagger).collect::<Result<Vec<_>>>()?;
    let back: Vec<TauPair> = daggers
        .par_iter()
        .map(|d| rebase_pair(&dagger(d)?, alg))
        .collect::<Result<Vec<_>>>()?;
    for (p, b) in g.nodes().iter().zip(&back) {
        t.check(b.same_as(p), "dagger is an involution", || format!("{} comes back as {}", p.label(), b.label()));
    }
    let image: Vec<Option<usize>> = daggers.iter().map(|d| og.find(d)).collect();
    for (p, im) in g.nodes().iter().zip(&image) {
        t.check(im.is_some(), "dagger lands on a node of A^op", || format!("{} has no image", p.label()));
    }
    let hit: BTreeSet<usize> = image.iter().flatten().copied().collect();
    t.check(hit.len() == og.len() && og.len() == g.len(), "dagger is a bijection of nodes", || {
        format!("{} nodes hit of {}, graph of A has {}", hit.len(), og.len(), g.len())
    });
    for e in g.edges() {
        let ok = matches!((image[e.from], image[e.to]), (Some(a), Some(b)) if og.has_edge(b, a));
        t.check(ok, "dagger reverses edges", || {
            format!("{} -> {}", g.node(e.from).label(), g.node(e.to).label())
        });
    }
    Ok(t)
}

/// Order isomorphism between pairs containing `(U, Q)` and pairs of `A_(U,Q)`.
fn reduction_suite(g: &ExchangeGraph, opts: &VerifyOptions) -> Result<Tally> {
    let rels: Vec<TauPair> = rigid_pairs(g)
        .into_iter()
        .filter(|p| opts.reduction_sizes.contains(&p.len()))
        .collect();
    let reports = rels
        .par_iter()
        .map(|rel| reduction_bijection_with(&tau_reduction(rel)?, g, opts.budget))
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    for r in reports {
        t.check(r.containing == r.reduced, "cardinalities match", || {
            format!("U = {}: {} pairs contain it, the reduction has {}", r.rel, r.containing, r.reduced)
        });
        t.check(r.injective && r.surjective, "matching is bijective", || format!("U = {}: {:?}", r.rel, r.matching));
        t.check(r.order_violations.is_empty(), "order preserved both ways", || {
            format!("U = {}: {:?}", r.rel, r.order_violations)
        });
    }
    Ok(t)
}

/// `Hom(U,T[>0]) = 0` ⇔ `Hom(U,T[1]) = 0` ⇔ `Hom(U,X_T[1]) = 0` ⇔ `Fac X̄_T ⊆ ⊥(τX̄_U) ∩ Ȳ_U^⊥`.
fn compare1(g: &ExchangeGraph) -> Result<Tally> {
    let alg = g.algebra();
    let rigid = rigid_pairs(g);
    let rows = rigid
        .par_iter()
        .map(|u| -> Result<Tally> {
            let mut t = Tally::new();
            let uc = u.complex();
            for p in g.nodes() {
                let tc = p.complex();
                let a = (1..=3).all(|i| hom_k(alg, &uc, &tc, i).is_zero());
                let b = hom_k(alg, &uc, &tc, 1).is_zero();
                let xt: Vec<Indec> = p.parts().iter().filter(|x| x.module().is_some()).cloned().collect();
                let c = no_hom1(alg, u.parts(), &xt);
                let e = in_perp_pair(&u.m_module(), &u.p_module(), &p.m_module())?;
                t.check(a == b && b == c && c == e, "(a) <=> (b) <=> (c) <=> (e)", || {
                    format!("U = {}, T = {}: a={a} b={b} c={c} e={e}", u.label(), p.label())
                });
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Tally::new();
    rows.into_iter().for_each(|x| t.absorb(x));
    Ok(t)
}
