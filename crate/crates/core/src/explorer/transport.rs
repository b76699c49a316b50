//! Transport of maximal green sequences along left Bongartz completions, and
//! the mutation-compatibility checks of completions along graph edges.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::Direction;
use crate::error::{Error, Result};
use crate::module::{hom_dim, in_fac, is_projective};
use crate::pair::{module_label, TauPair};
use crate::tau_ops::{brick_label, left_bongartz, left_bongartz_applies, mutate_pair, star_membership};

use super::graph::{build_exchange_graph, ExchangeGraph};
use super::reduction::{match_torsion_class, reduce_generator, ReductionData};

/// Whether `lower` is the left mutation of `upper` at some slot.
pub fn is_left_step(upper: &TauPair, lower: &TauPair) -> Result<bool> {
    let diff: Vec<usize> = (0..upper.len())
        .filter(|&k| !lower.parts().iter().any(|q| q.is_isomorphic(&upper.parts()[k])))
        .collect();
    let [k] = diff.as_slice() else {
        return Ok(false);
    };
    let (q, dir) = mutate_pair(upper, *k)?;
    Ok(dir == Direction::Left && q.same_as(lower))
}

fn dedup_pairs(chain: &[TauPair]) -> Vec<TauPair> {
    let mut out: Vec<TauPair> = Vec::new();
    for p in chain {
        if out.last().is_none_or(|q| !q.same_as(p)) {
            out.push(p.clone());
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct Transport {
    /// `B^-_{(U,Q)}` of each input pair, bottom first.
    pub completions: Vec<TauPair>,
    /// The completions with repetitions removed.
    pub chain: Vec<TauPair>,
    /// The chain read over `A_(U,Q)`, bottom first.
    pub reduced: Vec<TauPair>,
}

impl Transport {
    /// Number of mutations in the transported sequence.
    pub fn len(&self) -> usize {
        self.reduced.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Sends a maximal green sequence of `⊥(τU) ∩ Q^⊥` (pairs listed from `(0, A)`
/// up to the Bongartz completion) to one of `A_(U,Q)`.
pub fn transport_mgs(rd: &ReductionData, mgs: &[TauPair], budget: usize) -> Result<Transport> {
    let alg = rd.rel().algebra();
    let (Some(first), Some(last)) = (mgs.first(), mgs.last()) else {
        return Err(Error::PreconditionViolated("empty sequence".into()));
    };
    if !first.same_as(&TauPair::shifted_regular(alg)) {
        return Err(Error::PreconditionViolated(format!("sequence starts at {}, not at (0, A)", first.label())));
    }
    let top = rd.bongartz().m_module();
    let lm = last.m_module();
    if !(in_fac(&top, &lm)? && in_fac(&lm, &top)?) {
        return Err(Error::PreconditionViolated(format!(
            "sequence ends at {}, whose torsion class is not ⊥(τU) ∩ Q^⊥",
            last.label()
        )));
    }
    for w in mgs.windows(2) {
        if !is_left_step(&w[1], &w[0])? {
            return Err(Error::PreconditionViolated(format!("{} -> {} is not a mutation", w[1].label(), w[0].label())));
        }
    }
    let completions: Vec<TauPair> = mgs
        .par_iter()
        .map(|p| left_bongartz(rd.rel(), p))
        .collect::<Result<Vec<_>>>()?;
    let chain = dedup_pairs(&completions);
    let qg = build_exchange_graph(rd.quotient(), budget)?;
    qg.require_complete()?;
    let idx: Vec<usize> = chain
        .iter()
        .map(|p| match_torsion_class(&qg, &reduce_generator(rd, p)?))
        .collect::<Result<Vec<_>>>()?;
    for w in idx.windows(2) {
        if !qg.has_edge(w[1], w[0]) {
            return Err(Error::InvariantViolation(format!(
                "transported step {} -> {} is not a cover",
                qg.node(w[1]).label(),
                qg.node(w[0]).label()
            )));
        }
    }
    let reduced = idx.iter().map(|&i| qg.node(i).clone()).collect();
    Ok(Transport {
        completions,
        chain,
        reduced,
    })
}

/// Replaces each pair of a mutation path by its left completion at `(U, 0)`
/// and drops repetitions; every pair of the result contains `(U, 0)`.
pub fn connect_fixed_summand(path: &[TauPair], rel: &TauPair) -> Result<Vec<TauPair>> {
    if !rel.p_vertices().is_empty() || !is_projective(&rel.m_module()) {
        return Err(Error::PreconditionViolated(format!("{} is not of the form (U, 0) with U projective", rel.label())));
    }
    let Some(first) = path.first() else {
        return Err(Error::PreconditionViolated("empty path".into()));
    };
    if !first.same_as(&TauPair::regular(rel.algebra())) {
        return Err(Error::PreconditionViolated(format!("path starts at {}, not at (A, 0)", first.label())));
    }
    for w in path.windows(2) {
        let ok = is_left_step(&w[0], &w[1])? || is_left_step(&w[1], &w[0])?;
        if !ok {
            return Err(Error::PreconditionViolated(format!("{} -> {} is not a mutation", w[0].label(), w[1].label())));
        }
    }
    let out = dedup_pairs(
        &path
            .iter()
            .map(|p| left_bongartz(rel, p))
            .collect::<Result<Vec<_>>>()?,
    );
    for w in out.windows(2) {
        if !(is_left_step(&w[0], &w[1])? || is_left_step(&w[1], &w[0])?) {
            return Err(Error::InvariantViolation(format!(
                "completed path step {} -> {} is not a mutation",
                w[0].label(),
                w[1].label()
            )));
        }
    }
    if !out.iter().all(|p| p.contains(rel)) {
        return Err(Error::InvariantViolation("completed path loses the fixed summand".into()));
    }
    Ok(out)
}

/// `B^-_{(U,Q)}(M, P)` found among the nodes of a complete graph: the unique
/// pair `N` with `U, M ∈ Fac N` and `N ∈ Fac U ∗ Fac M`.
pub fn left_bongartz_by_search(g: &ExchangeGraph, rel: &TauPair, anchor: &TauPair) -> Result<usize> {
    g.require_complete()?;
    let u = rel.m_module();
    let m = anchor.m_module();
    let mut found = None;
    for (i, p) in g.nodes().iter().enumerate() {
        let n = p.m_module();
        if !p.contains(rel) || !in_fac(&n, &u)? || !in_fac(&n, &m)? || !star_membership(&u, &m, &n)? {
            continue;
        }
        if found.replace(i).is_some() {
            return Err(Error::InvariantViolation("two nodes realize Fac U * Fac M".into()));
        }
    }
    found.ok_or_else(|| Error::MatchFailure(format!("no node realizes Fac U * Fac {}", anchor.label())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Identity,
    LeftMutation,
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatCase {
    pub from: usize,
    pub to: usize,
    pub brick: String,
    pub predicted: Step,
    pub observed: Step,
    /// Node indices of the two completions.
    pub completions: (usize, usize),
    /// Silting-route and search-route completions coincide at both ends.
    pub routes_agree: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompatReport {
    pub rel: String,
    pub edges_checked: usize,
    pub cases: Vec<CompatCase>,
}

impl CompatReport {
    pub fn failures(&self) -> impl Iterator<Item = &CompatCase> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

/// Completion data of one node for a fixed `(U, Q)`.
struct NodeCompletion {
    silting: usize,
    search: usize,
}

/// For every edge `(M, P) -> (N, R)` with `M ∈ ⊥(τU) ∩ Q^⊥`, predicts from the
/// brick label whether the completions coincide or form an edge, and checks it.
pub fn verify_mutation_compat(rel: &TauPair, g: &ExchangeGraph) -> Result<CompatReport> {
    g.require_complete()?;
    if !rel.is_tau_rigid() {
        return Err(Error::PreconditionViolated("relative pair is not τ-rigid".into()));
    }
    let u = rel.m_module();
    let applies: Vec<bool> = g
        .nodes()
        .par_iter()
        .map(|p| left_bongartz_applies(rel, p))
        .collect::<Result<Vec<_>>>()?;
    let completions: HashMap<usize, NodeCompletion> = (0..g.len())
        .into_par_iter()
        .filter(|&i| applies[i])
        .map(|i| -> Result<(usize, NodeCompletion)> {
            let p = g.node(i);
            // left_bongartz runs the silting cone and enforces the torsion certificate.
            let silting = g.find_or_err(&left_bongartz(rel, p)?)?;
            let search = left_bongartz_by_search(g, rel, p)?;
            Ok((i, NodeCompletion { silting, search }))
        })
        .collect::<Result<HashMap<_, _>>>()?;
    let cases = g
        .edges()
        .par_iter()
        .filter(|e| applies[e.from])
        .map(|e| -> Result<CompatCase> {
            let d = brick_label(g.node(e.from), g.node(e.to))?;
            let predicted = if hom_dim(&u, &d)? != 0 { Step::Identity } else { Step::LeftMutation };
            let (a, b) = (&completions[&e.from], &completions[&e.to]);
            let observed = if a.silting == b.silting {
                Step::Identity
            } else if g.has_edge(a.silting, b.silting) {
                Step::LeftMutation
            } else {
                Step::Other
            };
            let routes_agree = a.silting == a.search && b.silting == b.search;
            Ok(CompatCase {
                from: e.from,
                to: e.to,
                brick: module_label(&d),
                predicted,
                observed,
                completions: (a.silting, b.silting),
                routes_agree,
                passed: predicted == observed && routes_agree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompatReport {
        rel: rel.label(),
        edges_checked: cases.len(),
        cases,
    })
}
