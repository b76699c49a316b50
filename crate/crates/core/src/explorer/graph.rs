//! Exchange graphs of τ-tilting pairs and maximal green sequences.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BasicAlgebra;
use crate::complex::Direction;
use crate::error::{Error, Result};
use crate::module::{in_fac, Module};
use crate::pair::{module_label, Fingerprint, TauPair};
use crate::tau_ops::{brick_label, mutate_pair};

/// A left mutation `from -> to` (the torsion class shrinks).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// Slot of `from` that is exchanged.
    pub from_slot: usize,
    /// Slot of `to` that replaces it.
    pub to_slot: usize,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    alg: Arc<BasicAlgebra>,
    nodes: Vec<TauPair>,
    index: HashMap<Fingerprint, usize>,
    edges: Vec<Edge>,
    /// `neighbors[i][k]`: the mutation of node `i` at slot `k`, once explored.
    neighbors: Vec<Vec<Option<usize>>>,
    complete: bool,
    budget: usize,
}

fn exchanged_slot(a: &TauPair, b: &TauPair) -> usize {
    a.parts()
        .iter()
        .position(|p| !b.parts().iter().any(|q| q.g == p.g))
        .expect("mutation changes one summand")
}

/// Breadth-first closure of `(A, 0)` under mutation, keeping at most `budget` nodes.
pub fn build_exchange_graph(alg: &Arc<BasicAlgebra>, budget: usize) -> Result<ExchangeGraph> {
    if budget == 0 {
        return Err(Error::PreconditionViolated("budget must be positive".into()));
    }
    let n = alg.n();
    let start = TauPair::regular(alg);
    let mut g = ExchangeGraph {
        alg: alg.clone(),
        index: HashMap::from([(start.fingerprint(), 0)]),
        nodes: vec![start],
        edges: Vec::new(),
        neighbors: vec![vec![None; n]],
        complete: true,
        budget,
    };
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let results: Vec<Vec<Result<(TauPair, Direction)>>> = frontier
            .par_iter()
            .map(|&i| (0..n).map(|k| mutate_pair(&g.nodes[i], k)).collect())
            .collect();
        let mut next = Vec::new();
        for (&i, row) in frontier.iter().zip(results) {
            for (k, r) in row.into_iter().enumerate() {
                let (q, dir) = r?;
                let fp = q.fingerprint();
                let j = match g.index.get(&fp) {
                    Some(&j) => {
                        if cfg!(debug_assertions) && !g.nodes[j].same_as(&q) {
                            return Err(Error::InvariantViolation(format!(
                                "equal fingerprints for non-isomorphic pairs {} and {}",
                                g.nodes[j].label(),
                                q.label()
                            )));
                        }
                        j
                    }
                    None => {
                        if g.nodes.len() >= budget {
                            g.complete = false;
                            continue;
                        }
                        let j = g.nodes.len();
                        g.index.insert(fp, j);
                        g.nodes.push(q);
                        g.neighbors.push(vec![None; n]);
                        next.push(j);
                        j
                    }
                };
                g.neighbors[i][k] = Some(j);
                let (from, to) = match dir {
                    Direction::Left => (i, j),
                    Direction::Right => (j, i),
                };
                if seen_edges.insert((from, to)) {
                    let from_slot = exchanged_slot(&g.nodes[from], &g.nodes[to]);
                    let to_slot = exchanged_slot(&g.nodes[to], &g.nodes[from]);
                    g.edges.push(Edge {
                        from,
                        to,
                        from_slot,
                        to_slot,
                    });
                }
            }
        }
        frontier = next;
    }
    g.edges.sort_by_key(|e| (e.from, e.to));
    Ok(g)
}

impl ExchangeGraph {
    pub fn algebra(&self) -> &Arc<BasicAlgebra> {
        &self.alg
    }

    pub fn nodes(&self) -> &[TauPair] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &TauPair {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::BudgetExceeded(self.budget))
        }
    }

    pub fn find(&self, p: &TauPair) -> Option<usize> {
        self.index.get(&p.fingerprint()).copied()
    }

    pub fn find_or_err(&self, p: &TauPair) -> Result<usize> {
        self.find(p)
            .ok_or_else(|| Error::MatchFailure(format!("{} is not a node of the exchange graph", p.label())))
    }

    /// The mutation of node `i` at slot `k`.
    pub fn neighbor(&self, i: usize, k: usize) -> Option<usize> {
        self.neighbors[i][k]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.binary_search_by_key(&(from, to), |e| (e.from, e.to)).is_ok()
    }

    /// Targets of the left mutations out of `i`.
    pub fn down(&self, i: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.from == i).map(|e| e.to).collect()
    }

    pub fn up(&self, i: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.to == i).map(|e| e.from).collect()
    }

    /// Index of `(A, 0)`.
    pub fn top(&self) -> usize {
        0
    }

    /// Index of `(0, A)`, if reached.
    pub fn bottom(&self) -> Option<usize> {
        self.find(&TauPair::shifted_regular(&self.alg))
    }

    /// Nodes without outgoing (resp. incoming) edges.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down(i).is_empty()).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up(i).is_empty()).collect()
    }

    /// `Fac(node a) ⊆ Fac(node b)`.
    pub fn fac_leq(&self, a: usize, b: usize) -> Result<bool> {
        in_fac(&self.nodes[b].m_module(), &self.nodes[a].m_module())
    }

    pub fn brick_labels(&self) -> Result<Vec<Module>> {
        self.edges
            .par_iter()
            .map(|e| brick_label(&self.nodes[e.from], &self.nodes[e.to]))
            .collect()
    }

    /// Graphviz rendering; edges carry brick labels when given.
    pub fn to_dot(&self, bricks: Option<&[Module]>) -> String {
        let mut s = String::from("digraph exchange {\n  rankdir=TB;\n");
        for (i, p) in self.nodes.iter().enumerate() {
            let g: Vec<String> = p.g_matrix().iter().map(|r| format!("{r:?}")).collect();
            let _ = writeln!(s, "  n{i} [label=\"{}\\n{}\"];", p.label(), g.join(" "));
        }
        for (k, e) in self.edges.iter().enumerate() {
            match bricks {
                Some(b) => {
                    let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, module_label(&b[k]));
                }
                None => {
                    let _ = writeln!(s, "  n{} -> n{};", e.from, e.to);
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn report(&self, bricks: Option<&[Module]>) -> GraphReport {
        GraphReport {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, p)| NodeReport {
                    id,
                    label: p.label(),
                    role: p.role().to_string(),
                    g_matrix: p.g_matrix(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(k, e)| EdgeReport {
                    from: e.from,
                    to: e.to,
                    from_slot: e.from_slot,
                    to_slot: e.to_slot,
                    brick: bricks.map(|b| module_label(&b[k])),
                })
                .collect(),
            complete: self.complete,
            budget: self.budget,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport {
    pub id: usize,
    pub label: String,
    pub role: String,
    pub g_matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub from: usize,
    pub to: usize,
    pub from_slot: usize,
    pub to_slot: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brick: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub nodes: Vec<NodeReport>,
    pub edges: Vec<EdgeReport>,
    pub complete: bool,
    pub budget: usize,
}

/// Maximal green sequences ending at `target`: chains of covers from the
/// bottom `(0, A)` up to `target`, listed bottom first. Fails with
/// `BudgetExceeded` once more than `limit` sequences exist.
pub fn maximal_green_sequences(g: &ExchangeGraph, target: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    if !g.is_complete() {
        return Err(Error::IncompleteGraph);
    }
    let bottom = g.bottom().ok_or(Error::IncompleteGraph)?;
    let down: Vec<Vec<usize>> = (0..g.len()).map(|i| g.down(i)).collect();
    let mut out = Vec::new();
    let mut path = vec![target];
    fn walk(
        down: &[Vec<usize>],
        bottom: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        let cur = *path.last().unwrap();
        if cur == bottom {
            if out.len() >= limit {
                return Err(Error::BudgetExceeded(limit));
            }
            out.push(path.iter().rev().copied().collect());
            return Ok(());
        }
        for &nx in &down[cur] {
            path.push(nx);
            walk(down, bottom, path, out, limit)?;
            path.pop();
        }
        Ok(())
    }
    walk(&down, bottom, &mut path, &mut out, limit)?;
    Ok(out)
}
