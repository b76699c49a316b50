//! Subcommand dispatch. Every command yields a JSON value and a plain-text
//! rendering of the same data.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use tautilt::explorer::{
    build_exchange_graph, maximal_green_sequences, reduction_bijection_with, run_suite, tau_reduction, test_algebras,
    transport_mgs, ExchangeGraph,
};
use tautilt::module::{ar_translate, decompose};
use tautilt::pair::module_label;
use tautilt::tau_ops::{bongartz_completion, co_bongartz_completion, left_bongartz, mutate_pair, right_bongartz};
use tautilt::{BasicAlgebra, Error, Module, Result, Suite, TauPair, VerifyOptions};

use crate::workspace::{write_algebra, write_module, write_pair, Workspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Check { pair: String },
    Tau { module: String },
    Mutate { pair: String, slot: usize },
    Bongartz { left: bool, rel: Option<String>, anchor: String },
    Graph { dot: Option<PathBuf>, budget: usize },
    Mgs { pair: String, budget: usize },
    Reduce { pair: String, budget: usize },
    Transport { pair: String, mgs_id: usize, budget: usize },
    Verify { suite: String, seed: u64, budget: usize, samples: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Tau { .. } => "tau",
            Command::Mutate { .. } => "mutate",
            Command::Bongartz { .. } => "bongartz",
            Command::Graph { .. } => "graph",
            Command::Mgs { .. } => "mgs",
            Command::Reduce { .. } => "reduce",
            Command::Transport { .. } => "transport",
            Command::Verify { .. } => "verify",
        }
    }
}

/// The result of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// False when a verification found a counterexample.
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandJson {
    pub slot: usize,
    /// `module` or `shifted_projective`.
    pub kind: &'static str,
    pub label: String,
    pub dims: Vec<usize>,
    pub g_vector: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairJson {
    pub label: String,
    pub role: String,
    pub summands: Vec<SummandJson>,
    /// Workspace text that re-parses to this pair.
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleJson {
    pub label: String,
    pub dims: Vec<usize>,
    pub summands: Vec<String>,
    pub text: String,
}

pub fn pair_json(name: &str, p: &TauPair) -> PairJson {
    let labels = p.algebra().vertex_labels();
    let summands = p
        .parts()
        .iter()
        .enumerate()
        .map(|(slot, part)| match part.module() {
            Some(m) => SummandJson {
                slot,
                kind: "module",
                label: module_label(m),
                dims: m.dims().to_vec(),
                g_vector: part.g.clone(),
            },
            None => {
                let v = part.shifted_vertex().unwrap();
                SummandJson {
                    slot,
                    kind: "shifted_projective",
                    label: format!("P{}[1]", labels[v]),
                    dims: Module::projective(p.algebra(), v).dims().to_vec(),
                    g_vector: part.g.clone(),
                }
            }
        })
        .collect();
    PairJson {
        label: p.label(),
        role: serde_json::to_value(p.role()).unwrap().as_str().unwrap().to_string(),
        summands,
        text: write_pair(name, p),
    }
}

pub fn module_json(name: &str, m: &Module) -> Result<ModuleJson> {
    let mut summands: Vec<String> = decompose(m)?
        .into_iter()
        .flat_map(|(x, k)| std::iter::repeat_n(module_label(&x), k))
        .collect();
    summands.sort();
    let label = if summands.is_empty() { "0".to_string() } else { summands.join("+") };
    Ok(ModuleJson {
        label,
        dims: m.dims().to_vec(),
        summands,
        text: write_module(name, m),
    })
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let s: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c}{}", " ".repeat(w[i] - c.chars().count())))
            .collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(w.iter().map(|&k| "-".repeat(k)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn pair_table(p: &PairJson) -> String {
    let rows: Vec<Vec<String>> = p
        .summands
        .iter()
        .map(|s| vec![s.slot.to_string(), s.label.clone(), s.kind.to_string(), format!("{:?}", s.g_vector)])
        .collect();
    table(&["slot", "summand", "kind", "g-vector"], &rows)
}

fn need(ws: Option<&Workspace>) -> Result<&Workspace> {
    ws.ok_or_else(|| Error::PreconditionViolated("this command needs a workspace (--workspace FILE)".into()))
}

fn complete_graph(alg: &std::sync::Arc<BasicAlgebra>, budget: usize) -> Result<ExchangeGraph> {
    let g = build_exchange_graph(alg, budget)?;
    g.require_complete()?;
    Ok(g)
}

fn ok(json: Value, text: String) -> Result<Outcome> {
    Ok(Outcome {
        json,
        text,
        passed: true,
    })
}

pub fn execute(cmd: &Command, ws: Option<&Workspace>) -> Result<Outcome> {
    let out = match cmd {
        Command::Check { pair } => {
            let ws = need(ws)?;
            let p = ws.pair(pair)?;
            let pj = pair_json(pair, &p);
            let text = format!("{pair} = {}\nrole: {}\n\n{}", pj.label, p.role(), pair_table(&pj));
            ok(json!({ "pair": pj }), text)
        }
        Command::Tau { module } => {
            let ws = need(ws)?;
            let m = ws.module(module)?;
            let t = ar_translate(m);
            let name = format!("tau_{module}");
            let mj = module_json(&name, &t)?;
            let text = format!("tau {module} = {}\ndims: {:?}\n", mj.label, mj.dims);
            ok(json!({ "module": module, "tau": mj }), text)
        }
        Command::Mutate { pair, slot } => {
            let ws = need(ws)?;
            let p = ws.pair(pair)?;
            if !p.is_tau_tilting() {
                return Err(Error::PreconditionViolated(format!("{pair} is not a τ-tilting pair")));
            }
            if *slot >= p.len() {
                return Err(Error::PreconditionViolated(format!("slot {slot} out of range 0..{}", p.len())));
            }
            let (q, dir) = mutate_pair(&p, *slot)?;
            let dir = format!("{dir:?}").to_lowercase();
            let qj = pair_json(&format!("{pair}_mut{slot}"), &q);
            let text = format!("{} --{dir}--> {}\n\n{}", p.label(), qj.label, pair_table(&qj));
            ok(
                json!({ "from": pair_json(pair, &p), "slot": slot, "direction": dir, "to": qj }),
                text,
            )
        }
        Command::Bongartz { left, rel, anchor } => {
            let ws = need(ws)?;
            let a = ws.pair(anchor)?;
            let side = if *left { "left" } else { "right" };
            let (res, relj) = match rel {
                Some(r) => {
                    let rp = ws.pair(r)?;
                    let res = if *left { left_bongartz(&rp, &a)? } else { right_bongartz(&rp, &a)? };
                    (res, Some(pair_json(r, &rp)))
                }
                None if *left => (co_bongartz_completion(&a)?, None),
                None => (bongartz_completion(&a)?, None),
            };
            let rj = pair_json("completion", &res);
            let text = match (&relj, rel) {
                (Some(_), Some(r)) => format!("{side} completion of {anchor} relative to {r}: {}\n", rj.label),
                _ => format!("{side} completion of {anchor}: {}\n", rj.label),
            };
            ok(
                json!({ "side": side, "rel": relj, "anchor": pair_json(anchor, &a), "completion": rj }),
                text + "\n" + &pair_table(&rj),
            )
        }
        Command::Graph { dot, budget } => {
            let ws = need(ws)?;
            let g = build_exchange_graph(&ws.alg, *budget)?;
            let bricks = if g.is_complete() { Some(g.brick_labels()?) } else { None };
            if let Some(path) = dot {
                std::fs::write(path, g.to_dot(bricks.as_deref())).map_err(|e| {
                    Error::PreconditionViolated(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            let rep = g.report(bricks.as_deref());
            let rows: Vec<Vec<String>> = rep
                .nodes
                .iter()
                .map(|n| {
                    let down: Vec<String> = g.down(n.id).iter().map(|d| d.to_string()).collect();
                    vec![n.id.to_string(), n.label.clone(), format!("{:?}", n.g_matrix), down.join(",")]
                })
                .collect();
            let text = format!(
                "{} nodes, {} edges, complete: {}\n\n{}",
                g.len(),
                g.edges().len(),
                g.is_complete(),
                table(&["id", "pair", "g-matrix", "left mutations"], &rows)
            );
            ok(serde_json::to_value(&rep).unwrap(), text)
        }
        Command::Mgs { pair, budget } => {
            let ws = need(ws)?;
            let p = ws.pair(pair)?;
            let g = complete_graph(&ws.alg, *budget)?;
            let target = g.find_or_err(&p)?;
            let seqs = maximal_green_sequences(&g, target, *budget)?;
            let rows: Vec<Vec<String>> = seqs
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let labels: Vec<String> = s.iter().map(|&k| g.node(k).label()).collect();
                    vec![i.to_string(), (s.len() - 1).to_string(), labels.join(" < ")]
                })
                .collect();
            let seq_json: Vec<Value> = seqs
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let labels: Vec<String> = s.iter().map(|&k| g.node(k).label()).collect();
                    json!({ "id": i, "length": s.len() - 1, "nodes": s, "labels": labels })
                })
                .collect();
            let text = format!(
                "{} maximal green sequences up to {}\n\n{}",
                seqs.len(),
                p.label(),
                table(&["id", "length", "torsion classes (bottom first)"], &rows)
            );
            ok(json!({ "target": pair_json(pair, &p), "sequences": seq_json }), text)
        }
        Command::Reduce { pair, budget } => {
            let ws = need(ws)?;
            let p = ws.pair(pair)?;
            let rd = tau_reduction(&p)?;
            let q = rd.quotient();
            let gq = q.gabriel_quiver();
            let arrows: Vec<Value> = gq
                .arrows
                .iter()
                .map(|a| json!({ "src": gq.vertices[a.src], "dst": gq.vertices[a.dst] }))
                .collect();
            let g = complete_graph(&ws.alg, *budget)?;
            let rep = reduction_bijection_with(&rd, &g, *budget)?;
            let passed = rep.passed();
            let rows: Vec<Vec<String>> = rep.matching.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
            let arrow_text: Vec<String> = gq
                .arrows
                .iter()
                .map(|a| format!("{} -> {}", gq.vertices[a.src], gq.vertices[a.dst]))
                .collect();
            let text = format!(
                "reduction at {}\nBongartz completion: {}\nquotient: dim {}, vertices {}, arrows [{}], path algebra: {}\n\
                 pairs containing: {}, reduced pairs: {}, bijection: {}\n\n{}",
                p.label(),
                rd.bongartz().label(),
                q.dim(),
                q.vertex_labels().join(" "),
                arrow_text.join(", "),
                q.n() > 0 && q.is_path_algebra(),
                rep.containing,
                rep.reduced,
                if passed { "ok" } else { "FAILED" },
                table(&["pair over A", "pair over the reduction"], &rows)
            );
            Ok(Outcome {
                json: json!({
                    "rel": pair_json(pair, &p),
                    "bongartz": pair_json("bongartz", rd.bongartz()),
                    "quotient": {
                        "dim": q.dim(),
                        "vertices": q.vertex_labels(),
                        "arrows": arrows,
                        "path_algebra": q.n() > 0 && q.is_path_algebra(),
                        "text": write_algebra(q),
                    },
                    "bijection": rep,
                }),
                text,
                passed,
            })
        }
        Command::Transport { pair, mgs_id, budget } => {
            let ws = need(ws)?;
            let p = ws.pair(pair)?;
            let rd = tau_reduction(&p)?;
            let g = complete_graph(&ws.alg, *budget)?;
            let target = g.find_or_err(rd.bongartz())?;
            let seqs = maximal_green_sequences(&g, target, *budget)?;
            let Some(seq) = seqs.get(*mgs_id) else {
                return Err(Error::PreconditionViolated(format!(
                    "mgs id {mgs_id} out of range: {} sequences end at {}",
                    seqs.len(),
                    rd.bongartz().label()
                )));
            };
            let mgs: Vec<TauPair> = seq.iter().map(|&k| g.node(k).clone()).collect();
            let t = transport_mgs(&rd, &mgs, *budget)?;
            let rows: Vec<Vec<String>> = mgs
                .iter()
                .zip(&t.completions)
                .map(|(a, b)| vec![a.label(), b.label()])
                .collect();
            let reduced: Vec<String> = t.reduced.iter().map(TauPair::label).collect();
            let text = format!(
                "sequence {mgs_id} of length {} transported to a sequence of length {} over the reduction\n\
                 reduced: {}\n\n{}",
                mgs.len() - 1,
                t.len(),
                reduced.join(" < "),
                table(&["input pair", "left completion"], &rows)
            );
            let labels = |v: &[TauPair]| v.iter().map(TauPair::label).collect::<Vec<_>>();
            ok(
                json!({
                    "rel": pair_json(pair, &p),
                    "mgs_id": mgs_id,
                    "input": labels(&mgs),
                    "completions": labels(&t.completions),
                    "chain": labels(&t.chain),
                    "reduced": reduced,
                    "length": t.len(),
                }),
                text,
            )
        }
        Command::Verify {
            suite,
            seed,
            budget,
            samples,
        } => {
            let s = Suite::from_str(suite)?;
            let opts = VerifyOptions {
                seed: *seed,
                budget: *budget,
                samples: *samples,
                ..VerifyOptions::default()
            };
            let algs = match ws {
                Some(w) => vec![("workspace".to_string(), w.alg.clone())],
                None => test_algebras(),
            };
            let reports = algs
                .iter()
                .map(|(n, a)| run_suite(s, n, a, &opts))
                .collect::<Result<Vec<_>>>()?;
            let passed = reports.iter().all(|r| r.passed());
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.algebra.clone(),
                        r.checks.to_string(),
                        r.failures.len().to_string(),
                        if r.passed() { "pass" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            let mut text = format!("verify {s} (seed {seed})\n\n{}", table(&["algebra", "checks", "failures", "result"], &rows));
            for r in &reports {
                for f in &r.failures {
                    text.push_str(&format!("counterexample [{}] {}: {}\n", r.algebra, f.check, f.detail));
                }
            }
            Ok(Outcome {
                json: json!({ "suite": s, "seed": seed, "passed": passed, "reports": reports }),
                text,
                passed,
            })
        }
    }?;
    Ok(out)
}

/// The full machine-readable report for one invocation.
pub fn envelope(cmd: &Command, ws: Option<&Workspace>, out: &Outcome) -> Value {
    json!({
        "command": cmd.name(),
        "algebra": ws.map(|w| json!({
            "dim": w.alg.dim(),
            "vertices": w.alg.vertex_labels(),
        })),
        "passed": out.passed,
        "result": out.json,
    })
}
