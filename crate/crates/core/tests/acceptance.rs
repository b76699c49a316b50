//! Acceptance run: one pass/fail line per criterion.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use tautilt::algebra::examples;
use tautilt::complex::Direction;
use tautilt::explorer::{
    build_exchange_graph, left_bongartz_by_search, run_suite_on, tau_reduction, test_algebras, transport_mgs, ExchangeGraph,
    Suite, VerifyOptions,
};
use tautilt::module::{hom_dim, in_fac, is_isomorphic, torsion_part};
use tautilt::tau_ops::{left_bongartz, mutate_pair};
use tautilt::{BasicAlgebra, Field, Module, TauPair};

const BUDGET: usize = 10_000;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn p(a: &Arc<BasicAlgebra>, v: usize) -> Module {
    Module::projective(a, v - 1)
}

fn s(a: &Arc<BasicAlgebra>, v: usize) -> Module {
    Module::simple(a, v - 1)
}

fn pair(a: &Arc<BasicAlgebra>, ms: Vec<Module>, ps: &[usize]) -> TauPair {
    TauPair::from_parts(a, ms, ps.iter().map(|v| v - 1).collect())
}

fn cycle_chain(a: &Arc<BasicAlgebra>) -> Vec<TauPair> {
    vec![
        TauPair::regular(a),
        pair(a, vec![s(a, 3), p(a, 2), p(a, 3)], &[]),
        pair(a, vec![s(a, 3), p(a, 3)], &[2]),
        pair(a, vec![s(a, 3)], &[2, 1]),
        TauPair::shifted_regular(a),
    ]
}

fn worked_example() -> Outcome {
    let a = examples::three_cycle(Field::Rational);
    let mut notes = Vec::new();
    let dim_ok = a.dim() == 6;
    notes.push(format!("dim {}", a.dim()));

    let chain = cycle_chain(&a);
    let mut chain_ok = true;
    for w in chain.windows(2) {
        let k = (0..w[0].len())
            .find(|&k| !w[1].parts().iter().any(|q| q.is_isomorphic(&w[0].parts()[k])))
            .expect("consecutive pairs differ");
        let (q, dir) = mutate_pair(&w[0], k).expect("mutation");
        chain_ok &= dir == Direction::Left && q.same_as(&w[1]);
    }
    notes.push(format!("chain {}", if chain_ok { "ok" } else { "wrong" }));

    let rel = pair(&a, vec![p(&a, 1)], &[]);
    let expect = [
        TauPair::regular(&a),
        TauPair::regular(&a),
        pair(&a, vec![p(&a, 1), s(&a, 1), p(&a, 3)], &[]),
        pair(&a, vec![p(&a, 1), s(&a, 1), p(&a, 3)], &[]),
        pair(&a, vec![p(&a, 1), s(&a, 1)], &[3]),
    ];
    let got: Vec<TauPair> = chain.iter().map(|x| left_bongartz(&rel, x).expect("completion")).collect();
    let bongartz_ok = got.iter().zip(&expect).all(|(x, y)| x.same_as(y));
    notes.push(format!(
        "B^- = [{}]",
        got.iter().map(TauPair::label).collect::<Vec<_>>().join(", ")
    ));

    let rd = tau_reduction(&rel).expect("reduction");
    let c = rd.quotient();
    let q = c.gabriel_quiver();
    let reduction_ok = c.dim() == 3
        && c.is_path_algebra()
        && c.vertex_labels() == ["2'".to_string(), "3'".to_string()]
        && q.arrows.len() == 1
        && (q.arrows[0].src, q.arrows[0].dst) == (0, 1);
    notes.push(format!("A_(P1,0) dim {}", c.dim()));

    let mgs: Vec<TauPair> = chain.iter().rev().cloned().collect();
    let t = transport_mgs(&rd, &mgs, BUDGET).expect("transport");
    let transport_ok = t.len() == 2
        && t.reduced[0].same_as(&TauPair::shifted_regular(c))
        && is_isomorphic(&t.reduced[1].m_module(), &Module::simple(c, 1)).is_some()
        && t.reduced[2].same_as(&TauPair::regular(c));
    notes.push(format!("transported length {}", t.len()));

    // The search route on the same instances.
    let g = build_exchange_graph(&a, BUDGET).expect("graph");
    let routes_ok = chain
        .iter()
        .zip(&got)
        .all(|(x, y)| g.node(left_bongartz_by_search(&g, &rel, x).expect("search")).same_as(y));
    ROUTES_1.store(routes_ok, std::sync::atomic::Ordering::SeqCst);

    outcome(dim_ok && chain_ok && bongartz_ok && reduction_ok && transport_ok, notes.join("; "))
}

static ROUTES_1: std::sync::atomic::AtomicBool = std::sync::atomic::AtomicBool::new(false);

fn indecomposables(name: &str, a: &Arc<BasicAlgebra>) -> Vec<Module> {
    match name {
        "A2" => vec![p(a, 1), p(a, 2), s(a, 1)],
        "A3" => {
            let s3 = s(a, 3);
            vec![
                torsion_part(&s3, &p(a, 1)).unwrap().quot,
                p(a, 1),
                torsion_part(&s3, &p(a, 2)).unwrap().quot,
                p(a, 2),
                s(a, 1),
                s3,
            ]
        }
        _ => (1..=3).flat_map(|v| [p(a, v), s(a, v)]).collect(),
    }
}

/// Torsion classes `⊥(S^⊥)` over all sets `S` of indecomposables.
fn brute_force_torsion_classes(inds: &[Module]) -> BTreeSet<Vec<usize>> {
    let k = inds.len();
    let hom: Vec<Vec<bool>> = inds
        .iter()
        .map(|x| inds.iter().map(|y| hom_dim(x, y).unwrap() != 0).collect())
        .collect();
    (0u32..(1 << k))
        .map(|mask| {
            let free: Vec<usize> = (0..k).filter(|&y| (0..k).all(|x| mask & (1 << x) == 0 || !hom[x][y])).collect();
            (0..k).filter(|&x| free.iter().all(|&y| !hom[x][y])).collect()
        })
        .collect()
}

fn covers(classes: &BTreeSet<Vec<usize>>) -> usize {
    let sets: Vec<BTreeSet<usize>> = classes.iter().map(|c| c.iter().copied().collect()).collect();
    let between = |a: &BTreeSet<usize>, b: &BTreeSet<usize>| {
        sets.iter().any(|c| c.len() > a.len() && c.len() < b.len() && a.is_subset(c) && c.is_subset(b))
    };
    sets.iter()
        .flat_map(|a| sets.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.len() < b.len() && a.is_subset(b) && !between(a, b))
        .count()
}

fn graph_counts(graphs: &[(String, Arc<BasicAlgebra>, ExchangeGraph)]) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, a, g) in graphs {
        let inds = indecomposables(name, a);
        let oracle = brute_force_torsion_classes(&inds);
        let classes: BTreeSet<Vec<usize>> = g
            .nodes()
            .iter()
            .map(|x| {
                let m = x.m_module();
                (0..inds.len()).filter(|&i| in_fac(&m, &inds[i]).unwrap()).collect()
            })
            .collect();
        let good = g.is_complete() && classes == oracle && g.edges().len() == covers(&oracle);
        ok &= good;
        notes.push(format!("{name}: {} nodes, {} edges, oracle {}", g.len(), g.edges().len(), oracle.len()));
    }
    let a2 = &graphs[0].2;
    ok &= a2.len() == 5 && a2.edges().len() == 5;
    let (_, a, g) = &graphs[2];
    let idx: Option<Vec<usize>> = cycle_chain(a).iter().map(|x| g.find(x)).collect();
    let path_ok = idx.is_some_and(|v| v.windows(2).all(|w| g.has_edge(w[0], w[1])));
    ok &= path_ok;
    notes.push(format!("3-cycle path {}", if path_ok { "present" } else { "missing" }));
    outcome(ok, notes.join("; "))
}

fn suite(graphs: &[(String, Arc<BasicAlgebra>, ExchangeGraph)], which: Suite, only: Option<&str>, opts: &VerifyOptions) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, _, g) in graphs {
        if only.is_some_and(|o| o != name) {
            continue;
        }
        match run_suite_on(which, name, g, opts) {
            Ok(r) => {
                ok &= r.passed();
                notes.push(format!("{name}: {} checks, {} failures", r.checks, r.failures.len()));
                for f in r.failures.iter().take(3) {
                    notes.push(format!("  {}: {}", f.check, f.detail));
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{name}: error {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn main() {
    let opts = VerifyOptions::default();
    let mut rows: Vec<(usize, &str, Outcome, Duration, Option<Duration>)> = Vec::new();
    let mut run = |n: usize, title: &'static str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let t0 = Instant::now();
        let o = f();
        let dt = t0.elapsed();
        rows.push((n, title, o, dt, limit));
        let (n, title, o, dt, limit) = rows.last().unwrap();
        let in_time = limit.map_or(true, |l| *dt <= l);
        let verdict = if o.ok && in_time { "PASS" } else { "FAIL" };
        let lim = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!("criterion {n} [{verdict}] {title}: {:.2}s{lim}; {}", dt.as_secs_f64(), o.detail);
    };

    run(1, "worked example end to end", Some(Duration::from_secs(10)), &mut worked_example);

    let t0 = Instant::now();
    let graphs: Vec<(String, Arc<BasicAlgebra>, ExchangeGraph)> = test_algebras()
        .into_iter()
        .map(|(n, a)| {
            let g = build_exchange_graph(&a, BUDGET).expect("graph");
            (n, a, g)
        })
        .collect();
    let build_time = t0.elapsed();
    run(2, "exchange-graph counts", Some(Duration::from_secs(30)), &mut || {
        let mut o = graph_counts(&graphs);
        o.detail = format!("graphs built in {:.2}s; {}", build_time.as_secs_f64(), o.detail);
        o
    });
    run(3, "brick dichotomy sweep", Some(Duration::from_secs(300)), &mut || suite(&graphs, Suite::Mainthm, None, &opts));
    run(4, "silting route = torsion route", None, &mut || {
        let mut o = suite(&graphs, Suite::Mainthm4, None, &opts);
        let worked = ROUTES_1.load(std::sync::atomic::Ordering::SeqCst);
        o.ok &= worked;
        o.detail = format!("worked example routes agree: {worked}; {}", o.detail);
        o
    });
    run(5, "silting-side mutation sweep", None, &mut || suite(&graphs, Suite::Mainthm3, None, &opts));
    run(6, "dagger suite", None, &mut || suite(&graphs, Suite::Dagger, None, &opts));
    run(7, "reduction bijection", Some(Duration::from_secs(300)), &mut || {
        suite(&graphs, Suite::Reduction, Some("3-cycle"), &opts)
    });
    run(8, "structural invariants", None, &mut || suite(&graphs, Suite::Thmair, None, &opts));
    run(9, "compare (a)(b)(c)(e)", None, &mut || suite(&graphs, Suite::Compare1, None, &opts));

    let failed: Vec<usize> = rows
        .iter()
        .filter(|(_, _, o, dt, l)| !(o.ok && l.map_or(true, |l| *dt <= l)))
        .map(|r| r.0)
        .collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", rows.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
