use std::path::PathBuf;
use std::process::{Command, Output};

use tautilt::explorer::build_exchange_graph;
use tautilt::module::is_isomorphic;
use tautilt::{Error, Module, TauPair};
use tautilt_cli::commands::{module_json, pair_json};
use tautilt_cli::{execute, parse_workspace, write_algebra, Command as Cmd, Workspace};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load(name: &str) -> Workspace {
    parse_workspace(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautilt")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cycle_path() -> String {
    data("three_cycle.tt").display().to_string()
}

const CYCLE_ALGEBRA: &str = "field Q\nvertex 1 2 3\narrow a3 1 2\narrow a1 2 3\narrow a2 3 1\n\
relation a1*a2\nrelation a2*a3\nrelation a3*a1\nbound 3\n";

fn parse_err(text: &str) -> (usize, usize, String) {
    match parse_workspace(text) {
        Err(Error::Parse { line, col, msg }) => (line, col, msg),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn three_cycle_workspace_loads() {
    let ws = load("three_cycle.tt");
    assert_eq!(ws.alg.dim(), 6);
    assert_eq!(ws.alg.n(), 3);
    assert_eq!(ws.pairs.len(), 6);
    for (name, _) in &ws.pairs {
        assert!(ws.pair(name).unwrap().is_tau_rigid(), "{name}");
    }
    let p1 = ws.module("P1").unwrap();
    assert!(is_isomorphic(ws.module("TopOne").unwrap(), p1).is_some());
    assert_eq!(ws.pair("PairP1").unwrap().label(), "(P1, 0)");
    assert_eq!(ws.pair("PresS1").unwrap().label(), "(S1, 0)");
    assert_eq!(ws.module("S2").unwrap().dims(), &[0, 1, 0]);
}

#[test]
fn zero_module_from_dim_line() {
    let ws = parse_workspace(&format!("{CYCLE_ALGEBRA}module Z\ndim 0 0 0\npair Nothing : M = Z ; P = 0\n")).unwrap();
    let z = ws.module("Z").unwrap();
    assert!(z.is_zero());
    assert!(ws.pair("Nothing").unwrap().is_empty());
}

#[test]
fn wrong_map_shape_is_a_parse_error() {
    let (line, col, msg) = parse_err(&format!("{CYCLE_ALGEBRA}module M\ndim 1 1 0\nmap a3 [[1, 0]]\n"));
    assert_eq!((line, col), (12, 8));
    assert!(msg.contains("1x1"), "{msg}");
}

#[test]
fn parse_errors_carry_positions() {
    let (line, col, _) = parse_err("vertex 1 2\narrow a 1 7\n");
    assert_eq!((line, col), (2, 11));
    let (line, _, msg) = parse_err(&format!("{CYCLE_ALGEBRA}module M\ndim 1 1\n"));
    assert_eq!(line, 11);
    assert!(msg.contains("3 entries"));
    let (line, col, _) = parse_err(&format!("{CYCLE_ALGEBRA}pair X : M = Q7 ; P = 0\n"));
    assert_eq!((line, col), (10, 14));
    let (_, _, msg) = parse_err(&format!("{CYCLE_ALGEBRA}pair X : M = 0 ; P = S1\n"));
    assert!(msg.contains("not projective"));
    let (line, col, _) = parse_err(&format!("{CYCLE_ALGEBRA}frobnicate\n"));
    assert_eq!((line, col), (10, 1));
    let (line, _, _) = parse_err(&format!("{CYCLE_ALGEBRA}module P1\ndim 1 0 0\n"));
    assert_eq!(line, 10);
    let (line, _, _) = parse_err(&format!("{CYCLE_ALGEBRA}module M\ndim 1 0 0\nvertex 4\n"));
    assert_eq!(line, 12);
    let (line, col, _) = parse_err(&format!("{CYCLE_ALGEBRA}module M\ndim 1 1 0\nmap a3 [[x]]\n"));
    assert_eq!((line, col), (12, 10));
}

#[test]
fn module_relations_are_checked_at_load() {
    // The 3-cycle kills a3*a1, so nonzero a3 and a1 through a 1-dimensional space fail.
    let r = parse_workspace(&format!("{CYCLE_ALGEBRA}module M\ndim 1 1 1\nmap a3 [[1]]\nmap a1 [[1]]\n"));
    assert!(matches!(r, Err(Error::InvariantViolation(_))), "{r:?}");
}

#[test]
fn relations_with_coefficients() {
    // Commutative square: 4 idempotents, 4 arrows, one surviving length-2 path.
    let text = "field Q\nvertex 1 2 3 4\narrow b1 1 2\narrow b2 2 4\narrow c1 1 3\narrow c2 3 4\n\
                relation b1*b2 - c1*c2\n";
    assert_eq!(parse_workspace(text).unwrap().alg.dim(), 9);
    let zero_rel = text.replace("b1*b2 - c1*c2", "2*b1*b2 + -1/2*c1*c2");
    assert_eq!(parse_workspace(&zero_rel).unwrap().alg.dim(), 9);
    let free = text.replace("relation b1*b2 - c1*c2\n", "");
    assert_eq!(parse_workspace(&free).unwrap().alg.dim(), 10);
}

#[test]
fn prime_field_and_cyclic_bound() {
    let ws = parse_workspace("field F 2\nvertex 1\narrow x 1 1\nrelation x*x*x\nbound 3\n").unwrap();
    assert_eq!(ws.alg.dim(), 3);
    let (_, _, msg) = parse_err("field F 4\nvertex 1\n");
    assert!(msg.contains("not prime"));
    let (_, _, msg) = parse_err("vertex 1\narrow x 1 1\nrelation x*x\n");
    assert!(msg.contains("bound"));
}

#[test]
fn complexes_are_validated() {
    let bad = format!("{CYCLE_ALGEBRA}complex C\ndeg -1 0 1 0\ndeg 0 1 0 0\ndiff [[a1]]\n");
    assert!(matches!(parse_workspace(&bad), Err(Error::InvariantViolation(_))));
    let shape = format!("{CYCLE_ALGEBRA}complex C\ndeg -1 0 1 0\ndeg 0 1 0 0\ndiff [[a3, a3]]\n");
    assert_eq!(parse_err(&shape).0, 13);
    // The identity P1 -> P1 is contractible, so its pair is empty.
    let ident = format!("{CYCLE_ALGEBRA}complex C\ndeg -1 1 0 0\ndeg 0 1 0 0\ndiff [[e1]]\n");
    let ws = parse_workspace(&ident).unwrap();
    assert!(ws.pair("C").unwrap().is_empty());
    // P2 -> P1 + P1 twice through a3 has a split part.
    let two = format!("{CYCLE_ALGEBRA}complex C\ndeg -1 0 1 0\ndeg 0 2 0 0\ndiff [[a3],[2*a3]]\n");
    let ws = parse_workspace(&two).unwrap();
    assert_eq!(ws.pair("C").unwrap().label(), "(P1+S1, 0)");
}

#[test]
fn emitted_pairs_reparse() {
    for file in ["a2.tt", "a3.tt", "three_cycle.tt"] {
        let ws = load(file);
        let alg_text = write_algebra(&ws.alg).unwrap();
        let g = build_exchange_graph(&ws.alg, 1000).unwrap();
        let mut pieces: Vec<(String, TauPair)> = Vec::new();
        for (i, p) in g.nodes().iter().enumerate() {
            pieces.push((format!("N{i}"), p.clone()));
            if p.len() > 1 {
                pieces.push((format!("R{i}"), p.without(&[0])));
            }
        }
        let mut text = alg_text.clone();
        for (name, p) in &pieces {
            text.push_str(&pair_json(name, p).text);
        }
        let back = parse_workspace(&text).unwrap();
        assert_eq!(back.alg.dim(), ws.alg.dim());
        for (name, p) in &pieces {
            let q = back.pair(name).unwrap();
            assert_eq!(q.fingerprint(), p.fingerprint(), "{file} {name}");
            let qm = q.m_module().rebase(&ws.alg).unwrap();
            assert!(is_isomorphic(&qm, &p.m_module()).is_some(), "{file} {name}");
        }
    }
}

#[test]
fn emitted_modules_reparse() {
    let ws = load("a3.tt");
    let m = ws.module("M12").unwrap().direct_sum(ws.module("S1").unwrap());
    let mj = module_json("Out", &m).unwrap();
    assert_eq!(mj.label, "M[1,1,0]+S1");
    let back = parse_workspace(&(write_algebra(&ws.alg).unwrap() + &mj.text)).unwrap();
    let out = back.module("Out").unwrap().rebase(&ws.alg).unwrap();
    assert!(is_isomorphic(&out, &m).is_some());
}

#[test]
fn reduced_algebra_text_reparses() {
    let ws = load("three_cycle.tt");
    let out = execute(
        &Cmd::Reduce {
            pair: "PairP1".into(),
            budget: 1000,
        },
        Some(&ws),
    )
    .unwrap();
    assert!(out.passed);
    let q = &out.json["quotient"];
    assert_eq!(q["dim"], 3);
    let text = q["text"].as_str().unwrap();
    let back = parse_workspace(text).unwrap();
    assert_eq!(back.alg.dim(), 3);
    assert_eq!(back.alg.vertex_labels(), &["2'".to_string(), "3'".to_string()]);
    // Same pentagon as A2.
    let g = build_exchange_graph(&back.alg, 100).unwrap();
    assert_eq!((g.len(), g.edges().len()), (5, 5));
}

#[test]
fn bongartz_on_the_three_cycle() {
    let w = cycle_path();
    let o = run(&["-w", &w, "bongartz", "--left", "--rel", "PairP1", "PairS3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("left completion of PairS3 relative to PairP1: (P1+S1+P3, 0)"));
    let o = run(&["-w", &w, "bongartz", "--left", "--rel", "PairP1", "PairZero"]);
    assert!(stdout(&o).starts_with("left completion of PairZero relative to PairP1: (P1+S1, P3)"));
    let o = run(&["-w", &w, "--json", "bongartz", "--right", "PairP1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["completion"]["label"], "(P1+P2+P3, 0)");
    let o = run(&["-w", &w, "bongartz", "--left", "PairP1"]);
    assert!(stdout(&o).starts_with("left completion of PairP1: (P1+S1, P3)"));
}

#[test]
fn graph_dot_on_a2_is_a_pentagon() {
    let dir = std::env::temp_dir().join(format!("tautilt-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("out.dot");
    let a2 = data("a2.tt").display().to_string();
    let o = run(&["-w", &a2, "graph", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    let nodes = text.lines().filter(|l| l.trim_start().starts_with('n') && !l.contains("->")).count();
    let edges: Vec<&str> = text.lines().filter(|l| l.contains("->")).collect();
    assert_eq!(nodes, 5);
    assert_eq!(edges.len(), 5);
    // Pentagon: two maximal chains of lengths 2 and 3 from the top.
    let o = run(&["-w", &a2, "--json", "mgs", "Top"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut lens: Vec<u64> = v["result"]["sequences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["length"].as_u64().unwrap())
        .collect();
    lens.sort();
    assert_eq!(lens, vec![2, 3]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_dagger_passes() {
    let o = run(&["verify", "dagger"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3-cycle"));
    let o = run(&["-w", &cycle_path(), "verify", "dagger"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exit_codes_for_errors() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["-w", &cycle_path(), "check", "Missing"]).status.code(), Some(1));
    assert_eq!(run(&["check", "PairA"]).status.code(), Some(1));
    assert_eq!(run(&["-w", "/nonexistent/file.tt", "check", "PairA"]).status.code(), Some(1));
    assert_eq!(run(&["-w", &cycle_path(), "mutate", "PairP1", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let w = cycle_path();
    for args in [
        vec!["--json", "verify", "thmair", "--seed", "7", "--samples", "30"],
        vec!["-w", &w, "--json", "graph"],
        vec!["-w", &w, "--json", "mgs", "PairA"],
        vec!["-w", &w, "verify", "mainthm"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn other_seeds_also_pass() {
    let run_seed = |s: &str| {
        let o = run(&["--json", "verify", "thmair", "--seed", s, "--samples", "30"]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let (a, b) = (run_seed("1"), run_seed("2"));
    let va: serde_json::Value = serde_json::from_slice(&a).unwrap();
    let vb: serde_json::Value = serde_json::from_slice(&b).unwrap();
    assert_eq!(va["result"]["passed"], true);
    assert_eq!(vb["result"]["passed"], true);
}

#[test]
fn transport_on_the_three_cycle() {
    let ws = load("three_cycle.tt");
    let out = execute(
        &Cmd::Mgs {
            pair: "PairA".into(),
            budget: 1000,
        },
        Some(&ws),
    )
    .unwrap();
    let seqs = out.json["sequences"].as_array().unwrap();
    let chain = ["(0, P1+P2+P3)", "(S3, P1+P2)", "(S3+P3, P2)", "(S3+P2+P3, 0)", "(P1+P2+P3, 0)"];
    let id = seqs
        .iter()
        .position(|s| s["labels"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).eq(chain))
        .unwrap();
    let out = execute(
        &Cmd::Transport {
            pair: "PairP1".into(),
            mgs_id: id,
            budget: 1000,
        },
        Some(&ws),
    )
    .unwrap();
    assert_eq!(out.json["length"], 2);
    assert_eq!(
        out.json["completions"],
        serde_json::json!(["(P1+S1, P3)", "(P1+S1+P3, 0)", "(P1+S1+P3, 0)", "(P1+P2+P3, 0)", "(P1+P2+P3, 0)"])
    );
    assert_eq!(out.json["reduced"], serde_json::json!(["(0, P2'+P3')", "(P3', P2')", "(P2'+P3', 0)"]));
    let bad = execute(
        &Cmd::Transport {
            pair: "PairP1".into(),
            mgs_id: 999,
            budget: 1000,
        },
        Some(&ws),
    );
    assert!(matches!(bad, Err(Error::PreconditionViolated(_))));
}

#[test]
fn check_tau_and_mutate() {
    let ws = load("three_cycle.tt");
    let out = execute(&Cmd::Check { pair: "PairM2".into() }, Some(&ws)).unwrap();
    assert_eq!(out.json["pair"]["role"], "tau_tilting");
    let out = execute(&Cmd::Check { pair: "PairP1".into() }, Some(&ws)).unwrap();
    assert_eq!(out.json["pair"]["role"], "tau_rigid");
    // τ S1 = S2 and τ P1 = 0 on the 3-cycle.
    let out = execute(&Cmd::Tau { module: "S1".into() }, Some(&ws)).unwrap();
    assert_eq!(out.json["tau"]["label"], "S2");
    let out = execute(&Cmd::Tau { module: "P1".into() }, Some(&ws)).unwrap();
    assert_eq!(out.json["tau"]["label"], "0");
    // The chain: mutating PairM1 at the slot of P2 gives PairM2.
    let m1 = ws.pair("PairM1").unwrap();
    let slot = m1
        .parts()
        .iter()
        .position(|p| p.module().is_some_and(|m| is_isomorphic(m, &Module::projective(&ws.alg, 1)).is_some()))
        .unwrap();
    let out = execute(&Cmd::Mutate { pair: "PairM1".into(), slot }, Some(&ws)).unwrap();
    assert_eq!(out.json["direction"], "left");
    assert_eq!(out.json["to"]["label"], ws.pair("PairM2").unwrap().label());
}
