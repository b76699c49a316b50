//! The line-oriented workspace format: one algebra block followed by module,
//! pair and complex blocks.

use std::collections::HashMap;
use std::sync::Arc;

use tautilt::algebra::Presentation;
use tautilt::linalg::Matrix;
use tautilt::pair::module_label;
use tautilt::proj::PMat;
use tautilt::{
    compile_bound_quiver, to_tau_pair, BasicAlgebra, Elem, Error, Field, Module, Quiver, Relation, Result, Scalar,
    TauPair, TwoTermComplex,
};

#[derive(Clone, Debug)]
pub struct Workspace {
    pub alg: Arc<BasicAlgebra>,
    /// Built-ins `P<v>`, `S<v>` first, then declared modules in file order.
    pub modules: Vec<(String, Module)>,
    pub pairs: Vec<(String, TauPair)>,
    pub complexes: Vec<(String, TwoTermComplex)>,
}

impl Workspace {
    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::UnknownCommand(format!("no module named {name}")))
    }

    /// A named pair, or the pair of a named presilting complex.
    pub fn pair(&self, name: &str) -> Result<TauPair> {
        if let Some((_, p)) = self.pairs.iter().find(|(n, _)| n == name) {
            return Ok(p.clone());
        }
        if let Some((_, c)) = self.complexes.iter().find(|(n, _)| n == name) {
            return to_tau_pair(&self.alg, c);
        }
        Err(Error::UnknownCommand(format!("no pair or complex named {name}")))
    }

    pub fn complex(&self, name: &str) -> Result<&TwoTermComplex> {
        self.complexes
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::UnknownCommand(format!("no complex named {name}")))
    }
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        col,
        msg: msg.into(),
    })
}

/// Whitespace-separated words with their 1-based columns.
fn words(s: &str, col0: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((col0 + s[..b].chars().count(), &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((col0 + s[..b].chars().count(), &s[b..]));
    }
    out
}

/// The text after the first `k` words, and its column.
fn rest_after(s: &str, k: usize, col0: usize) -> (&str, usize) {
    let mut idx = 0;
    for _ in 0..k {
        let t = s[idx..].trim_start();
        idx = s.len() - t.len();
        let end = t.find(char::is_whitespace).unwrap_or(t.len());
        idx += end;
    }
    let t = s[idx..].trim_start();
    let b = s.len() - t.len();
    (t.trim_end(), col0 + s[..b].chars().count())
}

/// Rows of raw entries with their columns.
type Nested = Vec<Vec<(String, usize)>>;

/// Parses `[[x, y], [z, w]]` into rows of raw entries.
fn parse_nested(s: &str, col0: usize) -> std::result::Result<Nested, (usize, String)> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let skip = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let expect = |i: &mut usize, c: char| -> std::result::Result<(), (usize, String)> {
        if *i < chars.len() && chars[*i] == c {
            *i += 1;
            Ok(())
        } else {
            Err((col0 + *i, format!("expected '{c}'")))
        }
    };
    skip(&mut i);
    expect(&mut i, '[')?;
    let mut rows = Vec::new();
    skip(&mut i);
    if i < chars.len() && chars[i] == ']' {
        i += 1;
    } else {
        loop {
            skip(&mut i);
            expect(&mut i, '[')?;
            let mut row = Vec::new();
            skip(&mut i);
            if i < chars.len() && chars[i] == ']' {
                i += 1;
            } else {
                loop {
                    let start = i;
                    while i < chars.len() && !matches!(chars[i], ',' | ']' | '[') {
                        i += 1;
                    }
                    let entry: String = chars[start..i].iter().collect();
                    let lead = entry.len() - entry.trim_start().len();
                    if entry.trim().is_empty() {
                        return Err((col0 + start, "empty matrix entry".into()));
                    }
                    row.push((entry.trim().to_string(), col0 + start + lead));
                    if i < chars.len() && chars[i] == ',' {
                        i += 1;
                        continue;
                    }
                    expect(&mut i, ']')?;
                    break;
                }
            }
            rows.push(row);
            skip(&mut i);
            if i < chars.len() && chars[i] == ',' {
                i += 1;
                continue;
            }
            expect(&mut i, ']')?;
            break;
        }
    }
    skip(&mut i);
    if i != chars.len() {
        return Err((col0 + i, "trailing text after matrix".into()));
    }
    Ok(rows)
}

/// A signed sum of terms `c*x*y*...`; leading numeric factors form the coefficient.
fn parse_lincomb<'a>(
    s: &'a str,
    field: Field,
    is_name: &dyn Fn(&str) -> bool,
) -> std::result::Result<Vec<(Scalar, Vec<&'a str>)>, String> {
    let t = s.trim();
    if t == "0" {
        return Ok(Vec::new());
    }
    let one = field.one();
    let mut raw: Vec<(Scalar, &'a str)> = Vec::new();
    let mut sign = one.clone();
    let mut start = 0;
    let mut prev: Option<char> = None;
    for (i, c) in t.char_indices() {
        if c == '+' || c == '-' {
            let s = if c == '-' { one.neg() } else { one.clone() };
            match prev {
                None => {
                    sign = s;
                    start = i + 1;
                }
                Some('/') | Some('*') => {}
                Some(_) => {
                    raw.push((sign, &t[start..i]));
                    sign = s;
                    start = i + 1;
                    prev = None;
                    continue;
                }
            }
        }
        if !c.is_whitespace() {
            prev = Some(c);
        }
    }
    raw.push((sign, &t[start..]));
    let mut terms = Vec::new();
    for (sign, body) in raw {
        let mut coeff = sign;
        let mut names = Vec::new();
        for f in body.split('*').map(str::trim) {
            if f.is_empty() {
                return Err(format!("empty factor in '{}'", body.trim()));
            }
            if names.is_empty() && !is_name(f) {
                if let Some(c) = Scalar::parse(field, f) {
                    coeff = coeff.mul(&c);
                    continue;
                }
            }
            if !is_name(f) {
                return Err(format!("unknown name '{f}'"));
            }
            names.push(f);
        }
        if names.is_empty() {
            return Err(format!("term '{}' has no path", body.trim()));
        }
        terms.push((coeff, names));
    }
    Ok(terms)
}

#[derive(Default)]
struct AlgebraSpec {
    header: bool,
    field: Option<Field>,
    vertices: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
    relations: Vec<(usize, usize, String)>,
    bound: Option<usize>,
}

impl AlgebraSpec {
    fn compile(&self, line: usize) -> Result<Arc<BasicAlgebra>> {
        if self.vertices.is_empty() {
            return perr(line, 1, "algebra block declares no vertices");
        }
        let field = self.field.unwrap_or(Field::Rational);
        let verts: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, usize, usize)> = self.arrows.iter().map(|(l, s, t)| (l.as_str(), *s, *t)).collect();
        let q = Quiver::new(&verts, &arrows);
        let mut rels = Vec::new();
        for (ln, col, text) in &self.relations {
            let is_arrow = |f: &str| q.arrow_index(f).is_some();
            let terms = parse_lincomb(text, field, &is_arrow).or_else(|m| perr(*ln, *col, m))?;
            let terms = terms
                .into_iter()
                .map(|(c, ws)| (c, ws.iter().map(|w| q.arrow_index(w).unwrap()).collect()))
                .collect();
            rels.push(Relation { terms });
        }
        let bound = match self.bound {
            Some(b) => b,
            None if q.is_acyclic() => self.vertices.len(),
            None => return perr(line, 1, "a cyclic quiver needs a `bound` line"),
        };
        Ok(Arc::new(compile_bound_quiver(field, &q, &rels, bound)?))
    }
}

struct ModuleSpec {
    name: String,
    line: usize,
    dims: Option<Vec<usize>>,
    maps: Vec<(usize, usize, String, usize, String)>,
}

struct ComplexSpec {
    name: String,
    line: usize,
    deg1: Option<Vec<usize>>,
    deg0: Option<Vec<usize>>,
    diff: Option<(usize, usize, String)>,
}

struct PairSpec {
    name: String,
    line: usize,
    m: Vec<(usize, String)>,
    p: Vec<(usize, String)>,
}

enum Block {
    None,
    Module(ModuleSpec),
    Complex(ComplexSpec),
}

fn arrow_generator(alg: &BasicAlgebra, label: &str) -> Option<usize> {
    alg.generators().iter().position(|&g| alg.basis()[g].name == label)
}

fn build_module(alg: &Arc<BasicAlgebra>, spec: ModuleSpec) -> Result<Module> {
    let f = alg.field();
    let Some(dims) = spec.dims else {
        return perr(spec.line, 1, format!("module {} has no `dim` line", spec.name));
    };
    let mut gens: Vec<Option<Matrix>> = vec![None; alg.generators().len()];
    for (ln, col, label, mcol, text) in spec.maps {
        let Some(gi) = arrow_generator(alg, &label) else {
            return perr(ln, col, format!("unknown arrow {label}"));
        };
        if gens[gi].is_some() {
            return perr(ln, col, format!("map {label} given twice"));
        }
        let (s, t) = alg.peirce(alg.generators()[gi]);
        let rows = parse_nested(&text, mcol).or_else(|(c, m)| perr(ln, c, m))?;
        if rows.len() != dims[t] || rows.iter().any(|r| r.len() != dims[s]) {
            return perr(
                ln,
                mcol,
                format!("map {label} must be {}x{} (target x source)", dims[t], dims[s]),
            );
        }
        let mut vals = Vec::new();
        for row in rows {
            let mut r = Vec::new();
            for (e, c) in row {
                match Scalar::parse(f, &e) {
                    Some(x) => r.push(x),
                    None => return perr(ln, c, format!("bad scalar '{e}'")),
                }
            }
            vals.push(r);
        }
        gens[gi] = Some(Matrix::from_rows(f, vals, dims[s]));
    }
    let gens = gens
        .into_iter()
        .enumerate()
        .map(|(gi, m)| {
            let (s, t) = alg.peirce(alg.generators()[gi]);
            m.unwrap_or_else(|| Matrix::zeros(f, dims[t], dims[s]))
        })
        .collect();
    Module::from_generators(alg.clone(), dims, gens)
}

/// Parses an algebra element written over arrow labels and idempotents `e<v>`.
pub fn parse_element(alg: &BasicAlgebra, text: &str) -> std::result::Result<Elem, String> {
    let units: HashMap<&str, usize> = alg
        .generators()
        .iter()
        .map(|&g| (alg.basis()[g].name.as_str(), g))
        .chain((0..alg.n()).map(|v| (alg.basis()[v].name.as_str(), v)))
        .collect();
    let is_name = |f: &str| units.contains_key(f);
    let terms = parse_lincomb(text, alg.field(), &is_name)?;
    let mut x = alg.zero();
    for (c, names) in terms {
        let mut y = alg.unit(units[names[0]]);
        for w in &names[1..] {
            y = alg.mul(&y, &alg.unit(units[w]));
        }
        x = alg.add(&x, &alg.scale(&c, &y));
    }
    Ok(x)
}

fn expand(mults: &[usize]) -> Vec<usize> {
    mults.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(v, k)).collect()
}

fn build_complex(alg: &Arc<BasicAlgebra>, spec: ComplexSpec) -> Result<TwoTermComplex> {
    let n = alg.n();
    let m1 = expand(&spec.deg1.unwrap_or_else(|| vec![0; n]));
    let m0 = expand(&spec.deg0.unwrap_or_else(|| vec![0; n]));
    let mut d = PMat::zero(alg, &m0, &m1);
    if let Some((ln, col, text)) = spec.diff {
        let rows = parse_nested(&text, col).or_else(|(c, m)| perr(ln, c, m))?;
        let empty = rows.is_empty() || rows.iter().all(|r| r.is_empty());
        let shape_ok = (rows.len() == m0.len() && rows.iter().all(|r| r.len() == m1.len()))
            || (empty && (m0.is_empty() || m1.is_empty()));
        if !shape_ok {
            return perr(ln, col, format!("diff must be {}x{} (degree 0 x degree -1)", m0.len(), m1.len()));
        }
        for (i, row) in rows.into_iter().enumerate() {
            for (j, (e, c)) in row.into_iter().enumerate() {
                d.entries[i][j] = parse_element(alg, &e).or_else(|m| perr(ln, c, m))?;
            }
        }
    } else if !m0.is_empty() && !m1.is_empty() {
        return perr(spec.line, 1, format!("complex {} has no `diff` line", spec.name));
    }
    TwoTermComplex::new(alg, m1, m0, d)
}

fn parse_counts(ws: &[(usize, &str)], n: usize, line: usize, what: &str) -> Result<Vec<usize>> {
    if ws.len() != n {
        let col = ws.first().map_or(1, |w| w.0);
        return perr(line, col, format!("{what} needs {n} entries, found {}", ws.len()));
    }
    ws.iter()
        .map(|&(c, w)| w.parse().or_else(|_| perr(line, c, format!("bad count '{w}'"))))
        .collect()
}

fn parse_pair_line(rest: &str, col0: usize, line: usize) -> Result<PairSpec> {
    let Some((name, body)) = rest.split_once(':') else {
        return perr(line, col0, "expected `pair <name> : M = ... ; P = ...`");
    };
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return perr(line, col0, "pair name must be a single word");
    }
    let mut body_col = col0 + rest[..rest.len() - body.len()].chars().count();
    let mut spec = PairSpec {
        name: name.to_string(),
        line,
        m: Vec::new(),
        p: Vec::new(),
    };
    let mut seen = (false, false);
    for part in body.split(';') {
        let ws = words(part, body_col);
        body_col += part.chars().count() + 1;
        if ws.is_empty() {
            continue;
        }
        let (key, names) = match ws.as_slice() {
            [(_, k), (_, "="), rest @ ..] => (*k, rest),
            [(c, k), ..] => match k.split_once('=') {
                Some((k2, "")) => (k2, &ws[1..]),
                _ => return perr(line, *c, "expected `M = ...` or `P = ...`"),
            },
            [] => unreachable!(),
        };
        let names: Vec<(usize, String)> = names
            .iter()
            .filter(|(_, w)| *w != "0")
            .map(|(c, w)| (*c, w.to_string()))
            .collect();
        match key {
            "M" if !seen.0 => {
                seen.0 = true;
                spec.m = names;
            }
            "P" if !seen.1 => {
                seen.1 = true;
                spec.p = names;
            }
            _ => return perr(line, ws[0].0, format!("unexpected or repeated part '{key}'")),
        }
    }
    Ok(spec)
}

const ALGEBRA_KEYS: [&str; 6] = ["algebra", "field", "vertex", "arrow", "relation", "bound"];

/// Parses and validates a whole workspace.
pub fn parse_workspace(text: &str) -> Result<Workspace> {
    let mut spec = AlgebraSpec::default();
    let mut alg: Option<Arc<BasicAlgebra>> = None;
    let mut block = Block::None;
    let mut modules: Vec<(String, Module)> = Vec::new();
    let mut complexes: Vec<(String, TwoTermComplex)> = Vec::new();
    let mut pair_specs: Vec<PairSpec> = Vec::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut last_line = 0;

    let finish = |block: Block,
                  alg: &Arc<BasicAlgebra>,
                  modules: &mut Vec<(String, Module)>,
                  complexes: &mut Vec<(String, TwoTermComplex)>|
     -> Result<()> {
        match block {
            Block::None => {}
            Block::Module(m) => {
                let name = m.name.clone();
                modules.push((name, build_module(alg, m)?));
            }
            Block::Complex(c) => {
                let name = c.name.clone();
                complexes.push((name, build_complex(alg, c)?));
            }
        }
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let ws = words(content, 1);
        let Some(&(kcol, key)) = ws.first() else {
            continue;
        };
        if ALGEBRA_KEYS.contains(&key) {
            if alg.is_some() {
                return perr(line, kcol, "the algebra block must come first and appear once");
            }
            match key {
                "algebra" => {
                    if spec.header {
                        return perr(line, kcol, "second algebra block");
                    }
                    spec.header = true;
                }
                "field" => match &ws[1..] {
                    [(_, "Q")] => spec.field = Some(Field::Rational),
                    [(_, "F"), (c, p)] => {
                        let p: u64 = p.parse().or_else(|_| perr(line, *c, "bad characteristic"))?;
                        if !Field::is_prime(p) {
                            return perr(line, *c, format!("{p} is not prime"));
                        }
                        spec.field = Some(Field::Prime(p));
                    }
                    _ => return perr(line, kcol, "expected `field Q` or `field F <p>`"),
                },
                "vertex" => {
                    for &(c, v) in &ws[1..] {
                        if spec.vertices.iter().any(|x| x == v) {
                            return perr(line, c, format!("duplicate vertex {v}"));
                        }
                        spec.vertices.push(v.to_string());
                    }
                }
                "arrow" => {
                    let [_, (_, l), (cs, s), (ct, t)] = ws.as_slice() else {
                        return perr(line, kcol, "expected `arrow <label> <src> <tgt>`");
                    };
                    let find = |v: &str, c: usize| {
                        spec.vertices
                            .iter()
                            .position(|x| x == v)
                            .map_or_else(|| perr(line, c, format!("unknown vertex {v}")), Ok)
                    };
                    let (s, t) = (find(s, *cs)?, find(t, *ct)?);
                    if l.contains('*') || Scalar::parse(Field::Rational, l).is_some() {
                        return perr(line, ws[1].0, "arrow labels must not be numbers or contain '*'");
                    }
                    spec.arrows.push((l.to_string(), s, t));
                }
                "relation" => {
                    let (r, c) = rest_after(content, 1, 1);
                    spec.relations.push((line, c, r.to_string()));
                }
                "bound" => {
                    let [_, (c, b)] = ws.as_slice() else {
                        return perr(line, kcol, "expected `bound <n>`");
                    };
                    spec.bound = Some(b.parse().or_else(|_| perr(line, *c, "bad bound"))?);
                }
                _ => unreachable!(),
            }
            continue;
        }
        let a = match &alg {
            Some(a) => a.clone(),
            None => {
                let a = spec.compile(line)?;
                for v in 0..a.n() {
                    let l = &a.vertex_labels()[v];
                    modules.push((format!("P{l}"), Module::projective(&a, v)));
                    modules.push((format!("S{l}"), Module::simple(&a, v)));
                }
                for (i, (n, _)) in modules.iter().enumerate() {
                    names.insert(n.clone(), i);
                }
                alg = Some(a.clone());
                a
            }
        };
        let n = a.n();
        let mut declare = |name: &str, col: usize| -> Result<()> {
            if names.insert(name.to_string(), line).is_some() {
                return perr(line, col, format!("name {name} is already taken"));
            }
            Ok(())
        };
        match key {
            "module" | "complex" => {
                let [_, (c, name)] = ws.as_slice() else {
                    return perr(line, kcol, format!("expected `{key} <name>`"));
                };
                declare(name, *c)?;
                let prev = std::mem::replace(&mut block, Block::None);
                finish(prev, &a, &mut modules, &mut complexes)?;
                block = if key == "module" {
                    Block::Module(ModuleSpec {
                        name: name.to_string(),
                        line,
                        dims: None,
                        maps: Vec::new(),
                    })
                } else {
                    Block::Complex(ComplexSpec {
                        name: name.to_string(),
                        line,
                        deg1: None,
                        deg0: None,
                        diff: None,
                    })
                };
            }
            "pair" => {
                let prev = std::mem::replace(&mut block, Block::None);
                finish(prev, &a, &mut modules, &mut complexes)?;
                let (r, c) = rest_after(content, 1, 1);
                let ps = parse_pair_line(r, c, line)?;
                declare(&ps.name, c)?;
                pair_specs.push(ps);
            }
            "dim" => {
                let Block::Module(m) = &mut block else {
                    return perr(line, kcol, "`dim` outside a module block");
                };
                if m.dims.is_some() {
                    return perr(line, kcol, "second `dim` line");
                }
                m.dims = Some(parse_counts(&ws[1..], n, line, "dim")?);
            }
            "map" => {
                let Block::Module(m) = &mut block else {
                    return perr(line, kcol, "`map` outside a module block");
                };
                if m.dims.is_none() {
                    return perr(line, kcol, "`map` before `dim`");
                }
                let Some(&(lcol, label)) = ws.get(1) else {
                    return perr(line, kcol, "expected `map <arrow> <matrix>`");
                };
                let (r, c) = rest_after(content, 2, 1);
                m.maps.push((line, lcol, label.to_string(), c, r.to_string()));
            }
            "deg" => {
                let Block::Complex(cx) = &mut block else {
                    return perr(line, kcol, "`deg` outside a complex block");
                };
                let Some(&(dcol, d)) = ws.get(1) else {
                    return perr(line, kcol, "expected `deg -1|0 <multiplicities>`");
                };
                let counts = parse_counts(&ws[2..], n, line, "deg")?;
                let slot = match d {
                    "-1" => &mut cx.deg1,
                    "0" => &mut cx.deg0,
                    _ => return perr(line, dcol, "degree must be -1 or 0"),
                };
                if slot.replace(counts).is_some() {
                    return perr(line, dcol, format!("second `deg {d}` line"));
                }
            }
            "diff" => {
                let Block::Complex(cx) = &mut block else {
                    return perr(line, kcol, "`diff` outside a complex block");
                };
                if cx.deg1.is_none() || cx.deg0.is_none() {
                    return perr(line, kcol, "`diff` before both `deg` lines");
                }
                let (r, c) = rest_after(content, 1, 1);
                if cx.diff.replace((line, c, r.to_string())).is_some() {
                    return perr(line, kcol, "second `diff` line");
                }
            }
            other => return perr(line, kcol, format!("unknown keyword '{other}'")),
        }
    }
    let alg = match alg {
        Some(a) => a,
        None => {
            let a = spec.compile(last_line.max(1))?;
            for v in 0..a.n() {
                let l = &a.vertex_labels()[v];
                modules.push((format!("P{l}"), Module::projective(&a, v)));
                modules.push((format!("S{l}"), Module::simple(&a, v)));
            }
            a
        }
    };
    finish(block, &alg, &mut modules, &mut complexes)?;
    let lookup = |name: &str, line: usize, col: usize| -> Result<Module> {
        match modules.iter().find(|(n, _)| n == name) {
            Some((_, m)) => Ok(m.clone()),
            None => perr(line, col, format!("unknown module {name}")),
        }
    };
    let mut pairs = Vec::new();
    for ps in pair_specs {
        let ms = ps
            .m
            .iter()
            .map(|(c, n)| lookup(n, ps.line, *c))
            .collect::<Result<Vec<_>>>()?;
        let pp = ps
            .p
            .iter()
            .map(|(c, n)| lookup(n, ps.line, *c))
            .collect::<Result<Vec<_>>>()?;
        let m = Module::direct_sum_of(&alg, &ms);
        let p = Module::direct_sum_of(&alg, &pp);
        let pair = TauPair::new(&m, &p).map_err(|e| match e {
            Error::NotProjective => Error::Parse {
                line: ps.line,
                col: 1,
                msg: format!("the P part of {} is not projective", ps.name),
            },
            e => e,
        })?;
        pairs.push((ps.name, pair));
    }
    Ok(Workspace {
        alg,
        modules,
        pairs,
        complexes,
    })
}

fn scalar_term(c: &Scalar, body: &str, first: bool) -> String {
    let neg = c.neg();
    let (sign, mag) = if c.to_string().starts_with('-') {
        ("-", neg)
    } else {
        ("+", c.clone())
    };
    let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
    match (first, sign) {
        (true, "+") => format!("{coeff}{body}"),
        (true, _) => format!("-{coeff}{body}"),
        (false, s) => format!(" {s} {coeff}{body}"),
    }
}

fn write_presentation(field: Field, p: &Presentation) -> String {
    let mut out = String::from("algebra\n");
    match field {
        Field::Rational => out.push_str("field Q\n"),
        Field::Prime(q) => out.push_str(&format!("field F {q}\n")),
    }
    out.push_str(&format!("vertex {}\n", p.quiver.vertices.join(" ")));
    for a in &p.quiver.arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            a.label, p.quiver.vertices[a.src], p.quiver.vertices[a.dst]
        ));
    }
    for r in &p.relations {
        let mut s = String::new();
        for (i, (c, w)) in r.terms.iter().enumerate() {
            let body: Vec<&str> = w.iter().map(|&a| p.quiver.arrows[a].label.as_str()).collect();
            s.push_str(&scalar_term(c, &body.join("*"), i == 0));
        }
        out.push_str(&format!("relation {s}\n"));
    }
    out.push_str(&format!("bound {}\n", p.bound));
    out
}

/// The algebra block of a compiled algebra, or of a path algebra of its Gabriel
/// quiver; `None` when neither is available.
pub fn write_algebra(alg: &BasicAlgebra) -> Option<String> {
    if let Some(p) = alg.presentation() {
        return Some(write_presentation(alg.field(), p));
    }
    if alg.n() == 0 || !alg.is_path_algebra() {
        return None;
    }
    let q = alg.gabriel_quiver();
    let mut out = String::from("algebra\n");
    match alg.field() {
        Field::Rational => out.push_str("field Q\n"),
        Field::Prime(p) => out.push_str(&format!("field F {p}\n")),
    }
    out.push_str(&format!("vertex {}\n", q.vertices.join(" ")));
    for (i, a) in q.arrows.iter().enumerate() {
        out.push_str(&format!("arrow c{} {} {}\n", i + 1, q.vertices[a.src], q.vertices[a.dst]));
    }
    out.push_str(&format!("bound {}\n", q.vertices.len()));
    Some(out)
}

fn write_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows)
        .map(|i| {
            let r: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            format!("[{}]", r.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// A module block; zero arrow matrices are omitted.
pub fn write_module(name: &str, m: &Module) -> String {
    let alg = m.algebra();
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    let mut out = format!("module {name}\ndim {}\n", dims.join(" "));
    for (gi, &g) in alg.generators().iter().enumerate() {
        let a = m.act(g);
        if a.is_zero() {
            continue;
        }
        let label = match alg.presentation() {
            Some(_) => alg.basis()[g].name.clone(),
            None => format!("c{}", gi + 1),
        };
        out.push_str(&format!("map {label} {}\n", write_matrix(a)));
    }
    out
}

/// Module blocks for the non-built-in summands followed by a pair line.
pub fn write_pair(name: &str, pair: &TauPair) -> String {
    let labels = pair.algebra().vertex_labels();
    let mut out = String::new();
    let mut ms = Vec::new();
    for (k, m) in pair.m_summands().into_iter().enumerate() {
        let l = module_label(m);
        if l.starts_with('M') {
            let n = format!("{name}_{}", k + 1);
            out.push_str(&write_module(&n, m));
            ms.push(n);
        } else {
            ms.push(l);
        }
    }
    let ps: Vec<String> = pair.p_vertices().iter().map(|&v| format!("P{}", labels[v])).collect();
    let join = |v: Vec<String>| if v.is_empty() { "0".to_string() } else { v.join(" ") };
    out.push_str(&format!("pair {name} : M = {} ; P = {}\n", join(ms), join(ps)));
    out
}
