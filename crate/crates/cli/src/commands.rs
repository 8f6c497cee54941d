use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use clap::ValueEnum;
use leavitt_core::classify::{self, CheckResult, ClassificationReport};
use leavitt_core::graph::Graph;
use leavitt_core::kernel::{Element, ElementMatrix, Leavitt, PiOutcome, SearchBudget, Witness};
use leavitt_core::monoid::{
    AbelianVerdict, Bounds, EqualityChain, IrreducibleVerdict, Monoid, MonoidVector, SearchStats,
};
use leavitt_core::selfcheck::{self, SelfcheckConfig};
use serde_json::{json, Value};

use crate::query::{self, Query};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    PropertyFailure,
    InputError,
}

pub struct Item {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

pub struct Config {
    pub bounds: Bounds,
    pub budget: SearchBudget,
    pub lattice_cap: usize,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    /// `v ⊕ v ≾ v` from two closed simple paths at a vertex.
    VertexPi,
    /// `v ≾ x` for a vertex `v`, given a nonzero element `x`.
    Reduce,
    /// `r(p) ≾ s(p)` for a path `p`.
    PathSubeq,
    /// `a ⊕ a ≾ a` for an element `a`.
    ProperInf,
}

impl WitnessKind {
    fn name(self) -> &'static str {
        match self {
            WitnessKind::VertexPi => "vertex-pi",
            WitnessKind::Reduce => "reduce",
            WitnessKind::PathSubeq => "path-subeq",
            WitnessKind::ProperInf => "proper-inf",
        }
    }
}

struct Failure {
    message: String,
    status: Status,
}

fn input(message: impl std::fmt::Display) -> Failure {
    Failure {
        message: message.to_string(),
        status: Status::InputError,
    }
}

fn error_item(path: &Path, f: Failure) -> Item {
    Item {
        json: json!({
            "schema": "leavitt.error/1",
            "input": path.display().to_string(),
            "error": f.message,
        }),
        text: format!("error: {}: {}\n", path.display(), f.message),
        status: f.status,
    }
}

fn run(path: &Path, body: impl FnOnce(&str, Graph) -> Result<Item, Failure>) -> Item {
    let loaded = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read: {e}")))
        .and_then(|text| Graph::from_json(&text).map_err(input));
    let name = path
        .file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    match loaded.and_then(|g| body(&name, g)) {
        Ok(item) => item,
        Err(f) => error_item(path, f),
    }
}

fn check_text(c: &CheckResult) -> String {
    match &c.counterexample {
        None => "holds".into(),
        Some(e) => format!("fails: {e}"),
    }
}

fn sets_text(sets: &[Vec<String>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn count(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn classification_text(r: &ClassificationReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "{}: {}, {}", r.graph, count(r.vertices, "vertex", "vertices"), count(r.edges, "edge", "edges"));
    let rows = [
        ("simple", r.verdicts.simple.to_string()),
        ("purely infinite", r.verdicts.purely_infinite.to_string()),
        ("purely infinite simple", r.verdicts.purely_infinite_simple.to_string()),
        ("(vi) tails", check_text(&r.purely_infinite.tails_have_exits)),
        ("(vii) condition K", check_text(&r.purely_infinite.condition_k_and_cycles)),
        ("only trivial H", check_text(&r.purely_infinite_simple.only_trivial_hereditary_saturated)),
        ("cycles have exits", check_text(&r.purely_infinite_simple.every_cycle_has_exit)),
        ("vertices reach cycles", check_text(&r.purely_infinite_simple.every_vertex_reaches_cycle)),
        ("condition (K)", check_text(&r.condition_k)),
        ("condition (L)", check_text(&r.condition_l)),
        ("maximal tails", sets_text(&r.maximal_tails)),
    ];
    for (label, value) in rows {
        let _ = writeln!(t, "  {label:<24}{value}");
    }
    t
}

pub fn classify(path: &Path, cfg: &Config) -> Item {
    run(path, |name, g| {
        let report = classify::classify(&g, name, cfg.lattice_cap).map_err(input)?;
        Ok(Item {
            json: serde_json::to_value(&report).expect("report serializes"),
            text: classification_text(&report),
            status: Status::Ok,
        })
    })
}

pub fn ideals(path: &Path, cfg: &Config) -> Item {
    run(path, |name, g| {
        let lattice = classify::classify(&g, name, cfg.lattice_cap).map_err(input)?.ideal_lattice;
        let mut text = format!(
            "{name}: {} {} ({})\n",
            lattice.sets.len(),
            lattice.kind,
            if lattice.complete { "complete" } else { "graded only" }
        );
        for (i, s) in lattice.sets.iter().enumerate() {
            let _ = writeln!(text, "  [{i}] {{{}}}", s.join(", "));
        }
        for [a, b] in &lattice.inclusions {
            let _ = writeln!(text, "  [{a}] < [{b}]");
        }
        Ok(Item {
            json: json!({
                "schema": "leavitt.ideals/1",
                "graph": name,
                "kind": lattice.kind,
                "complete": lattice.complete,
                "sets": lattice.sets,
                "inclusions": lattice.inclusions,
            }),
            text,
            status: Status::Ok,
        })
    })
}

fn matrix_strings(alg: &Leavitt, m: &ElementMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| alg.format(x)).collect())
        .collect()
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    rows.iter()
        .map(|r| format!("    [{}]\n", r.join(", ")))
        .collect()
}

/// Re-verifies `x = α y β` and renders the claim.
fn witness_item(
    alg: &Leavitt,
    name: &str,
    kind: WitnessKind,
    x: &ElementMatrix,
    y: &ElementMatrix,
    w: &Witness,
    extra: &[(&str, Value)],
) -> Result<Item, Failure> {
    let verified = alg.verify_precsim(x, y, w).map_err(input)?;
    if !verified {
        return Err(Failure {
            message: "witness failed verification".into(),
            status: Status::PropertyFailure,
        });
    }
    let (xs, ys) = (matrix_strings(alg, x), matrix_strings(alg, y));
    let (alpha, beta) = (matrix_strings(alg, &w.alpha), matrix_strings(alg, &w.beta));
    let mut json = json!({
        "schema": "leavitt.witness/1",
        "graph": name,
        "kind": kind.name(),
        "verdict": "found",
        "x": xs,
        "y": ys,
        "alpha": alpha,
        "beta": beta,
        "verified": true,
    });
    let mut text = format!("{name}: {} witness for x ≾ y with x = α y β\n", kind.name());
    for (key, value) in extra {
        json[*key] = value.clone();
        let shown = value.as_str().map_or_else(|| value.to_string(), str::to_string);
        let _ = writeln!(text, "  {key}: {shown}");
    }
    for (label, m) in [("x", &xs), ("y", &ys), ("alpha", &alpha), ("beta", &beta)] {
        let _ = write!(text, "  {label}:\n{}", matrix_text(m));
    }
    text.push_str("  verified: true\n");
    Ok(Item { json, text, status: Status::Ok })
}

fn nonzero(alg: &Leavitt, text: &str) -> Result<Element, Failure> {
    let x = alg.parse(text).map_err(input)?;
    if x.is_zero() {
        return Err(input("the element is zero"));
    }
    Ok(x)
}

pub fn witness(path: &Path, kind: WitnessKind, arg: &str, cfg: &Config) -> Item {
    run(path, |name, g| {
        let alg = Leavitt::new(g.clone());
        match kind {
            WitnessKind::VertexPi => {
                let v = g.vertex(arg.trim()).map_err(input)?;
                let w = alg.vertex_properly_infinite_witness(v).map_err(input)?;
                let x = alg.vertex(v);
                witness_item(&alg, name, kind, &alg.diag(&[x.clone(), x.clone()]), &alg.scalar_matrix(&x), &w, &[])
            }
            WitnessKind::Reduce => {
                let x = nonzero(&alg, arg)?;
                let (w, v) = alg.reduce_to_vertex(&x).map_err(input)?;
                let extra = [("vertex", json!(g.vertex_id(v)))];
                witness_item(&alg, name, kind, &alg.scalar_matrix(&alg.vertex(v)), &alg.scalar_matrix(&x), &w, &extra)
            }
            WitnessKind::PathSubeq => {
                let p = g.path_from_ids(arg.trim().split('.').map(str::trim)).map_err(input)?;
                let w = alg.subequivalence_from_path(&p).map_err(input)?;
                let (x, y) = (alg.vertex(g.path_range(&p)), alg.vertex(p.start));
                witness_item(&alg, name, kind, &alg.scalar_matrix(&x), &alg.scalar_matrix(&y), &w, &[])
            }
            WitnessKind::ProperInf => {
                let a = nonzero(&alg, arg)?;
                match alg.bounded_properly_infinite_search(&a, cfg.budget).map_err(input)? {
                    PiOutcome::Found { witness, route } => {
                        let extra = [("route", json!(route.name()))];
                        witness_item(&alg, name, kind, &alg.diag(&[a.clone(), a.clone()]), &alg.scalar_matrix(&a), &witness, &extra)
                    }
                    PiOutcome::Unknown { products, reason } => Ok(Item {
                        json: json!({
                            "schema": "leavitt.witness/1",
                            "graph": name,
                            "kind": kind.name(),
                            "verdict": "unknown",
                            "products": products,
                            "reason": reason,
                        }),
                        text: format!("{name}: proper-inf unknown after {products} products: {reason}\n"),
                        status: Status::Ok,
                    }),
                }
            }
        }
    })
}

fn chain_strings(m: &Monoid, c: &EqualityChain) -> Vec<String> {
    c.steps.iter().map(|s| m.format(s)).collect()
}

fn stats_json(s: &SearchStats) -> Value {
    json!({ "states": s.states, "depth": s.depth, "exhausted": s.exhausted })
}

struct Answer {
    verdict: &'static str,
    stats: Option<SearchStats>,
    witness: Option<Value>,
    verified: bool,
}

impl Answer {
    fn found(stats: SearchStats, witness: Value, verified: bool) -> Self {
        Answer { verdict: "found", stats: Some(stats), witness: Some(witness), verified }
    }

    fn plain(verdict: &'static str, stats: Option<SearchStats>) -> Self {
        Answer { verdict, stats, witness: None, verified: true }
    }
}

fn answer(g: &Graph, m: &Monoid, q: &Query, b: &Bounds) -> Result<Answer, Failure> {
    let unknown = |s| Answer::plain("unknown", Some(s));
    Ok(match q {
        Query::Equal(x, y) => {
            let v = m.equal(x, y, b).map_err(input)?;
            match v.witness {
                Some(c) => Answer::found(v.stats, json!({ "chain": chain_strings(m, &c) }), m.verify_chain(&c, x, y)),
                None => unknown(v.stats),
            }
        }
        Query::Leq(x, y) => {
            let v = m.leq(x, y, b).map_err(input)?;
            match v.witness {
                Some(w) => Answer::found(
                    v.stats,
                    json!({ "z": m.format(&w.z), "chain": chain_strings(m, &w.chain) }),
                    m.verify_leq(&w, x, y),
                ),
                None => unknown(v.stats),
            }
        }
        Query::Refine([x1, x2, y1, y2]) => {
            let v = m.refine(x1, x2, y1, y2, b).map_err(input)?;
            match v.witness {
                Some(r) => {
                    let z: Vec<Vec<String>> = r.z.iter().map(|row| row.iter().map(|c| m.format(c)).collect()).collect();
                    let chains: Vec<_> = r.chains.iter().map(|c| chain_strings(m, c)).collect();
                    let ok = m.verify_refinement(&r, x1, x2, y1, y2);
                    Answer::found(v.stats, json!({ "matrix": z, "chains": chains }), ok)
                }
                None => unknown(v.stats),
            }
        }
        Query::Fred(n, [x, y, z]) => {
            let v = m.fred_decompose(*n, x, y, z, b).map_err(input)?;
            match v.witness {
                Some(f) => {
                    let parts: Vec<_> = f.parts.iter().map(|p| m.format(p)).collect();
                    let chains: Vec<_> = f.chains.iter().map(|c| chain_strings(m, c)).collect();
                    let ok = m.verify_fred(&f, *n, x, y, z);
                    Answer::found(v.stats, json!({ "parts": parts, "chains": chains }), ok)
                }
                None => unknown(v.stats),
            }
        }
        Query::TwoThree(u) => {
            let v = m.decompose_2x_3y(g, u, b).map_err(input)?;
            match v.witness {
                Some(r) => {
                    let unverified: Vec<_> = r.unverified.iter().map(|h| g.set_ids(h)).collect();
                    let ok = m.verify_2x_3y(&r, u);
                    let w = json!({
                        "x": m.format(&r.x),
                        "y": m.format(&r.y),
                        "chain": chain_strings(m, &r.chain),
                        "unverified_hypotheses": unverified,
                    });
                    Answer::found(v.stats, w, ok)
                }
                None => unknown(v.stats),
            }
        }
        Query::Irreducible(u, h) => {
            let (qm, image) = m.project_to_quotient(g, h, u).map_err(input)?;
            match m.is_irreducible_in_quotient(g, u, h, b).map_err(input)?.1 {
                IrreducibleVerdict::Irreducible(s) => Answer::plain("irreducible", Some(s)),
                IrreducibleVerdict::Zero => Answer::plain("zero", None),
                IrreducibleVerdict::Unknown(s) => unknown(s),
                IrreducibleVerdict::Reducible { a, b: rest, chain } => Answer {
                    verdict: "reducible",
                    stats: None,
                    witness: Some(json!({
                        "a": qm.format(&a),
                        "b": qm.format(&rest),
                        "chain": chain_strings(&qm, &chain),
                    })),
                    verified: !a.is_zero() && !rest.is_zero() && qm.verify_chain(&chain, &a.add(&rest), &image),
                },
            }
        }
        Query::Abelian(u, h) => {
            let (qm, image) = m.project_to_quotient(g, h, u).map_err(input)?;
            match m.is_abelian_in_quotient(g, u, h, b).map_err(input)?.1 {
                AbelianVerdict::Abelian(s) => Answer::plain("abelian", Some(s)),
                AbelianVerdict::Unknown(s) => unknown(s),
                AbelianVerdict::NotAbelian { a, witness } => Answer {
                    verdict: "not_abelian",
                    stats: None,
                    witness: Some(json!({
                        "a": qm.format(&a),
                        "z": qm.format(&witness.z),
                        "chain": chain_strings(&qm, &witness.chain),
                    })),
                    verified: !a.is_zero() && qm.verify_leq(&witness, &a.scale(2), &image),
                },
            }
        }
        Query::Project(u, h) => {
            let (qm, image) = m.project_to_quotient(g, h, u).map_err(input)?;
            Answer {
                verdict: "image",
                stats: None,
                witness: Some(json!({ "generators": qm.ids(), "image": qm.format(&image) })),
                verified: true,
            }
        }
    })
}

fn vector_json(m: &Monoid, v: &MonoidVector) -> Value {
    json!(m.format(v))
}

pub fn monoid(path: &Path, text: &str, cfg: &Config) -> Item {
    run(path, |name, g| {
        let m = Monoid::new(&g);
        let q = query::parse(&g, &m, text).map_err(input)?;
        let a = answer(&g, &m, &q, &cfg.bounds)?;
        if !a.verified {
            return Err(Failure {
                message: format!("{} witness failed verification", q.kind()),
                status: Status::PropertyFailure,
            });
        }
        let mut json = json!({
            "schema": "leavitt.monoid/1",
            "graph": name,
            "query": text.trim(),
            "kind": q.kind(),
            "verdict": a.verdict,
        });
        let mut out = format!("{name}: {}\n  verdict: {}\n", text.trim(), a.verdict);
        if let Some(w) = &a.witness {
            json["witness"] = w.clone();
            json["verified"] = json!(true);
            if let Value::Object(fields) = w {
                for (k, v) in fields {
                    let _ = writeln!(out, "  {k}: {}", render(k, v));
                }
            }
            out.push_str("  verified: true\n");
        }
        if let Some(s) = &a.stats {
            json["stats"] = stats_json(s);
            let _ = writeln!(out, "  search: {} states, depth {}, exhausted {}", s.states, s.depth, s.exhausted);
        }
        if let Query::Equal(x, y) | Query::Leq(x, y) = &q {
            json["x"] = vector_json(&m, x);
            json["y"] = vector_json(&m, y);
        }
        Ok(Item { json, text: out, status: Status::Ok })
    })
}

fn render(key: &str, v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "none".into(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            let sep = if key == "chain" { " -> " } else { ", " };
            items.iter().map(|i| render(key, i)).collect::<Vec<_>>().join(sep)
        }
        Value::Array(items) => {
            let inner = if key == "chains" { "chain" } else { key };
            items.iter().map(|i| format!("[{}]", render(inner, i))).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

pub fn selfcheck(path: &Path, cfg: &Config) -> Item {
    run(path, |name, g| {
        let sc = SelfcheckConfig {
            seed: cfg.seed,
            trials: cfg.trials,
            lattice_cap: cfg.lattice_cap,
            bounds: cfg.bounds,
        };
        let report = selfcheck::run(&g, name, &sc);
        let mut text = format!("{name}: seed {}, {}\n", report.seed, if report.passed { "all pass" } else { "FAILED" });
        for p in &report.properties {
            let line = match (&p.skipped, &p.counterexample, p.passed) {
                (Some(why), _, _) => format!("  skip {} ({why})", p.name),
                (None, _, true) => format!("  pass {} ({} checks)", p.name, p.checks),
                (None, c, false) => format!("  FAIL {}: {}", p.name, c.as_deref().unwrap_or("no counterexample recorded")),
            };
            let _ = writeln!(text, "{line}");
        }
        Ok(Item {
            json: serde_json::to_value(&report).expect("report serializes"),
            text,
            status: if report.passed { Status::Ok } else { Status::PropertyFailure },
        })
    })
}

