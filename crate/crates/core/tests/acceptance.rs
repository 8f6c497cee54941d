//! Acceptance gate. Prints one line per criterion and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use leavitt_core::classify::{self, condition_k_and_cycles, tails_have_exits};
use leavitt_core::corpus::{bundled, bundled_graph, exhaustive};
use leavitt_core::graph::{Graph, Path, DEFAULT_LATTICE_CAP};
use leavitt_core::kernel::{Leavitt, RewriteOrder};

use leavitt_core::monoid::{Bounds, Monoid, MonoidError, MonoidVector};
use leavitt_core::selfcheck::{random_element, random_nonzero, random_raw, random_vector, random_walk};
use num::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { passed: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { passed: false, detail: detail.into() }
}

fn corpus() -> Vec<Graph> {
    exhaustive(3, 2).collect()
}

fn purely_infinite(g: &Graph) -> bool {
    classify::is_purely_infinite(g, DEFAULT_LATTICE_CAP).expect("small graph").holds
}

fn named_classifications() -> Outcome {
    let start = Instant::now();
    // (graph, simple, purely infinite, purely infinite simple)
    let expected: [(&str, Option<bool>, bool, Option<bool>); 5] = [
        ("rose2", Some(true), true, Some(true)),
        ("rose1", None, false, None),
        ("loop", None, false, None),
        ("toeplitz", Some(false), false, Some(false)),
        ("twin-roses", Some(false), true, Some(false)),
    ];
    let mut bad = Vec::new();
    for (name, simple, pi, pis) in expected {
        let g = bundled_graph(name).expect("bundled");
        let r = classify::classify(&g, name, DEFAULT_LATTICE_CAP).expect("classifies");
        let v = &r.verdicts;
        let ok = simple.is_none_or(|s| v.simple == s)
            && v.purely_infinite == pi
            && pis.is_none_or(|s| v.purely_infinite_simple == s)
            && common::purely_infinite_simple(&g) == v.purely_infinite_simple
            && common::condition_vi(&g) == v.purely_infinite;
        if !ok {
            bad.push(name);
        }
    }
    let elapsed = start.elapsed();
    if !bad.is_empty() {
        return fail(format!("wrong verdicts for {bad:?}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return fail(format!("took {elapsed:.2?}, limit 1 s"));
    }
    pass(format!("{} graphs exact in {elapsed:.2?}", expected.len()))
}

fn equivalence_audit(graphs: &[Graph]) -> Outcome {
    let start = Instant::now();
    let mut disagreements = Vec::new();
    let mut pi = 0;
    for (i, g) in graphs.iter().enumerate() {
        let tails = g.maximal_tails(DEFAULT_LATTICE_CAP).expect("small graph");
        let vi = tails_have_exits(g, &tails).holds;
        let vii = condition_k_and_cycles(g, &tails).holds;
        let (ovi, ovii) = (common::condition_vi(g), common::condition_vii(g));
        if !(vi == vii && vi == ovi && vii == ovii) {
            disagreements.push(i);
        }
        pi += usize::from(vi);
    }
    let elapsed = start.elapsed();
    if !disagreements.is_empty() {
        return fail(format!("{} disagreements, first at graph #{}", disagreements.len(), disagreements[0]));
    }
    if elapsed >= Duration::from_secs(600) {
        return fail(format!("took {elapsed:.2?}, target 10 min"));
    }
    pass(format!("{} graphs, {pi} purely infinite, 0 disagreements in {elapsed:.2?}", graphs.len()))
}

fn witness_soundness(graphs: &[Graph]) -> Outcome {
    let start = Instant::now();
    let (mut by_vertex, mut by_pipeline, mut failures) = (0, 0, Vec::new());
    for (i, g) in graphs.iter().enumerate().filter(|(_, g)| purely_infinite(g)) {
        for h in g.all_hereditary_saturated(DEFAULT_LATTICE_CAP).expect("small graph") {
            if h.is_full() {
                continue;
            }
            let q = g.quotient_graph(&h).expect("proper quotient");
            let alg = Leavitt::new(q.clone());
            for v in q.vertices() {
                let x = alg.vertex(v);
                let target = alg.diag(&[x.clone(), x.clone()]);
                let source = alg.scalar_matrix(&x);
                let witness = match alg.vertex_properly_infinite_witness(v) {
                    Ok(w) => {
                        by_vertex += 1;
                        w
                    }
                    Err(_) => match alg.properly_infinite_witness(&x) {
                        Ok((w, _)) => {
                            by_pipeline += 1;
                            w
                        }
                        Err(e) => {
                            failures.push(format!("graph #{i} vertex {}: {e}", q.vertex_id(v)));
                            continue;
                        }
                    },
                };
                let ok = alg.verify_precsim(&target, &source, &witness) == Ok(true)
                    && common::precsim(&q, &target, &source, &witness);
                if !ok {
                    failures.push(format!("graph #{i} vertex {}: witness rejected", q.vertex_id(v)));
                }
            }
        }
    }
    if let Some(first) = failures.first() {
        return fail(format!("{} failures, first: {first}", failures.len()));
    }
    pass(format!(
        "{by_vertex} vertex witnesses and {by_pipeline} pipeline witnesses verified in {:.2?}",
        start.elapsed()
    ))
}

fn kernel_laws() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let orders = [
        RewriteOrder::DepthFirst,
        RewriteOrder::BreadthFirst,
        RewriteOrder::Collecting,
        RewriteOrder::Shuffled(11),
    ];
    let mut failures = Vec::new();
    let graphs = bundled();
    for (name, g) in &graphs {
        let alg = Leavitt::new(g.clone());
        for _ in 0..1000 {
            let raw = random_raw(g, &mut rng, 5, 4);
            let forms: Vec<_> = orders
                .iter()
                .map(|&o| alg.normalize_with(raw.clone(), o).expect("well formed"))
                .collect();
            if forms.windows(2).any(|w| w[0] != w[1]) || !common::equal(g, &raw, &common::terms_of(&forms[0])) {
                failures.push(format!("{name}: normalize"));
            }
        }
        for _ in 0..1000 {
            let [x, y, z] = [0; 3].map(|_| random_element(&alg, &mut rng, 3, 3));
            let xy = alg.mul(&x, &y).unwrap();
            let left = alg.mul(&xy, &z).unwrap();
            let right = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
            let oracle = common::product(&common::product(&common::terms_of(&x), &common::terms_of(&y)), &common::terms_of(&z));
            if left != right || !common::equal(g, &oracle, &common::terms_of(&left)) {
                failures.push(format!("{name}: associativity"));
            }
            let involution = alg.star(&xy) == alg.mul(&alg.star(&y), &alg.star(&x)).unwrap()
                && alg.star(&alg.star(&x)) == x
                && common::equal(g, &common::star(&common::terms_of(&x)), &common::terms_of(&alg.star(&x)));
            if !involution {
                failures.push(format!("{name}: involution"));
            }
        }
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let sum = g.out_edges(v).iter().fold(alg.zero(), |acc, &e| {
                alg.add(&acc, &alg.mul(&alg.edge(e), &alg.ghost(e)).unwrap()).unwrap()
            });
            let raw: Vec<_> = g
                .out_edges(v)
                .iter()
                .map(|&e| {
                    let p = Path { start: v, edges: vec![e] };
                    (num::BigRational::one(), leavitt_core::kernel::Monomial { real: p.clone(), ghost: p })
                })
                .collect();
            if sum != alg.vertex(v) || !common::equal(g, &raw, &common::vertex_terms(v)) {
                failures.push(format!("{name}: CK2 at {}", g.vertex_id(v)));
            }
        }
    }
    if let Some(first) = failures.first() {
        return fail(format!("{} failures, first: {first}", failures.len()));
    }
    pass(format!(
        "{} graphs x (1000 confluence + 1000 associativity/involution) in {:.2?}",
        graphs.len(),
        start.elapsed()
    ))
}

fn reduction() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for name in ["rose2", "twin-roses"] {
        let g = bundled_graph(name).expect("bundled");
        let alg = Leavitt::new(g.clone());
        for _ in 0..200 {
            let x = random_nonzero(&alg, &mut rng, 5, 3);
            match alg.reduce_to_vertex(&x) {
                Ok((w, v)) => {
                    let (target, source) = (alg.scalar_matrix(&alg.vertex(v)), alg.scalar_matrix(&x));
                    if alg.verify_precsim(&target, &source, &w) != Ok(true) || !common::precsim(&g, &target, &source, &w) {
                        failures.push(format!("{name}: {} witness rejected", alg.format(&x)));
                    }
                }
                Err(e) => failures.push(format!("{name}: {}: {e}", alg.format(&x))),
            }
        }
    }
    let elapsed = start.elapsed();
    if let Some(first) = failures.first() {
        return fail(format!("{} failures, first: {first}", failures.len()));
    }
    if elapsed >= Duration::from_secs(30) {
        return fail(format!("took {elapsed:.2?}, limit 30 s"));
    }
    pass(format!("400 elements reduced and verified in {elapsed:.2?}"))
}

fn rose2_equal(a: &MonoidVector, b: &MonoidVector) -> bool {
    a.is_zero() == b.is_zero()
}

fn monoid_instances(graphs: &[Graph]) -> Outcome {
    let start = Instant::now();
    let bounds = Bounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();

    let point = bundled_graph("point").expect("bundled");
    let m = Monoid::new(&point);
    let w = |k: u64| MonoidVector(vec![k]);
    match m.fred_decompose(2, &w(3), &w(4), &w(2), &bounds) {
        Ok(v) => match v.witness {
            Some(f) if m.verify_fred(&f, 2, &w(3), &w(4), &w(2)) && f.parts == [w(1), w(0), w(2)] => {}
            other => failures.push(format!("fred (2, 3, 4, 2): {other:?}")),
        },
        Err(e) => failures.push(format!("fred (2, 3, 4, 2): {e}")),
    }

    let rose2 = bundled_graph("rose2").expect("bundled");
    for (label, g, same) in [
        ("N", &point, (|a: &MonoidVector, b: &MonoidVector| a == b) as fn(&_, &_) -> bool),
        ("rose2", &rose2, rose2_equal),
    ] {
        let m = Monoid::new(g);
        for _ in 0..100 {
            let n = rng.gen_range(1..=3u64);
            let parts: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..=3)).collect();
            let x = w(parts.iter().sum());
            let y = w((0..=n).map(|i| i * parts[i as usize]).sum());
            let z = w((0..=n).map(|i| (n - i) * parts[i as usize]).sum());
            let found = m.fred_decompose(n, &x, &y, &z, &bounds).ok().and_then(|v| v.witness);
            let ok = found.as_ref().is_some_and(|f| {
                let sum = |k: &dyn Fn(u64) -> u64| {
                    w(f.parts.iter().enumerate().map(|(i, p)| k(i as u64) * p.0[0]).sum())
                };
                m.verify_fred(f, n, &x, &y, &z)
                    && f.parts.len() as u64 == n + 1
                    && same(&sum(&|_| 1), &x)
                    && same(&sum(&|i| i), &y)
                    && same(&sum(&|i| n - i), &z)
                    && f.chains.iter().all(|c| common::monoid_chain(g, &c.steps, c.start(), c.end()))
            });
            if !ok {
                failures.push(format!("fred {label} n={n} x={x:?} y={y:?} z={z:?}"));
            }
        }
    }

    let mut decomposed = 0;
    let mut check_23 = |g: &Graph, label: String, failures: &mut Vec<String>| {
        let m = Monoid::new(g);
        for v in g.vertices() {
            let u = m.unit(v.0);
            match m.decompose_2x_3y(g, &u, &bounds) {
                Ok(verdict) => match verdict.witness {
                    Some(r) if m.verify_2x_3y(&r, &u)
                        && common::monoid_chain(g, &r.chain.steps, &r.x.scale(2).add(&r.y.scale(3)), &u) =>
                    {
                        decomposed += 1
                    }
                    _ => failures.push(format!("23div {label} vertex {}", g.vertex_id(v))),
                },
                Err(e) => failures.push(format!("23div {label} vertex {}: {e}", g.vertex_id(v))),
            }
        }
    };
    check_23(&rose2, "rose2".into(), &mut failures);
    for (i, g) in graphs.iter().enumerate().filter(|(_, g)| purely_infinite(g)) {
        check_23(g, format!("graph #{i}"), &mut failures);
    }

    let free = bundled_graph("free2").expect("bundled");
    let m = Monoid::new(&free);
    let u = m.unit(free.vertex("v").expect("vertex").0);
    if !matches!(m.decompose_2x_3y(&free, &u, &bounds), Err(MonoidError::Hypothesis { .. })) {
        failures.push("edgeless vertex was not rejected".into());
    }
    let m = Monoid::new(&point);
    if !matches!(m.decompose_2x_3y(&point, &m.unit(0), &bounds), Err(MonoidError::Hypothesis { .. })) {
        failures.push("edgeless w was not rejected".into());
    }

    if let Some(first) = failures.first() {
        return fail(format!("{} failures, first: {first}", failures.len()));
    }
    pass(format!(
        "201 fred instances and {decomposed} 2x+3y decompositions verified in {:.2?}",
        start.elapsed()
    ))
}

fn monoid_soundness(graphs: &[Graph]) -> Outcome {
    let start = Instant::now();
    let bounds = Bounds { depth: 8, states: 20_000, component_cap: None };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pool: Vec<Graph> = bundled().into_iter().map(|(_, g)| g).collect();
    pool.extend(graphs.choose_multiple(&mut rng, 200).cloned());
    let (mut verified, mut attempts) = (0usize, 0usize);
    let mut failures = Vec::new();
    while verified < 1000 && attempts < 20_000 {
        attempts += 1;
        let g = pool.choose(&mut rng).expect("nonempty");
        let m = Monoid::new(g);
        let x = random_vector(&m, &mut rng, 3);
        let (found, sound) = match attempts % 3 {
            0 => {
                let y = random_walk(&m, &mut rng, &x, 6);
                match m.equal(&x, &y, &bounds).expect("valid").witness {
                    Some(c) => (true, m.verify_chain(&c, &x, &y) && common::monoid_chain(g, &c.steps, &x, &y) && common::conical(&c.steps)),
                    None => (false, true),
                }
            }
            1 => {
                let z = random_vector(&m, &mut rng, 2);
                let y = random_walk(&m, &mut rng, &x.add(&z), 6);
                match m.leq(&x, &y, &bounds).expect("valid").witness {
                    Some(l) => (
                        true,
                        m.verify_leq(&l, &x, &y)
                            && common::monoid_chain(g, &l.chain.steps, &x.add(&l.z), &y)
                            && common::conical(&l.chain.steps),
                    ),
                    None => (false, true),
                }
            }
            _ => {
                let x2 = random_vector(&m, &mut rng, 2);
                let s = random_walk(&m, &mut rng, &x.add(&x2), 4);
                let y1 = MonoidVector(s.0.iter().map(|&c| rng.gen_range(0..=c)).collect());
                let y2 = s.checked_sub(&y1).expect("split");
                match m.refine(&x, &x2, &y1, &y2, &bounds) {
                    Ok(v) => match v.witness {
                        Some(r) => {
                            let z = &r.z;
                            let sums = [
                                (z[0][0].add(&z[0][1]), &x),
                                (z[1][0].add(&z[1][1]), &x2),
                                (z[0][0].add(&z[1][0]), &y1),
                                (z[0][1].add(&z[1][1]), &y2),
                            ];
                            let independent = r.chains.iter().zip(&sums).all(|(c, (from, to))| {
                                common::monoid_chain(g, &c.steps, from, to) && common::conical(&c.steps)
                            });
                            (true, m.verify_refinement(&r, &x, &x2, &y1, &y2) && independent)
                        }
                        None => (false, true),
                    },
                    Err(_) => (false, true),
                }
            }
        };
        if !x.is_zero() && m.equal(&x, &m.zero(), &bounds).expect("valid").is_found() {
            failures.push(format!("conicality: {x:?} = 0"));
        }
        if found {
            verified += 1;
            if !sound {
                failures.push(format!("witness rejected on {}", g.to_json()));
            }
        }
    }
    if let Some(first) = failures.first() {
        return fail(format!("{} discrepancies, first: {first}", failures.len()));
    }
    if verified < 1000 {
        return fail(format!("only {verified} witnesses found in {attempts} attempts"));
    }
    pass(format!("{verified} witnesses re-verified, 0 discrepancies in {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let graphs = corpus();
    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: [Criterion; 7] = [
        ("classification of named algebras", Box::new(named_classifications)),
        ("(vi) <=> (vii) over the exhaustive corpus", Box::new(|| equivalence_audit(&graphs))),
        ("properly infinite witness soundness", Box::new(|| witness_soundness(&graphs))),
        ("kernel confluence and algebra laws", Box::new(kernel_laws)),
        ("reduce_to_vertex", Box::new(reduction)),
        ("monoid decomposition instances", Box::new(|| monoid_instances(&graphs))),
        ("monoid witness soundness", Box::new(|| monoid_soundness(&graphs))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let mark = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {} [{mark}] {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
