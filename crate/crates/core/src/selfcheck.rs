//! Randomized property suites run against a single graph.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::classify;
use crate::graph::{Graph, Path, Vertex};
use crate::kernel::{Element, Leavitt, Monomial, RewriteOrder, Scalar};
use crate::monoid::{Bounds, Monoid, MonoidVector};

pub const SELFCHECK_SCHEMA: &str = "leavitt.selfcheck/1";

#[derive(Clone, Copy, Debug)]
pub struct SelfcheckConfig {
    pub seed: u64,
    /// Random cases per property.
    pub trials: usize,
    pub lattice_cap: usize,
    pub bounds: Bounds,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig {
            seed: 0,
            trials: 100,
            lattice_cap: crate::graph::DEFAULT_LATTICE_CAP,
            bounds: Bounds::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfcheckReport {
    pub schema: &'static str,
    pub graph: String,
    pub seed: u64,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

/// A random path of length at most `max_len` starting at `start`.
pub fn random_path(g: &Graph, rng: &mut impl Rng, start: Vertex, max_len: usize) -> Path {
    let mut p = Path::trivial(start);
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let out = g.out_edges(g.path_range(&p));
        match out.choose(rng) {
            Some(&e) => p.edges.push(e),
            None => break,
        }
    }
    p
}

/// A random path of length at most `max_len` ending at `end`.
pub fn random_path_into(g: &Graph, rng: &mut impl Rng, end: Vertex, max_len: usize) -> Path {
    let mut rev = Vec::new();
    let mut at = end;
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let ins: Vec<_> = g.edges().filter(|&e| g.range(e) == at).collect();
        match ins.choose(rng) {
            Some(&e) => {
                rev.push(e);
                at = g.source(e);
            }
            None => break,
        }
    }
    rev.reverse();
    Path { start: at, edges: rev }
}

/// A random monomial `p q*` with `|p| + |q| ≤ degree`, not necessarily normal.
pub fn random_monomial(g: &Graph, rng: &mut impl Rng, degree: usize) -> Monomial {
    let start = Vertex(rng.gen_range(0..g.vertex_count()));
    let real = random_path(g, rng, start, degree);
    let ghost = random_path_into(g, rng, g.path_range(&real), degree - real.len());
    Monomial { real, ghost }
}

fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let num = loop {
        let n: i64 = rng.gen_range(-4..=4);
        if n != 0 {
            break n;
        }
    };
    Scalar::new(num.into(), rng.gen_range(1i64..=3).into())
}

/// A raw combination of up to `terms` random monomials.
pub fn random_raw(g: &Graph, rng: &mut impl Rng, terms: usize, degree: usize) -> Vec<(Scalar, Monomial)> {
    let k = rng.gen_range(1..=terms);
    (0..k)
        .map(|_| (random_scalar(rng), random_monomial(g, rng, degree)))
        .collect()
}

pub fn random_element(alg: &Leavitt, rng: &mut impl Rng, terms: usize, degree: usize) -> Element {
    alg.normalize(random_raw(alg.graph(), rng, terms, degree))
        .expect("random monomials are well formed")
}

/// A random nonzero element.
pub fn random_nonzero(alg: &Leavitt, rng: &mut impl Rng, terms: usize, degree: usize) -> Element {
    loop {
        let x = random_element(alg, rng, terms, degree);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_vector(m: &Monoid, rng: &mut impl Rng, max_entry: u64) -> MonoidVector {
    MonoidVector((0..m.rank()).map(|_| rng.gen_range(0..=max_entry)).collect())
}

/// Applies up to `steps` random relation applications.
pub fn random_walk(m: &Monoid, rng: &mut impl Rng, x: &MonoidVector, steps: usize) -> MonoidVector {
    let mut y = x.clone();
    for _ in 0..steps {
        let next = m.neighbors(&y);
        match next.choose(rng) {
            Some(n) if n.max_entry() <= 12 => y = n.clone(),
            _ => break,
        }
    }
    y
}

struct Suite<'a> {
    results: Vec<PropertyResult>,
    rng: ChaCha8Rng,
    cfg: &'a SelfcheckConfig,
}

impl Suite<'_> {
    /// Runs `trials` cases; the closure returns a counterexample description on failure.
    fn property(
        &mut self,
        name: &'static str,
        trials: usize,
        mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), String>,
    ) {
        let mut checks = 0;
        let mut counterexample = None;
        for _ in 0..trials {
            checks += 1;
            if let Err(c) = case(&mut self.rng) {
                counterexample = Some(c);
                break;
            }
        }
        self.results.push(PropertyResult {
            name,
            passed: counterexample.is_none(),
            checks,
            skipped: None,
            counterexample,
        });
    }

    fn skip(&mut self, name: &'static str, why: impl Into<String>) {
        self.results.push(PropertyResult {
            name,
            passed: true,
            checks: 0,
            skipped: Some(why.into()),
            counterexample: None,
        });
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn classification(s: &mut Suite, g: &Graph) {
    let cap = s.cfg.lattice_cap;
    let report = match classify(g, "", cap) {
        Ok(r) => r,
        Err(crate::classify::ClassifyError::Graph(e)) => {
            s.skip("classification.tails_vs_condition_k", e.to_string());
            return;
        }
        Err(e) => {
            s.results.push(PropertyResult {
                name: "classification.tails_vs_condition_k",
                passed: false,
                checks: 1,
                skipped: None,
                counterexample: Some(e.to_string()),
            });
            return;
        }
    };
    s.property("classification.tails_vs_condition_k", 1, |_| Ok(()));
    let lattice = g.all_hereditary_saturated(cap).expect("already enumerated");
    let pi = report.verdicts.purely_infinite;
    s.property("classification.quotients_stay_purely_infinite", 1, |_| {
        if !pi {
            return Ok(());
        }
        for h in lattice.iter().filter(|h| !h.is_full()) {
            let q = g.quotient_graph(h).map_err(|e| e.to_string())?;
            let r = classify(&q, "", cap).map_err(|e| e.to_string())?;
            ensure(r.verdicts.purely_infinite, || {
                format!("quotient by {{{}}} is not purely infinite", g.set_ids(h).join(","))
            })?;
        }
        Ok(())
    });
}

fn kernel(s: &mut Suite, g: &Graph) {
    let alg = Leavitt::new(g.clone());
    let trials = s.cfg.trials;
    let fmt = |x: &Element| alg.format(x);

    s.property("kernel.confluence", trials, |rng| {
        let raw = random_raw(g, rng, 5, 4);
        let seed = rng.gen();
        let base = alg.normalize_with(raw.clone(), RewriteOrder::DepthFirst).map_err(|e| e.to_string())?;
        for order in [RewriteOrder::BreadthFirst, RewriteOrder::Collecting, RewriteOrder::Shuffled(seed)] {
            let other = alg.normalize_with(raw.clone(), order).map_err(|e| e.to_string())?;
            ensure(other == base, || format!("{order:?}: {} vs {}", fmt(&other), fmt(&base)))?;
        }
        Ok(())
    });

    s.property("kernel.associativity", trials, |rng| {
        let [x, y, z] = [(); 3].map(|_| random_element(&alg, rng, 3, 3));
        let l = alg.mul(&alg.mul(&x, &y).unwrap(), &z).unwrap();
        let r = alg.mul(&x, &alg.mul(&y, &z).unwrap()).unwrap();
        ensure(l == r, || format!("({})({})({})", fmt(&x), fmt(&y), fmt(&z)))
    });

    s.property("kernel.distributivity", trials, |rng| {
        let [x, y, z] = [(); 3].map(|_| random_element(&alg, rng, 3, 3));
        let l = alg.mul(&x, &alg.add(&y, &z).unwrap()).unwrap();
        let r = alg.add(&alg.mul(&x, &y).unwrap(), &alg.mul(&x, &z).unwrap()).unwrap();
        let l2 = alg.mul(&alg.add(&y, &z).unwrap(), &x).unwrap();
        let r2 = alg.add(&alg.mul(&y, &x).unwrap(), &alg.mul(&z, &x).unwrap()).unwrap();
        ensure(l == r && l2 == r2, || format!("x={} y={} z={}", fmt(&x), fmt(&y), fmt(&z)))
    });

    s.property("kernel.involution", trials, |rng| {
        let [x, y] = [(); 2].map(|_| random_element(&alg, rng, 3, 3));
        let twice = alg.star(&alg.star(&x));
        let anti = alg.star(&alg.mul(&x, &y).unwrap()) == alg.mul(&alg.star(&y), &alg.star(&x)).unwrap();
        let additive = alg.star(&alg.add(&x, &y).unwrap()) == alg.add(&alg.star(&x), &alg.star(&y)).unwrap();
        ensure(twice == x && anti && additive, || format!("x={} y={}", fmt(&x), fmt(&y)))
    });

    s.property("kernel.ck2_and_orthogonality", 1, |_| {
        for v in g.vertices().filter(|&v| !g.is_sink(v)) {
            let projections: Vec<Element> = g
                .out_edges(v)
                .iter()
                .map(|&e| alg.mul(&alg.edge(e), &alg.ghost(e)).unwrap())
                .collect();
            let sum = projections.iter().try_fold(alg.zero(), |acc, p| alg.add(&acc, p)).unwrap();
            ensure(sum == alg.vertex(v), || format!("Σ ee* ≠ {}", g.vertex_id(v)))?;
            for (i, p) in projections.iter().enumerate() {
                for (j, q) in projections.iter().enumerate() {
                    let pq = alg.mul(p, q).unwrap();
                    let want = if i == j { p.clone() } else { alg.zero() };
                    ensure(pq == want, || format!("projections {i}, {j} at {}", g.vertex_id(v)))?;
                }
            }
        }
        Ok(())
    });

    s.property("kernel.path_independence", trials, |rng| {
        let k = rng.gen_range(1..=4);
        let mut paths: Vec<Path> = (0..k)
            .map(|_| {
                let start = Vertex(rng.gen_range(0..g.vertex_count()));
                random_path(g, rng, start, 3)
            })
            .collect();
        paths.sort();
        paths.dedup();
        let sum = paths
            .iter()
            .try_fold(alg.zero(), |acc, p| alg.add(&acc, &alg.scale(&alg.path(p), &random_scalar(rng))))
            .unwrap();
        ensure(!sum.is_zero(), || "a combination of distinct paths vanished".into())
    });

    s.property("kernel.vertex_witnesses", 1, |_| {
        for v in g.vertices().filter(|&v| g.csp_at_least_two(v)) {
            let w = alg.vertex_properly_infinite_witness(v).map_err(|e| e.to_string())?;
            let x = alg.vertex(v);
            ensure(alg.verify_k_membership(&x, &x, &w).unwrap_or(false), || {
                format!("witness at {} fails", g.vertex_id(v))
            })?;
        }
        Ok(())
    });

    s.property("kernel.precsim_calculus", trials, |rng| {
        let x = alg.normalize(vec![(Scalar::from_integer(1.into()), random_monomial(g, rng, 3))]).unwrap();
        let y = alg.normalize(vec![(Scalar::from_integer(1.into()), random_monomial(g, rng, 3))]).unwrap();
        let m = |e: &Element| alg.scalar_matrix(e);
        let xy = alg.mul(&x, &y).unwrap();
        let yx = alg.mul(&y, &x).unwrap();
        let ok_r = alg.verify_precsim(&m(&xy), &m(&x), &alg.right_factor_witness(&y)).unwrap();
        let ok_l = alg.verify_precsim(&m(&yx), &m(&x), &alg.left_factor_witness(&y)).unwrap();
        // xy ≾ x ≾ x composes; the block sum of both verifies against x ⊕ x
        let chain = alg
            .compose_witness(&alg.right_factor_witness(&y), &alg.identity_witness(1))
            .unwrap();
        let ok_c = alg.verify_precsim(&m(&xy), &m(&x), &chain).unwrap();
        let both = alg.block_sum_witness(&alg.right_factor_witness(&y), &alg.left_factor_witness(&y));
        let ok_b = alg
            .verify_precsim(&alg.diag(&[xy.clone(), yx.clone()]), &alg.diag(&[x.clone(), x.clone()]), &both)
            .unwrap();
        ensure(ok_r && ok_l && ok_c && ok_b, || format!("x={} y={}", fmt(&x), fmt(&y)))
    });

    if g.condition_l() {
        s.property("kernel.reduce_to_vertex", trials, |rng| {
            let x = random_nonzero(&alg, rng, 5, 3);
            let (w, v) = alg.reduce_to_vertex(&x).map_err(|e| format!("{}: {e}", fmt(&x)))?;
            let ok = alg
                .verify_precsim(&alg.scalar_matrix(&alg.vertex(v)), &alg.scalar_matrix(&x), &w)
                .unwrap_or(false);
            ensure(ok, || fmt(&x))
        });
    } else {
        s.skip("kernel.reduce_to_vertex", "a cycle has no exit");
    }
}

fn monoid(s: &mut Suite, g: &Graph) {
    let m = Monoid::new(g);
    let bounds = s.cfg.bounds;
    let trials = s.cfg.trials;

    s.property("monoid.csp_gives_2v_le_v", 1, |_| {
        for v in g.vertices().filter(|&v| g.csp_at_least_two(v)) {
            let x = m.unit(v.0);
            let r = m.leq(&x.scale(2), &x, &bounds).map_err(|e| e.to_string())?;
            ensure(r.witness.is_some_and(|w| m.verify_leq(&w, &x.scale(2), &x)), || {
                format!("2{0} ≤ {0} not found", g.vertex_id(v))
            })?;
        }
        Ok(())
    });

    s.property("monoid.equality_witnesses", trials, |rng| {
        let x = random_vector(&m, rng, 2);
        let y = random_walk(&m, rng, &x, 4);
        let r = m.equal(&x, &y, &bounds).map_err(|e| e.to_string())?;
        let chain = r.witness.ok_or_else(|| format!("{} = {} not found", m.format(&x), m.format(&y)))?;
        ensure(m.verify_chain(&chain, &x, &y), || "chain fails to verify".into())?;
        if !x.is_zero() {
            let z = m.equal(&x, &m.zero(), &Bounds { depth: 6, ..bounds }).map_err(|e| e.to_string())?;
            ensure(!z.is_found(), || format!("{} = 0", m.format(&x)))?;
        }
        Ok(())
    });

    s.property("monoid.leq_witnesses", trials, |rng| {
        let x = random_vector(&m, rng, 2);
        let z = random_vector(&m, rng, 1);
        let y = random_walk(&m, rng, &x.add(&z), 3);
        let r = m.leq(&x, &y, &bounds).map_err(|e| e.to_string())?;
        let w = r.witness.ok_or_else(|| format!("{} ≤ {} not found", m.format(&x), m.format(&y)))?;
        ensure(m.verify_leq(&w, &x, &y), || "≤ witness fails to verify".into())
    });
}

/// Runs every suite. Suites that cannot run on this graph are marked skipped.
pub fn run(g: &Graph, name: &str, cfg: &SelfcheckConfig) -> SelfcheckReport {
    let mut suite = Suite {
        results: Vec::new(),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        cfg,
    };
    classification(&mut suite, g);
    kernel(&mut suite, g);
    monoid(&mut suite, g);
    SelfcheckReport {
        schema: SELFCHECK_SCHEMA,
        graph: name.to_string(),
        seed: cfg.seed,
        passed: suite.results.iter().all(|r| r.passed),
        properties: suite.results,
    }
}
