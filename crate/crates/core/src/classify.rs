//! Simplicity and pure infiniteness of `L(E)`, decided from the graph, with
//! evidence for every condition.
//!
//! Pure infiniteness is evaluated twice, once per tail through cycles with
//! exits (`vi`) and once through Condition (K) (`vii`). The two must agree;
//! a disagreement is reported as an internal error.

use serde::Serialize;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};

pub const REPORT_SCHEMA: &str = "leavitt.classification/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A cycle inside a maximal tail with no exit into the tail.
    ExitlessCycleInTail { tail: Vec<String>, cycle: String },
    /// A vertex of a maximal tail that reaches no cycle inside the tail.
    StrandedVertexInTail { tail: Vec<String>, vertex: String },
    /// A vertex on a closed simple path that is the base of only one.
    ConditionK { vertex: String },
    NontrivialHereditarySaturated { set: Vec<String> },
    ExitlessCycle { cycle: String },
    /// A vertex that reaches no cycle.
    StrandedVertex { vertex: String },
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Evidence::ExitlessCycleInTail { tail, cycle } => {
                write!(f, "cycle {cycle} has no exit into the maximal tail {{{}}}", tail.join(", "))
            }
            Evidence::StrandedVertexInTail { tail, vertex } => write!(
                f,
                "vertex {vertex} reaches no cycle inside the maximal tail {{{}}}",
                tail.join(", ")
            ),
            Evidence::ConditionK { vertex } => write!(f, "Condition (K) fails at {vertex}"),
            Evidence::NontrivialHereditarySaturated { set } => {
                write!(f, "{{{}}} is a nontrivial hereditary saturated set", set.join(", "))
            }
            Evidence::ExitlessCycle { cycle } => write!(f, "cycle {cycle} has no exit"),
            Evidence::StrandedVertex { vertex } => write!(f, "vertex {vertex} reaches no cycle"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evidence>,
}

impl CheckResult {
    fn from(counterexample: Option<Evidence>) -> Self {
        CheckResult {
            holds: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub simple: bool,
    pub purely_infinite: bool,
    pub purely_infinite_simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiEvidence {
    /// Every cycle in every maximal tail exits into it, and every vertex of
    /// the tail reaches a cycle in it.
    pub tails_have_exits: CheckResult,
    /// Condition (K), and every vertex of every maximal tail reaches a cycle in it.
    pub condition_k_and_cycles: CheckResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PisEvidence {
    pub only_trivial_hereditary_saturated: CheckResult,
    pub every_cycle_has_exit: CheckResult,
    pub every_vertex_reaches_cycle: CheckResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLattice {
    /// `"ideals"` when Condition (K) holds, otherwise `"graded_ideals"`.
    pub kind: &'static str,
    /// Whether the sets below account for every two-sided ideal.
    pub complete: bool,
    pub sets: Vec<Vec<String>>,
    /// Covering pairs `[i, j]`: `sets[i] ⊂ sets[j]` with nothing in between.
    pub inclusions: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub schema: &'static str,
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub verdicts: Verdicts,
    pub purely_infinite: PiEvidence,
    pub purely_infinite_simple: PisEvidence,
    pub condition_k: CheckResult,
    pub condition_l: CheckResult,
    pub maximal_tails: Vec<Vec<String>>,
    pub ideal_lattice: IdealLattice,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn id(g: &Graph, v: Vertex) -> String {
    g.vertex_id(v).to_string()
}

fn stranded_in(g: &Graph, m: &VertexSet) -> Option<Vertex> {
    m.iter().find(|&v| !g.connects_to_cycle_unchecked(v, m))
}

/// Condition (vi), by tails.
pub fn tails_have_exits(g: &Graph, tails: &[VertexSet]) -> CheckResult {
    CheckResult::from(tails.iter().find_map(|m| {
        if let Some(c) = g.cycles_in(m).into_iter().find(|c| g.exit_in(c, m).is_none()) {
            return Some(Evidence::ExitlessCycleInTail {
                tail: g.set_ids(m),
                cycle: g.format_path(&c),
            });
        }
        stranded_in(g, m).map(|v| Evidence::StrandedVertexInTail {
            tail: g.set_ids(m),
            vertex: id(g, v),
        })
    }))
}

/// Condition (vii), through Condition (K).
pub fn condition_k_and_cycles(g: &Graph, tails: &[VertexSet]) -> CheckResult {
    if let Some(v) = g.condition_k_violation() {
        return CheckResult::from(Some(Evidence::ConditionK { vertex: id(g, v) }));
    }
    CheckResult::from(tails.iter().find_map(|m| {
        stranded_in(g, m).map(|v| Evidence::StrandedVertexInTail {
            tail: g.set_ids(m),
            vertex: id(g, v),
        })
    }))
}

fn condition_k(g: &Graph) -> CheckResult {
    CheckResult::from(
        g.condition_k_violation()
            .map(|v| Evidence::ConditionK { vertex: id(g, v) }),
    )
}

fn condition_l(g: &Graph) -> CheckResult {
    CheckResult::from(g.cycle_without_exit().map(|c| Evidence::ExitlessCycle {
        cycle: g.format_path(&c),
    }))
}

fn only_trivial(g: &Graph, lattice: &[VertexSet]) -> CheckResult {
    CheckResult::from(
        lattice
            .iter()
            .find(|h| !h.is_empty() && !h.is_full())
            .map(|h| Evidence::NontrivialHereditarySaturated { set: g.set_ids(h) }),
    )
}

fn every_vertex_reaches_cycle(g: &Graph) -> CheckResult {
    CheckResult::from(
        stranded_in(g, &g.all_vertices()).map(|v| Evidence::StrandedVertex { vertex: id(g, v) }),
    )
}

/// `L(E)` is simple iff the only hereditary saturated sets are `∅` and `E⁰`
/// and every cycle has an exit.
pub fn is_simple(g: &Graph, cap: usize) -> Result<CheckResult, ClassifyError> {
    let lattice = g.all_hereditary_saturated(cap)?;
    let trivial = only_trivial(g, &lattice);
    Ok(if trivial.holds { condition_l(g) } else { trivial })
}

/// Evaluates both characterizations and returns their common value, with the
/// evidence of the tail-based one.
pub fn is_purely_infinite(g: &Graph, cap: usize) -> Result<CheckResult, ClassifyError> {
    let tails = g.maximal_tails(cap)?;
    let (vi, vii) = (tails_have_exits(g, &tails), condition_k_and_cycles(g, &tails));
    agree(&vi, &vii)?;
    Ok(vi)
}

fn agree(vi: &CheckResult, vii: &CheckResult) -> Result<(), ClassifyError> {
    if vi.holds != vii.holds {
        return Err(ClassifyError::Internal(format!(
            "tail condition says {}, Condition (K) route says {}",
            vi.holds, vii.holds
        )));
    }
    Ok(())
}

/// All three conditions at once; the first failing one supplies the evidence.
pub fn is_purely_infinite_simple(g: &Graph, cap: usize) -> Result<CheckResult, ClassifyError> {
    let r = classify(g, "", cap)?;
    let e = r.purely_infinite_simple;
    Ok([e.only_trivial_hereditary_saturated, e.every_cycle_has_exit, e.every_vertex_reaches_cycle]
        .into_iter()
        .find(|c| !c.holds)
        .unwrap_or(CheckResult { holds: true, counterexample: None }))
}

fn hasse(sets: &[VertexSet]) -> Vec<[usize; 2]> {
    let below = |i: usize, j: usize| i != j && sets[i].is_subset(&sets[j]);
    let mut out = Vec::new();
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            if below(i, j) && !(0..sets.len()).any(|k| below(i, k) && below(k, j)) {
                out.push([i, j]);
            }
        }
    }
    out
}

pub fn classify(g: &Graph, name: &str, cap: usize) -> Result<ClassificationReport, ClassifyError> {
    let lattice = g.all_hereditary_saturated(cap)?;
    let tails = g.maximal_tails(cap)?;
    let vi = tails_have_exits(g, &tails);
    let vii = condition_k_and_cycles(g, &tails);
    agree(&vi, &vii)?;
    let k = condition_k(g);
    let l = condition_l(g);
    let pis = PisEvidence {
        only_trivial_hereditary_saturated: only_trivial(g, &lattice),
        every_cycle_has_exit: l.clone(),
        every_vertex_reaches_cycle: every_vertex_reaches_cycle(g),
    };
    let simple = pis.only_trivial_hereditary_saturated.holds && l.holds;
    let purely_infinite = vi.holds;
    let pis_holds = simple && pis.every_vertex_reaches_cycle.holds;
    if pis_holds != (simple && purely_infinite) {
        return Err(ClassifyError::Internal(format!(
            "purely infinite simple by conditions is {pis_holds}, simple ∧ purely infinite is {}",
            simple && purely_infinite
        )));
    }
    if pis_holds && tails != [g.all_vertices()] {
        return Err(ClassifyError::Internal(
            "purely infinite simple but E⁰ is not the only maximal tail".into(),
        ));
    }
    Ok(ClassificationReport {
        schema: REPORT_SCHEMA,
        graph: name.to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        verdicts: Verdicts {
            simple,
            purely_infinite,
            purely_infinite_simple: pis_holds,
        },
        purely_infinite: PiEvidence {
            tails_have_exits: vi,
            condition_k_and_cycles: vii,
        },
        purely_infinite_simple: pis,
        ideal_lattice: IdealLattice {
            kind: if k.holds { "ideals" } else { "graded_ideals" },
            complete: k.holds,
            sets: lattice.iter().map(|h| g.set_ids(h)).collect(),
            inclusions: hasse(&lattice),
        },
        condition_k: k,
        condition_l: l,
        maximal_tails: tails.iter().map(|m| g.set_ids(m)).collect(),
    })
}
