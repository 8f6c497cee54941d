//! The graph monoid: the commutative monoid on `E⁰` with one relation
//! `v = Σ_{e ∈ s⁻¹(v)} r(e)` per non-sink `v`.
//!
//! Equality is decided only positively, by bounded breadth-first search over
//! single applications of a relation in either direction. Every positive
//! answer carries an [`EqualityChain`] that [`Monoid::verify_chain`] checks
//! from scratch.

mod decompose;
mod search;

use std::collections::HashMap;
use std::fmt;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};

pub use decompose::{
    AbelianVerdict, FredWitness, IrreducibleVerdict, Refinement, TwoThreeReport,
};
pub use search::{Bounds, EqualityChain, LeqWitness, SearchStats, SearchVerdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonoidError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("bad monoid literal `{text}`: {message}")]
    Parse { text: String, message: String },
    #[error("vector has {got} coordinates, monoid has {want} generators")]
    Dimension { got: usize, want: usize },
    #[error("precondition not established: {0}")]
    Precondition(String),
    #[error("hypothesis fails: {element} is irreducible in the quotient by H = {{{quotient}}}")]
    Hypothesis { element: String, quotient: String },
}

/// Multiplicities indexed by generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidVector(pub Vec<u64>);

impl MonoidVector {
    pub fn zero(n: usize) -> Self {
        MonoidVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Total multiplicity.
    pub fn size(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        MonoidVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u64) -> Self {
        MonoidVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Coordinatewise `self ≤ other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self − other`, if coordinatewise nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MonoidVector)
    }

    pub fn sum<'a>(n: usize, parts: impl IntoIterator<Item = &'a MonoidVector>) -> Self {
        parts.into_iter().fold(Self::zero(n), |acc, p| acc.add(p))
    }
}

/// A presented graph monoid over named generators.
#[derive(Clone, Debug)]
pub struct Monoid {
    ids: Vec<String>,
    lookup: HashMap<String, usize>,
    /// `Σ r(e)` over `s⁻¹(v)`, or `None` at sinks.
    relations: Vec<Option<MonoidVector>>,
}

impl Monoid {
    pub fn new(g: &Graph) -> Self {
        Self::restricted(g, &VertexSet::empty(g.vertex_count()))
    }

    /// The monoid of `E/H`, built directly from `E`.
    pub fn quotient(g: &Graph, h: &VertexSet) -> Result<Self, MonoidError> {
        if !g.is_hereditary_saturated(h) {
            return Err(if g.is_hereditary(h) {
                GraphError::NotSaturated
            } else {
                GraphError::NotHereditary
            }
            .into());
        }
        Ok(Self::restricted(g, h))
    }

    fn restricted(g: &Graph, h: &VertexSet) -> Self {
        let kept: Vec<Vertex> = g.vertices().filter(|&v| !h.contains(v)).collect();
        let slot: HashMap<Vertex, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = kept.len();
        let relations = kept
            .iter()
            .map(|&v| {
                let mut rhs = MonoidVector::zero(n);
                let mut any = false;
                for &e in g.out_edges(v) {
                    if let Some(&j) = slot.get(&g.range(e)) {
                        rhs.0[j] += 1;
                        any = true;
                    }
                }
                any.then_some(rhs)
            })
            .collect();
        let ids: Vec<String> = kept.iter().map(|&v| g.vertex_id(v).to_string()).collect();
        let lookup = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Monoid {
            ids,
            lookup,
            relations,
        }
    }

    pub fn rank(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn generator(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn relation(&self, i: usize) -> Option<&MonoidVector> {
        self.relations[i].as_ref()
    }

    pub fn zero(&self) -> MonoidVector {
        MonoidVector::zero(self.rank())
    }

    pub fn unit(&self, i: usize) -> MonoidVector {
        MonoidVector::unit(self.rank(), i)
    }

    pub(crate) fn check(&self, x: &MonoidVector) -> Result<(), MonoidError> {
        if x.len() != self.rank() {
            return Err(MonoidError::Dimension {
                got: x.len(),
                want: self.rank(),
            });
        }
        Ok(())
    }

    /// Parses `2*v + w`, `2v + w`, or `0`.
    pub fn parse(&self, text: &str) -> Result<MonoidVector, MonoidError> {
        let err = |message: String| MonoidError::Parse {
            text: text.to_string(),
            message,
        };
        let trimmed = text.trim();
        let mut out = self.zero();
        if trimmed == "0" {
            return Ok(out);
        }
        for term in trimmed.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let (count, id) = if let Some(&i) = self.lookup.get(term) {
                (1, i)
            } else {
                let (num, name) = match term.split_once('*') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => {
                        let digits = term.len() - term.trim_start_matches(|c: char| c.is_ascii_digit()).len();
                        (&term[..digits], term[digits..].trim())
                    }
                };
                let count: u64 = if num.is_empty() {
                    1
                } else {
                    num.parse().map_err(|_| err(format!("bad multiplicity `{num}`")))?
                };
                let i = *self
                    .lookup
                    .get(name)
                    .ok_or_else(|| err(format!("unknown vertex `{name}`")))?;
                (count, i)
            };
            out.0[id] += count;
        }
        Ok(out)
    }

    pub fn format(&self, x: &MonoidVector) -> String {
        let parts: Vec<String> = x
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| match c {
                1 => self.ids[i].clone(),
                _ => format!("{c}*{}", self.ids[i]),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// `x` with the coordinates in `h` dropped, as a vector over `E/H`.
    pub fn project_to_quotient(
        &self,
        g: &Graph,
        h: &VertexSet,
        x: &MonoidVector,
    ) -> Result<(Monoid, MonoidVector), MonoidError> {
        self.check(x)?;
        let q = Monoid::quotient(g, h)?;
        let mut out = q.zero();
        for (i, id) in self.ids.iter().enumerate() {
            if let Some(j) = q.generator(id) {
                out.0[j] += x.0[i];
            }
        }
        Ok((q, out))
    }
}

/// Displays a vector by generator names.
pub struct Display<'a>(pub &'a Monoid, pub &'a MonoidVector);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
        Graph::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(e, s, r)| (e.to_string(), s.to_string(), r.to_string())),
        )
        .unwrap()
    }

    pub(crate) fn rose2() -> Graph {
        graph(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")])
    }

    #[test]
    fn literals() {
        let g = graph(&["v", "w"], &[("e", "v", "w")]);
        let m = Monoid::new(&g);
        assert_eq!(m.parse("2*v + w").unwrap(), MonoidVector(vec![2, 1]));
        assert_eq!(m.parse("2v+ 3 * w + v").unwrap(), MonoidVector(vec![3, 3]));
        assert_eq!(m.parse("0").unwrap(), m.zero());
        assert_eq!(m.format(&MonoidVector(vec![2, 1])), "2*v + w");
        assert_eq!(m.format(&m.zero()), "0");
        assert!(m.parse("x").is_err());
        assert!(m.parse("v +").is_err());
        assert_eq!(m.relation(0), Some(&MonoidVector(vec![0, 1])));
        assert_eq!(m.relation(1), None);
    }

    #[test]
    fn projection() {
        let t = graph(&["v", "w"], &[("e", "v", "v"), ("f", "v", "w")]);
        let m = Monoid::new(&t);
        let h = t.vertex_set(["w"]).unwrap();
        let (q, x) = m.project_to_quotient(&t, &h, &m.parse("v + 2*w").unwrap()).unwrap();
        assert_eq!(q.format(&x), "v");
        let (_, same) = m
            .project_to_quotient(&t, &VertexSet::empty(2), &m.parse("v + 2*w").unwrap())
            .unwrap();
        assert_eq!(same, MonoidVector(vec![1, 2]));
        assert!(m.project_to_quotient(&t, &t.vertex_set(["v"]).unwrap(), &m.zero()).is_err());
        let twin = graph(
            &["v", "w"],
            &[("a", "v", "v"), ("b", "v", "v"), ("c", "v", "w"), ("d", "w", "w"), ("e", "w", "w")],
        );
        let tm = Monoid::new(&twin);
        let (_, x) = tm
            .project_to_quotient(&twin, &twin.vertex_set(["w"]).unwrap(), &tm.parse("w").unwrap())
            .unwrap();
        assert!(x.is_zero());
        // E/H after dropping w: v keeps its two loops
        let q = Monoid::quotient(&twin, &twin.vertex_set(["w"]).unwrap()).unwrap();
        assert_eq!(q.relation(0), Some(&MonoidVector(vec![2])));
        let all = Monoid::quotient(&twin, &twin.all_vertices()).unwrap();
        assert_eq!(all.rank(), 0);
    }
}
