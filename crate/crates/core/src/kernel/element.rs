use std::collections::BTreeMap;

use num::{BigRational, One, Zero};

use super::normalize::{normalize_terms, RewriteOrder};
use super::KernelError;
use crate::graph::{Edge, Graph, Path, Vertex};

/// Coefficient field. Exact rationals; everything field-specific goes through
/// this alias.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// A monomial `p q*` with `r(p) = r(q)`. The ghost part `q` is stored as an
/// ordinary (unreversed) path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub real: Path,
    pub ghost: Path,
}

impl Monomial {
    pub fn vertex(v: Vertex) -> Self {
        Monomial {
            real: Path::trivial(v),
            ghost: Path::trivial(v),
        }
    }

    pub fn degree(&self) -> (usize, usize) {
        (self.real.len(), self.ghost.len())
    }

    pub fn is_real(&self) -> bool {
        self.ghost.is_trivial()
    }
}

/// An element of `L_K(E)`: a finite sum of normal-form monomials with nonzero
/// rational coefficients. Tagged with the fingerprint of its graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    tag: u64,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub(crate) fn from_terms(tag: u64, terms: BTreeMap<Monomial, Scalar>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Element { tag, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    /// Longest ghost part among the terms.
    pub fn ghost_degree(&self) -> usize {
        self.terms.keys().map(|m| m.ghost.len()).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.keys().all(Monomial::is_real)
    }

    /// The scalar `λ` if this element is `λ·v` for a single vertex `v`.
    pub fn as_vertex_multiple(&self) -> Option<(Vertex, Scalar)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if m.real.is_trivial() && m.ghost.is_trivial() => {
                Some((m.real.start, c.clone()))
            }
            _ => None,
        }
    }
}

/// The Leavitt path algebra `L_K(E)` of a finite graph, with `K = ℚ`.
///
/// Normal forms exclude monomials `(p'γ)(q'γ)*` where `γ` is the special
/// (first-declared) edge leaving `s(γ)`.
#[derive(Clone, Debug)]
pub struct Leavitt {
    graph: Graph,
    special: Vec<Option<Edge>>,
    tag: u64,
}

impl Leavitt {
    pub fn new(graph: Graph) -> Self {
        let special = graph
            .vertices()
            .map(|v| graph.out_edges(v).first().copied())
            .collect();
        let tag = graph.fingerprint();
        Leavitt {
            graph,
            special,
            tag,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn special_edge(&self, v: Vertex) -> Option<Edge> {
        self.special[v.0]
    }

    pub(crate) fn check(&self, x: &Element) -> Result<(), KernelError> {
        if x.tag != self.tag {
            return Err(KernelError::GraphMismatch);
        }
        Ok(())
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        match (m.real.edges.last(), m.ghost.edges.last()) {
            (Some(&a), Some(&b)) if a == b => self.special_edge(self.graph.source(a)) != Some(a),
            _ => true,
        }
    }

    pub fn zero(&self) -> Element {
        Element::from_terms(self.tag, BTreeMap::new())
    }

    fn single(&self, m: Monomial, c: Scalar) -> Element {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element::from_terms(self.tag, terms)
    }

    pub fn vertex(&self, v: Vertex) -> Element {
        self.single(Monomial::vertex(v), Scalar::one())
    }

    /// `1 = Σ v`, the unit of `L(E)` for a finite graph.
    pub fn one(&self) -> Element {
        let terms = self
            .graph
            .vertices()
            .map(|v| (Monomial::vertex(v), Scalar::one()))
            .collect();
        Element::from_terms(self.tag, terms)
    }

    pub fn constant(&self, c: Scalar) -> Element {
        self.scale(&self.one(), &c)
    }

    pub fn edge(&self, e: Edge) -> Element {
        self.path(&Path {
            start: self.graph.source(e),
            edges: vec![e],
        })
    }

    pub fn ghost(&self, e: Edge) -> Element {
        self.star(&self.edge(e))
    }

    /// The real path `μ` as an element.
    pub fn path(&self, p: &Path) -> Element {
        let end = self.graph.path_range(p);
        self.single(
            Monomial {
                real: p.clone(),
                ghost: Path::trivial(end),
            },
            Scalar::one(),
        )
    }

    /// `μ*` as an element.
    pub fn ghost_path(&self, p: &Path) -> Element {
        self.star(&self.path(p))
    }

    /// The element `c·p q*`, normalized.
    pub fn monomial(&self, c: Scalar, real: Path, ghost: Path) -> Result<Element, KernelError> {
        self.normalize(vec![(c, Monomial { real, ghost })])
    }

    /// Normalizes a formal combination of `p q*` terms.
    pub fn normalize(&self, raw: Vec<(Scalar, Monomial)>) -> Result<Element, KernelError> {
        self.normalize_with(raw, RewriteOrder::DepthFirst)
    }

    pub fn normalize_with(
        &self,
        raw: Vec<(Scalar, Monomial)>,
        order: RewriteOrder,
    ) -> Result<Element, KernelError> {
        for (_, m) in &raw {
            self.check_monomial(m)?;
        }
        Ok(Element::from_terms(
            self.tag,
            normalize_terms(self, raw, order),
        ))
    }

    fn check_monomial(&self, m: &Monomial) -> Result<(), KernelError> {
        let g = &self.graph;
        g.check_path(&m.real)?;
        g.check_path(&m.ghost)?;
        if g.path_range(&m.real) != g.path_range(&m.ghost) {
            return Err(KernelError::Malformed(format!(
                "r({}) != r({})",
                g.format_path(&m.real),
                g.format_path(&m.ghost)
            )));
        }
        Ok(())
    }

    /// The unnormalized product of two monomials, or `None` when it vanishes.
    pub(crate) fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let (q, r) = (&a.ghost, &b.real);
        if q.start != r.start {
            return None;
        }
        if r.edges.starts_with(&q.edges) {
            let mut real = a.real.clone();
            real.edges.extend_from_slice(&r.edges[q.len()..]);
            Some(Monomial {
                real,
                ghost: b.ghost.clone(),
            })
        } else if q.edges.starts_with(&r.edges) {
            let mut ghost = b.ghost.clone();
            ghost.edges.extend_from_slice(&q.edges[r.len()..]);
            Some(Monomial {
                real: a.real.clone(),
                ghost,
            })
        } else {
            None
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, KernelError> {
        self.check(x)?;
        self.check(y)?;
        let mut raw = Vec::new();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                if let Some(m) = self.monomial_product(a, b) {
                    raw.push((ca * cb, m));
                }
            }
        }
        Ok(Element::from_terms(
            self.tag,
            normalize_terms(self, raw, RewriteOrder::DepthFirst),
        ))
    }

    /// Product of several factors, left to right.
    pub fn product<'a, I>(&self, factors: I) -> Result<Element, KernelError>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element, KernelError> {
        self.check(x)?;
        self.check(y)?;
        let mut terms = x.terms.clone();
        for (m, c) in &y.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Element::from_terms(self.tag, terms))
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element, KernelError> {
        self.add(x, &self.scale(y, &-Scalar::one()))
    }

    pub fn scale(&self, x: &Element, c: &Scalar) -> Element {
        if c.is_zero() {
            return self.zero();
        }
        let terms = x.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Element::from_terms(x.tag, terms)
    }

    pub fn neg(&self, x: &Element) -> Element {
        self.scale(x, &-Scalar::one())
    }

    /// The involution `(p q*)* = q p*`, extended linearly.
    pub fn star(&self, x: &Element) -> Element {
        let terms = x
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial {
                        real: m.ghost.clone(),
                        ghost: m.real.clone(),
                    },
                    c.clone(),
                )
            })
            .collect();
        Element::from_terms(x.tag, terms)
    }
}

pub(crate) fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(slot) => {
            if !c.is_zero() {
                slot.insert(c);
            }
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}
