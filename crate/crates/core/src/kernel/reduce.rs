//! Conjugating a nonzero element down to a vertex.

use num::One;

use super::element::{Element, Leavitt, Scalar};
use super::witness::Witness;
use super::KernelError;
use crate::graph::{Path, Vertex};

/// Running state `y = α x β`.
struct Reduction<'a> {
    alg: &'a Leavitt,
    alpha: Element,
    beta: Element,
    y: Element,
}

impl<'a> Reduction<'a> {
    fn new(alg: &'a Leavitt, x: &Element) -> Self {
        Reduction {
            alg,
            alpha: alg.one(),
            beta: alg.one(),
            y: x.clone(),
        }
    }

    fn left(&mut self, l: &Element) -> Result<(), KernelError> {
        self.alpha = self.alg.mul(l, &self.alpha)?;
        self.y = self.alg.mul(l, &self.y)?;
        Ok(())
    }

    fn right(&mut self, r: &Element) -> Result<(), KernelError> {
        self.beta = self.alg.mul(&self.beta, r)?;
        self.y = self.alg.mul(&self.y, r)?;
        Ok(())
    }

    fn conjugate(&mut self, l: &Element, r: &Element) -> Result<(), KernelError> {
        self.left(l)?;
        self.right(r)
    }

    /// `y` is real with every term ending at one vertex: multiply on the left
    /// by `p₁*` for a shortest term `p₁`, leaving `λ·w + Σ cᵢ rᵢ` with
    /// `w = r(p₁)` and the `rᵢ` closed paths of positive length at `w`.
    fn strip_shortest(&mut self) -> Result<(), KernelError> {
        let p1 = self
            .y
            .terms()
            .map(|(m, _)| &m.real)
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .expect("nonzero")
            .clone();
        let l = self.alg.ghost_path(&p1);
        self.left(&l)
    }

    /// Shortest positive-length term of `y`.
    fn shortest_loop(&self) -> Path {
        self.y
            .terms()
            .map(|(m, _)| &m.real)
            .filter(|p| !p.is_trivial())
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .expect("more than one term")
            .clone()
    }

    /// Divides out the coefficient once `y = λ·v`.
    fn finish(self, x: &Element) -> Result<(Witness, Vertex), KernelError> {
        let (v, lambda) = self
            .y
            .as_vertex_multiple()
            .ok_or_else(|| KernelError::NonTermination("reduction did not reach a vertex".into()))?;
        let alpha = self.alg.scale(&self.alpha, &(Scalar::one() / lambda));
        let alg = self.alg;
        let w = Witness {
            alpha: alg.scalar_matrix(&alpha),
            beta: alg.scalar_matrix(&self.beta),
        };
        let target = alg.scalar_matrix(&alg.vertex(v));
        if !alg.verify_precsim(&target, &alg.scalar_matrix(x), &w)? {
            return Err(KernelError::NonTermination("reduction witness failed to verify".into()));
        }
        Ok((w, v))
    }
}

/// The prefix of a closed path at `base` up to its first return to `base`.
fn first_segment(alg: &Leavitt, p: &Path) -> Path {
    let g = alg.graph();
    let k = p
        .edges
        .iter()
        .position(|&e| g.range(e) == p.start)
        .expect("closed path");
    Path {
        start: p.start,
        edges: p.edges[..=k].to_vec(),
    }
}

impl Leavitt {
    /// Finds `α, β` and a vertex `v` with `α x β = v`, certifying `v ≾ x`.
    /// Requires `x ≠ 0` and that every cycle has an exit.
    pub fn reduce_to_vertex(&self, x: &Element) -> Result<(Witness, Vertex), KernelError> {
        self.check(x)?;
        if x.is_zero() {
            return Err(KernelError::ZeroElement);
        }
        let g = self.graph();
        if let Some(c) = g.cycle_without_exit() {
            return Err(KernelError::ConditionLFails(g.format_path(&c)));
        }
        let mut budget = x.len() + x.ghost_degree() + 2;
        let mut red = Reduction::new(self, x);

        // (1) keep only the terms whose ghost part starts at one vertex
        let mut base = g
            .vertices()
            .find(|&v| !self.mul(x, &self.vertex(v)).map_or(true, |y| y.is_zero()))
            .expect("x = x·1 is nonzero");
        red.right(&self.vertex(base))?;

        // (2) peel ghost edges off from the right
        while !red.y.is_real() {
            budget = budget.checked_sub(1).ok_or_else(|| {
                KernelError::NonTermination("reduce_to_vertex ghost stage".into())
            })?;
            let before = red.y.ghost_degree();
            let mut next = None;
            for &e in g.out_edges(base) {
                let ye = self.mul(&red.y, &self.edge(e))?;
                if !ye.is_zero() {
                    next = Some(e);
                    break;
                }
            }
            let e = next.ok_or_else(|| {
                KernelError::NonTermination("no edge keeps the element nonzero".into())
            })?;
            red.right(&self.edge(e))?;
            base = g.range(e);
            debug_assert!(red.y.ghost_degree() < before);
        }

        // (3) now y is a combination of paths ending at `base`
        red.strip_shortest()?;
        let base_elt = self.vertex(base);
        red.conjugate(&base_elt, &base_elt)?;

        // (4) kill one loop per round by leaving through an exit
        while red.y.len() > 1 {
            budget = budget.checked_sub(1).ok_or_else(|| {
                KernelError::NonTermination("reduce_to_vertex exit stage".into())
            })?;
            let before = red.y.len();
            let seg = first_segment(self, &red.shortest_loop());
            let (k, f) = seg
                .edges
                .iter()
                .enumerate()
                .find_map(|(k, &ek)| {
                    g.out_edges(g.source(ek))
                        .iter()
                        .find(|&&f| f != ek)
                        .map(|&f| (k, f))
                })
                .ok_or_else(|| KernelError::ConditionLFails(g.format_path(&seg)))?;
            let mut qf = Path {
                start: seg.start,
                edges: seg.edges[..k].to_vec(),
            };
            qf.edges.push(f);
            red.conjugate(&self.ghost_path(&qf), &self.path(&qf))?;
            if red.y.len() >= before || red.y.is_zero() {
                return Err(KernelError::NonTermination("exit conjugation did not shrink".into()));
            }
        }
        red.finish(x)
    }

    /// For a nonzero real `y` whose terms all end at `w`, a witness for
    /// `w ≾ y`. Loops at `w` are separated using two distinct closed simple
    /// paths at `w`, so `w` stays fixed.
    pub fn reduce_to_base(&self, y: &Element) -> Result<(Witness, Vertex), KernelError> {
        self.check(y)?;
        if y.is_zero() {
            return Err(KernelError::ZeroElement);
        }
        let g = self.graph();
        if !y.is_real() {
            return Err(KernelError::PreconditionFailed("element has ghost terms".into()));
        }
        let mut ends = y.terms().map(|(m, _)| g.path_range(&m.real));
        let w = ends.next().expect("nonzero");
        if ends.any(|u| u != w) {
            return Err(KernelError::PreconditionFailed(
                "terms end at different vertices".into(),
            ));
        }
        let mut red = Reduction::new(self, y);
        red.strip_shortest()?;
        let csp = if red.y.len() > 1 {
            g.closed_simple_paths(w, 2, 3 * g.vertex_count() + 2)
        } else {
            Vec::new()
        };
        while red.y.len() > 1 {
            let before = red.y.len();
            let seg = first_segment(self, &red.shortest_loop());
            let sigma = csp.iter().find(|c| **c != seg).ok_or_else(|| {
                KernelError::PreconditionFailed(format!("|CSP({})| < 2", g.vertex_id(w)))
            })?;
            red.conjugate(&self.ghost_path(sigma), &self.path(sigma))?;
            if red.y.len() >= before || red.y.is_zero() {
                return Err(KernelError::NonTermination("loop separation did not shrink".into()));
            }
        }
        red.finish(y)
    }
}

/// Paths `q` with `Σ q q* = 1`: every path of length `depth`, together with
/// shorter paths that end at a sink.
pub(crate) fn cut_paths(alg: &Leavitt, depth: usize) -> Vec<Path> {
    let g = alg.graph();
    let mut layer: Vec<Path> = g.vertices().map(Path::trivial).collect();
    let mut done = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in layer {
            let end = g.path_range(&p);
            if g.is_sink(end) {
                done.push(p);
                continue;
            }
            for &e in g.out_edges(end) {
                let mut q = p.clone();
                q.edges.push(e);
                next.push(q);
            }
        }
        layer = next;
    }
    done.extend(layer);
    done.sort();
    done
}
