//! Brute-force reference implementations used to check the library.
#![allow(dead_code)]

use std::collections::BTreeMap;

use leavitt_core::graph::{Edge, Graph, Path, Vertex};
use leavitt_core::kernel::{Element, ElementMatrix, Monomial, Scalar, Witness};
use leavitt_core::monoid::MonoidVector;
use num::Zero;

pub type Terms = BTreeMap<Monomial, Scalar>;

// ---------- graphs ----------

/// Reflexive-transitive reachability by Warshall's algorithm.
pub fn reach(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for e in g.edges() {
        r[g.source(e).0][g.range(e).0] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn contains(mask: u64, v: Vertex) -> bool {
    mask >> v.0 & 1 == 1
}

pub fn hereditary_saturated_masks(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    (0..1u64 << n)
        .filter(|&h| {
            let hereditary = g.edges().all(|e| !contains(h, g.source(e)) || contains(h, g.range(e)));
            let saturated = g.vertices().all(|v| {
                g.is_sink(v)
                    || contains(h, v)
                    || !g.out_edges(v).iter().all(|&e| contains(h, g.range(e)))
            });
            hereditary && saturated
        })
        .collect()
}

pub fn tail_masks(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let full = (1u64 << n) - 1;
    let r = reach(g);
    hereditary_saturated_masks(g)
        .into_iter()
        .map(|h| full & !h)
        .filter(|&m| {
            m != 0
                && g.vertices().filter(|&v| contains(m, v)).all(|v| {
                    g.vertices().filter(|&w| contains(m, w)).all(|w| {
                        g.vertices()
                            .any(|y| contains(m, y) && r[v.0][y.0] && r[w.0][y.0])
                    })
                })
        })
        .collect()
}

/// Every cycle, in every rotation: closed paths with pairwise distinct sources.
pub fn cycles(g: &Graph) -> Vec<Vec<Edge>> {
    fn walk(g: &Graph, start: Vertex, at: Vertex, used: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        for &e in g.out_edges(at) {
            if used.iter().any(|&u| g.source(u) == g.source(e)) {
                continue;
            }
            used.push(e);
            if g.range(e) == start {
                out.push(used.clone());
            } else {
                walk(g, start, g.range(e), used, out);
            }
            used.pop();
        }
    }
    let mut out = Vec::new();
    for v in g.vertices() {
        walk(g, v, v, &mut Vec::new(), &mut out);
    }
    out
}

/// Counts closed simple paths at `v` up to length `max_len`, stopping at `limit`.
pub fn csp_count(g: &Graph, v: Vertex, max_len: usize, limit: usize) -> usize {
    let r = reach(g);
    fn walk(g: &Graph, r: &[Vec<bool>], v: Vertex, at: Vertex, left: usize, count: &mut usize, limit: usize) {
        if left == 0 {
            return;
        }
        for &e in g.out_edges(at) {
            if *count >= limit {
                return;
            }
            let next = g.range(e);
            if next == v {
                *count += 1;
            } else if r[next.0][v.0] {
                walk(g, r, v, next, left - 1, count, limit);
            }
        }
    }
    let mut count = 0;
    walk(g, &r, v, v, max_len, &mut count, limit);
    count
}

pub fn condition_k(g: &Graph) -> bool {
    let r = reach(g);
    g.vertices().all(|v| {
        let on_closed = g.out_edges(v).iter().any(|&e| r[g.range(e).0][v.0]);
        !on_closed || csp_count(g, v, 3 * g.vertex_count(), 2) >= 2
    })
}

pub fn condition_l(g: &Graph) -> bool {
    cycles(g).iter().all(|c| {
        c.iter()
            .any(|&ce| g.out_edges(g.source(ce)).iter().any(|e| !c.contains(e)))
    })
}

/// Some vertex reachable from `v` inside `m` lies on a cycle inside `m`.
fn reaches_cycle_in(g: &Graph, v: Vertex, m: u64) -> bool {
    let inside: Vec<Vec<Edge>> = cycles(g)
        .into_iter()
        .filter(|c| c.iter().all(|&e| contains(m, g.source(e))))
        .collect();
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![v];
    seen[v.0] = true;
    while let Some(x) = stack.pop() {
        if inside.iter().any(|c| c.iter().any(|&e| g.source(e) == x)) {
            return true;
        }
        for &e in g.out_edges(x) {
            let y = g.range(e);
            if contains(m, y) && !seen[y.0] {
                seen[y.0] = true;
                stack.push(y);
            }
        }
    }
    false
}

fn every_vertex_reaches_cycle(g: &Graph, m: u64) -> bool {
    g.vertices().filter(|&v| contains(m, v)).all(|v| reaches_cycle_in(g, v, m))
}

/// Every cycle in every maximal tail exits into the tail, and every vertex
/// of the tail reaches a cycle in it.
pub fn condition_vi(g: &Graph) -> bool {
    tail_masks(g).into_iter().all(|m| {
        let exits = cycles(g)
            .iter()
            .filter(|c| c.iter().all(|&e| contains(m, g.source(e))))
            .all(|c| {
                c.iter().any(|&ce| {
                    g.out_edges(g.source(ce))
                        .iter()
                        .any(|e| !c.contains(e) && contains(m, g.range(*e)))
                })
            });
        exits && every_vertex_reaches_cycle(g, m)
    })
}

pub fn condition_vii(g: &Graph) -> bool {
    condition_k(g) && tail_masks(g).into_iter().all(|m| every_vertex_reaches_cycle(g, m))
}

pub fn simple(g: &Graph) -> bool {
    hereditary_saturated_masks(g).len() == 2 && condition_l(g)
}

pub fn purely_infinite_simple(g: &Graph) -> bool {
    simple(g) && every_vertex_reaches_cycle(g, (1u64 << g.vertex_count()) - 1)
}

// ---------- the algebra ----------

pub fn terms_of(x: &Element) -> Vec<(Scalar, Monomial)> {
    x.terms().map(|(m, c)| (c.clone(), m.clone())).collect()
}

fn push(out: &mut Terms, m: Monomial, c: Scalar) {
    let slot = out.entry(m).or_insert_with(Scalar::zero);
    *slot += c;
}

/// `(p q*)(r s*)` by comparing `q` and `r` edge by edge.
pub fn monomial_product(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    if a.ghost.start != b.real.start {
        return None;
    }
    let (q, r) = (&a.ghost.edges, &b.real.edges);
    let common = q.len().min(r.len());
    if q[..common] != r[..common] {
        return None;
    }
    let mut real = a.real.clone();
    let mut ghost = b.ghost.clone();
    real.edges.extend_from_slice(&r[common..]);
    ghost.edges.extend_from_slice(&q[common..]);
    Some(Monomial { real, ghost })
}

pub fn product(x: &[(Scalar, Monomial)], y: &[(Scalar, Monomial)]) -> Vec<(Scalar, Monomial)> {
    let mut out = Vec::new();
    for (a, m) in x {
        for (b, n) in y {
            if let Some(p) = monomial_product(m, n) {
                out.push((a * b, p));
            }
        }
    }
    out
}

/// Rewrites every `p q*` as `Σ (pμ)(qμ)*` over paths `μ` at `r(p)` until each
/// ghost part has length `depth` or ends at a sink. For `depth` at least the
/// longest ghost part, the resulting coefficients determine the element.
pub fn expand(g: &Graph, x: &[(Scalar, Monomial)], depth: usize) -> Terms {
    let mut out = Terms::new();
    let mut stack: Vec<(Scalar, Monomial)> = x.to_vec();
    while let Some((c, m)) = stack.pop() {
        let end = g.path_range(&m.real);
        if m.ghost.len() >= depth || g.is_sink(end) {
            push(&mut out, m, c);
            continue;
        }
        for &e in g.out_edges(end) {
            let mut n = m.clone();
            n.real.edges.push(e);
            n.ghost.edges.push(e);
            stack.push((c.clone(), n));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn ghost_depth(x: &[(Scalar, Monomial)]) -> usize {
    x.iter().map(|(_, m)| m.ghost.len()).max().unwrap_or(0)
}

/// Equality in `L(E)`, decided by expansion.
pub fn equal(g: &Graph, x: &[(Scalar, Monomial)], y: &[(Scalar, Monomial)]) -> bool {
    let d = ghost_depth(x).max(ghost_depth(y));
    expand(g, x, d) == expand(g, y, d)
}

pub fn vertex_terms(v: Vertex) -> Vec<(Scalar, Monomial)> {
    vec![(Scalar::from_integer(1.into()), Monomial::vertex(v))]
}

pub fn path_terms(p: &Path) -> Vec<(Scalar, Monomial)> {
    vec![(
        Scalar::from_integer(1.into()),
        Monomial { real: p.clone(), ghost: Path::trivial(p.start) },
    )]
}

// ---------- the monoid ----------

/// True iff `b` arises from `a` by replacing one non-sink `v` with the
/// ranges of its edges, or the reverse.
pub fn monoid_step(g: &Graph, a: &MonoidVector, b: &MonoidVector) -> bool {
    let apply = |from: &MonoidVector, to: &MonoidVector| {
        g.vertices().filter(|&v| !g.is_sink(v)).any(|v| {
            if from.0[v.0] == 0 {
                return false;
            }
            let mut next: Vec<u64> = from.0.clone();
            next[v.0] -= 1;
            for &e in g.out_edges(v) {
                next[g.range(e).0] += 1;
            }
            next == to.0
        })
    };
    apply(a, b) || apply(b, a)
}

pub fn monoid_chain(g: &Graph, steps: &[MonoidVector], x: &MonoidVector, y: &MonoidVector) -> bool {
    steps.first() == Some(x)
        && steps.last() == Some(y)
        && steps.windows(2).all(|w| monoid_step(g, &w[0], &w[1]))
}

/// Conicality along a chain: a zero vector never sits next to a nonzero one.
pub fn conical(steps: &[MonoidVector]) -> bool {
    steps.windows(2).all(|w| w[0].is_zero() == w[1].is_zero())
}

pub fn star(x: &[(Scalar, Monomial)]) -> Vec<(Scalar, Monomial)> {
    x.iter()
        .map(|(c, m)| (c.clone(), Monomial { real: m.ghost.clone(), ghost: m.real.clone() }))
        .collect()
}

fn add_terms(x: &mut Vec<(Scalar, Monomial)>, y: Vec<(Scalar, Monomial)>) {
    x.extend(y);
}

/// `α y β = x`, with every entry product and sum taken by this module.
pub fn precsim(g: &Graph, x: &ElementMatrix, y: &ElementMatrix, w: &Witness) -> bool {
    let (k, n) = (x.rows(), y.rows());
    if w.alpha.shape() != (k, n) || w.beta.shape() != (n, k) || x.cols() != k || y.cols() != n {
        return false;
    }
    (0..k).all(|i| {
        (0..k).all(|j| {
            let mut acc = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    let left = product(&terms_of(w.alpha.get(i, a)), &terms_of(y.get(a, b)));
                    add_terms(&mut acc, product(&left, &terms_of(w.beta.get(b, j))));
                }
            }
            equal(g, &acc, &terms_of(x.get(i, j)))
        })
    })
}
