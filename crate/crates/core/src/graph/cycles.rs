//! Cycles, closed simple paths, and Conditions (K) and (L).

use std::collections::HashSet;

use super::{Edge, Graph, GraphError, Path, Vertex, VertexSet};

impl Graph {
    /// All cycles up to rotation. Each is reported in its lexicographically
    /// least rotation (by edge declaration order), and the list is sorted.
    pub fn simple_cycles(&self) -> Vec<Path> {
        let mut found = Vec::new();
        for start in self.vertices() {
            let mut on_path = vec![false; self.vertex_count()];
            let mut edges = Vec::new();
            self.cycles_from(start, start, &mut on_path, &mut edges, &mut found);
        }
        let mut cycles: Vec<Path> = found
            .into_iter()
            .map(|edges| self.least_rotation(edges))
            .collect();
        cycles.sort_by(|a, b| a.edges.cmp(&b.edges));
        cycles
    }

    // Enumerates cycles whose smallest vertex is `start`.
    fn cycles_from(
        &self,
        start: Vertex,
        at: Vertex,
        on_path: &mut Vec<bool>,
        edges: &mut Vec<Edge>,
        found: &mut Vec<Vec<Edge>>,
    ) {
        on_path[at.0] = true;
        for &e in self.out_edges(at) {
            let next = self.range(e);
            if next == start {
                let mut cycle = edges.clone();
                cycle.push(e);
                found.push(cycle);
            } else if next > start && !on_path[next.0] {
                edges.push(e);
                self.cycles_from(start, next, on_path, edges, found);
                edges.pop();
            }
        }
        on_path[at.0] = false;
    }

    fn least_rotation(&self, edges: Vec<Edge>) -> Path {
        let n = edges.len();
        let best = (0..n)
            .map(|k| {
                let mut rotated = edges[k..].to_vec();
                rotated.extend_from_slice(&edges[..k]);
                rotated
            })
            .min()
            .expect("cycles are nonempty");
        Path {
            start: self.source(best[0]),
            edges: best,
        }
    }

    /// Cycles all of whose vertices lie in `m`.
    pub fn cycles_in(&self, m: &VertexSet) -> Vec<Path> {
        self.simple_cycles()
            .into_iter()
            .filter(|c| c.vertices(self).iter().all(|&v| m.contains(v)))
            .collect()
    }

    /// True iff some edge leaves a vertex of `c`, is not an edge of `c`,
    /// and ends in `m`.
    pub fn cycle_has_exit_in(&self, c: &Path, m: &VertexSet) -> Result<bool, GraphError> {
        self.check_path(c)?;
        if !c.is_cycle(self) {
            return Err(GraphError::Precondition("path is not a cycle".into()));
        }
        if !c.vertices(self).iter().all(|&v| m.contains(v)) {
            return Err(GraphError::Precondition(
                "cycle is not contained in the given set".into(),
            ));
        }
        Ok(self.exit_in(c, m).is_some())
    }

    pub(crate) fn exit_in(&self, c: &Path, m: &VertexSet) -> Option<Edge> {
        let own: HashSet<Edge> = c.edges.iter().copied().collect();
        c.edges.iter().find_map(|&ce| {
            self.out_edges(self.source(ce))
                .iter()
                .copied()
                .find(|&e| !own.contains(&e) && m.contains(self.range(e)))
        })
    }

    /// First cycle (in [`Graph::simple_cycles`] order) without an exit.
    pub fn cycle_without_exit(&self) -> Option<Path> {
        let all = self.all_vertices();
        self.simple_cycles()
            .into_iter()
            .find(|c| self.exit_in(c, &all).is_none())
    }

    /// Condition (L): every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.cycle_without_exit().is_none()
    }

    /// True iff `v` is the base of at least one closed path.
    pub fn on_closed_path(&self, v: Vertex) -> bool {
        self.out_edges(v)
            .iter()
            .any(|&e| self.reachable_from(self.range(e), |_| true)[v.0])
    }

    /// First vertex (in declaration order) that lies on a closed simple path
    /// but is the base of fewer than two.
    pub fn condition_k_violation(&self) -> Option<Vertex> {
        self.vertices()
            .find(|&v| self.on_closed_path(v) && !self.csp_at_least_two(v))
    }

    /// Condition (K).
    pub fn condition_k(&self) -> bool {
        self.condition_k_violation().is_none()
    }

    /// Decides `|CSP(v)| ≥ 2`.
    ///
    /// Let `S` be the vertices other than `v` visited by closed walks based at
    /// `v` that avoid `v` internally. If some vertex of `S` lies on a cycle of
    /// the graph with `v` removed, that cycle can be pumped and `CSP(v)` is
    /// infinite. Otherwise every closed simple path at `v` is a cycle through
    /// `v`, and those are counted directly.
    pub fn csp_at_least_two(&self, v: Vertex) -> bool {
        let avoid_v = |x: Vertex| x != v;
        let mut from_v = vec![false; self.vertex_count()];
        for &e in self.out_edges(v) {
            let w = self.range(e);
            if w != v {
                for (x, hit) in self.reachable_from(w, avoid_v).into_iter().enumerate() {
                    from_v[x] |= hit;
                }
            }
        }
        let back_to_v: Vec<bool> = self
            .vertices()
            .map(|x| {
                x != v
                    && self
                        .reachable_from(x, avoid_v)
                        .iter()
                        .enumerate()
                        .any(|(y, &hit)| {
                            hit && self
                                .out_edges(Vertex(y))
                                .iter()
                                .any(|&e| self.range(e) == v)
                        })
            })
            .collect();
        let middle: Vec<Vertex> = self
            .vertices()
            .filter(|x| *x != v && from_v[x.0] && back_to_v[x.0])
            .collect();
        let pumpable = middle.iter().any(|&x| {
            self.out_edges(x).iter().any(|&e| {
                let y = self.range(e);
                y != v && self.reachable_from(y, avoid_v)[x.0]
            })
        });
        if pumpable {
            return true;
        }
        self.count_cycles_through(v, 2) >= 2
    }

    // Counts cycles through `v` (as closed walks starting at `v`), stopping at `limit`.
    fn count_cycles_through(&self, v: Vertex, limit: usize) -> usize {
        fn walk(g: &Graph, v: Vertex, at: Vertex, seen: &mut Vec<bool>, count: &mut usize, limit: usize) {
            for &e in g.out_edges(at) {
                if *count >= limit {
                    return;
                }
                let next = g.range(e);
                if next == v {
                    *count += 1;
                } else if !seen[next.0] {
                    seen[next.0] = true;
                    walk(g, v, next, seen, count, limit);
                    seen[next.0] = false;
                }
            }
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[v.0] = true;
        let mut count = 0;
        walk(self, v, v, &mut seen, &mut count, limit);
        count
    }

    /// Up to `count` closed simple paths based at `v`, shortest first and
    /// lexicographic by edge order within a length, of length at most `max_len`.
    pub fn closed_simple_paths(&self, v: Vertex, count: usize, max_len: usize) -> Vec<Path> {
        // dist[x] = fewest edges from x back to v without passing through v in between
        let mut dist = vec![usize::MAX; self.vertex_count()];
        loop {
            let mut changed = false;
            for e in self.edges() {
                let (s, r) = (self.source(e), self.range(e));
                let d = if r == v {
                    1
                } else if dist[r.0] == usize::MAX {
                    continue;
                } else {
                    dist[r.0] + 1
                };
                if d < dist[s.0] {
                    dist[s.0] = d;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let mut found = Vec::new();
        for len in 1..=max_len {
            let mut edges = Vec::with_capacity(len);
            self.csp_of_length(v, v, len, &dist, &mut edges, &mut found, count);
            if found.len() >= count {
                break;
            }
        }
        found
            .into_iter()
            .map(|edges| Path { start: v, edges })
            .collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn csp_of_length(
        &self,
        v: Vertex,
        at: Vertex,
        remaining: usize,
        dist: &[usize],
        edges: &mut Vec<Edge>,
        found: &mut Vec<Vec<Edge>>,
        count: usize,
    ) {
        for &e in self.out_edges(at) {
            if found.len() >= count {
                return;
            }
            let next = self.range(e);
            edges.push(e);
            if remaining == 1 {
                if next == v {
                    found.push(edges.clone());
                }
            } else if next != v && dist[next.0] < remaining {
                self.csp_of_length(v, next, remaining - 1, dist, edges, found, count);
            }
            edges.pop();
        }
    }
}
