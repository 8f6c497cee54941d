//! Named example graphs and the exhaustive family of small graphs.

use crate::graph::Graph;

const BUNDLED: &[(&str, &str)] = &[
    ("rose1", include_str!("../../../corpus/rose1.json")),
    ("loop", include_str!("../../../corpus/loop.json")),
    ("rose2", include_str!("../../../corpus/rose2.json")),
    ("toeplitz", include_str!("../../../corpus/toeplitz.json")),
    ("twin-roses", include_str!("../../../corpus/twin-roses.json")),
    ("free2", include_str!("../../../corpus/free2.json")),
    ("chain3", include_str!("../../../corpus/chain3.json")),
    ("point", include_str!("../../../corpus/point.json")),
];

/// The graphs shipped in `corpus/`, by name.
pub fn bundled() -> Vec<(&'static str, Graph)> {
    BUNDLED
        .iter()
        .map(|(name, text)| (*name, Graph::from_json(text).expect("bundled graph parses")))
        .collect()
}

pub fn bundled_graph(name: &str) -> Option<Graph> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| Graph::from_json(text).expect("bundled graph parses"))
}

/// Every graph on `v0, …, v{n-1}` for `1 ≤ n ≤ max_vertices`, with between
/// `0` and `max_parallel` edges for each ordered pair of vertices (loops
/// included). Edges are named `e0, e1, …` in pair order.
pub struct Exhaustive {
    max_vertices: usize,
    max_parallel: usize,
    n: usize,
    counter: Vec<usize>,
    done: bool,
}

pub fn exhaustive(max_vertices: usize, max_parallel: usize) -> Exhaustive {
    Exhaustive {
        max_vertices,
        max_parallel,
        n: 1,
        counter: vec![0; 1],
        done: max_vertices == 0,
    }
}

impl Exhaustive {
    /// Number of graphs the iterator yields.
    pub fn total(&self) -> usize {
        (1..=self.max_vertices)
            .map(|n| (self.max_parallel + 1).pow((n * n) as u32))
            .sum()
    }
}

impl Iterator for Exhaustive {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.done {
            return None;
        }
        let n = self.n;
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for (pair, &count) in self.counter.iter().enumerate() {
            for _ in 0..count {
                edges.push((
                    format!("e{}", edges.len()),
                    names[pair / n].clone(),
                    names[pair % n].clone(),
                ));
            }
        }
        let g = Graph::new(names, edges).expect("generated graph is valid");

        // advance the mixed-radix counter, moving to n + 1 vertices on overflow
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.n += 1;
                if self.n > self.max_vertices {
                    self.done = true;
                } else {
                    self.counter = vec![0; self.n * self.n];
                }
                break;
            }
            if self.counter[i] < self.max_parallel {
                self.counter[i] += 1;
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(g)
    }
}
