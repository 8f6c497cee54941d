//! Bounded breadth-first search over single relation applications.

use std::collections::HashMap;

use super::{Monoid, MonoidError, MonoidVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Rewrite steps allowed in one search (both directions together).
    pub depth: usize,
    /// Distinct states a single search may store.
    pub states: usize,
    /// Overrides the per-coordinate cap of decomposition searches.
    pub component_cap: Option<u64>,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            depth: 12,
            states: 200_000,
            component_cap: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
    pub depth: usize,
    /// The reachable set was explored completely.
    pub exhausted: bool,
}

/// `Some(witness)` when found; `None` means the bound was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchVerdict<T> {
    pub witness: Option<T>,
    pub stats: SearchStats,
}

impl<T> SearchVerdict<T> {
    pub fn is_found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchVerdict<U> {
        SearchVerdict {
            witness: self.witness.map(f),
            stats: self.stats,
        }
    }
}

/// Vectors from `x` to `y`, each obtained from the previous one by a single
/// application of a relation in one direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityChain {
    pub steps: Vec<MonoidVector>,
}

impl EqualityChain {
    pub fn trivial(x: &MonoidVector) -> Self {
        EqualityChain {
            steps: vec![x.clone()],
        }
    }

    pub fn start(&self) -> &MonoidVector {
        &self.steps[0]
    }

    pub fn end(&self) -> &MonoidVector {
        self.steps.last().expect("nonempty chain")
    }

    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn reversed(mut self) -> Self {
        self.steps.reverse();
        self
    }
}

/// `x + z = y` in the monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeqWitness {
    pub z: MonoidVector,
    /// From `x + z` to `y`.
    pub chain: EqualityChain,
}

/// One side of a search: every state with the index of its parent.
pub(crate) struct Side {
    pub(crate) states: Vec<MonoidVector>,
    parent: Vec<Option<usize>>,
    pub(crate) index: HashMap<MonoidVector, usize>,
    frontier: Vec<usize>,
    pub(crate) depth: usize,
    pruned: bool,
}

impl Side {
    pub(crate) fn new(start: &MonoidVector) -> Self {
        Side {
            states: vec![start.clone()],
            parent: vec![None],
            index: HashMap::from([(start.clone(), 0)]),
            frontier: vec![0],
            depth: 0,
            pruned: false,
        }
    }

    /// States from the start to `i`.
    pub(crate) fn chain_to(&self, mut i: usize) -> EqualityChain {
        let mut steps = vec![self.states[i].clone()];
        while let Some(p) = self.parent[i] {
            steps.push(self.states[p].clone());
            i = p;
        }
        steps.reverse();
        EqualityChain { steps }
    }

    /// Adds the next BFS level and returns the indices of the new states.
    /// States with a coordinate above `cap` are skipped.
    fn expand(&mut self, m: &Monoid, cap: Option<u64>, state_limit: usize) -> Vec<usize> {
        let mut added = Vec::new();
        for &i in &std::mem::take(&mut self.frontier) {
            for next in m.neighbors(&self.states[i]) {
                if self.index.contains_key(&next) {
                    continue;
                }
                if cap.is_some_and(|c| next.max_entry() > c) || self.states.len() >= state_limit {
                    self.pruned = true;
                    continue;
                }
                let j = self.states.len();
                self.index.insert(next.clone(), j);
                self.states.push(next);
                self.parent.push(Some(i));
                added.push(j);
            }
        }
        self.depth += 1;
        self.frontier = added.clone();
        added
    }
}

/// The equivalence class of a vector, explored breadth first.
pub(crate) struct Class {
    pub(crate) side: Side,
    pub(crate) exhausted: bool,
}

impl Class {
    pub(crate) fn reps(&self) -> &[MonoidVector] {
        &self.side.states
    }

    /// Chain from the class's start to representative `i`.
    pub(crate) fn chain(&self, i: usize) -> EqualityChain {
        self.side.chain_to(i)
    }

    pub(crate) fn find(&self, x: &MonoidVector) -> Option<usize> {
        self.side.index.get(x).copied()
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            states: self.side.states.len(),
            depth: self.side.depth,
            exhausted: self.exhausted,
        }
    }
}

impl Monoid {
    /// Vectors one relation application away, in a fixed order: expansions
    /// `v → Σ r(e)` by generator, then contractions.
    pub(crate) fn neighbors(&self, x: &MonoidVector) -> Vec<MonoidVector> {
        let mut out = Vec::new();
        for (i, rel) in self.relations.iter().enumerate() {
            if let (Some(rhs), true) = (rel, x.0[i] > 0) {
                let mut y = x.clone();
                y.0[i] -= 1;
                out.push(y.add(rhs));
            }
        }
        for (i, rel) in self.relations.iter().enumerate() {
            if let Some(rhs) = rel {
                if let Some(mut y) = x.checked_sub(rhs) {
                    y.0[i] += 1;
                    out.push(y);
                }
            }
        }
        out
    }

    /// Explores the class of `start` until `stop` accepts a state, the depth
    /// or state bound is hit, or the class is exhausted. Returns the index of
    /// the accepted state.
    pub(crate) fn explore(
        &self,
        start: &MonoidVector,
        bounds: &Bounds,
        cap: Option<u64>,
        mut stop: impl FnMut(&MonoidVector) -> bool,
    ) -> (Class, Option<usize>) {
        let mut side = Side::new(start);
        if stop(start) {
            return (
                Class {
                    side,
                    exhausted: false,
                },
                Some(0),
            );
        }
        while side.depth < bounds.depth {
            let added = side.expand(self, cap, bounds.states);
            for i in added.iter().copied() {
                if stop(&side.states[i]) {
                    return (
                        Class {
                            side,
                            exhausted: false,
                        },
                        Some(i),
                    );
                }
            }
            if added.is_empty() {
                let exhausted = !side.pruned;
                return (Class { side, exhausted }, None);
            }
        }
        // at the depth limit the class is complete only if nothing new is adjacent
        let exhausted = !side.pruned
            && side
                .frontier
                .iter()
                .all(|&i| self.neighbors(&side.states[i]).iter().all(|n| side.index.contains_key(n)));
        (Class { side, exhausted }, None)
    }

    /// Searches for `x = y` from both ends at once.
    pub fn equal(
        &self,
        x: &MonoidVector,
        y: &MonoidVector,
        bounds: &Bounds,
    ) -> Result<SearchVerdict<EqualityChain>, MonoidError> {
        self.check(x)?;
        self.check(y)?;
        let mut a = Side::new(x);
        let mut b = Side::new(y);
        let stats = |a: &Side, b: &Side, exhausted| SearchStats {
            states: a.states.len() + b.states.len(),
            depth: a.depth + b.depth,
            exhausted,
        };
        if x == y {
            return Ok(SearchVerdict {
                witness: Some(EqualityChain::trivial(x)),
                stats: stats(&a, &b, false),
            });
        }
        while a.depth + b.depth < bounds.depth {
            let grow_a = a.frontier.len() <= b.frontier.len();
            let (this, other) = if grow_a { (&mut a, &b) } else { (&mut b, &a) };
            if this.frontier.is_empty() {
                let exhausted = !this.pruned;
                return Ok(SearchVerdict {
                    witness: None,
                    stats: stats(&a, &b, exhausted),
                });
            }
            let half = bounds.states / 2;
            for i in this.expand(self, None, half) {
                if let Some(&j) = other.index.get(&this.states[i]) {
                    let near = this.chain_to(i);
                    let far = other.chain_to(j).reversed();
                    let mut steps = near.steps;
                    steps.extend(far.steps.into_iter().skip(1));
                    let mut chain = EqualityChain { steps };
                    if !grow_a {
                        chain = chain.reversed();
                    }
                    return Ok(SearchVerdict {
                        witness: Some(chain),
                        stats: stats(&a, &b, false),
                    });
                }
            }
        }
        Ok(SearchVerdict {
            witness: None,
            stats: stats(&a, &b, false),
        })
    }

    /// Searches for `z` with `x + z = y`: a representative of `y`'s class
    /// that dominates `x` coordinatewise.
    pub fn leq(
        &self,
        x: &MonoidVector,
        y: &MonoidVector,
        bounds: &Bounds,
    ) -> Result<SearchVerdict<LeqWitness>, MonoidError> {
        self.check(x)?;
        self.check(y)?;
        let (class, hit) = self.explore(y, bounds, None, |s| x.dominated_by(s));
        let witness = hit.map(|i| LeqWitness {
            z: class.reps()[i].checked_sub(x).expect("dominates"),
            chain: class.chain(i).reversed(),
        });
        Ok(SearchVerdict {
            witness,
            stats: class.stats(),
        })
    }

    /// True iff `b` is `a` with one relation applied in either direction.
    pub fn is_single_step(&self, a: &MonoidVector, b: &MonoidVector) -> bool {
        if a.len() != self.rank() || b.len() != self.rank() {
            return false;
        }
        let diff: Vec<i128> = a.0.iter().zip(&b.0).map(|(&p, &q)| q as i128 - p as i128).collect();
        self.relations.iter().enumerate().any(|(i, rel)| {
            let Some(rhs) = rel else { return false };
            let delta: Vec<i128> = (0..self.rank())
                .map(|j| rhs.0[j] as i128 - i128::from(i == j))
                .collect();
            let forward = a.0[i] >= 1 && diff == delta;
            let backward = rhs.dominated_by(a) && diff.iter().zip(&delta).all(|(d, e)| *d == -e);
            forward || backward
        })
    }

    /// Checks a chain step by step without consulting any search state.
    pub fn verify_chain(&self, chain: &EqualityChain, x: &MonoidVector, y: &MonoidVector) -> bool {
        !chain.steps.is_empty()
            && chain.start() == x
            && chain.end() == y
            && chain
                .steps
                .windows(2)
                .all(|w| self.is_single_step(&w[0], &w[1]))
    }

    /// Checks `x + z = y` through its chain.
    pub fn verify_leq(&self, w: &LeqWitness, x: &MonoidVector, y: &MonoidVector) -> bool {
        w.z.len() == self.rank() && self.verify_chain(&w.chain, &x.add(&w.z), y)
    }
}
