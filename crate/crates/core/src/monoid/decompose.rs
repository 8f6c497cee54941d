//! Decomposition searches. Each answer is assembled from literal vector
//! identities plus equality chains, and is re-checked by the verifiers here.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::search::{Bounds, EqualityChain, LeqWitness, SearchStats, SearchVerdict};
use super::{Monoid, MonoidError, MonoidVector};
use crate::graph::{Graph, VertexSet, DEFAULT_LATTICE_CAP};

/// `z[i][0] + z[i][1] = x_i` and `z[0][j] + z[1][j] = y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub z: [[MonoidVector; 2]; 2],
    /// Chains for the row sums to `x1`, `x2`, then the column sums to `y1`, `y2`.
    pub chains: [EqualityChain; 4],
}

/// `x = Σ x_i`, `y = Σ i·x_i`, `z = Σ (n − i)·x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FredWitness {
    pub parts: Vec<MonoidVector>,
    /// Chains from the three sums to `x`, `y`, `z`.
    pub chains: [EqualityChain; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoThreeReport {
    pub x: MonoidVector,
    pub y: MonoidVector,
    /// From `2x + 3y` to `u`.
    pub chain: EqualityChain,
    /// Hereditary saturated sets whose irreducibility check was inconclusive.
    pub unverified: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibleVerdict {
    /// The class was explored completely and holds only single generators.
    Irreducible(SearchStats),
    /// `a + b = ū` with `a, b ≠ 0`; the chain runs from `a + b` to `ū`.
    Reducible {
        a: MonoidVector,
        b: MonoidVector,
        chain: EqualityChain,
    },
    Zero,
    Unknown(SearchStats),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbelianVerdict {
    Abelian(SearchStats),
    /// `2a ≤ ū` with `a ≠ 0`.
    NotAbelian { a: MonoidVector, witness: LeqWitness },
    Unknown(SearchStats),
}

/// Splits `k` into `parts` summands, lexicographically descending.
fn splits(k: u64, parts: usize, prefix: &mut Vec<u64>, f: &mut impl FnMut(&[u64]) -> ControlFlow<()>) -> ControlFlow<()> {
    if parts == 1 {
        prefix.push(k);
        let r = f(prefix);
        prefix.pop();
        return r;
    }
    for first in (0..=k).rev() {
        prefix.push(first);
        let r = splits(k - first, parts - 1, prefix, f);
        prefix.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Every way to write `r` as an ordered sum of `parts` vectors, coordinate by
/// coordinate in descending lexicographic order.
fn compositions(
    r: &MonoidVector,
    parts: usize,
    f: &mut impl FnMut(&[MonoidVector]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    fn go(
        r: &MonoidVector,
        k: usize,
        acc: &mut Vec<MonoidVector>,
        f: &mut impl FnMut(&[MonoidVector]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == r.len() {
            return f(acc);
        }
        splits(r.0[k], acc.len(), &mut Vec::new(), &mut |s| {
            for (part, &c) in acc.iter_mut().zip(s) {
                part.0[k] = c;
            }
            go(r, k + 1, acc, f)
        })
    }
    let mut acc = vec![MonoidVector::zero(r.len()); parts];
    go(r, 0, &mut acc, f)
}

impl Monoid {
    fn default_cap(&self, u: &MonoidVector, bounds: &Bounds) -> u64 {
        bounds
            .component_cap
            .unwrap_or_else(|| u.size().max(3 * self.rank() as u64))
    }

    fn require_equal(
        &self,
        x: &MonoidVector,
        y: &MonoidVector,
        bounds: &Bounds,
        what: &str,
    ) -> Result<(), MonoidError> {
        if self.equal(x, y, bounds)?.is_found() {
            Ok(())
        } else {
            Err(MonoidError::Precondition(format!(
                "{what}: {} = {} not found within the bound",
                self.format(x),
                self.format(y)
            )))
        }
    }

    /// Finds a refinement matrix for `x1 + x2 = y1 + y2`.
    pub fn refine(
        &self,
        x1: &MonoidVector,
        x2: &MonoidVector,
        y1: &MonoidVector,
        y2: &MonoidVector,
        bounds: &Bounds,
    ) -> Result<SearchVerdict<Refinement>, MonoidError> {
        for v in [x1, x2, y1, y2] {
            self.check(v)?;
        }
        self.require_equal(&x1.add(x2), &y1.add(y2), bounds, "x1 + x2 = y1 + y2")?;
        let cap = Some(self.default_cap(&x1.add(x2), bounds));
        let class = |v: &MonoidVector| self.explore(v, bounds, cap, |_| false).0;
        let (ca1, ca2, cb1, cb2) = (class(x1), class(x2), class(y1), class(y2));
        let mut budget = bounds.states;
        let mut stats = SearchStats {
            states: ca1.reps().len() + ca2.reps().len() + cb1.reps().len() + cb2.reps().len(),
            depth: bounds.depth,
            exhausted: false,
        };
        for (i1, a1) in ca1.reps().iter().enumerate() {
            for (i2, a2) in ca2.reps().iter().enumerate() {
                let s = a1.add(a2);
                for (j1, b1) in cb1.reps().iter().enumerate() {
                    if budget == 0 {
                        return Ok(SearchVerdict { witness: None, stats });
                    }
                    budget -= 1;
                    let Some(b2) = s.checked_sub(b1) else { continue };
                    let Some(j2) = cb2.find(&b2) else { continue };
                    let z11 = MonoidVector(a1.0.iter().zip(&b1.0).map(|(p, q)| *p.min(q)).collect());
                    let z12 = a1.checked_sub(&z11).expect("min");
                    let z21 = b1.checked_sub(&z11).expect("min");
                    let z22 = a2.checked_sub(&z21).expect("b1 ≤ a1 + a2");
                    let r = Refinement {
                        z: [[z11, z12], [z21, z22]],
                        chains: [
                            ca1.chain(i1).reversed(),
                            ca2.chain(i2).reversed(),
                            cb1.chain(j1).reversed(),
                            cb2.chain(j2).reversed(),
                        ],
                    };
                    debug_assert!(self.verify_refinement(&r, x1, x2, y1, y2));
                    stats.states += bounds.states - budget;
                    return Ok(SearchVerdict {
                        witness: Some(r),
                        stats,
                    });
                }
            }
        }
        stats.exhausted = [&ca1, &ca2, &cb1, &cb2].iter().all(|c| c.exhausted);
        Ok(SearchVerdict { witness: None, stats })
    }

    pub fn verify_refinement(
        &self,
        r: &Refinement,
        x1: &MonoidVector,
        x2: &MonoidVector,
        y1: &MonoidVector,
        y2: &MonoidVector,
    ) -> bool {
        let z = &r.z;
        self.verify_chain(&r.chains[0], &z[0][0].add(&z[0][1]), x1)
            && self.verify_chain(&r.chains[1], &z[1][0].add(&z[1][1]), x2)
            && self.verify_chain(&r.chains[2], &z[0][0].add(&z[1][0]), y1)
            && self.verify_chain(&r.chains[3], &z[0][1].add(&z[1][1]), y2)
    }

    /// Given `n·x = y + z`, finds `x_0, …, x_n` with `Σ x_i = x`,
    /// `Σ i·x_i = y` and `Σ (n − i)·x_i = z`.
    pub fn fred_decompose(
        &self,
        n: u64,
        x: &MonoidVector,
        y: &MonoidVector,
        z: &MonoidVector,
        bounds: &Bounds,
    ) -> Result<SearchVerdict<FredWitness>, MonoidError> {
        for v in [x, y, z] {
            self.check(v)?;
        }
        if n == 0 {
            return Err(MonoidError::Precondition("n must be positive".into()));
        }
        self.require_equal(&x.scale(n), &y.add(z), bounds, "n·x = y + z")?;
        let cap = Some(self.default_cap(x, bounds));
        let (class, _) = self.explore(x, bounds, cap, |_| false);
        let check_bounds = Bounds {
            states: bounds.states.min(20_000),
            ..*bounds
        };
        let mut memo: [HashMap<MonoidVector, Option<EqualityChain>>; 2] = Default::default();
        let mut budget = bounds.states;
        let mut found = None;
        let mut failure = None;
        let rank = self.rank();
        for (i, rep) in class.reps().iter().enumerate() {
            let flow = compositions(rep, n as usize + 1, &mut |parts| {
                if budget == 0 {
                    return ControlFlow::Break(());
                }
                budget -= 1;
                let ysum = MonoidVector::sum(rank, &parts.iter().enumerate().map(|(k, p)| p.scale(k as u64)).collect::<Vec<_>>());
                let zsum = MonoidVector::sum(rank, &parts.iter().enumerate().map(|(k, p)| p.scale(n - k as u64)).collect::<Vec<_>>());
                let mut chains = Vec::with_capacity(2);
                for (slot, (sum, target)) in [(ysum, y), (zsum, z)].into_iter().enumerate() {
                    let entry = match memo[slot].get(&sum) {
                        Some(hit) => hit.clone(),
                        None => {
                            let r = self.equal(&sum, target, &check_bounds);
                            let hit = match r {
                                Ok(v) => v.witness,
                                Err(e) => {
                                    failure = Some(e);
                                    return ControlFlow::Break(());
                                }
                            };
                            memo[slot].insert(sum, hit.clone());
                            hit
                        }
                    };
                    match entry {
                        Some(c) => chains.push(c),
                        None => return ControlFlow::Continue(()),
                    }
                }
                let [cy, cz]: [EqualityChain; 2] = chains.try_into().expect("two chains");
                found = Some(FredWitness {
                    parts: parts.to_vec(),
                    chains: [class.chain(i).reversed(), cy, cz],
                });
                ControlFlow::Break(())
            });
            if let Some(e) = failure {
                return Err(e);
            }
            if flow.is_break() {
                break;
            }
        }
        Ok(SearchVerdict {
            witness: found,
            stats: SearchStats {
                states: class.reps().len() + (bounds.states - budget),
                depth: class.stats().depth,
                exhausted: false,
            },
        })
    }

    pub fn verify_fred(
        &self,
        w: &FredWitness,
        n: u64,
        x: &MonoidVector,
        y: &MonoidVector,
        z: &MonoidVector,
    ) -> bool {
        let rank = self.rank();
        if w.parts.len() as u64 != n + 1 || w.parts.iter().any(|p| p.len() != rank) {
            return false;
        }
        let weighted = |f: &dyn Fn(u64) -> u64| {
            MonoidVector::sum(rank, &w.parts.iter().enumerate().map(|(k, p)| p.scale(f(k as u64))).collect::<Vec<_>>())
        };
        self.verify_chain(&w.chains[0], &weighted(&|_| 1), x)
            && self.verify_chain(&w.chains[1], &weighted(&|k| k), y)
            && self.verify_chain(&w.chains[2], &weighted(&|k| n - k), z)
    }

    /// Searches for `u = 2x + 3y` after checking that `u` is not irreducible
    /// in any quotient `E/H` where it survives. Decompositions with `x` and
    /// `y` both nonzero are preferred.
    pub fn decompose_2x_3y(
        &self,
        g: &Graph,
        u: &MonoidVector,
        bounds: &Bounds,
    ) -> Result<SearchVerdict<TwoThreeReport>, MonoidError> {
        self.check(u)?;
        let mut unverified = Vec::new();
        for h in g.all_hereditary_saturated(DEFAULT_LATTICE_CAP)? {
            match self.is_irreducible_in_quotient(g, u, &h, bounds)?.1 {
                IrreducibleVerdict::Irreducible(_) => {
                    return Err(MonoidError::Hypothesis {
                        element: self.format(u),
                        quotient: g.set_ids(&h).join(", "),
                    });
                }
                IrreducibleVerdict::Unknown(_) => unverified.push(h),
                IrreducibleVerdict::Reducible { .. } | IrreducibleVerdict::Zero => {}
            }
        }
        let cap = self.default_cap(u, bounds);
        let pick = |rep: &MonoidVector, allow_zero: bool| {
            let mut hit = None;
            let _ = splits_by_three(rep, &mut |y| {
                let rest = rep.checked_sub(&y.scale(3)).expect("3y ≤ rep");
                if rest.0.iter().any(|c| c % 2 == 1) {
                    return ControlFlow::Continue(());
                }
                let x = MonoidVector(rest.0.iter().map(|c| c / 2).collect());
                if (!allow_zero && (x.is_zero() || y.is_zero()))
                    || x.max_entry() > cap
                    || y.max_entry() > cap
                {
                    return ControlFlow::Continue(());
                }
                hit = Some((x, y.clone()));
                ControlFlow::Break(())
            });
            hit
        };
        // x, y ≠ 0 first, stopping the class walk at the first success
        let (class, found) = self.explore(u, bounds, Some(5 * cap), |rep| pick(rep, false).is_some());
        let found = found
            .map(|i| (i, pick(&class.reps()[i], false).expect("accepted")))
            .or_else(|| {
                class
                    .reps()
                    .iter()
                    .enumerate()
                    .find_map(|(i, rep)| pick(rep, true).map(|xy| (i, xy)))
            });
        let stats = class.stats();
        Ok(SearchVerdict {
            witness: found.map(|(i, (x, y))| TwoThreeReport {
                x,
                y,
                chain: class.chain(i).reversed(),
                unverified,
            }),
            stats,
        })
    }

    pub fn verify_2x_3y(&self, r: &TwoThreeReport, u: &MonoidVector) -> bool {
        r.x.len() == self.rank()
            && r.y.len() == self.rank()
            && self.verify_chain(&r.chain, &r.x.scale(2).add(&r.y.scale(3)), u)
    }

    /// Irreducibility of the image of `u` in the monoid of `E/H`. Returns the
    /// quotient monoid, in whose coordinates the verdict is expressed.
    pub fn is_irreducible_in_quotient(
        &self,
        g: &Graph,
        u: &MonoidVector,
        h: &VertexSet,
        bounds: &Bounds,
    ) -> Result<(Monoid, IrreducibleVerdict), MonoidError> {
        let (q, image) = self.project_to_quotient(g, h, u)?;
        if image.is_zero() {
            return Ok((q, IrreducibleVerdict::Zero));
        }
        let cap = Some(q.default_cap(&image, bounds));
        let (class, hit) = q.explore(&image, bounds, cap, |s| s.size() >= 2);
        let verdict = match hit {
            Some(i) => {
                let rep = &class.reps()[i];
                let first = rep.0.iter().position(|&c| c > 0).expect("nonzero");
                let a = q.unit(first);
                let b = rep.checked_sub(&a).expect("support");
                IrreducibleVerdict::Reducible {
                    a,
                    b,
                    chain: class.chain(i).reversed(),
                }
            }
            None if class.exhausted => IrreducibleVerdict::Irreducible(class.stats()),
            None => IrreducibleVerdict::Unknown(class.stats()),
        };
        Ok((q, verdict))
    }

    /// Whether the image of `u` in `E/H` admits `2a ≤ ū` only for `a = 0`.
    pub fn is_abelian_in_quotient(
        &self,
        g: &Graph,
        u: &MonoidVector,
        h: &VertexSet,
        bounds: &Bounds,
    ) -> Result<(Monoid, AbelianVerdict), MonoidError> {
        let (q, image) = self.project_to_quotient(g, h, u)?;
        if image.is_zero() {
            return Ok((q, AbelianVerdict::Abelian(SearchStats::default())));
        }
        let cap = Some(q.default_cap(&image, bounds));
        let (class, hit) = q.explore(&image, bounds, cap, |s| s.max_entry() >= 2);
        let verdict = match hit {
            Some(i) => {
                let rep = &class.reps()[i];
                let k = rep.0.iter().position(|&c| c >= 2).expect("entry ≥ 2");
                let a = q.unit(k);
                AbelianVerdict::NotAbelian {
                    witness: LeqWitness {
                        z: rep.checked_sub(&a.scale(2)).expect("entry ≥ 2"),
                        chain: class.chain(i).reversed(),
                    },
                    a,
                }
            }
            None if class.exhausted => AbelianVerdict::Abelian(class.stats()),
            None => AbelianVerdict::Unknown(class.stats()),
        };
        Ok((q, verdict))
    }
}

/// Every `y` with `3y ≤ r`, in ascending lexicographic order.
fn splits_by_three(r: &MonoidVector, f: &mut impl FnMut(&MonoidVector) -> ControlFlow<()>) -> ControlFlow<()> {
    fn go(r: &MonoidVector, k: usize, y: &mut MonoidVector, f: &mut impl FnMut(&MonoidVector) -> ControlFlow<()>) -> ControlFlow<()> {
        if k == r.len() {
            return f(y);
        }
        for c in 0..=r.0[k] / 3 {
            y.0[k] = c;
            go(r, k + 1, y, f)?;
        }
        y.0[k] = 0;
        ControlFlow::Continue(())
    }
    go(r, 0, &mut MonoidVector::zero(r.len()), f)
}
