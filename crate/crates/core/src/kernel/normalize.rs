//! Rewriting to normal form.
//!
//! The single rule is the CK2 relation solved for the special edge `γ` of a
//! vertex:
//!
//! ```text
//! (p'γ)(q'γ)*  →  p'q'* − Σ_{e ∈ s⁻¹(s(γ)), e ≠ γ} (p'e)(q'e)*
//! ```
//!
//! Each step strictly shortens the rewritten monomial, and every monomial has
//! at most one redex (its tail), so the result does not depend on the order
//! in which monomials are picked.

use std::collections::{BTreeMap, VecDeque};

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::{accumulate, Leavitt, Monomial, Scalar};

/// Which pending term is rewritten next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    /// Most recently produced term first.
    DepthFirst,
    /// Oldest pending term first.
    BreadthFirst,
    /// Merge like terms, then rewrite every redex at once, until none remain.
    Collecting,
    /// A seeded random pick among pending terms.
    Shuffled(u64),
}

fn rewrite(alg: &Leavitt, c: Scalar, m: Monomial, out: &mut impl FnMut(Scalar, Monomial)) {
    let g = alg.graph();
    let gamma = *m.real.edges.last().expect("redex has a real tail");
    let mut p = m.real;
    let mut q = m.ghost;
    p.edges.pop();
    q.edges.pop();
    for &e in g.out_edges(g.source(gamma)) {
        if e != gamma {
            let mut pe = p.clone();
            let mut qe = q.clone();
            pe.edges.push(e);
            qe.edges.push(e);
            out(
                -c.clone(),
                Monomial {
                    real: pe,
                    ghost: qe,
                },
            );
        }
    }
    out(c, Monomial { real: p, ghost: q });
}

pub(crate) fn normalize_terms(
    alg: &Leavitt,
    raw: Vec<(Scalar, Monomial)>,
    order: RewriteOrder,
) -> BTreeMap<Monomial, Scalar> {
    let mut done = BTreeMap::new();
    match order {
        RewriteOrder::DepthFirst => {
            let mut stack = raw;
            while let Some((c, m)) = stack.pop() {
                if alg.is_normal(&m) {
                    accumulate(&mut done, m, c);
                } else {
                    rewrite(alg, c, m, &mut |c, m| stack.push((c, m)));
                }
            }
        }
        RewriteOrder::BreadthFirst => {
            let mut queue: VecDeque<_> = raw.into();
            while let Some((c, m)) = queue.pop_front() {
                if alg.is_normal(&m) {
                    accumulate(&mut done, m, c);
                } else {
                    rewrite(alg, c, m, &mut |c, m| queue.push_back((c, m)));
                }
            }
        }
        RewriteOrder::Collecting => {
            let mut pending = BTreeMap::new();
            for (c, m) in raw {
                accumulate(&mut pending, m, c);
            }
            while !pending.is_empty() {
                let mut next = BTreeMap::new();
                for (m, c) in pending {
                    if alg.is_normal(&m) {
                        accumulate(&mut done, m, c);
                    } else {
                        rewrite(alg, c, m, &mut |c, m| accumulate(&mut next, m, c));
                    }
                }
                pending = next;
            }
        }
        RewriteOrder::Shuffled(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pool = raw;
            while !pool.is_empty() {
                let i = rng.gen_range(0..pool.len());
                let (c, m) = pool.swap_remove(i);
                if alg.is_normal(&m) {
                    accumulate(&mut done, m, c);
                } else {
                    rewrite(alg, c, m, &mut |c, m| pool.push((c, m)));
                }
            }
        }
    }
    done.retain(|_, c| !c.is_zero());
    done
}
