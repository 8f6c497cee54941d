//! Witnesses for `a ⊕ a ≾ a`.
//!
//! The constructive route writes `a = Σ_q (a q) q*` over a set of paths
//! with `Σ q q* = 1`, reduces each real part `a q` to its base vertex
//! `w = r(q)`, and combines a witness for `w ⊕ w ≾ w` with `w ≾ a` to put
//! every summand `(a q) q*` into `K(a) = { x : a ⊕ x ≾ a }`. Those memberships
//! are added up, ending with `a ∈ K(a)`.

use std::collections::HashMap;

use super::element::{Element, Leavitt, Monomial};
use super::reduce::cut_paths;
use super::witness::Witness;
use super::KernelError;
use crate::graph::{Path, Vertex};

/// Largest number of cut paths the constructive route will expand into.
const MAX_CUT_PATHS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest `|p| + |q|` for monomials `p q*` tried by the fallback search.
    pub max_degree: usize,
    /// Number of element products the fallback search may spend.
    pub max_products: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_degree: 3,
            max_products: 20_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PiRoute {
    /// Two closed simple paths at a vertex, or recursion through its children.
    Vertex,
    /// Reduction of every summand to a vertex.
    Constructive,
    /// Exhaustive search over small monomials.
    Search,
}

impl PiRoute {
    pub fn name(self) -> &'static str {
        match self {
            PiRoute::Vertex => "vertex",
            PiRoute::Constructive => "constructive",
            PiRoute::Search => "search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PiOutcome {
    Found { witness: Witness, route: PiRoute },
    /// No witness found. Never a claim that none exists.
    Unknown { products: usize, reason: String },
}

impl Leavitt {
    /// `α[j][σ(j)] = 1`: the witness for `x ≾ y` where coordinate `j` of `x`
    /// is coordinate `σ(j)` of `y`.
    fn permutation_witness(&self, sigma: &[usize]) -> Witness {
        let mut inverse = vec![0; sigma.len()];
        for (j, &i) in sigma.iter().enumerate() {
            inverse[i] = j;
        }
        Witness {
            alpha: self.permutation(&inverse),
            beta: self.permutation(sigma),
        }
    }

    /// A witness for `v ⊕ v ≾ v`.
    pub fn vertex_pi(&self, v: Vertex) -> Result<Witness, KernelError> {
        self.vertex_pi_memo(v, &mut HashMap::new())
    }

    fn vertex_pi_memo(
        &self,
        v: Vertex,
        memo: &mut HashMap<Vertex, Option<Witness>>,
    ) -> Result<Witness, KernelError> {
        match memo.get(&v) {
            Some(Some(w)) => return Ok(w.clone()),
            Some(None) => {
                return Err(KernelError::NonTermination("vertex_pi recursion".into()));
            }
            None => {}
        }
        let g = self.graph();
        if g.csp_at_least_two(v) {
            let w = self.vertex_properly_infinite_witness(v)?;
            memo.insert(v, Some(w.clone()));
            return Ok(w);
        }
        if g.is_sink(v) || g.on_closed_path(v) {
            return Err(KernelError::PreconditionFailed(format!(
                "|CSP({})| < 2 and {} does not split into properly infinite children",
                g.vertex_id(v),
                g.vertex_id(v)
            )));
        }
        memo.insert(v, None);
        let out = g.out_edges(v);
        let k = out.len();
        let mut children = Vec::with_capacity(k);
        for &e in out {
            children.push(self.vertex_pi_memo(g.range(e), memo)?);
        }
        let edges: Vec<Element> = out.iter().map(|&e| self.edge(e)).collect();
        let ghosts: Vec<Element> = out.iter().map(|&e| self.ghost(e)).collect();
        let (row, col) = (self.row(&edges), self.col(&ghosts));
        // v ⊕ v ≾ D ⊕ D with D = diag(r(e₁), …, r(e_k)), since v = Σ eᵢ r(eᵢ) eᵢ*
        let split = Witness {
            alpha: self.block_sum(&row, &row),
            beta: self.block_sum(&col, &col),
        };
        let sigma: Vec<usize> = (0..2 * k)
            .map(|j| if j < k { 2 * j } else { 2 * (j - k) + 1 })
            .collect();
        let interleave = self.permutation_witness(&sigma);
        let doubled = Witness {
            alpha: self.block_sum_all(&children.iter().map(|w| w.alpha.clone()).collect::<Vec<_>>()),
            beta: self.block_sum_all(&children.iter().map(|w| w.beta.clone()).collect::<Vec<_>>()),
        };
        // D = (eᵢ* v eⱼ)
        let join = Witness { alpha: col, beta: row };
        let w = self.compose_all(&[split, interleave, doubled, join])?;
        memo.insert(v, Some(w.clone()));
        Ok(w)
    }

    /// `a ⊕ w ≾ a`, given `t: w ≾ a` and `x: w ⊕ w ≾ w`.
    pub fn absorb_witness(
        &self,
        a: &Element,
        w: Vertex,
        t: &Witness,
        x: &Witness,
    ) -> Result<Witness, KernelError> {
        let we = self.vertex(w);
        let alpha = self.mul(&we, t.alpha.get(0, 0))?;
        let beta = self.mul(t.beta.get(0, 0), &we)?;
        let a_beta = self.mul(a, &beta)?;
        let e = self.mul(&a_beta, &alpha)?;
        let one = self.one();
        let zero = self.zero();

        // a ⊕ w ≾ e ⊕ (a − ea) ⊕ e
        let spread = Witness {
            alpha: self.matrix(vec![
                vec![e.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), alpha.clone()],
            ])?,
            beta: self.matrix(vec![
                vec![a.clone(), zero.clone()],
                vec![one.clone(), zero.clone()],
                vec![zero.clone(), a_beta.clone()],
            ])?,
        };
        let swap = self.permutation_witness(&[0, 2, 1]);
        // e ⊕ e ≾ e, transported from w ⊕ w ≾ w along e = (aβ')(α')
        let e_pi = Witness {
            alpha: self.mat_product(&[
                &self.diag(&[a_beta.clone(), a_beta.clone()]),
                &x.alpha,
                &self.scalar_matrix(&alpha),
            ])?,
            beta: self.mat_product(&[
                &self.scalar_matrix(&a_beta),
                &x.beta,
                &self.diag(&[alpha.clone(), alpha.clone()]),
            ])?,
        };
        let merge = self.block_sum_witness(&e_pi, &self.identity_witness(1));
        let beta_alpha = self.mul(&beta, &alpha)?;
        let join = Witness {
            alpha: self.col(&[e.clone(), self.sub(&one, &e)?]),
            beta: self.row(&[
                beta_alpha.clone(),
                self.sub(&one, &self.mul(&beta_alpha, a)?)?,
            ]),
        };
        self.compose_all(&[spread, swap, merge, join])
    }

    /// The constructive witness for `a ⊕ a ≾ a`. Fails when some vertex met
    /// along the way has neither two closed simple paths nor properly
    /// infinite children.
    pub fn properly_infinite_witness(&self, a: &Element) -> Result<(Witness, PiRoute), KernelError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(KernelError::ZeroElement);
        }
        let mut memo = HashMap::new();
        if let Some((v, c)) = a.as_vertex_multiple() {
            if c == num::One::one() {
                return Ok((self.vertex_pi_memo(v, &mut memo)?, PiRoute::Vertex));
            }
        }
        let g = self.graph();
        let depth = a.ghost_degree();
        let cuts = cut_paths(self, depth);
        if cuts.len() > MAX_CUT_PATHS {
            return Err(KernelError::PreconditionFailed(format!(
                "expansion into {} paths exceeds {MAX_CUT_PATHS}",
                cuts.len()
            )));
        }
        let one = self.one();
        let mut total: Option<(Element, Witness)> = None;
        for q in &cuts {
            let y = self.mul(a, &self.path(q))?;
            if y.is_zero() {
                continue;
            }
            let q_ghost = self.ghost_path(q);
            let (to_y, w) = self.reduce_to_base(&y)?;
            debug_assert_eq!(w, g.path_range(q));
            let to_a = self.compose_witness(
                &to_y,
                &Witness {
                    alpha: self.scalar_matrix(&one),
                    beta: self.scalar_matrix(&self.path(q)),
                },
            )?;
            let w_pi = self.vertex_pi_memo(w, &mut memo)?;
            let absorb = self.absorb_witness(a, w, &to_a, &w_pi)?;
            let into_ideal = Witness {
                alpha: self.diag(&[one.clone(), y.clone()]),
                beta: self.diag(&[one.clone(), q_ghost.clone()]),
            };
            let k_m = self.compose_witness(&into_ideal, &absorb)?;
            let m = self.mul(&y, &q_ghost)?;
            total = Some(match total {
                None => (m, k_m),
                Some((s, k_s)) => {
                    let zero = self.zero();
                    let split = Witness {
                        alpha: self.matrix(vec![
                            vec![one.clone(), zero.clone(), zero.clone()],
                            vec![zero.clone(), one.clone(), one.clone()],
                        ])?,
                        beta: self.matrix(vec![
                            vec![one.clone(), zero.clone()],
                            vec![zero.clone(), one.clone()],
                            vec![zero, one.clone()],
                        ])?,
                    };
                    let drop_s = self.block_sum_witness(&k_s, &self.identity_witness(1));
                    let k = self.compose_all(&[split, drop_s, k_m])?;
                    (self.add(&s, &m)?, k)
                }
            });
        }
        let (sum, witness) = total.expect("a ≠ 0 has a nonzero summand");
        if &sum != a || !self.verify_k_membership(a, a, &witness)? {
            return Err(KernelError::NonTermination(
                "constructive witness failed to verify".into(),
            ));
        }
        Ok((witness, PiRoute::Constructive))
    }

    /// Tries the constructive route, then a bounded search over pairs of
    /// small monomials. Never reports that no witness exists.
    pub fn bounded_properly_infinite_search(
        &self,
        a: &Element,
        budget: SearchBudget,
    ) -> Result<PiOutcome, KernelError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(KernelError::ZeroElement);
        }
        let constructive_failure = match self.properly_infinite_witness(a) {
            Ok((witness, route)) => return Ok(PiOutcome::Found { witness, route }),
            Err(e @ KernelError::NonTermination(_)) => return Err(e),
            Err(e) => e.to_string(),
        };
        let pool = self.small_monomials(budget.max_degree);
        let mut products = 0usize;
        let mut spend = |n: usize| {
            products += n;
            products <= budget.max_products
        };
        let mut fixers: Vec<(&Element, &Element)> = Vec::new();
        for alpha in &pool {
            for beta in &pool {
                if !spend(2) {
                    return Ok(self.unknown(products, &constructive_failure));
                }
                if self.mul(&self.mul(alpha, a)?, beta)? != *a {
                    continue;
                }
                for &(alpha2, beta2) in &fixers {
                    if !spend(4) {
                        return Ok(self.unknown(products, &constructive_failure));
                    }
                    let cross1 = self.mul(&self.mul(alpha, a)?, beta2)?;
                    let cross2 = self.mul(&self.mul(alpha2, a)?, beta)?;
                    if cross1.is_zero() && cross2.is_zero() {
                        let witness = Witness {
                            alpha: self.col(&[alpha2.clone(), alpha.clone()]),
                            beta: self.row(&[beta2.clone(), beta.clone()]),
                        };
                        if self.verify_k_membership(a, a, &witness)? {
                            return Ok(PiOutcome::Found {
                                witness,
                                route: PiRoute::Search,
                            });
                        }
                    }
                }
                fixers.push((alpha, beta));
            }
        }
        Ok(self.unknown(products, &constructive_failure))
    }

    fn unknown(&self, products: usize, why: &str) -> PiOutcome {
        PiOutcome::Unknown {
            products,
            reason: format!("constructive route: {why}; search exhausted"),
        }
    }

    /// The unit and every normal monomial `p q*` with `|p| + |q| ≤ degree`.
    fn small_monomials(&self, degree: usize) -> Vec<Element> {
        let g = self.graph();
        let mut by_len: Vec<Vec<Path>> = vec![g.vertices().map(Path::trivial).collect()];
        for _ in 0..degree {
            let last = by_len.last().expect("nonempty");
            let next = last
                .iter()
                .flat_map(|p| {
                    g.out_edges(g.path_range(p)).iter().map(move |&e| {
                        let mut q = p.clone();
                        q.edges.push(e);
                        q
                    })
                })
                .collect();
            by_len.push(next);
        }
        let mut out = vec![self.one()];
        for (i, ps) in by_len.iter().enumerate() {
            for qs in &by_len[..=degree - i] {
                for p in ps {
                    for q in qs {
                        let m = Monomial {
                            real: p.clone(),
                            ghost: q.clone(),
                        };
                        if g.path_range(p) == g.path_range(q) && self.is_normal(&m) {
                            out.push(self.normalize(vec![(num::One::one(), m)]).expect("valid"));
                        }
                    }
                }
            }
        }
        out.retain(|x| !x.is_zero());
        out
    }
}
