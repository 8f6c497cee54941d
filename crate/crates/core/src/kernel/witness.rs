//! Witnesses `(α, β)` for `x = α y β`, their verification and composition.

use super::element::{Element, Leavitt};
use super::matrix::ElementMatrix;
use super::KernelError;
use crate::graph::{Path, Vertex};

/// `α` is `k×n` and `β` is `n×k` for a claim `x ≾ y` with `x` of size `k`
/// and `y` of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub alpha: ElementMatrix,
    pub beta: ElementMatrix,
}

impl Leavitt {
    /// True iff `α y β = x`.
    pub fn verify_precsim(
        &self,
        x: &ElementMatrix,
        y: &ElementMatrix,
        w: &Witness,
    ) -> Result<bool, KernelError> {
        let (k, kc) = x.shape();
        let (n, nc) = y.shape();
        if k != kc || n != nc {
            return Err(KernelError::DimensionMismatch("x and y must be square".into()));
        }
        if w.alpha.shape() != (k, n) || w.beta.shape() != (n, k) {
            return Err(KernelError::DimensionMismatch(format!(
                "witness is {:?} / {:?}, claim needs {k}x{n} / {n}x{k}",
                w.alpha.shape(),
                w.beta.shape()
            )));
        }
        let got = self.mat_product(&[&w.alpha, y, &w.beta])?;
        Ok(&got == x)
    }

    /// Checks `x ∈ K(a)`, i.e. `a ⊕ x ≾ a`, for a witness with `α` of size
    /// `2×1` and `β` of size `1×2`.
    pub fn verify_k_membership(
        &self,
        a: &Element,
        x: &Element,
        w: &Witness,
    ) -> Result<bool, KernelError> {
        if w.alpha.shape() != (2, 1) || w.beta.shape() != (1, 2) {
            return Err(KernelError::DimensionMismatch(format!(
                "K-membership needs a 2x1 / 1x2 witness, got {:?} / {:?}",
                w.alpha.shape(),
                w.beta.shape()
            )));
        }
        self.verify_precsim(
            &self.diag(&[a.clone(), x.clone()]),
            &self.scalar_matrix(a),
            w,
        )
    }

    /// `x ≾ z` from `x ≾ y` and `y ≾ z`.
    pub fn compose_witness(&self, xy: &Witness, yz: &Witness) -> Result<Witness, KernelError> {
        Ok(Witness {
            alpha: self.mat_mul(&xy.alpha, &yz.alpha)?,
            beta: self.mat_mul(&yz.beta, &xy.beta)?,
        })
    }

    pub fn compose_all(&self, chain: &[Witness]) -> Result<Witness, KernelError> {
        let (first, rest) = chain
            .split_first()
            .ok_or_else(|| KernelError::DimensionMismatch("empty chain".into()))?;
        rest.iter()
            .try_fold(first.clone(), |acc, w| self.compose_witness(&acc, w))
    }

    /// `x ⊕ x' ≾ y ⊕ y'` from `x ≾ y` and `x' ≾ y'`.
    pub fn block_sum_witness(&self, a: &Witness, b: &Witness) -> Witness {
        Witness {
            alpha: self.block_sum(&a.alpha, &b.alpha),
            beta: self.block_sum(&a.beta, &b.beta),
        }
    }

    pub fn identity_witness(&self, n: usize) -> Witness {
        Witness {
            alpha: self.identity(n),
            beta: self.identity(n),
        }
    }

    /// `x y ≾ x` via `(1, y)`.
    pub fn right_factor_witness(&self, y: &Element) -> Witness {
        Witness {
            alpha: self.scalar_matrix(&self.one()),
            beta: self.scalar_matrix(y),
        }
    }

    /// `y x ≾ x` via `(y, 1)`.
    pub fn left_factor_witness(&self, y: &Element) -> Witness {
        Witness {
            alpha: self.scalar_matrix(y),
            beta: self.scalar_matrix(&self.one()),
        }
    }

    /// Witness for `v ⊕ v ≾ v` built from the two first closed simple paths
    /// `μ ≠ ν` at `v`: `α = (μ*, ν*)ᵀ`, `β = (μ, ν)`.
    pub fn vertex_properly_infinite_witness(&self, v: Vertex) -> Result<Witness, KernelError> {
        let g = self.graph();
        if v.0 >= g.vertex_count() {
            return Err(KernelError::PreconditionFailed("unknown vertex".into()));
        }
        let fail = || {
            KernelError::PreconditionFailed(format!(
                "|CSP({})| < 2",
                g.vertex_id(v)
            ))
        };
        if !g.csp_at_least_two(v) {
            return Err(fail());
        }
        // in to a pumpable cycle, once around it, and back out: under 3|E⁰| edges
        let max_len = 3 * g.vertex_count() + 2;
        let csp = g.closed_simple_paths(v, 2, max_len);
        let [mu, nu] = csp.as_slice() else {
            return Err(fail());
        };
        Ok(Witness {
            alpha: self.col(&[self.ghost_path(mu), self.ghost_path(nu)]),
            beta: self.row(&[self.path(mu), self.path(nu)]),
        })
    }

    /// For a path `p` from `v` to `w`, the witness `(p*, p)` of `w ≾ v`.
    pub fn subequivalence_from_path(&self, p: &Path) -> Result<Witness, KernelError> {
        self.graph().check_path(p)?;
        Ok(Witness {
            alpha: self.scalar_matrix(&self.ghost_path(p)),
            beta: self.scalar_matrix(&self.path(p)),
        })
    }
}
