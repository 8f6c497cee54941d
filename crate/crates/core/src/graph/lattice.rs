//! Exhaustive enumeration of hereditary saturated sets and maximal tails.

use super::{Graph, GraphError, VertexSet};

/// Largest vertex count for which subset enumeration is attempted by default.
pub const DEFAULT_LATTICE_CAP: usize = 20;

impl Graph {
    fn check_cap(&self, cap: usize) -> Result<(), GraphError> {
        let n = self.vertex_count();
        if n > cap || n >= 64 {
            return Err(GraphError::TooLarge { vertices: n, cap });
        }
        Ok(())
    }

    /// `ℋ_E`, in increasing order of the subset bitmask (vertex `i` is bit `i`).
    /// Always starts with `∅` and ends with `E⁰`.
    pub fn all_hereditary_saturated(&self, cap: usize) -> Result<Vec<VertexSet>, GraphError> {
        self.check_cap(cap)?;
        let n = self.vertex_count();
        Ok((0..1u64 << n)
            .map(|bits| VertexSet::from_bits(n, bits))
            .filter(|s| self.is_hereditary_saturated(s))
            .collect())
    }

    /// Nonempty `M ⊆ E⁰` whose complement is hereditary saturated and which are
    /// downward directed. Ordered by the lattice order of their complements.
    pub fn maximal_tails(&self, cap: usize) -> Result<Vec<VertexSet>, GraphError> {
        let reach = self.reachability();
        Ok(self
            .all_hereditary_saturated(cap)?
            .into_iter()
            .map(|h| h.complement())
            .filter(|m| !m.is_empty() && is_downward_directed(&reach, m))
            .collect())
    }
}

/// For all `v, w ∈ m` there is `y ∈ m` with `v ≥ y` and `w ≥ y`.
pub(crate) fn is_downward_directed(reach: &[Vec<bool>], m: &VertexSet) -> bool {
    m.iter().all(|v| {
        m.iter()
            .all(|w| m.iter().any(|y| reach[v.0][y.0] && reach[w.0][y.0]))
    })
}
