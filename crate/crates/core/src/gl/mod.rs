//! Approximate Győri–Lovász partitions of `k`-connected graphs.
//!
//! Given targets `w_1 >= ... >= w_k` summing to `w(G)` with `w_k >= w_max`:
//!
//! * [`bounded_gl`] packs connected sets with `αw_i <= w(T_i) <= 3αw_i`,
//! * [`gl_one_side`] turns that into a CVP meeting either every lower bound
//!   `w_i/3` or every upper bound `3w_i`,
//! * [`double_bounded_gl`] meets both `w_i/3` and `max{r,3}·w_i` with
//!   `r = w_1/w_k`,
//! * [`balanced_kconnected`] is the uniform-target special case.
//!
//! `k`-connectivity is assumed, not checked; on graphs that lack it the
//! algorithms may fail with an error but never return an invalid result.

mod bounded;
mod double;
mod one_side;
mod transfer;

pub use bounded::{bounded_gl, carve, preprocess_heavy, Category, GlPacking, GlStats, Preprocessed};
pub use double::{balanced_kconnected, balanced_targets, double_bounded_gl, DoubleStats};
pub use one_side::{gl_one_side, Side};
pub use transfer::{
    build_transfer_graph, classify, find_transfer_path, transfer_vertices, truncate_set, Branch,
    Classification, NodeKind, SetClass, TransferGraph,
};

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::graph::{is_connected, WeightedGraph};

/// Descending positive targets `w_1 >= ... >= w_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetWeights {
    targets: Vec<u64>,
}

impl TargetWeights {
    pub fn new(targets: Vec<u64>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::precondition("at least one target is required"));
        }
        if targets.contains(&0) {
            return Err(Error::precondition("targets must be positive"));
        }
        if targets.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::precondition("targets must be in descending order"));
        }
        Ok(TargetWeights { targets })
    }

    pub fn k(&self) -> usize {
        self.targets.len()
    }

    pub fn get(&self, i: usize) -> u64 {
        self.targets[i]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.targets
    }

    pub fn sum(&self) -> u64 {
        self.targets.iter().sum()
    }

    pub fn min(&self) -> u64 {
        *self.targets.last().expect("non-empty")
    }

    /// `r = w_1 / w_k`.
    pub fn ratio(&self) -> Frac {
        Frac::new(self.targets[0], self.min())
    }

    /// `max{r, 3}`.
    pub fn upper_factor(&self) -> Frac {
        self.ratio().max(Frac::THREE)
    }

    /// `max{r, 3}·w_i`.
    pub fn upper_bound(&self, i: usize) -> Frac {
        self.upper_factor().times(self.targets[i])
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GlOptions {
    /// Re-verify packing invariants after every outer iteration.
    pub debug_asserts: bool,
}

/// Preconditions shared by every GL variant: a connected graph with enough
/// vertices, `Σ w_i = w(G)` and `w_k >= w_max`.
pub(crate) fn check_gl_instance(g: &WeightedGraph, targets: &TargetWeights) -> Result<()> {
    let k = targets.k();
    if g.n() < k {
        return Err(Error::TooFewVertices { n: g.n(), k });
    }
    if !is_connected(g, &g.vertices()) {
        return Err(Error::NotConnected);
    }
    if targets.sum() != g.total_weight() {
        return Err(Error::precondition(format!(
            "sum of targets {} differs from graph weight {}",
            targets.sum(),
            g.total_weight()
        )));
    }
    if targets.min() < g.max_weight() {
        return Err(Error::precondition(format!(
            "min target {} < w_max {}",
            targets.min(),
            g.max_weight()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_validation() {
        assert!(TargetWeights::new(vec![]).is_err());
        assert!(TargetWeights::new(vec![1, 2]).is_err());
        assert!(TargetWeights::new(vec![2, 0]).is_err());
        let t = TargetWeights::new(vec![9, 3, 2]).unwrap();
        assert_eq!(t.ratio(), Frac::new(9, 2));
        assert_eq!(t.upper_factor(), Frac::new(9, 2));
        assert_eq!(t.upper_bound(2), Frac::int(9));
        let t = TargetWeights::new(vec![4, 3]).unwrap();
        assert_eq!(t.upper_factor(), Frac::THREE);
    }
}
