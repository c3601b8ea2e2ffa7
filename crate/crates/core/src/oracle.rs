//! Exhaustive ground truth for small instances.
//!
//! Connected `k`-partitions are enumerated as restricted-growth strings over
//! vertices `0..n`. A prefix is pruned once a block cannot become connected
//! through the still-unassigned vertices, or too few vertices remain to
//! open the missing blocks.

use std::ops::ControlFlow;

use crate::bcp::Objective;
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::graph::{components_of_mask, VertexSet, WeightedGraph};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_parts: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 10, max_parts: 5 }
    }
}

impl OracleBudget {
    fn check(&self, n: usize, k: usize) -> Result<()> {
        if n > self.max_vertices || n > 64 {
            return Err(Error::BudgetExceeded(format!("{n} vertices, limit {}", self.max_vertices)));
        }
        if k > self.max_parts {
            return Err(Error::BudgetExceeded(format!("{k} parts, limit {}", self.max_parts)));
        }
        Ok(())
    }
}

struct Enumerator<'a, F> {
    adj: Vec<u64>,
    n: usize,
    full: u64,
    k: usize,
    blocks: Vec<u64>,
    visit: &'a mut F,
}

impl<F: FnMut(&[u64]) -> ControlFlow<()>> Enumerator<'_, F> {
    /// `sub` lies in one component of the graph restricted to `allowed`.
    fn linked(&self, sub: u64, allowed: u64) -> bool {
        if sub == 0 {
            return true;
        }
        let mut reach = sub & sub.wrapping_neg();
        let mut frontier = reach;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & allowed & !reach;
            reach |= fresh;
            frontier |= fresh;
        }
        sub & !reach == 0
    }

    fn run(&mut self, v: usize) -> ControlFlow<()> {
        if v == self.n {
            return if self.blocks.len() == self.k { (self.visit)(&self.blocks) } else { ControlFlow::Continue(()) };
        }
        let open = self.blocks.len();
        if open + (self.n - v) < self.k {
            return ControlFlow::Continue(());
        }
        let done = if v + 1 >= 64 { !0 } else { (1u64 << (v + 1)) - 1 };
        let later = self.full & !done;
        let choices = if open < self.k { open + 1 } else { open };
        for b in 0..choices {
            if b == open {
                self.blocks.push(0);
            }
            self.blocks[b] |= 1 << v;
            if self.blocks.iter().all(|&blk| self.linked(blk, blk | later)) {
                self.run(v + 1)?;
            }
            self.blocks[b] &= !(1 << v);
            if b == open {
                self.blocks.pop();
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with the block bitmasks of every connected `k`-partition,
/// until it breaks.
pub fn for_each_connected_k_partition(
    g: &WeightedGraph,
    k: usize,
    budget: OracleBudget,
    mut visit: impl FnMut(&[u64]) -> ControlFlow<()>,
) -> Result<()> {
    budget.check(g.n(), k)?;
    if k == 0 || k > g.n() {
        return Ok(());
    }
    let adj = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let full = if g.n() == 64 { !0 } else { (1u64 << g.n()) - 1 };
    let mut e = Enumerator { adj, n: g.n(), full, k, blocks: Vec::with_capacity(k), visit: &mut visit };
    let _ = e.run(0);
    Ok(())
}

fn mask_weight(g: &WeightedGraph, mut mask: u64) -> u64 {
    let mut w = 0;
    while mask != 0 {
        w += g.weight(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    w
}

fn mask_set(g: &WeightedGraph, mask: u64) -> VertexSet {
    VertexSet::new(g, (0..g.n()).filter(|&v| mask >> v & 1 == 1))
}

/// Every connected `k`-partition, blocks in order of smallest member.
pub fn enumerate_connected_k_partitions(
    g: &WeightedGraph,
    k: usize,
    budget: OracleBudget,
) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_connected_k_partition(g, k, budget, |blocks| {
        out.push(Partition::new(blocks.iter().map(|&b| mask_set(g, b)).collect()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Exact optimum: the smallest possible heaviest block (min-max) or the
/// largest possible lightest block (max-min).
pub fn oracle_opt_bcp(g: &WeightedGraph, k: usize, mode: Objective, budget: OracleBudget) -> Result<u64> {
    let mut best: Option<u64> = None;
    for_each_connected_k_partition(g, k, budget, |blocks| {
        let weights = blocks.iter().map(|&b| mask_weight(g, b));
        let value = match mode {
            Objective::MinMax => weights.max().unwrap_or(0),
            Objective::MaxMin => weights.min().unwrap_or(0),
        };
        best = Some(match (best, mode) {
            (None, _) => value,
            (Some(b), Objective::MinMax) => b.min(value),
            (Some(b), Objective::MaxMin) => b.max(value),
        });
        ControlFlow::Continue(())
    })?;
    best.ok_or(Error::NoPartitionExists(k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivideOracle {
    pub dividable: bool,
    pub separators: Vec<usize>,
}

/// Whether `G[subset]` splits into two connected sets of weight `>= λ`,
/// and which vertices are `λ`-separators of it.
pub fn oracle_divide(
    g: &WeightedGraph,
    subset: &VertexSet,
    lambda: u64,
    budget: OracleBudget,
) -> Result<DivideOracle> {
    let (h, map) = g.induced(subset);
    let mut dividable = false;
    for_each_connected_k_partition(&h, 2, budget, |blocks| {
        if blocks.iter().all(|&b| mask_weight(&h, b) >= lambda) {
            dividable = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    let separators = (0..h.n())
        .filter(|&s| {
            let allowed: Vec<bool> = (0..h.n()).map(|v| v != s).collect();
            components_of_mask(&h, &allowed).iter().all(|c| c.weight() < lambda)
        })
        .map(|s| map[s])
        .collect();
    Ok(DivideOracle { dividable, separators })
}

/// Whether blocks can be matched to targets so that each block `T` with
/// target `w` satisfies `lower·w <= w(T) <= upper·w`.
fn matchable(weights: &[u64], targets: &[u64], lower: Frac, upper: Frac, used: &mut [bool], i: usize) -> bool {
    if i == targets.len() {
        return true;
    }
    for b in 0..weights.len() {
        if !used[b]
            && lower.times(targets[i]).reached_by(weights[b])
            && upper.times(targets[i]).admits(weights[b])
        {
            used[b] = true;
            if matchable(weights, targets, lower, upper, used, i + 1) {
                return true;
            }
            used[b] = false;
        }
    }
    false
}

/// Whether some connected `k`-partition (`k = targets.len()`) meets the
/// bounds `lower·w_i <= w(T_i) <= upper·w_i` under some block order.
pub fn oracle_gl_feasible(
    g: &WeightedGraph,
    targets: &[u64],
    lower: Frac,
    upper: Frac,
    budget: OracleBudget,
) -> Result<bool> {
    let mut found = false;
    let mut used = vec![false; targets.len()];
    for_each_connected_k_partition(g, targets.len(), budget, |blocks| {
        let weights: Vec<u64> = blocks.iter().map(|&b| mask_weight(g, b)).collect();
        used.fill(false);
        if matchable(&weights, targets, lower, upper, &mut used, 0) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::is_connected;

    const B: OracleBudget = OracleBudget { max_vertices: 10, max_parts: 5 };

    fn stirling2(n: usize, k: usize) -> u64 {
        if n == 0 && k == 0 {
            return 1;
        }
        if n == 0 || k == 0 {
            return 0;
        }
        k as u64 * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
    }

    #[test]
    fn path3_partitions() {
        let g = path(3);
        let parts = enumerate_connected_k_partitions(&g, 2, B).unwrap();
        let s = |v: &[usize]| VertexSet::new(&g, v.iter().copied());
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&Partition::new(vec![s(&[0]), s(&[1, 2])])));
        assert!(parts.contains(&Partition::new(vec![s(&[0, 1]), s(&[2])])));
        assert_eq!(enumerate_connected_k_partitions(&g, 3, B).unwrap().len(), 1);
        assert_eq!(enumerate_connected_k_partitions(&g, 1, B).unwrap().len(), 1);
    }

    #[test]
    fn counts_on_known_families() {
        // Complete graphs: every set partition is connected.
        for n in 1..=7 {
            for k in 1..=n.min(5) {
                let got = enumerate_connected_k_partitions(&complete(n), k, B).unwrap().len() as u64;
                assert_eq!(got, stirling2(n, k));
            }
        }
        // Paths: choose k-1 of n-1 cut edges. Cycles: choose k of n edges (k >= 2).
        assert_eq!(enumerate_connected_k_partitions(&path(8), 3, B).unwrap().len(), 21);
        assert_eq!(enumerate_connected_k_partitions(&cycle(8), 3, B).unwrap().len(), 56);
        for p in enumerate_connected_k_partitions(&cycle(7), 4, B).unwrap() {
            assert!(p.parts().iter().all(|b| is_connected(&cycle(7), b)));
        }
    }

    #[test]
    fn optima() {
        assert_eq!(oracle_opt_bcp(&path(4), 2, Objective::MinMax, B), Ok(2));
        assert_eq!(oracle_opt_bcp(&star(3), 2, Objective::MaxMin, B), Ok(1));
        assert_eq!(oracle_opt_bcp(&cycle(5), 1, Objective::MaxMin, B), Ok(5));
        assert_eq!(oracle_opt_bcp(&path(2), 3, Objective::MinMax, B), Err(Error::NoPartitionExists(3)));
        assert!(matches!(oracle_opt_bcp(&path(11), 2, Objective::MinMax, B), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn divide_classification() {
        let g = star(3);
        let r = oracle_divide(&g, &g.vertices(), 2, B).unwrap();
        assert_eq!(r, DivideOracle { dividable: false, separators: vec![0] });
        let g = path(4);
        let r = oracle_divide(&g, &g.vertices(), 2, B).unwrap();
        assert_eq!(r, DivideOracle { dividable: true, separators: vec![] });
        assert!(oracle_divide(&cycle(5), &cycle(5).vertices(), 1, B).unwrap().dividable);
    }

    #[test]
    fn gl_feasibility() {
        assert!(oracle_gl_feasible(&cycle(4), &[2, 2], Frac::ONE_THIRD, Frac::THREE, B).unwrap());
        assert!(!oracle_gl_feasible(&star(3), &[2, 2], Frac::ONE, Frac::ONE, B).unwrap());
        assert!(oracle_gl_feasible(&star(3), &[4], Frac::ONE, Frac::ONE, B).unwrap());
    }
}
