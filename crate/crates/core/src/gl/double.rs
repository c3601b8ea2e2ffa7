use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::graph::{is_connected, VertexSet, WeightedGraph};
use crate::partition::Partition;

use super::transfer::star_len;
use super::{
    bounded_gl, build_transfer_graph, classify, find_transfer_path, transfer_vertices, Branch, GlOptions,
    GlStats, TargetWeights,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DoubleStats {
    pub bounded: GlStats,
    /// Transfer iterations; never more than `k·n`.
    pub iterations: usize,
    pub take_accumulated: usize,
    pub absorb: usize,
    pub swap: usize,
    pub divide: usize,
}

impl DoubleStats {
    fn record(&mut self, branch: Branch) {
        match branch {
            Branch::TakeAccumulated => self.take_accumulated += 1,
            Branch::Absorb => self.absorb += 1,
            Branch::Swap => self.swap += 1,
            Branch::Divide => self.divide += 1,
        }
    }
}

fn check_pack_satisfied(g: &WeightedGraph, targets: &TargetWeights, sets: &[VertexSet]) -> Result<()> {
    let mut seen = vec![false; g.n()];
    for (i, set) in sets.iter().enumerate() {
        let w = set.weight();
        if set.is_empty() || !is_connected(g, set) {
            return Err(Error::internal(format!("set {i} is empty or disconnected after a transfer")));
        }
        if !Frac::ONE_THIRD.times(targets.get(i)).reached_by(w) || !targets.upper_bound(i).admits(w) {
            return Err(Error::internal(format!("set {i} left its weight window after a transfer")));
        }
        for v in set.iter() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::internal(format!("vertex {v} assigned twice after a transfer")));
            }
        }
    }
    Ok(())
}

fn assigned(sets: &[VertexSet]) -> usize {
    sets.iter().map(VertexSet::len).sum()
}

/// A CVP `T_1..T_k` with `w_i/3 <= w(T_i) <= max{r,3}·w_i`, part `i`
/// belonging to target `i`.
///
/// Starts from the `α = 1/3` packing and routes leftover vertices to
/// unsatisfied sets along shortest transfer-graph paths. Every iteration
/// is checked to keep the packing within its windows and to increase
/// `(|𝒯*|, |V(𝒯)|)` lexicographically.
pub fn double_bounded_gl(
    g: &WeightedGraph,
    targets: &TargetWeights,
    opts: GlOptions,
) -> Result<(Partition, DoubleStats)> {
    let packing = bounded_gl(g, targets, Frac::ONE_THIRD, opts)?;
    let mut stats = DoubleStats { bounded: packing.stats, ..DoubleStats::default() };
    let mut sets: Vec<VertexSet> = packing
        .sets
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::precondition("lower packing left a target without a set; the graph is not k-connected"))?;
    let cap = targets.k() * g.n();
    while assigned(&sets) < g.n() {
        stats.iterations += 1;
        if stats.iterations > cap {
            return Err(Error::LoopCapExceeded(cap));
        }
        let before = (star_len(targets, &sets), assigned(&sets));
        let class = classify(g, targets, &sets);
        let h = build_transfer_graph(g, &sets, &class.classes);
        let path = find_transfer_path(&h).map_err(|e| match e {
            Error::NoPath => {
                Error::precondition("no transfer path from a leftover component; the graph is not k-connected")
            }
            other => other,
        })?;
        let branch = transfer_vertices(g, targets, &mut sets, &class, &h, &path)?;
        stats.record(branch);
        check_pack_satisfied(g, targets, &sets)?;
        let after = (star_len(targets, &sets), assigned(&sets));
        if after <= before {
            return Err(Error::internal(format!("transfer made no progress: {before:?} -> {after:?}")));
        }
    }
    Ok((Partition::new(sets), stats))
}

/// `k` targets summing to `total`: the first `total mod k` get `⌈total/k⌉`,
/// the rest `⌊total/k⌋`.
pub fn balanced_targets(total: u64, k: usize, w_max: u64) -> Result<TargetWeights> {
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    let k64 = k as u64;
    if total < k64 * w_max {
        return Err(Error::precondition(format!("w(G) = {total} < k * w_max = {}", k64 * w_max)));
    }
    let (q, rem) = (total / k64, total % k64);
    TargetWeights::new((0..k64).map(|i| if i < rem { q + 1 } else { q }).collect())
}

/// Parts within `[⌊w(G)/k⌋/3, 3⌈w(G)/k⌉]`.
pub fn balanced_kconnected(g: &WeightedGraph, k: usize, opts: GlOptions) -> Result<(Partition, DoubleStats)> {
    let targets = balanced_targets(g.total_weight(), k, g.max_weight())?;
    double_bounded_gl(g, &targets, opts)
}
