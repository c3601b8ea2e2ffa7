//! Balanced connected partitions of `K_{1,c}`-free graphs.
//!
//! [`min_max_bcp`] is a `(c-1)`-approximation for minimizing the heaviest
//! part; [`max_min_bcp`] guarantees a lightest part of at least
//! `⌊X*/(c-1)⌋`. [`bcep`] applies both to edge partitions via line graphs.

mod adjust;
mod extract;

pub use adjust::adjust_part_count;
pub use extract::{balanced_partition, extract_bounded_set};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{components_of_mask, is_connected, line_graph, VertexSet, WeightedGraph};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    MinMax,
    MaxMin,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::MinMax => "min-max",
            Objective::MaxMin => "max-min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcpSolution {
    pub parts: Partition,
    /// Heaviest part for min-max, lightest part for max-min.
    pub objective: u64,
    pub mode: Objective,
    /// `λ` for min-max, the final search value `X̂` for max-min.
    pub lower_certificate: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// `k` parts, each of weight at least `⌊X/(c-1)⌋`.
    Feasible(Partition),
    /// Certifies `X > X*`.
    Infeasible,
}

fn check_instance(g: &WeightedGraph, k: usize, c: usize) -> Result<()> {
    if c < 3 {
        return Err(Error::precondition("c must be at least 3"));
    }
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    if g.n() < k {
        return Err(Error::TooFewVertices { n: g.n(), k });
    }
    if !is_connected(g, &g.vertices()) {
        return Err(Error::NotConnected);
    }
    Ok(())
}

/// Largest meaningful search value `⌈w(G)/k⌉`.
pub fn search_upper_bound(g: &WeightedGraph, k: usize) -> u64 {
    g.total_weight().div_ceil(k as u64)
}

/// Min-Max BCP with `λ = max(w_max, ⌈w(G)/k⌉)`: every part weighs less
/// than `(c-1)λ <= (c-1)·OPT`.
pub fn min_max_bcp(g: &WeightedGraph, k: usize, c: usize) -> Result<BcpSolution> {
    check_instance(g, k, c)?;
    let lambda = g.max_weight().max(search_upper_bound(g, k));
    let parts = balanced_partition(g, &g.vertices(), lambda, c)?;
    let parts = adjust_part_count(g, Partition::new(parts), k, Objective::MinMax)?;
    Ok(BcpSolution {
        objective: parts.max_weight(),
        parts,
        mode: Objective::MinMax,
        lower_certificate: lambda,
    })
}

/// One probe of the max-min search: either `k` parts of weight at least
/// `⌊X/(c-1)⌋`, or a certificate that `X > X*`.
pub fn max_min_feasible(g: &WeightedGraph, k: usize, c: usize, x: u64) -> Result<Feasibility> {
    check_instance(g, k, c)?;
    let max = search_upper_bound(g, k);
    if x == 0 || x > max {
        return Err(Error::XOutOfRange { x, max });
    }
    let lambda = x / (c as u64 - 1);
    let n = g.n();
    let heavy: Vec<bool> = (0..n).map(|v| g.weight(v) > lambda).collect();
    let light: Vec<bool> = heavy.iter().map(|&h| !h).collect();

    let mut anchored: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sets = Vec::new();
    for comp in components_of_mask(g, &light) {
        if comp.weight() < lambda {
            let anchor = comp
                .iter()
                .flat_map(|v| g.neighbors(v).iter().copied())
                .filter(|&h| heavy[h])
                .min();
            // Without a heavy neighbor Q is the whole graph and nothing is built.
            if let Some(h) = anchor {
                anchored[h].extend(comp.iter());
            }
        } else {
            let mut parts = balanced_partition(g, &comp, lambda, c)?;
            if parts.len() >= 2 && parts.last().is_some_and(|p| p.weight() < lambda) {
                let tail = parts.pop().expect("len >= 2");
                let prev = parts.pop().expect("len >= 2");
                parts.push(prev.union(g, &tail));
            }
            sets.extend(parts);
        }
    }
    let mut all: Vec<VertexSet> = (0..n)
        .filter(|&h| heavy[h])
        .map(|h| VertexSet::new(g, std::iter::once(h).chain(anchored[h].iter().copied())))
        .collect();
    all.extend(sets);

    if all.len() < k {
        return Ok(Feasibility::Infeasible);
    }
    let parts = adjust_part_count(g, Partition::new(all), k, Objective::MaxMin)?;
    Ok(Feasibility::Feasible(parts))
}

/// Max-Min BCP: doubling then binary search for the largest feasible `X̂`.
/// Every `X <= X*` is feasible, so `X̂ >= X*` and the lightest part weighs
/// at least `⌊X*/(c-1)⌋`.
pub fn max_min_bcp(g: &WeightedGraph, k: usize, c: usize) -> Result<BcpSolution> {
    check_instance(g, k, c)?;
    let upper = search_upper_bound(g, k);
    let probe = |x| max_min_feasible(g, k, c, x);

    let Feasibility::Feasible(mut best) = probe(1)? else {
        return Err(Error::internal("X = 1 reported infeasible"));
    };
    let mut lo = 1u64;
    let mut hi = upper;
    while lo < upper {
        let next = (2 * lo).min(upper);
        match probe(next)? {
            Feasibility::Feasible(p) => {
                lo = next;
                best = p;
            }
            Feasibility::Infeasible => {
                hi = next - 1;
                break;
            }
        }
    }
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match probe(mid)? {
            Feasibility::Feasible(p) => {
                lo = mid;
                best = p;
            }
            Feasibility::Infeasible => hi = mid - 1,
        }
    }
    Ok(BcpSolution {
        objective: best.min_weight(),
        parts: best,
        mode: Objective::MaxMin,
        lower_certificate: lo,
    })
}

/// Edge partition produced by [`bcep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePartition {
    /// Indices into `g.edges()` order, per part.
    pub edge_ids: Vec<Vec<usize>>,
    /// The same parts as endpoint pairs.
    pub edges: Vec<Vec<(usize, usize)>>,
    pub weights: Vec<u64>,
    pub objective: u64,
    pub mode: Objective,
    pub lower_certificate: u64,
}

/// Balanced connected edge partition, solved on the line graph with `c = 3`.
/// `edge_weights` is aligned with `g.edges()`.
pub fn bcep(
    g: &WeightedGraph,
    edge_weights: &[u64],
    k: usize,
    mode: Objective,
) -> Result<EdgePartition> {
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    if g.m() < k {
        return Err(Error::TooFewEdges { m: g.m(), k });
    }
    if !is_connected(g, &g.vertices()) {
        return Err(Error::NotConnected);
    }
    let (line, endpoints) = line_graph(g, edge_weights)?;
    let sol = match mode {
        Objective::MinMax => min_max_bcp(&line, k, 3)?,
        Objective::MaxMin => max_min_bcp(&line, k, 3)?,
    };
    let edge_ids: Vec<Vec<usize>> =
        sol.parts.parts().iter().map(|p| p.members().to_vec()).collect();
    let edges = edge_ids.iter().map(|ids| ids.iter().map(|&e| endpoints[e]).collect()).collect();
    Ok(EdgePartition {
        weights: sol.parts.weights(),
        edge_ids,
        edges,
        objective: sol.objective,
        mode,
        lower_certificate: sol.lower_certificate,
    })
}
