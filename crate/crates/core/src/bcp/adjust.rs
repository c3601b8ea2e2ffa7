use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{non_cut_vertices, VertexSet, WeightedGraph};
use crate::partition::Partition;

use super::Objective;

/// Brings a CVP to exactly `k` parts.
///
/// Too many parts: under [`Objective::MaxMin`] the lightest part is merged
/// into its lightest neighbor; under [`Objective::MinMax`] the adjacent pair
/// of smallest combined weight is merged. Too few parts: the smallest-id
/// non-cut vertex of the heaviest splittable part becomes its own part.
/// Ties go to the lower part index.
pub fn adjust_part_count(
    g: &WeightedGraph,
    partition: Partition,
    k: usize,
    mode: Objective,
) -> Result<Partition> {
    if k == 0 {
        return Err(Error::precondition("k must be positive"));
    }
    if g.n() < k {
        return Err(Error::TooFewVertices { n: g.n(), k });
    }
    if let Err(defect) = partition.check_cvp(g) {
        return Err(Error::precondition(format!("input is not a CVP: {defect}")));
    }
    let parts = if partition.len() > k {
        merge_down(g, partition.into_parts(), k, mode)?
    } else {
        split_up(g, partition.into_parts(), k)?
    };
    Ok(Partition::new(parts))
}

fn merge_down(
    g: &WeightedGraph,
    mut parts: Vec<VertexSet>,
    k: usize,
    mode: Objective,
) -> Result<Vec<VertexSet>> {
    let p = parts.len();
    let mut owner = vec![0usize; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            owner[v] = i;
        }
    }
    let mut nbrs = vec![BTreeSet::new(); p];
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != b {
            nbrs[a].insert(b);
            nbrs[b].insert(a);
        }
    }
    let mut alive = vec![true; p];
    let mut live = p;
    while live > k {
        let (a, b) = match mode {
            Objective::MaxMin => {
                let light = (0..p)
                    .filter(|&i| alive[i])
                    .min_by_key(|&i| (parts[i].weight(), i))
                    .expect("live parts remain");
                let Some(other) = nbrs[light].iter().copied().min_by_key(|&j| (parts[j].weight(), j))
                else {
                    return Err(Error::CannotReachK { k, reason: "quotient graph is disconnected".into() });
                };
                (light, other)
            }
            Objective::MinMax => {
                let pair = (0..p)
                    .filter(|&i| alive[i])
                    .flat_map(|i| nbrs[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
                    .min_by_key(|&(i, j)| (parts[i].weight() + parts[j].weight(), i, j));
                let Some(pair) = pair else {
                    return Err(Error::CannotReachK { k, reason: "quotient graph is disconnected".into() });
                };
                pair
            }
        };
        let (keep, gone) = (a.min(b), a.max(b));
        parts[keep] = parts[keep].union(g, &parts[gone]);
        parts[gone] = VertexSet::empty();
        alive[gone] = false;
        live -= 1;
        let moved = std::mem::take(&mut nbrs[gone]);
        for x in moved {
            nbrs[x].remove(&gone);
            if x != keep {
                nbrs[x].insert(keep);
                nbrs[keep].insert(x);
            }
        }
        nbrs[keep].remove(&keep);
    }
    Ok(parts.into_iter().zip(alive).filter_map(|(s, a)| a.then_some(s)).collect())
}

fn split_up(g: &WeightedGraph, mut parts: Vec<VertexSet>, k: usize) -> Result<Vec<VertexSet>> {
    while parts.len() < k {
        let Some(i) = (0..parts.len())
            .filter(|&i| parts[i].len() >= 2)
            .max_by_key(|&i| (parts[i].weight(), std::cmp::Reverse(i)))
        else {
            return Err(Error::CannotReachK { k, reason: "every part is a single vertex".into() });
        };
        let v = non_cut_vertices(g, &parts[i])
            .into_iter()
            .next()
            .ok_or_else(|| Error::internal("connected set without a non-cut vertex"))?;
        parts[i] = parts[i].without(g, v);
        parts.push(VertexSet::singleton(g, v));
    }
    Ok(parts)
}
