//! Peeling bounded connected sets off a DFS tree of a `K_{1,c}`-free graph.
//!
//! In such a tree every vertex has at most `c - 1` children (children of a
//! vertex are pairwise non-adjacent, so `c` of them would form a claw). Walk
//! down from the root to the deepest `v` with `w(T_v) >= λ` whose children
//! all weigh `< λ`:
//!
//! * `w(T_v) < (c-1)λ`: cut `T_v`.
//! * otherwise `v` has exactly `c - 1` children. At the root, take `v` and
//!   all but the last child subtree. Below the root, some child `v_j` is
//!   adjacent to the parent `u` (or `u, v_1..v_{c-1}` is a claw); take `v`
//!   and the other subtrees, and hang `T_{v_j}` from `u`.

use crate::claw::ClawWitness;
use crate::dfs::{dfs_tree_unchecked, DfsTree};
use crate::error::{Error, Result};
use crate::graph::{is_connected, VertexSet, WeightedGraph};

/// Removes a connected set `S` with `λ <= w(S) < (c-1)λ` from the tree such
/// that the rest stays connected, and returns `S` with a DFS tree of the
/// rest (`None` when `S` is the whole domain).
pub fn extract_bounded_set(
    g: &WeightedGraph,
    tree: DfsTree,
    lambda: u64,
    c: usize,
) -> Result<(VertexSet, Option<DfsTree>)> {
    if c < 3 {
        return Err(Error::precondition("c must be at least 3"));
    }
    if lambda == 0 || tree.is_empty() || tree.weight() < lambda {
        return Err(Error::precondition("tree weight must be at least lambda >= 1"));
    }
    if tree.domain(g).max_vertex_weight(g) > lambda {
        return Err(Error::precondition("lambda must be at least the maximum vertex weight"));
    }
    extract_unchecked(g, tree, lambda, c)
}

fn extract_unchecked(
    g: &WeightedGraph,
    mut tree: DfsTree,
    lambda: u64,
    c: usize,
) -> Result<(VertexSet, Option<DfsTree>)> {
    let mut v = tree.root();
    while let Some(&heavy) = tree.children(v).iter().find(|&&ch| tree.subtree_weight(ch) >= lambda)
    {
        v = heavy;
    }
    let upper = (c as u64 - 1) * lambda;

    if tree.subtree_weight(v) < upper {
        let taken = VertexSet::new(g, tree.subtree(v));
        if v == tree.root() {
            return Ok((taken, None));
        }
        tree.cut_subtree(v);
        return Ok((taken, Some(tree)));
    }

    let kids = tree.children(v).to_vec();
    if kids.len() >= c {
        let witness = ClawWitness { center: v, leaves: kids[..c].to_vec() };
        return Err(Error::ClawWitnessFound(witness));
    }
    if kids.len() < c - 1 {
        return Err(Error::internal("heavy subtree with fewer than c-1 light children"));
    }

    let Some(u) = tree.parent(v) else {
        let keep = kids[c - 2];
        let mut taken = vec![v];
        for &ch in &kids[..c - 2] {
            taken.extend(tree.subtree(ch));
        }
        tree.keep_only_subtree(keep);
        return Ok((VertexSet::new(g, taken), Some(tree)));
    };

    let Some(j) = kids.iter().position(|&x| g.has_edge(u, x)) else {
        let mut leaves = vec![u];
        leaves.extend(&kids);
        return Err(Error::ClawWitnessFound(ClawWitness { center: v, leaves }));
    };
    let mut taken = vec![v];
    for (i, &ch) in kids.iter().enumerate() {
        if i != j {
            taken.extend(tree.subtree(ch));
        }
    }
    let taken = VertexSet::new(g, taken);
    tree.splice(u, v, kids[j]);
    for x in taken.iter() {
        tree.forget(x);
    }
    tree.subtract_up(u, taken.weight());
    Ok((taken, Some(tree)))
}

/// Exhaustively applies [`extract_bounded_set`] to `G[subset]`.
///
/// Returns `S_1..S_m` covering `subset` with `w(S_i) ∈ [λ, (c-1)λ)` for
/// `i < m` and `w(S_m) < (c-1)λ`. Removing any prefix `S_1..S_j` leaves a
/// connected graph.
pub fn balanced_partition(
    g: &WeightedGraph,
    subset: &VertexSet,
    lambda: u64,
    c: usize,
) -> Result<Vec<VertexSet>> {
    if c < 3 {
        return Err(Error::precondition("c must be at least 3"));
    }
    if lambda == 0 {
        return Err(Error::precondition("lambda must be positive"));
    }
    if !is_connected(g, subset) {
        return Err(Error::NotConnected);
    }
    if subset.max_vertex_weight(g) > lambda {
        return Err(Error::precondition("lambda must be at least the maximum vertex weight"));
    }
    let root = subset.first().expect("connected sets are non-empty");
    let mut tree = dfs_tree_unchecked(g, &subset.mask(g.n()), root);
    let upper = (c as u64 - 1) * lambda;
    let mut parts = Vec::new();
    while tree.weight() >= upper {
        let (taken, rest) = extract_unchecked(g, tree, lambda, c)?;
        parts.push(taken);
        tree = rest.ok_or_else(|| Error::internal("extraction consumed a heavy tree"))?;
    }
    parts.push(tree.domain(g));
    Ok(parts)
}
