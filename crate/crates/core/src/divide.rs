//! Splitting a connected set into two connected halves of weight `>= λ`,
//! or exhibiting a `λ`-separator: a vertex whose removal leaves only
//! components lighter than `λ`.
//!
//! The two outcomes exclude each other: with a separator `s`, the half not
//! containing `s` lies inside one light component.
//!
//! Construction: descend a spanning DFS tree from the root, stepping into a
//! child subtree of weight `>= λ` while its complement is lighter than `λ`
//! (otherwise that subtree and its complement are the split). The descent
//! stops at a sink `s` where every tree piece of `T - s` (child subtrees
//! and the parent side) is lighter than `λ`. If some component `C` of
//! `G - s` is still heavy, pieces of `C` are absorbed one adjacent piece at
//! a time until the total reaches `λ`; the total stays `<= 2λ - 2`, and the
//! remaining pieces stay connected through `s`.

use std::collections::BTreeSet;

use crate::dfs::{dfs_tree_unchecked, DfsTree};
use crate::error::{Error, Result};
use crate::graph::{components_of_mask, is_connected, VertexSet, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivideResult {
    Separator(usize),
    Split(VertexSet, VertexSet),
}

enum Descent {
    Split(VertexSet, VertexSet),
    Sink(DfsTree, usize),
}

fn descend(g: &WeightedGraph, set: &VertexSet, lambda: u64) -> Descent {
    let root = set.first().expect("non-empty set");
    let tree = dfs_tree_unchecked(g, &set.mask(g.n()), root);
    let total = set.weight();
    let mut v = root;
    loop {
        let Some(&c) = tree.children(v).iter().find(|&&c| tree.subtree_weight(c) >= lambda) else {
            return Descent::Sink(tree, v);
        };
        if total - tree.subtree_weight(c) >= lambda {
            let first = VertexSet::new(g, tree.subtree(c));
            let second = set.difference(g, &first);
            return Descent::Split(first, second);
        }
        v = c;
    }
}

/// Pieces of `T - s`: one per child subtree plus the parent side. Returns
/// the piece index of every vertex of the set (`usize::MAX` for `s`).
fn tree_pieces(g: &WeightedGraph, set: &VertexSet, tree: &DfsTree, s: usize) -> Vec<usize> {
    let mut piece = vec![usize::MAX; g.n()];
    let kids = tree.children(s);
    for (i, &c) in kids.iter().enumerate() {
        for x in tree.subtree(c) {
            piece[x] = i;
        }
    }
    for x in set.iter() {
        if x != s && piece[x] == usize::MAX {
            piece[x] = kids.len();
        }
    }
    piece
}

/// Either a `λ`-separator of `G[subset]` or a split into two connected sets
/// of weight `>= λ` each.
///
/// Requires `subset` connected, `λ >= 1` and `w(subset) >= 3λ - 2`.
pub fn divide_or_separator(g: &WeightedGraph, subset: &VertexSet, lambda: u64) -> Result<DivideResult> {
    if lambda == 0 {
        return Err(Error::precondition("lambda must be positive"));
    }
    if !is_connected(g, subset) {
        return Err(Error::NotConnected);
    }
    if subset.weight() + 2 < 3 * lambda {
        return Err(Error::precondition("set weight must be at least 3*lambda - 2"));
    }
    let (tree, s) = match descend(g, subset, lambda) {
        Descent::Split(a, b) => return Ok(DivideResult::Split(a, b)),
        Descent::Sink(tree, s) => (tree, s),
    };
    let rest = subset.without(g, s);
    let comps = components_of_mask(g, &rest.mask(g.n()));
    let Some(heavy) = comps
        .iter()
        .filter(|c| c.weight() >= lambda)
        .max_by_key(|c| (c.weight(), std::cmp::Reverse(c.first())))
    else {
        return Ok(DivideResult::Separator(s));
    };

    let piece = tree_pieces(g, subset, &tree, s);
    let pieces = tree.children(s).len() + 1;
    let mut weight = vec![0u64; pieces];
    let mut min_id = vec![usize::MAX; pieces];
    let mut adj = vec![BTreeSet::new(); pieces];
    for x in rest.iter() {
        let p = piece[x];
        weight[p] += g.weight(x);
        min_id[p] = min_id[p].min(x);
        for &y in g.neighbors(x) {
            if y != s && subset.contains(y) && piece[y] != p {
                adj[p].insert(piece[y]);
            }
        }
    }

    let start = piece[heavy.first().expect("non-empty component")];
    let mut taken = vec![false; pieces];
    let mut frontier = BTreeSet::from([(min_id[start], start)]);
    let mut total = 0;
    while total < lambda {
        let (_, p) = frontier
            .pop_first()
            .ok_or_else(|| Error::internal("heavy component ran out of pieces"))?;
        if std::mem::replace(&mut taken[p], true) {
            continue;
        }
        total += weight[p];
        frontier.extend(adj[p].iter().filter(|&&q| !taken[q]).map(|&q| (min_id[q], q)));
    }
    let first = VertexSet::new(g, rest.iter().filter(|&x| taken[piece[x]]));
    let second = subset.difference(g, &first);
    Ok(DivideResult::Split(first, second))
}

fn is_separator(g: &WeightedGraph, set: &VertexSet, s: usize, lambda: u64) -> bool {
    let mask = set.without(g, s).mask(g.n());
    components_of_mask(g, &mask).iter().all(|c| c.weight() < lambda)
}

/// A `λ`-separator of the connected set, if one exists: the descent's sink
/// when it qualifies, otherwise the smallest-id separator.
pub fn lambda_separator(g: &WeightedGraph, set: &VertexSet, lambda: u64) -> Option<usize> {
    if set.is_empty() {
        return None;
    }
    let sink = match descend(g, set, lambda) {
        // Dividable sets have no separator.
        Descent::Split(..) => return None,
        Descent::Sink(_, s) => s,
    };
    if is_separator(g, set, sink, lambda) {
        return Some(sink);
    }
    // From weight 2λ - 1 on, any separator must be the sink: every other
    // vertex leaves a component holding all but one light piece.
    if set.weight() + 1 >= 2 * lambda {
        return None;
    }
    set.iter().find(|&s| is_separator(g, set, s, lambda))
}

/// Divides `T ∪ Q` when the component of `Q` in `G[comps ∪ Q]` reaches `λ`.
///
/// `s` is a `λ`-separator of `t` and `comps` are the components of
/// `t - s`. Components adjacent to `Q` are absorbed into `Q` by smallest
/// member id until the weight reaches `λ`; the absorbed part (at most
/// `2λ - 2`) is returned first, the rest (containing `s`) second.
pub fn try_divide_with_separator(
    g: &WeightedGraph,
    t: &VertexSet,
    s: usize,
    comps: &[VertexSet],
    q: &VertexSet,
    lambda: u64,
) -> Result<Option<(VertexSet, VertexSet)>> {
    if !t.contains(s) || !t.is_disjoint(q) {
        return Err(Error::precondition("s must lie in T and Q must be disjoint from T"));
    }
    if q.weight() >= lambda {
        return Err(Error::precondition("Q must weigh less than lambda"));
    }
    if t.weight() + q.weight() + 2 < 3 * lambda {
        return Err(Error::precondition("T and Q together must weigh at least 3*lambda - 2"));
    }
    let q_mask = q.mask(g.n());
    let mut adjacent: Vec<&VertexSet> = comps
        .iter()
        .filter(|c| c.iter().any(|x| g.neighbors(x).iter().any(|&y| q_mask[y])))
        .collect();
    adjacent.sort_by_key(|c| c.first());
    if q.weight() + adjacent.iter().map(|c| c.weight()).sum::<u64>() < lambda {
        return Ok(None);
    }
    let mut first = q.clone();
    for c in adjacent {
        if first.weight() >= lambda {
            break;
        }
        first = first.union(g, c);
    }
    let second = t.difference(g, &first);
    Ok(Some((first, second)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::connected_components;
    use crate::graph::fixtures::*;

    fn check(g: &WeightedGraph, set: &VertexSet, lambda: u64, r: &DivideResult) {
        match r {
            DivideResult::Separator(s) => assert!(is_separator(g, set, *s, lambda)),
            DivideResult::Split(a, b) => {
                assert!(a.is_disjoint(b));
                assert_eq!(a.union(g, b), *set);
                assert!(is_connected(g, a) && is_connected(g, b));
                assert!(a.weight() >= lambda && b.weight() >= lambda);
            }
        }
    }

    #[test]
    fn examples() {
        let g = path(4);
        let r = divide_or_separator(&g, &g.vertices(), 2).unwrap();
        assert!(matches!(r, DivideResult::Split(..)));
        check(&g, &g.vertices(), 2, &r);

        let g = star(3);
        assert_eq!(divide_or_separator(&g, &g.vertices(), 2).unwrap(), DivideResult::Separator(0));

        let g = cycle(5);
        let r = divide_or_separator(&g, &g.vertices(), 2).unwrap();
        assert!(matches!(r, DivideResult::Split(..)));
        check(&g, &g.vertices(), 2, &r);
    }

    #[test]
    fn preconditions() {
        let g = path(3);
        assert!(matches!(divide_or_separator(&g, &g.vertices(), 2), Err(Error::PreconditionViolated(_))));
        assert!(matches!(divide_or_separator(&g, &g.vertices(), 0), Err(Error::PreconditionViolated(_))));
        let s = VertexSet::new(&g, [0, 2]);
        assert_eq!(divide_or_separator(&g, &s, 1), Err(Error::NotConnected));
    }

    #[test]
    fn absorption_inside_the_heavy_component() {
        // A 5-cycle through 0 plus a pendant 5: pieces meet via back edges.
        let g = WeightedGraph::new(
            6,
            &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (0, 5)],
            &[1, 1, 1, 1, 1, 1],
        )
        .unwrap();
        for lambda in 1..=2 {
            let r = divide_or_separator(&g, &g.vertices(), lambda).unwrap();
            check(&g, &g.vertices(), lambda, &r);
        }
    }

    #[test]
    fn separator_lookup_matches_brute_force() {
        for g in [star(4), path(5), cycle(5), complete(4)] {
            let set = g.vertices();
            for lambda in 1..=g.total_weight() + 1 {
                let exists = set.iter().any(|s| is_separator(&g, &set, s, lambda));
                match lambda_separator(&g, &set, lambda) {
                    Some(s) => assert!(is_separator(&g, &set, s, lambda)),
                    None => assert!(!exists, "lambda={lambda}"),
                }
            }
        }
    }

    #[test]
    fn try_divide_on_a_spider() {
        // Center 0 with legs 1-2, 3-4, 5-6; Q = {7} touches legs 1-2 and 3-4.
        let g = WeightedGraph::new(
            8,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (2, 7), (4, 7)],
            &[1, 2, 2, 2, 2, 2, 2, 1],
        )
        .unwrap();
        let t = VertexSet::new(&g, 0..7);
        let comps = connected_components(&g, &t.without(&g, 0));
        let q = VertexSet::singleton(&g, 7);
        let (b, rest) = try_divide_with_separator(&g, &t, 0, &comps, &q, 5).unwrap().unwrap();
        assert_eq!(b, VertexSet::new(&g, [1, 2, 7]));
        assert!(is_connected(&g, &b) && is_connected(&g, &rest));
        assert!(rest.contains(0) && rest.weight() >= 5);

        // Q touching only one leg stays below λ.
        let g2 = WeightedGraph::new(
            8,
            &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6), (2, 7)],
            &[1, 1, 1, 3, 3, 3, 3, 1],
        )
        .unwrap();
        let t2 = VertexSet::new(&g2, 0..7);
        let comps = connected_components(&g2, &t2.without(&g2, 0));
        assert_eq!(try_divide_with_separator(&g2, &t2, 0, &comps, &q, 5).unwrap(), None);
    }
}
