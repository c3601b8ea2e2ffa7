use std::collections::VecDeque;

use crate::divide::{divide_or_separator, lambda_separator, DivideResult};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::graph::{components_of_mask, connected_components, is_connected, non_cut_vertices, VertexSet, WeightedGraph};

use super::TargetWeights;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetClass {
    /// `w(T_i) < w_i`.
    Minus,
    /// Satisfied, without a `w_i`-separator.
    PlusA,
    /// Satisfied with `w_i`-separator `s`; `comps` are the components of `T_i - s`.
    PlusB { s: usize, comps: Vec<VertexSet> },
}

/// Satisfaction state of a full packing `T_1..T_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub classes: Vec<SetClass>,
    /// Indices by descending target; on equal targets satisfied sets first.
    pub order: Vec<usize>,
    /// Length of the satisfied prefix of `order` (the sets of `𝒯*`).
    pub star: usize,
    /// First unsatisfied index in `order`, if any.
    pub u: Option<usize>,
}

impl Classification {
    pub fn in_star(&self, j: usize) -> bool {
        self.order[..self.star].contains(&j)
    }
}

fn satisfied(targets: &TargetWeights, sets: &[VertexSet], i: usize) -> bool {
    sets[i].weight() >= targets.get(i)
}

fn relabeled_order(targets: &TargetWeights, sets: &[VertexSet]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(targets.get(i)), !satisfied(targets, sets, i), i));
    order
}

/// `|𝒯*|` without the separator search of [`classify`].
pub(crate) fn star_len(targets: &TargetWeights, sets: &[VertexSet]) -> usize {
    relabeled_order(targets, sets).iter().take_while(|&&i| satisfied(targets, sets, i)).count()
}

pub fn classify(g: &WeightedGraph, targets: &TargetWeights, sets: &[VertexSet]) -> Classification {
    let classes = (0..sets.len())
        .map(|i| {
            if !satisfied(targets, sets, i) {
                return SetClass::Minus;
            }
            match lambda_separator(g, &sets[i], targets.get(i)) {
                None => SetClass::PlusA,
                Some(s) => SetClass::PlusB { s, comps: connected_components(g, &sets[i].without(g, s)) },
            }
        })
        .collect();
    let order = relabeled_order(targets, sets);
    let star = order.iter().take_while(|&&i| satisfied(targets, sets, i)).count();
    let u = order.get(star).copied();
    Classification { classes, order, star, u }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    /// A component of `T_i - s(T_i)` for a separated satisfied set.
    TbComponent(usize),
    TaSet(usize),
    TMinusSet(usize),
    /// A component of `G - V(𝒯)`.
    Leftover,
}

impl NodeKind {
    pub fn owner(self) -> Option<usize> {
        match self {
            NodeKind::TbComponent(i) | NodeKind::TaSet(i) | NodeKind::TMinusSet(i) => Some(i),
            NodeKind::Leftover => None,
        }
    }
}

/// Auxiliary graph whose nodes are disjoint vertex sets, adjacent when
/// some edge of `G` joins them. Separator vertices belong to no node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferGraph {
    /// Sorted by smallest member.
    pub nodes: Vec<(NodeKind, VertexSet)>,
    pub adj: Vec<Vec<usize>>,
}

pub fn build_transfer_graph(g: &WeightedGraph, sets: &[VertexSet], classes: &[SetClass]) -> TransferGraph {
    let mut nodes = Vec::new();
    let mut assigned = vec![false; g.n()];
    for (i, (set, class)) in sets.iter().zip(classes).enumerate() {
        for v in set.iter() {
            assigned[v] = true;
        }
        match class {
            SetClass::Minus => nodes.push((NodeKind::TMinusSet(i), set.clone())),
            SetClass::PlusA => nodes.push((NodeKind::TaSet(i), set.clone())),
            SetClass::PlusB { comps, .. } => {
                nodes.extend(comps.iter().map(|c| (NodeKind::TbComponent(i), c.clone())));
            }
        }
    }
    let free: Vec<bool> = assigned.iter().map(|a| !a).collect();
    nodes.extend(components_of_mask(g, &free).into_iter().map(|c| (NodeKind::Leftover, c)));
    nodes.sort_by_key(|(_, s)| s.first());

    let mut node_of = vec![None; g.n()];
    for (idx, (_, set)) in nodes.iter().enumerate() {
        for v in set.iter() {
            node_of[v] = Some(idx);
        }
    }
    let mut adj = vec![Vec::new(); nodes.len()];
    for (a, b) in g.edges() {
        if let (Some(x), Some(y)) = (node_of[a], node_of[b]) {
            if x != y {
                adj[x].push(y);
                adj[y].push(x);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    TransferGraph { nodes, adj }
}

/// Shortest node path from a leftover component to an unsatisfied set,
/// by multi-source BFS over nodes in id order. Interior nodes are never
/// leftovers or unsatisfied sets.
pub fn find_transfer_path(h: &TransferGraph) -> Result<Vec<usize>> {
    let mut parent = vec![None; h.nodes.len()];
    let mut seen = vec![false; h.nodes.len()];
    let mut queue = VecDeque::new();
    for (idx, (kind, _)) in h.nodes.iter().enumerate() {
        if *kind == NodeKind::Leftover {
            seen[idx] = true;
            queue.push_back(idx);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &h.adj[x] {
            if seen[y] {
                continue;
            }
            seen[y] = true;
            parent[y] = Some(x);
            if matches!(h.nodes[y].0, NodeKind::TMinusSet(_)) {
                let mut path = vec![y];
                let mut cur = y;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Ok(path);
            }
            queue.push_back(y);
        }
    }
    Err(Error::NoPath)
}

/// Drops smallest-id non-cut vertices while `w(T) > upper`.
///
/// Sets already within `upper` are returned unchanged. A truncated result
/// below `lower` means some vertex outweighed `upper - lower`.
pub fn truncate_set(g: &WeightedGraph, t: &VertexSet, lower: u64, upper: Frac) -> Result<VertexSet> {
    if !is_connected(g, t) {
        return Err(Error::NotConnected);
    }
    let mut t = t.clone();
    if upper.admits(t.weight()) {
        return Ok(t);
    }
    while !upper.admits(t.weight()) {
        let v = non_cut_vertices(g, &t)[0];
        t = t.without(g, v);
    }
    if t.weight() < lower {
        return Err(Error::precondition(format!(
            "truncation undershot the lower bound {lower}; a vertex is heavier than the target"
        )));
    }
    Ok(t)
}

/// Terminating step of a transfer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The accumulated set alone satisfies `T_u`.
    TakeAccumulated,
    /// The accumulated set fits into `T_j`.
    Absorb,
    /// `T_j` outside `𝒯*` takes over `T_u`'s place.
    Swap,
    /// A separator-free satisfied set is split between `T_j` and `T_u`.
    Divide,
}

/// Moves vertices along `path`, starting from the leftover component at its
/// head, until one terminating branch fires. Each step through a separated
/// satisfied set moves that path node from `T_j` into the accumulated set.
pub fn transfer_vertices(
    g: &WeightedGraph,
    targets: &TargetWeights,
    sets: &mut [VertexSet],
    class: &Classification,
    h: &TransferGraph,
    path: &[usize],
) -> Result<Branch> {
    let u = class.u.ok_or_else(|| Error::internal("transfer without an unsatisfied set"))?;
    let (head_kind, head) = &h.nodes[*path.first().ok_or_else(|| Error::internal("empty transfer path"))?];
    if *head_kind != NodeKind::Leftover {
        return Err(Error::internal("transfer path must start at a leftover component"));
    }
    let w_u = targets.get(u);
    let mut x = head.clone();
    for &node in &path[1..] {
        let (kind, part) = &h.nodes[node];
        let j = kind.owner().ok_or_else(|| Error::internal("leftover component inside a transfer path"))?;
        let w_j = targets.get(j);
        if x.weight() >= w_u {
            sets[u] = truncate_set(g, &x, w_u, targets.upper_bound(u))?;
            return Ok(Branch::TakeAccumulated);
        }
        let merged = sets[j].union(g, &x);
        if targets.upper_bound(j).admits(merged.weight()) {
            sets[j] = merged;
            return Ok(Branch::Absorb);
        }
        if !class.in_star(j) {
            if j != u {
                sets[j] = truncate_set(g, &sets[u], w_j, targets.upper_bound(j))?;
            }
            sets[u] = truncate_set(g, &merged, w_u, targets.upper_bound(u))?;
            return Ok(Branch::Swap);
        }
        match &class.classes[j] {
            SetClass::PlusA => {
                let DivideResult::Split(v1, v2) = divide_or_separator(g, &merged, w_j)? else {
                    return Err(Error::internal("separator-free set gained a separator"));
                };
                sets[j] = truncate_set(g, &v1, w_j, targets.upper_bound(j))?;
                sets[u] = truncate_set(g, &v2, w_u, targets.upper_bound(u))?;
                return Ok(Branch::Divide);
            }
            SetClass::PlusB { .. } => {
                x = x.union(g, part);
                sets[j] = sets[j].difference(g, part);
            }
            SetClass::Minus => return Err(Error::internal("unsatisfied set inside the satisfied prefix")),
        }
    }
    Err(Error::internal("transfer path ended without a terminating step"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn targets(t: &[u64]) -> TargetWeights {
        TargetWeights::new(t.to_vec()).unwrap()
    }

    fn sets(g: &WeightedGraph, s: &[&[usize]]) -> Vec<VertexSet> {
        s.iter().map(|m| VertexSet::new(g, m.iter().copied())).collect()
    }

    #[test]
    fn relabeling_puts_satisfied_ties_first() {
        let g = path(6);
        let t = targets(&[2, 2, 2]);
        let s = sets(&g, &[&[0], &[1, 2], &[3, 4]]);
        let c = classify(&g, &t, &s);
        assert_eq!(c.order, vec![1, 2, 0]);
        assert_eq!(c.star, 2);
        assert_eq!(c.u, Some(0));
        assert!(c.in_star(2) && !c.in_star(0));
        assert_eq!(star_len(&t, &s), 2);
    }

    #[test]
    fn transfer_graph_on_a_cycle() {
        let g = cycle(6);
        let t = targets(&[3, 3]);
        let s = sets(&g, &[&[0, 1], &[3]]);
        let c = classify(&g, &t, &s);
        let h = build_transfer_graph(&g, &s, &c.classes);
        let kinds: Vec<NodeKind> = h.nodes.iter().map(|n| n.0).collect();
        assert_eq!(
            kinds,
            vec![NodeKind::TMinusSet(0), NodeKind::Leftover, NodeKind::TMinusSet(1), NodeKind::Leftover]
        );
        assert_eq!(h.adj, vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]);
        assert_eq!(find_transfer_path(&h).unwrap(), vec![1, 0]);
    }

    #[test]
    fn separator_vertices_are_withheld() {
        let g = star(3);
        let t = targets(&[2, 2]);
        let s = sets(&g, &[&[0, 1, 2], &[3]]);
        let c = classify(&g, &t, &s);
        assert_eq!(c.classes[0], SetClass::PlusB { s: 0, comps: sets(&g, &[&[1], &[2]]) });
        let h = build_transfer_graph(&g, &s, &c.classes);
        assert_eq!(h.nodes.len(), 3);
        assert!(h.nodes.iter().all(|(_, s)| !s.contains(0)));
        assert!(h.adj.iter().all(Vec::is_empty));
        assert_eq!(find_transfer_path(&h), Err(Error::NoPath));
    }

    #[test]
    fn shortest_path_through_a_satisfied_set() {
        // Leftover 0, satisfied {1, 2}, unsatisfied {3}; the long way round is 0-4-5-3.
        let g = WeightedGraph::new(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 3)], &[1, 2, 2, 1, 2, 2])
            .unwrap();
        let t = targets(&[2, 2, 2]);
        let s = sets(&g, &[&[1, 2], &[3], &[4, 5]]);
        let c = classify(&g, &t, &s);
        let h = build_transfer_graph(&g, &s, &c.classes);
        let path = find_transfer_path(&h).unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(h.nodes[path[0]].0, NodeKind::Leftover);
        assert_eq!(h.nodes[path[1]].0, NodeKind::TaSet(0));
        assert_eq!(h.nodes[path[2]].0, NodeKind::TMinusSet(1));
    }

    #[test]
    fn truncation() {
        let g = path(10);
        let all = g.vertices();
        assert_eq!(truncate_set(&g, &all, 2, Frac::int(10)).unwrap(), all);
        let t = truncate_set(&g, &all, 2, Frac::int(7)).unwrap();
        assert_eq!(t, VertexSet::new(&g, 3..10));
        let g = star(4);
        let t = truncate_set(&g, &g.vertices(), 1, Frac::int(3)).unwrap();
        assert_eq!(t, VertexSet::new(&g, [0, 3, 4]));
    }

    fn run(g: &WeightedGraph, t: &TargetWeights, s: &mut [VertexSet]) -> Branch {
        let c = classify(g, t, s);
        let h = build_transfer_graph(g, s, &c.classes);
        let path = find_transfer_path(&h).unwrap();
        transfer_vertices(g, t, s, &c, &h, &path).unwrap()
    }

    #[test]
    fn absorb_branch() {
        let g = cycle(4);
        let mut s = sets(&g, &[&[0, 1], &[2]]);
        assert_eq!(run(&g, &targets(&[2, 2]), &mut s), Branch::Absorb);
        assert_eq!(s[1], VertexSet::new(&g, [2, 3]));
    }

    #[test]
    fn take_branch() {
        let g = path(4);
        let mut s = sets(&g, &[&[0], &[3]]);
        assert_eq!(run(&g, &targets(&[2, 2]), &mut s), Branch::TakeAccumulated);
        assert_eq!(s, sets(&g, &[&[1, 2], &[3]]));
    }

    #[test]
    fn swap_branch() {
        // Leftover 4 reaches T_0 = {0} only through T_1 = {1, 2, 3}, which is full.
        let g = path(5);
        let mut s = sets(&g, &[&[0], &[1, 2, 3]]);
        assert_eq!(run(&g, &targets(&[3, 1]), &mut s), Branch::Swap);
        assert_eq!(s, sets(&g, &[&[1, 2, 3, 4], &[0]]));
    }

    #[test]
    fn divide_branch() {
        let g = path(8);
        let t = targets(&[2, 2]);
        let mut s = sets(&g, &[&[1, 2, 3, 4, 5, 6], &[7]]);
        assert_eq!(run(&g, &t, &mut s), Branch::Divide);
        for (i, part) in s.iter().enumerate() {
            assert!(is_connected(&g, part));
            assert!(part.weight() >= 2 && t.upper_bound(i).admits(part.weight()));
        }
        assert!(s[0].is_disjoint(&s[1]));
    }
}
