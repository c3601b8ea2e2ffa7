//! Vertex-weighted simple undirected graphs and the connectivity primitives
//! the partitioners are built on.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Immutable simple undirected graph with positive integer vertex weights.
///
/// Vertices are `0..n`. Adjacency lists are sorted, so every traversal in the
/// crate visits neighbors smallest-id first and results are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: Vec<Vec<usize>>,
    weight: Vec<u64>,
    total_weight: u64,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph from an edge list. Edges are unordered pairs; listing
    /// both `(u, v)` and `(v, u)` is a duplicate.
    pub fn new(n: usize, edges: &[(usize, usize)], weights: &[u64]) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::WeightCountMismatch { expected: n, got: weights.len() });
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight(v));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::IndexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(WeightedGraph {
            adj,
            total_weight: weights.iter().sum(),
            weight: weights.to_vec(),
            edge_count: edges.len(),
        })
    }

    /// Same graph with every vertex weight set to 1.
    pub fn unit(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges, &vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weight[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weight
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_weight(&self) -> u64 {
        self.weight.iter().copied().max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Position of edge `{u, v}` in [`edges`](Self::edges) order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (u, v) = (u.min(v), u.max(v));
        if !self.has_edge(u, v) {
            return None;
        }
        let before: usize = (0..u).map(|x| self.adj[x].iter().filter(|&&y| y > x).count()).sum();
        let offset = self.adj[u].iter().filter(|&&y| y > u && y < v).count();
        Some(before + offset)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet { members: (0..self.n()).collect(), weight: self.total_weight }
    }

    /// Induced subgraph on `set`, relabelled `0..set.len()` in increasing
    /// id order. The returned vector maps new ids back to ids of `self`.
    pub fn induced(&self, set: &VertexSet) -> (WeightedGraph, Vec<usize>) {
        let map = set.members.clone();
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut adj = vec![Vec::new(); map.len()];
        let mut edge_count = 0;
        for (i, &v) in map.iter().enumerate() {
            for &u in &self.adj[v] {
                if local[u] != usize::MAX {
                    adj[i].push(local[u]);
                    if local[u] > i {
                        edge_count += 1;
                    }
                }
            }
        }
        let weight: Vec<u64> = map.iter().map(|&v| self.weight[v]).collect();
        let g = WeightedGraph { adj, total_weight: set.weight, weight, edge_count };
        (g, map)
    }
}

/// A set of vertices of one graph with its cached total weight.
///
/// Members are kept sorted and unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    members: Vec<usize>,
    weight: u64,
}

impl VertexSet {
    pub fn new(g: &WeightedGraph, members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        let weight = members.iter().map(|&v| g.weight(v)).sum();
        VertexSet { members, weight }
    }

    pub fn empty() -> Self {
        VertexSet::default()
    }

    pub fn singleton(g: &WeightedGraph, v: usize) -> Self {
        VertexSet { members: vec![v], weight: g.weight(v) }
    }

    /// Builds from members already known to be sorted and unique.
    pub(crate) fn from_sorted(members: Vec<usize>, weight: u64) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members, weight }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn into_members(self) -> Vec<usize> {
        self.members
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// Smallest member id.
    pub fn first(&self) -> Option<usize> {
        self.members.first().copied()
    }

    pub fn union(&self, g: &WeightedGraph, other: &VertexSet) -> VertexSet {
        VertexSet::new(g, self.iter().chain(other.iter()))
    }

    pub fn difference(&self, g: &WeightedGraph, other: &VertexSet) -> VertexSet {
        VertexSet::new(g, self.iter().filter(|&v| !other.contains(v)))
    }

    pub fn without(&self, g: &WeightedGraph, v: usize) -> VertexSet {
        let mut out = self.clone();
        if let Ok(pos) = out.members.binary_search(&v) {
            out.members.remove(pos);
            out.weight -= g.weight(v);
        }
        out
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn max_vertex_weight(&self, g: &WeightedGraph) -> u64 {
        self.iter().map(|v| g.weight(v)).max().unwrap_or(0)
    }

    pub(crate) fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }
}

/// Connected components of `G[allowed]`, each sorted, ordered by smallest member.
pub(crate) fn components_of_mask(g: &WeightedGraph, allowed: &[bool]) -> Vec<VertexSet> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if !allowed[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        let mut weight = 0;
        while let Some(v) = queue.pop_front() {
            members.push(v);
            weight += g.weight(v);
            for &u in g.neighbors(v) {
                if allowed[u] && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        members.sort_unstable();
        out.push(VertexSet::from_sorted(members, weight));
    }
    out
}

/// Components of `G[subset]`, ordered by smallest member id.
pub fn connected_components(g: &WeightedGraph, subset: &VertexSet) -> Vec<VertexSet> {
    components_of_mask(g, &subset.mask(g.n()))
}

/// Whether `G[subset]` is connected. The empty set is not connected.
pub fn is_connected(g: &WeightedGraph, subset: &VertexSet) -> bool {
    let Some(start) = subset.first() else {
        return false;
    };
    let allowed = subset.mask(g.n());
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if allowed[u] && !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == subset.len()
}

/// `N(subset)`: vertices outside `subset` adjacent to some member.
pub fn neighbors_of_set(g: &WeightedGraph, subset: &VertexSet) -> VertexSet {
    let inside = subset.mask(g.n());
    let mut hit = vec![false; g.n()];
    for v in subset.iter() {
        for &u in g.neighbors(v) {
            if !inside[u] {
                hit[u] = true;
            }
        }
    }
    VertexSet::new(g, (0..g.n()).filter(|&v| hit[v]))
}

/// Cut vertices of `G[subset]`, sorted. `subset` is assumed connected.
pub fn articulation_points(g: &WeightedGraph, subset: &VertexSet) -> Vec<usize> {
    let Some(root) = subset.first() else {
        return Vec::new();
    };
    let allowed = subset.mask(g.n());
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut root_children = 0;
    let mut time = 0;
    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    disc[root] = time;
    low[root] = time;
    time += 1;
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        let nbrs = g.neighbors(v);
        if top.2 < nbrs.len() {
            let u = nbrs[top.2];
            top.2 += 1;
            if !allowed[u] || u == parent {
                continue;
            }
            if disc[u] == usize::MAX {
                disc[u] = time;
                low[u] = time;
                time += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, v, 0));
            } else {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != root && low[v] >= disc[p] {
                    is_cut[p] = true;
                }
            }
        }
    }
    if root_children > 1 {
        is_cut[root] = true;
    }
    subset.iter().filter(|&v| is_cut[v]).collect()
}

/// Members of a connected `subset` whose removal leaves it connected, sorted.
pub fn non_cut_vertices(g: &WeightedGraph, subset: &VertexSet) -> Vec<usize> {
    let cuts = articulation_points(g, subset);
    subset.iter().filter(|v| cuts.binary_search(v).is_err()).collect()
}

/// Line graph of `g`: one vertex per edge (in [`WeightedGraph::edges`]
/// order) weighted by `edge_weights`, adjacent iff the edges share an
/// endpoint. Also returns the line-vertex to edge mapping.
pub fn line_graph(
    g: &WeightedGraph,
    edge_weights: &[u64],
) -> Result<(WeightedGraph, Vec<(usize, usize)>)> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.is_empty() {
        return Err(Error::NoEdges);
    }
    if edge_weights.len() != edges.len() {
        return Err(Error::WeightCountMismatch { expected: edges.len(), got: edge_weights.len() });
    }
    let mut incident = vec![Vec::new(); g.n()];
    for (id, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut line_edges = Vec::new();
    for list in &incident {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                line_edges.push((a, b));
            }
        }
    }
    let line = WeightedGraph::new(edges.len(), &line_edges, edge_weights)?;
    Ok((line, edges))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn set(g: &WeightedGraph, v: &[usize]) -> VertexSet {
        VertexSet::new(g, v.iter().copied())
    }

    #[test]
    fn build_graph_cases() {
        let g = WeightedGraph::new(1, &[], &[5]).unwrap();
        assert_eq!(g.total_weight(), 5);
        let p3 = WeightedGraph::new(3, &[(0, 1), (1, 2)], &[1, 1, 1]).unwrap();
        assert_eq!(p3.neighbors(1), &[0, 2]);
        assert_eq!(p3.m(), 2);
        assert_eq!(
            WeightedGraph::new(2, &[(0, 1), (1, 0)], &[1, 1]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(WeightedGraph::new(2, &[(1, 1)], &[1, 1]), Err(Error::LoopEdge(1)));
        assert_eq!(WeightedGraph::new(2, &[], &[1, 0]), Err(Error::NonPositiveWeight(1)));
        assert_eq!(
            WeightedGraph::new(2, &[(0, 2)], &[1, 1]),
            Err(Error::IndexOutOfRange { id: 2, n: 2 })
        );
    }

    #[test]
    fn components_and_connectivity() {
        let g = path(3);
        assert_eq!(connected_components(&g, &set(&g, &[0, 2])), vec![set(&g, &[0]), set(&g, &[2])]);
        assert_eq!(connected_components(&g, &g.vertices()), vec![g.vertices()]);
        assert!(connected_components(&g, &VertexSet::empty()).is_empty());
        assert!(is_connected(&g, &g.vertices()));
        assert!(!is_connected(&g, &set(&g, &[0, 2])));
        assert!(!is_connected(&g, &VertexSet::empty()));
    }

    #[test]
    fn set_neighborhood() {
        let g = path(3);
        assert_eq!(neighbors_of_set(&g, &set(&g, &[1])), set(&g, &[0, 2]));
        assert!(neighbors_of_set(&g, &g.vertices()).is_empty());
        let c4 = cycle(4);
        assert_eq!(neighbors_of_set(&c4, &set(&c4, &[0])), set(&c4, &[1, 3]));
    }

    #[test]
    fn cut_vertices() {
        let g = path(4);
        assert_eq!(articulation_points(&g, &g.vertices()), vec![1, 2]);
        assert_eq!(non_cut_vertices(&g, &g.vertices()), vec![0, 3]);
        let s = star(3);
        assert_eq!(articulation_points(&s, &s.vertices()), vec![0]);
        let c = cycle(5);
        assert!(articulation_points(&c, &c.vertices()).is_empty());
        // restricted to a subset the cycle becomes a path
        assert_eq!(articulation_points(&c, &set(&c, &[0, 1, 2])), vec![1]);
    }

    #[test]
    fn line_graph_cases() {
        let (l, map) = line_graph(&path(3), &[1, 1]).unwrap();
        assert_eq!(l.n(), 2);
        assert!(l.has_edge(0, 1));
        assert_eq!(map, vec![(0, 1), (1, 2)]);

        let (l, _) = line_graph(&cycle(3), &[1, 2, 3]).unwrap();
        assert_eq!(l.m(), 3);
        assert_eq!(l.total_weight(), 6);

        let (l, _) = line_graph(&star(3), &[1, 1, 1]).unwrap();
        assert_eq!(l.m(), 3);

        assert_eq!(line_graph(&path(1), &[]), Err(Error::NoEdges));
    }

    #[test]
    fn edge_index_matches_edge_order() {
        let g = complete(5);
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(path(3).edge_index(0, 2), None);
    }

    #[test]
    fn induced_relabels() {
        let g = cycle(5);
        let (h, map) = g.induced(&set(&g, &[1, 2, 4]));
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(h.m(), 1);
        assert!(h.has_edge(0, 1));
    }
}
