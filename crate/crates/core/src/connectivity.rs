//! Vertex connectivity via Menger's theorem: the minimum `u`-`v` vertex cut
//! equals the number of internally vertex-disjoint `u`-`v` paths, computed
//! as a unit-capacity max-flow on the split graph (`v_in -> v_out`).

use std::collections::VecDeque;

use crate::graph::WeightedGraph;

struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Augments along BFS paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut via = vec![usize::MAX; self.adj.len()];
        while flow < limit {
            via.fill(usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                for &arc in &self.adj[x] {
                    let y = self.head[arc];
                    if self.cap[arc] > 0 && via[y] == usize::MAX && y != s {
                        via[y] = arc;
                        if y == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut y = t;
            while y != s {
                let arc = via[y];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                y = self.head[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Number of internally vertex-disjoint paths between non-adjacent `s` and
/// `t`, capped at `limit`.
pub fn local_vertex_connectivity(g: &WeightedGraph, s: usize, t: usize, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let n = g.n();
    let big = n as i32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
        for &u in g.neighbors(v) {
            net.add_arc(2 * v + 1, 2 * u, big);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Whether `g` is `k`-connected: more than `k` vertices and no vertex cut
/// of fewer than `k` vertices.
pub fn vertex_connectivity_at_least(g: &WeightedGraph, k: usize) -> bool {
    assert!(k >= 1, "connectivity threshold must be positive");
    let n = g.n();
    if n < k + 1 {
        return false;
    }
    if !crate::graph::is_connected(g, &g.vertices()) {
        return false;
    }
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) && local_vertex_connectivity(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::graph::VertexSet;

    #[test]
    fn small_cases() {
        assert!(vertex_connectivity_at_least(&cycle(4), 2));
        assert!(!vertex_connectivity_at_least(&cycle(4), 3));
        assert!(!vertex_connectivity_at_least(&path(3), 2));
        assert!(vertex_connectivity_at_least(&path(3), 1));
        assert!(vertex_connectivity_at_least(&complete(5), 4));
        assert!(!vertex_connectivity_at_least(&complete(5), 5));
    }

    /// Exhaustive: no removal of fewer than k vertices disconnects g.
    fn brute_force(g: &WeightedGraph, k: usize) -> bool {
        let n = g.n();
        if n < k + 1 {
            return false;
        }
        for mask in 0u32..(1 << n) {
            if (mask.count_ones() as usize) >= k {
                continue;
            }
            let rest = VertexSet::new(g, (0..n).filter(|&v| mask & (1 << v) == 0));
            if !crate::graph::is_connected(g, &rest) {
                return false;
            }
        }
        true
    }

    #[test]
    fn agrees_with_cut_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_xoshiro::SplitMix64::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(2..=7);
            let p: f64 = rng.random_range(0.2..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = WeightedGraph::unit(n, &edges).unwrap();
            for k in 1..=4 {
                assert_eq!(vertex_connectivity_at_least(&g, k), brute_force(&g, k), "{edges:?} k={k}");
            }
        }
    }
}
