use std::fmt;

use crate::graph::WeightedGraph;

/// An induced `K_{1,c}`: `center` adjacent to every leaf, leaves pairwise
/// non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl ClawWitness {
    pub fn is_valid(&self, g: &WeightedGraph) -> bool {
        self.leaves.iter().all(|&l| l != self.center && g.has_edge(self.center, l))
            && self
                .leaves
                .iter()
                .enumerate()
                .all(|(i, &a)| self.leaves[i + 1..].iter().all(|&b| a != b && !g.has_edge(a, b)))
    }
}

impl fmt::Display for ClawWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "center {} with leaves {:?}", self.center, self.leaves)
    }
}

/// Searches for an induced `K_{1,c}`. Returns `None` when the graph is
/// `K_{1,c}`-free.
///
/// Enumerates independent `c`-subsets of every neighborhood, which is
/// exponential in `c` and meant for validating inputs of moderate degree.
pub fn is_claw_free(g: &WeightedGraph, c: usize) -> Option<ClawWitness> {
    assert!(c >= 3, "claw size must be at least 3");
    for center in 0..g.n() {
        let nbrs = g.neighbors(center);
        if nbrs.len() < c {
            continue;
        }
        let mut chosen = Vec::with_capacity(c);
        if independent_subset(g, nbrs, 0, c, &mut chosen) {
            return Some(ClawWitness { center, leaves: chosen });
        }
    }
    None
}

fn independent_subset(
    g: &WeightedGraph,
    pool: &[usize],
    from: usize,
    want: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == want {
        return true;
    }
    for i in from..pool.len() {
        if pool.len() - i < want - chosen.len() {
            break;
        }
        let v = pool[i];
        if chosen.iter().all(|&u| !g.has_edge(u, v)) {
            chosen.push(v);
            if independent_subset(g, pool, i + 1, want, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
