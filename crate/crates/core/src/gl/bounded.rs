use std::collections::VecDeque;

use crate::divide::{divide_or_separator, lambda_separator, try_divide_with_separator, DivideResult};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::graph::{components_of_mask, connected_components, is_connected, VertexSet, WeightedGraph};

use super::{check_gl_instance, GlOptions, TargetWeights};

/// Cached separator classification of a packing set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Category {
    /// Lighter than `2αw_j`; not classified yet.
    Uncategorized,
    NoSeparator,
    /// `s` is an `αw_j`-separator; `comps` are the components of `T_j - s`.
    HasSeparator { s: usize, comps: Vec<VertexSet> },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GlStats {
    /// Largest number of iterations of a single inner loop.
    pub max_inner_iterations: usize,
    pub total_inner_iterations: usize,
    pub categorizations: usize,
    pub divides: usize,
    pub component_removals: usize,
}

/// Result of [`bounded_gl`]. Sets are indexed by target; `None` marks a
/// target that received no set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlPacking {
    pub sets: Vec<Option<VertexSet>>,
    pub categories: Vec<Category>,
    /// `(target index, vertex)` pairs fixed as singletons by preprocessing.
    pub fixed_singletons: Vec<(usize, usize)>,
    pub stats: GlStats,
}

impl GlPacking {
    /// Number of targets that received a set.
    pub fn len(&self) -> usize {
        self.sets.iter().flatten().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covered(&self) -> usize {
        self.sets.iter().flatten().map(VertexSet::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preprocessed {
    pub working: VertexSet,
    /// Remaining target indices, in descending target order.
    pub residual: Vec<usize>,
    pub fixed_singletons: Vec<(usize, usize)>,
}

/// Peels heavy vertices until `w_max < α·w_k` holds on the residual
/// instance: while the smallest index `ℓ` with `w_max >= α·w_ℓ` exists, a
/// maximum-weight vertex (smallest id on ties) becomes `T_ℓ`.
pub fn preprocess_heavy(g: &WeightedGraph, targets: &TargetWeights, alpha: Frac) -> Result<Preprocessed> {
    if targets.min() < g.max_weight() {
        return Err(Error::precondition("min target < w_max"));
    }
    if targets.sum() > g.total_weight() {
        return Err(Error::precondition("targets exceed the graph weight"));
    }
    let mut working = g.vertices();
    let mut residual: Vec<usize> = (0..targets.k()).collect();
    let mut fixed = Vec::new();
    while let Some(v) = working.iter().max_by_key(|&v| (g.weight(v), std::cmp::Reverse(v))) {
        let wmax = g.weight(v);
        let Some(pos) = residual.iter().position(|&l| alpha.times(targets.get(l)).reached_by(wmax)) else {
            break;
        };
        let l = residual.remove(pos);
        fixed.push((l, v));
        working = working.without(g, v);
    }
    Ok(Preprocessed { working, residual, fixed_singletons: fixed })
}

/// A connected set of weight in `[λ, 2λ - 1)` grown in BFS order from the
/// smallest vertex of the first component of `G[working]` reaching `λ`.
/// Vertex weights below `λ` keep the overshoot under `λ - 1`.
pub fn carve(g: &WeightedGraph, working: &VertexSet, lambda: u64) -> Result<VertexSet> {
    let mask = working.mask(g.n());
    let comp = components_of_mask(g, &mask)
        .into_iter()
        .find(|c| c.weight() >= lambda)
        .ok_or(Error::NoBigComponent)?;
    let start = comp.first().expect("non-empty component");
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut taken = Vec::new();
    let mut weight = 0;
    while weight < lambda {
        let v = queue.pop_front().expect("component weighs at least lambda");
        taken.push(v);
        weight += g.weight(v);
        for &u in g.neighbors(v) {
            if mask[u] && !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    Ok(VertexSet::new(g, taken))
}

/// Per-set thresholds: `⌈αw_j⌉` for the lower side, `2αw_j` for
/// categorization and `3αw_j` for the upper side.
#[derive(Debug, Clone, Copy)]
struct Bounds {
    lambda: u64,
    two_alpha: Frac,
    three_alpha: Frac,
}

impl Bounds {
    fn new(alpha: Frac, w: u64) -> Self {
        let a = alpha.times(w);
        Bounds {
            lambda: a.ceil(),
            two_alpha: Frac::new(2 * alpha.num(), alpha.den()).times(w),
            three_alpha: Frac::new(3 * alpha.num(), alpha.den()).times(w),
        }
    }
}

struct State<'g> {
    g: &'g WeightedGraph,
    /// Residual vertices (not fixed by preprocessing).
    residual: Vec<bool>,
    owner: Vec<Option<usize>>,
    sets: Vec<Option<VertexSet>>,
    categories: Vec<Category>,
    bounds: Vec<Bounds>,
    stats: GlStats,
}

impl State<'_> {
    fn free_mask(&self) -> Vec<bool> {
        (0..self.g.n()).map(|v| self.residual[v] && self.owner[v].is_none()).collect()
    }

    fn assign(&mut self, j: usize, set: VertexSet) {
        if let Some(old) = self.sets[j].take() {
            for v in old.iter() {
                self.owner[v] = None;
            }
        }
        for v in set.iter() {
            self.owner[v] = Some(j);
        }
        self.sets[j] = Some(set);
        self.categorize(j);
    }

    fn set(&self, j: usize) -> &VertexSet {
        self.sets[j].as_ref().expect("assigned set")
    }

    fn categorize(&mut self, j: usize) {
        let b = self.bounds[j];
        let set = self.sets[j].as_ref().expect("assigned set");
        self.categories[j] = if !b.two_alpha.reached_by(set.weight()) {
            Category::Uncategorized
        } else {
            self.stats.categorizations += 1;
            match lambda_separator(self.g, set, b.lambda) {
                None => Category::NoSeparator,
                Some(s) => Category::HasSeparator { s, comps: connected_components(self.g, &set.without(self.g, s)) },
            }
        };
    }

    /// Index of the set `Q` is moved against, per the selection order:
    /// sets without a cached separator first, then sets where `Q` touches a
    /// component of `T_j - s`, then sets that can absorb `Q` outright.
    fn pick_target(&self, q: &VertexSet) -> Option<usize> {
        let mut touched = vec![Vec::new(); self.sets.len()];
        for v in q.iter() {
            for &u in self.g.neighbors(v) {
                if let Some(j) = self.owner[u] {
                    touched[j].push(u);
                }
            }
        }
        let adjacent = || (0..self.sets.len()).filter(|&j| !touched[j].is_empty());
        let plain = adjacent().find(|&j| !matches!(self.categories[j], Category::HasSeparator { .. }));
        let through_comp = || {
            adjacent().find(|&j| match &self.categories[j] {
                Category::HasSeparator { s, .. } => touched[j].iter().any(|u| u != s),
                _ => false,
            })
        };
        let fits = || {
            adjacent().find(|&j| self.bounds[j].three_alpha.admits(self.set(j).weight() + q.weight()))
        };
        plain.or_else(through_comp).or_else(fits)
    }

    /// One inner-loop step on the smallest-id component `Q` of `Ḡ`.
    fn settle(&mut self, q: VertexSet) -> Result<()> {
        let j = self.pick_target(&q).ok_or_else(|| {
            Error::precondition("a leftover component touches no usable set; the graph is not k-connected")
        })?;
        let b = self.bounds[j];
        let t = self.set(j).clone();
        if b.three_alpha.admits(t.weight() + q.weight()) {
            self.assign(j, t.union(self.g, &q));
            return Ok(());
        }
        match self.categories[j].clone() {
            Category::Uncategorized => Err(Error::internal("uncategorized set cannot overflow")),
            Category::NoSeparator => {
                match divide_or_separator(self.g, &t.union(self.g, &q), b.lambda)? {
                    DivideResult::Split(released, kept) => {
                        self.stats.divides += 1;
                        self.assign(j, kept);
                        debug_assert!(released.weight() >= b.lambda);
                        Ok(())
                    }
                    DivideResult::Separator(_) => {
                        Err(Error::internal("set without separator gained one by absorbing Q"))
                    }
                }
            }
            Category::HasSeparator { s, comps } => {
                if let Some((_released, kept)) = try_divide_with_separator(self.g, &t, s, &comps, &q, b.lambda)? {
                    self.stats.divides += 1;
                    self.assign(j, kept);
                    return Ok(());
                }
                let q_mask = q.mask(self.g.n());
                let pos = comps
                    .iter()
                    .position(|c| c.iter().any(|x| self.g.neighbors(x).iter().any(|&y| q_mask[y])))
                    .ok_or_else(|| Error::internal("Q touches no component of the separated set"))?;
                let gone = &comps[pos];
                let rest = t.difference(self.g, gone);
                if !b.two_alpha.reached_by(rest.weight()) {
                    return Err(Error::internal("set fell below 2*alpha*w_j after removing a component"));
                }
                for v in gone.iter() {
                    self.owner[v] = None;
                }
                let mut comps = comps;
                comps.remove(pos);
                self.sets[j] = Some(rest);
                self.categories[j] = Category::HasSeparator { s, comps };
                self.stats.component_removals += 1;
                Ok(())
            }
        }
    }

    fn verify(&self) -> Result<()> {
        let mut seen = vec![false; self.g.n()];
        for (j, set) in self.sets.iter().enumerate() {
            let Some(set) = set else { continue };
            let b = self.bounds[j];
            if !is_connected(self.g, set) || set.weight() < b.lambda || !b.three_alpha.admits(set.weight()) {
                return Err(Error::internal(format!("packing set {j} violates its invariant")));
            }
            for v in set.iter() {
                if std::mem::replace(&mut seen[v], true) || self.owner[v] != Some(j) {
                    return Err(Error::internal(format!("packing set {j} overlaps or is misrecorded")));
                }
            }
            if let Category::HasSeparator { s, comps } = &self.categories[j] {
                if *comps != connected_components(self.g, &set.without(self.g, *s))
                    || comps.iter().any(|c| c.weight() >= b.lambda)
                {
                    return Err(Error::internal(format!("stale separator cache for set {j}")));
                }
            }
        }
        Ok(())
    }
}

/// Connected packing with `αw_i <= w(T_i) <= 3αw_i` on every filled index;
/// when fewer than `k` sets are filled they cover `V`.
///
/// `alpha` must be `1/3` or `1`.
pub fn bounded_gl(
    g: &WeightedGraph,
    targets: &TargetWeights,
    alpha: Frac,
    opts: GlOptions,
) -> Result<GlPacking> {
    if alpha != Frac::ONE_THIRD && alpha != Frac::ONE {
        return Err(Error::precondition("alpha must be 1/3 or 1"));
    }
    check_gl_instance(g, targets)?;
    let k = targets.k();
    let pre = preprocess_heavy(g, targets, alpha)?;
    let mut state = State {
        g,
        residual: pre.working.mask(g.n()),
        owner: vec![None; g.n()],
        sets: vec![None; k],
        categories: vec![Category::Uncategorized; k],
        bounds: (0..k).map(|i| Bounds::new(alpha, targets.get(i))).collect(),
        stats: GlStats::default(),
    };

    let order = &pre.residual;
    let cap = g.n() * g.n();
    let mut pos = 0;
    while pos < order.len() {
        let mask = state.free_mask();
        let free = VertexSet::new(g, (0..g.n()).filter(|&v| mask[v]));
        if free.is_empty() {
            break;
        }
        let i = order[pos];
        let t = carve(g, &free, state.bounds[i].lambda)?;
        state.assign(i, t);
        pos += 1;
        if pos == order.len() {
            break;
        }
        let lambda = state.bounds[order[pos]].lambda;
        let mut iterations = 0;
        loop {
            let comps = components_of_mask(g, &state.free_mask());
            if comps.is_empty() || comps.iter().any(|c| c.weight() >= lambda) {
                break;
            }
            iterations += 1;
            if iterations > cap {
                return Err(Error::InnerLoopCapExceeded(cap));
            }
            let q = comps.into_iter().next().expect("non-empty");
            state.settle(q)?;
        }
        state.stats.total_inner_iterations += iterations;
        state.stats.max_inner_iterations = state.stats.max_inner_iterations.max(iterations);
        if opts.debug_asserts {
            state.verify()?;
        }
    }
    // Fixed singletons live outside the residual instance until the end.
    let mut sets = state.sets;
    for &(l, v) in &pre.fixed_singletons {
        sets[l] = Some(VertexSet::singleton(g, v));
    }
    Ok(GlPacking {
        sets,
        categories: state.categories,
        fixed_singletons: pre.fixed_singletons,
        stats: state.stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::partition::Partition;

    fn targets(t: &[u64]) -> TargetWeights {
        TargetWeights::new(t.to_vec()).unwrap()
    }

    fn check_window(g: &WeightedGraph, t: &TargetWeights, alpha: Frac, p: &GlPacking) {
        for (i, s) in p.sets.iter().enumerate() {
            let Some(s) = s else { continue };
            assert!(is_connected(g, s));
            assert!(alpha.times(t.get(i)).reached_by(s.weight()), "set {i} too light");
            assert!(Frac::new(3 * alpha.num(), alpha.den()).times(t.get(i)).admits(s.weight()), "set {i} too heavy");
        }
        let parts: Vec<VertexSet> = p.sets.iter().flatten().cloned().collect();
        Partition::new(parts.clone()).check_packing(g).unwrap();
        if parts.len() < t.k() {
            Partition::new(parts).check_cvp(g).unwrap();
        }
    }

    #[test]
    fn preprocess_examples() {
        let g = complete(5);
        let p = preprocess_heavy(&g, &targets(&[3, 1, 1]), Frac::ONE).unwrap();
        assert_eq!(p.fixed_singletons, vec![(1, 0), (2, 1)]);
        assert_eq!(p.residual, vec![0]);
        assert_eq!(p.working.len(), 3);

        let g = WeightedGraph::unit(1, &[]).unwrap();
        let p = preprocess_heavy(&g, &targets(&[1]), Frac::ONE).unwrap();
        assert_eq!(p.fixed_singletons, vec![(0, 0)]);
        assert!(p.working.is_empty());

        let g = cycle(12);
        let p = preprocess_heavy(&g, &targets(&[6, 6]), Frac::ONE_THIRD).unwrap();
        assert!(p.fixed_singletons.is_empty());
    }

    #[test]
    fn carve_examples() {
        let g = path(5);
        assert_eq!(carve(&g, &g.vertices(), 2).unwrap(), VertexSet::new(&g, [0, 1]));
        let g = WeightedGraph::new(3, &[(0, 1), (1, 2)], &[2, 2, 1]).unwrap();
        let c = carve(&g, &g.vertices(), 3).unwrap();
        assert_eq!(c.weight(), 4);
        assert_eq!(carve(&g, &VertexSet::new(&g, [2]), 3), Err(Error::NoBigComponent));
    }

    #[test]
    fn examples() {
        let g = cycle(4);
        let t = targets(&[2, 2]);
        let p = bounded_gl(&g, &t, Frac::ONE, GlOptions { debug_asserts: true }).unwrap();
        assert_eq!(p.len(), 2);
        check_window(&g, &t, Frac::ONE, &p);

        let t = targets(&[4]);
        let p = bounded_gl(&g, &t, Frac::ONE, GlOptions::default()).unwrap();
        assert_eq!(p.sets[0], Some(g.vertices()));

        let g = complete(4);
        let t = targets(&[2, 1, 1]);
        let p = bounded_gl(&g, &t, Frac::ONE_THIRD, GlOptions { debug_asserts: true }).unwrap();
        assert!(p.len() <= 3);
        for (i, s) in p.sets.iter().enumerate() {
            if let Some(s) = s {
                assert!(3 * s.weight() >= t.get(i) && s.weight() <= t.get(i).max(g.max_weight()));
            }
        }
    }

    #[test]
    fn rejects_bad_targets() {
        let g = cycle(4);
        assert!(matches!(
            bounded_gl(&g, &targets(&[3, 2]), Frac::ONE, GlOptions::default()),
            Err(Error::PreconditionViolated(_))
        ));
        let g = WeightedGraph::new(3, &[(0, 1), (1, 2)], &[3, 1, 1]).unwrap();
        assert!(matches!(
            bounded_gl(&g, &targets(&[3, 2]), Frac::ONE, GlOptions::default()),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            bounded_gl(&cycle(4), &targets(&[2, 2]), Frac::new(1, 2), GlOptions::default()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn harary_like_instances_stay_in_window() {
        // Circulant graphs C_n(1, 2) are 4-connected.
        for n in 6..14 {
            let mut edges = Vec::new();
            for v in 0..n {
                edges.push((v, (v + 1) % n));
                edges.push((v, (v + 2) % n));
            }
            let weights: Vec<u64> = (0..n).map(|v| 1 + (v as u64 * 7) % 3).collect();
            let g = WeightedGraph::new(n, &edges, &weights).unwrap();
            let w = g.total_weight();
            let wmax = g.max_weight();
            for k in 1..=4usize {
                let mut t = vec![w / k as u64; k];
                for x in t.iter_mut().take((w % k as u64) as usize) {
                    *x += 1;
                }
                if t[k - 1] < wmax {
                    continue;
                }
                let t = targets(&t);
                for alpha in [Frac::ONE_THIRD, Frac::ONE] {
                    let p = bounded_gl(&g, &t, alpha, GlOptions { debug_asserts: true }).unwrap();
                    assert!(p.stats.max_inner_iterations <= n * n);
                    check_window(&g, &t, alpha, &p);
                }
            }
        }
    }
}
