//! Rooted DFS trees over a connected vertex subset.
//!
//! The tree is stored with graph-sized arrays (`parent`, `children`,
//! `subtree_weight`) so that the partitioners can peel vertex sets off it
//! in place without re-indexing.

use crate::error::{Error, Result};
use crate::graph::{is_connected, VertexSet, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    subtree_weight: Vec<u64>,
    in_domain: Vec<bool>,
    size: usize,
}

impl DfsTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn subtree_weight(&self, v: usize) -> u64 {
        self.subtree_weight[v]
    }

    /// Weight of the whole tree.
    pub fn weight(&self) -> u64 {
        self.subtree_weight[self.root]
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_domain.get(v).copied().unwrap_or(false)
    }

    pub fn domain(&self, g: &WeightedGraph) -> VertexSet {
        VertexSet::new(g, (0..self.in_domain.len()).filter(|&v| self.in_domain[v]))
    }

    /// Vertices of the subtree rooted at `v`, in preorder.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().rev());
        }
        out
    }

    /// Assembles a rooted tree from a parent map without checking the DFS
    /// property; use [`validate_dfs_tree`] for that. Children are ordered by id.
    pub fn from_parents(
        g: &WeightedGraph,
        root: usize,
        parents: &[(usize, usize)],
    ) -> Result<Self> {
        let n = g.n();
        let mut tree = DfsTree::empty(n, root);
        if root >= n {
            return Err(Error::IndexOutOfRange { id: root, n });
        }
        tree.in_domain[root] = true;
        for &(child, parent) in parents {
            for id in [child, parent] {
                if id >= n {
                    return Err(Error::IndexOutOfRange { id, n });
                }
            }
            tree.in_domain[child] = true;
            tree.in_domain[parent] = true;
            tree.parent[child] = Some(parent);
            tree.children[parent].push(child);
        }
        for list in &mut tree.children {
            list.sort_unstable();
        }
        tree.size = tree.in_domain.iter().filter(|&&b| b).count();
        tree.recompute_weights(g);
        Ok(tree)
    }

    fn empty(n: usize, root: usize) -> Self {
        DfsTree {
            root,
            parent: vec![None; n],
            children: vec![Vec::new(); n],
            subtree_weight: vec![0; n],
            in_domain: vec![false; n],
            size: 0,
        }
    }

    /// Recomputes subtree weights bottom-up from the root. Vertices not
    /// reachable from the root keep weight 0.
    fn recompute_weights(&mut self, g: &WeightedGraph) {
        let order = self.preorder_guarded();
        for &v in order.iter().rev() {
            let below: u64 = self.children[v].iter().map(|&c| self.subtree_weight[c]).sum();
            self.subtree_weight[v] = g.weight(v) + below;
        }
    }

    /// Preorder from the root that tolerates malformed (cyclic) child lists.
    fn preorder_guarded(&self) -> Vec<usize> {
        let mut seen = vec![false; self.parent.len()];
        let mut out = Vec::new();
        if self.root >= self.parent.len() {
            return out;
        }
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            out.push(v);
            stack.extend(self.children[v].iter().rev().filter(|&&c| !seen[c]));
        }
        out
    }

    /// Detaches the subtree at `v` (not the root) and drops it from the domain.
    pub(crate) fn cut_subtree(&mut self, v: usize) {
        let removed = self.subtree_weight[v];
        let parent = self.parent[v].expect("cannot cut the root");
        self.children[parent].retain(|&c| c != v);
        self.subtract_up(parent, removed);
        for x in self.subtree(v) {
            self.forget(x);
        }
    }

    /// Subtracts `w` from the subtree weights of `from` and its ancestors.
    pub(crate) fn subtract_up(&mut self, from: usize, w: u64) {
        let mut cur = Some(from);
        while let Some(a) = cur {
            self.subtree_weight[a] -= w;
            cur = self.parent[a];
        }
    }

    /// Removes `x` from the domain. Links are cleared but not re-wired.
    pub(crate) fn forget(&mut self, x: usize) {
        self.in_domain[x] = false;
        self.parent[x] = None;
        self.children[x].clear();
        self.subtree_weight[x] = 0;
        self.size -= 1;
    }

    /// Re-roots the tree at `v`, keeping only the subtree below it.
    pub(crate) fn keep_only_subtree(&mut self, v: usize) {
        let keep = self.subtree(v);
        let mut keep_mask = vec![false; self.in_domain.len()];
        for &x in &keep {
            keep_mask[x] = true;
        }
        if let Some(p) = self.parent[v] {
            self.children[p].retain(|&c| c != v);
        }
        for (x, kept) in keep_mask.into_iter().enumerate() {
            if self.in_domain[x] && !kept {
                self.forget(x);
            }
        }
        self.parent[v] = None;
        self.root = v;
    }

    /// Makes `child` a child of `parent`, inserted where `replaced` used to be.
    pub(crate) fn splice(&mut self, parent: usize, replaced: usize, child: usize) {
        let pos = self.children[parent].iter().position(|&c| c == replaced);
        match pos {
            Some(p) => self.children[parent][p] = child,
            None => self.children[parent].push(child),
        }
        self.parent[child] = Some(parent);
    }
}

/// DFS tree of `G[subset]` rooted at `root`. Neighbors are explored in
/// increasing id order.
pub fn dfs_tree(g: &WeightedGraph, subset: &VertexSet, root: usize) -> Result<DfsTree> {
    if !subset.contains(root) {
        return Err(Error::RootOutsideSubset(root));
    }
    if !is_connected(g, subset) {
        return Err(Error::NotConnected);
    }
    Ok(dfs_tree_unchecked(g, &subset.mask(g.n()), root))
}

/// DFS over `G[allowed]` from `root`; only the reachable part is spanned.
pub(crate) fn dfs_tree_unchecked(g: &WeightedGraph, allowed: &[bool], root: usize) -> DfsTree {
    let mut tree = DfsTree::empty(g.n(), root);
    tree.in_domain[root] = true;
    tree.size = 1;
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    let mut order = vec![root];
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        let nbrs = g.neighbors(v);
        if top.1 < nbrs.len() {
            let u = nbrs[top.1];
            top.1 += 1;
            if allowed[u] && !tree.in_domain[u] {
                tree.in_domain[u] = true;
                tree.size += 1;
                tree.parent[u] = Some(v);
                tree.children[v].push(u);
                order.push(u);
                stack.push((u, 0));
            }
        } else {
            stack.pop();
        }
    }
    for &v in order.iter().rev() {
        let below: u64 = tree.children[v].iter().map(|&c| tree.subtree_weight[c]).sum();
        tree.subtree_weight[v] = g.weight(v) + below;
    }
    tree
}

/// Checks every structural property of a DFS tree of `G[domain]`: links are
/// consistent graph edges, the domain is spanned from the root, subtree
/// weights are exact, and every non-tree edge joins an ancestor and a
/// descendant.
pub fn validate_dfs_tree(g: &WeightedGraph, tree: &DfsTree) -> bool {
    let n = g.n();
    if tree.in_domain.len() != n || tree.size == 0 || !tree.contains(tree.root) {
        return false;
    }
    if tree.parent[tree.root].is_some() {
        return false;
    }
    for v in 0..n {
        if !tree.in_domain[v] {
            if tree.parent[v].is_some() || !tree.children[v].is_empty() {
                return false;
            }
            continue;
        }
        for &c in &tree.children[v] {
            if !tree.contains(c) || tree.parent[c] != Some(v) || !g.has_edge(v, c) {
                return false;
            }
        }
        if let Some(p) = tree.parent[v] {
            if !tree.contains(p) || !tree.children[p].contains(&v) {
                return false;
            }
        } else if v != tree.root {
            return false;
        }
    }
    // Euler intervals; a cycle in the links shows up as a missed vertex.
    let mut enter = vec![usize::MAX; n];
    let mut leave = vec![0; n];
    let mut clock = 0;
    let mut stack = vec![(tree.root, 0usize)];
    enter[tree.root] = clock;
    clock += 1;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.1 < tree.children[v].len() {
            let c = tree.children[v][top.1];
            top.1 += 1;
            if enter[c] != usize::MAX {
                return false;
            }
            enter[c] = clock;
            clock += 1;
            stack.push((c, 0));
        } else {
            leave[v] = clock;
            clock += 1;
            stack.pop();
        }
    }
    let spanned = (0..n).filter(|&v| enter[v] != usize::MAX).count();
    if spanned != tree.size || spanned != tree.in_domain.iter().filter(|&&b| b).count() {
        return false;
    }
    for v in (0..n).filter(|&v| tree.in_domain[v]) {
        let below: u64 = tree.children[v].iter().map(|&c| tree.subtree_weight[c]).sum();
        if tree.subtree_weight[v] != g.weight(v) + below {
            return false;
        }
    }
    let ancestor = |a: usize, b: usize| enter[a] <= enter[b] && leave[b] <= leave[a];
    for (u, v) in g.edges() {
        if tree.in_domain[u] && tree.in_domain[v] && !ancestor(u, v) && !ancestor(v, u) {
            return false;
        }
    }
    true
}
