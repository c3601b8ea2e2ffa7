//! Seeded instance generators.
//!
//! All randomness comes from SplitMix64 (`rand_xoshiro::SplitMix64`), so a
//! seed reproduces the same graph on every platform. Weights are drawn from
//! a separate stream derived from the same seed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::graph::{is_connected, line_graph, WeightedGraph};

const WEIGHT_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;
const MAX_RETRIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// `G(n, p)` base graph.
    Gnp(f64),
    /// Harary graph `H_{k,n}` plus `extra` random edges.
    HararyPlus { k: usize, extra: usize },
    Path,
    Cycle,
    /// Star with `c` leaves (`n` is ignored).
    Star(usize),
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Gnp(p) => write!(f, "gnp:{p}"),
            Model::HararyPlus { k, extra } => write!(f, "harary:{k}:{extra}"),
            Model::Path => f.write_str("path"),
            Model::Cycle => f.write_str("cycle"),
            Model::Star(c) => write!(f, "star:{c}"),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    /// `gnp:P`, `harary:K[:EXTRA]`, `path`, `cycle` or `star:C`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(format!("unknown model `{s}`"));
        let mut it = s.split(':');
        let num = |x: Option<&str>| x.ok_or_else(bad)?.parse::<usize>().map_err(|_| bad());
        let model = match it.next() {
            Some("gnp") => Model::Gnp(it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?),
            Some("harary") => {
                let k = num(it.next())?;
                let extra = it.next().map_or(Ok(0), |x| num(Some(x)))?;
                Model::HararyPlus { k, extra }
            }
            Some("path") => Model::Path,
            Some("cycle") => Model::Cycle,
            Some("star") => Model::Star(num(it.next())?),
            _ => return Err(bad()),
        };
        if it.next().is_some() {
            return Err(bad());
        }
        Ok(model)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub n: usize,
    pub model: Model,
    /// Inclusive vertex weight range.
    pub weights: (u64, u64),
}

impl GenSpec {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.weights;
        if lo == 0 || lo > hi {
            return Err(Error::InvalidSpec(format!("weight range {lo}:{hi} must satisfy 1 <= lo <= hi")));
        }
        if self.n == 0 && !matches!(self.model, Model::Star(_)) {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        if let Model::Gnp(p) = self.model {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidSpec(format!("p = {p} outside (0, 1]")));
            }
        }
        Ok(())
    }
}

/// `n` weights uniform in the spec's range.
pub fn gen_weights(spec: &GenSpec, n: usize) -> Vec<u64> {
    let mut rng = SplitMix64::seed_from_u64(spec.seed ^ WEIGHT_STREAM);
    let (lo, hi) = spec.weights;
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

fn harary_edges(k: usize, n: usize) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    };
    if k == 1 {
        for v in 1..n {
            add(v - 1, v);
        }
        return edges;
    }
    for v in 0..n {
        for d in 1..=k / 2 {
            add(v, (v + d) % n);
        }
    }
    if k % 2 == 1 {
        if n.is_multiple_of(2) {
            for v in 0..n / 2 {
                add(v, v + n / 2);
            }
        } else {
            for v in 0..=(n - 1) / 2 {
                add(v, (v + n.div_ceil(2)) % n);
            }
        }
    }
    edges
}

fn base_edges(spec: &GenSpec, rng: &mut SplitMix64) -> Result<(usize, Vec<(usize, usize)>)> {
    let n = spec.n;
    let edges: Vec<(usize, usize)> = match spec.model {
        Model::Gnp(p) => {
            let mut edges = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
            edges
        }
        Model::HararyPlus { k, extra } => {
            if k == 0 || n <= k {
                return Err(Error::InvalidSpec(format!("Harary graph needs 1 <= k < n, got k = {k}, n = {n}")));
            }
            let mut edges = harary_edges(k, n);
            let room = n * (n - 1) / 2 - edges.len();
            for _ in 0..extra.min(room) {
                loop {
                    let a = rng.random_range(0..n);
                    let b = rng.random_range(0..n);
                    if a != b && edges.insert((a.min(b), a.max(b))) {
                        break;
                    }
                }
            }
            edges.into_iter().collect()
        }
        Model::Path => (1..n).map(|v| (v - 1, v)).collect(),
        Model::Cycle => {
            if n < 3 {
                return Err(Error::InvalidSpec("a cycle needs n >= 3".into()));
            }
            (0..n).map(|v| (v.min((v + 1) % n), v.max((v + 1) % n))).collect()
        }
        Model::Star(c) => return Ok((c + 1, (1..=c).map(|v| (0, v)).collect())),
    };
    Ok((n, edges))
}

/// Connected graph with at least one edge drawn from the spec's model,
/// vertex weights from [`gen_weights`]. `G(n, p)` samples are retried
/// until connected.
pub fn gen_connected(spec: &GenSpec) -> Result<WeightedGraph> {
    spec.validate()?;
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    for _ in 0..MAX_RETRIES {
        let (n, edges) = base_edges(spec, &mut rng)?;
        let base = WeightedGraph::new(n, &edges, &gen_weights(spec, n))?;
        if !edges.is_empty() && is_connected(&base, &base.vertices()) {
            return Ok(base);
        }
        if !matches!(spec.model, Model::Gnp(_)) {
            return Err(Error::InvalidSpec("base graph has no edges".into()));
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// Connected claw-free graph: the line graph of [`gen_connected`]'s base
/// graph, with `n` counting base vertices and weights on the base edges.
pub fn gen_clawfree(spec: &GenSpec) -> Result<WeightedGraph> {
    let base = gen_connected(spec)?;
    let (line, _) = line_graph(&base, &gen_weights(spec, base.m()))?;
    Ok(line)
}

/// `k`-connected graph on `n` vertices: Harary `H_{k,n}` plus extra edges.
pub fn gen_k_connected(spec: &GenSpec) -> Result<WeightedGraph> {
    spec.validate()?;
    if !matches!(spec.model, Model::HararyPlus { .. }) {
        return Err(Error::InvalidSpec(format!("model {} is not a k-connected family", spec.model)));
    }
    let mut rng = SplitMix64::seed_from_u64(spec.seed);
    let (n, edges) = base_edges(spec, &mut rng)?;
    WeightedGraph::new(n, &edges, &gen_weights(spec, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claw::is_claw_free;
    use crate::connectivity::vertex_connectivity_at_least;

    fn spec(seed: u64, n: usize, model: Model) -> GenSpec {
        GenSpec { seed, n, model, weights: (1, 5) }
    }

    #[test]
    fn line_graph_bases() {
        let g = gen_clawfree(&GenSpec { weights: (1, 1), ..spec(0, 3, Model::Path) }).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        let g = gen_clawfree(&spec(0, 3, Model::Cycle)).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        let g = gen_clawfree(&spec(0, 0, Model::Star(4))).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
    }

    #[test]
    fn clawfree_outputs() {
        for seed in 0..30 {
            let g = gen_clawfree(&spec(seed, 8, Model::Gnp(0.4))).unwrap();
            assert!(is_connected(&g, &g.vertices()));
            assert_eq!(is_claw_free(&g, 3), None);
            assert!(g.weights().iter().all(|w| (1..=5).contains(w)));
        }
    }

    #[test]
    fn deterministic() {
        let s = spec(42, 9, Model::Gnp(0.5));
        assert_eq!(gen_clawfree(&s).unwrap(), gen_clawfree(&s).unwrap());
        let s = spec(7, 10, Model::HararyPlus { k: 3, extra: 4 });
        assert_eq!(gen_k_connected(&s).unwrap(), gen_k_connected(&s).unwrap());
        assert_eq!(gen_weights(&s, 5), gen_weights(&s, 5));
        assert_eq!(gen_weights(&GenSpec { weights: (1, 1), ..s }, 4), vec![1; 4]);
        assert!(gen_weights(&s, 0).is_empty());
    }

    #[test]
    fn harary_shapes() {
        let g = gen_k_connected(&spec(0, 5, Model::HararyPlus { k: 2, extra: 0 })).unwrap();
        assert_eq!(g.m(), 5);
        assert!(g.vertices().iter().all(|v| g.degree(v) == 2));
        for n in 3..=12 {
            for k in 1..n.min(6) {
                for seed in 0..3 {
                    let g = gen_k_connected(&spec(seed, n, Model::HararyPlus { k, extra: seed as usize })).unwrap();
                    assert!(vertex_connectivity_at_least(&g, k), "H_({k},{n}) seed {seed}");
                }
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            gen_k_connected(&spec(0, 3, Model::HararyPlus { k: 3, extra: 0 })),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(gen_k_connected(&spec(0, 5, Model::Path)), Err(Error::InvalidSpec(_))));
        assert!(matches!(gen_clawfree(&spec(0, 5, Model::Gnp(0.0))), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            gen_clawfree(&GenSpec { weights: (3, 2), ..spec(0, 5, Model::Path) }),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn model_parsing() {
        for s in ["gnp:0.3", "harary:4:2", "path", "cycle", "star:5"] {
            assert_eq!(s.parse::<Model>().unwrap().to_string(), s);
        }
        assert_eq!("harary:3".parse::<Model>().unwrap(), Model::HararyPlus { k: 3, extra: 0 });
        assert!("tree".parse::<Model>().is_err());
        assert!("star".parse::<Model>().is_err());
    }
}
