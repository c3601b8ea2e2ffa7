//! Running one algorithm over many independent instances.
//!
//! Runs share the input graphs read-only and keep all algorithm state
//! local, so instances can be processed on a rayon pool. Without the
//! `parallel` feature, [`Execution::Parallel`] degrades to a sequential
//! loop. Results come back in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run in parallel.
    pub fn is_parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// `f` applied to every item, in input order.
pub fn map<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel => items.iter().map(f).collect(),
    }
}

/// `f(i)` for `i` in `0..count`, in order. Handy for seeded corpora.
pub fn map_indices<R, F>(count: usize, exec: Execution, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        Execution::Parallel => (0..count).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bcp::min_max_bcp;
    use crate::gen::{gen_clawfree, GenSpec, Model};

    #[test]
    fn modes_agree() {
        let graphs: Vec<_> = (0..24)
            .map(|seed| {
                gen_clawfree(&GenSpec { seed, n: 9, model: Model::Gnp(0.4), weights: (1, 5) }).unwrap()
            })
            .collect();
        let run = |exec| map(&graphs, exec, |g| min_max_bcp(g, 3.min(g.n()), 3).map(|s| s.objective));
        assert_eq!(run(Execution::Sequential), run(Execution::Parallel));
        assert_eq!(
            map_indices(10, Execution::Parallel, |i| i * i),
            map_indices(10, Execution::Sequential, |i| i * i)
        );
    }
}
