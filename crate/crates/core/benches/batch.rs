use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use connpart::batch::{map, Execution};
use connpart::bcp::{max_min_bcp, min_max_bcp};
use connpart::gen::{gen_clawfree, gen_k_connected, GenSpec, Model};
use connpart::gl::{balanced_kconnected, GlOptions};
use connpart::graph::WeightedGraph;

const MODES: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

fn clawfree_corpus(count: u64, n: usize) -> Vec<WeightedGraph> {
    (0..count)
        .map(|seed| {
            let spec = GenSpec { seed, n, model: Model::Gnp(4.0 / n as f64), weights: (1, 20) };
            gen_clawfree(&spec).expect("generator succeeds")
        })
        .collect()
}

fn kconnected_corpus(count: u64, n: usize, k: usize) -> Vec<WeightedGraph> {
    (0..count)
        .map(|seed| {
            let spec = GenSpec { seed, n, model: Model::HararyPlus { k, extra: n / 2 }, weights: (1, 5) };
            gen_k_connected(&spec).expect("valid spec")
        })
        .collect()
}

fn bcp(c: &mut Criterion) {
    let graphs = clawfree_corpus(64, 60);
    let mut group = c.benchmark_group("bcp");
    for exec in MODES {
        group.bench_with_input(BenchmarkId::new("min-max", format!("{exec:?}")), &graphs, |b, gs| {
            b.iter(|| map(gs, exec, |g| min_max_bcp(black_box(g), 4, 3).map(|s| s.objective)))
        });
        group.bench_with_input(BenchmarkId::new("max-min", format!("{exec:?}")), &graphs, |b, gs| {
            b.iter(|| map(gs, exec, |g| max_min_bcp(black_box(g), 4, 3).map(|s| s.objective)))
        });
    }
    group.finish();
}

fn gl(c: &mut Criterion) {
    let graphs = kconnected_corpus(32, 40, 4);
    let mut group = c.benchmark_group("gl-balanced");
    for exec in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &graphs, |b, gs| {
            b.iter(|| map(gs, exec, |g| balanced_kconnected(black_box(g), 4, GlOptions::default()).map(|(p, _)| p.len())))
        });
    }
    group.finish();
}

criterion_group!(benches, bcp, gl);
criterion_main!(benches);
