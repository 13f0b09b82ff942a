use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use metcalfe_core::emst::emst_length;
use metcalfe_core::random::{session_rng, RadialTable, DEFAULT_GRID_POINTS};
use metcalfe_core::synthesis::SessionSampler;
use metcalfe_core::traffic::simulate_replicate;
use metcalfe_core::{emst_kruskal, emst_prim, generate_network, ExponentParams, LambdaClass, SimConfig, TorusDomain};

fn emst(c: &mut Criterion) {
    let mut g = c.benchmark_group("emst");
    for m in [100usize, 1000, 4000] {
        let net = generate_network(m, 7).unwrap();
        g.bench_with_input(BenchmarkId::new("prim_length", m), &net, |b, net| {
            b.iter(|| emst_length(black_box(&net.nodes), &net.domain).unwrap())
        });
        if m <= 1000 {
            g.bench_with_input(BenchmarkId::new("prim_edges", m), &net, |b, net| {
                b.iter(|| emst_prim(black_box(&net.nodes), &net.domain).unwrap())
            });
            g.bench_with_input(BenchmarkId::new("kruskal", m), &net, |b, net| {
                b.iter(|| emst_kruskal(black_box(&net.nodes), &net.domain).unwrap())
            });
        }
    }
    g.finish();
}

fn nearest(c: &mut Criterion) {
    let net = generate_network(16_384, 3).unwrap();
    let probes = generate_network(16_384, 4).unwrap();
    let probes: Vec<_> = probes.nodes.iter().map(|p| net.domain.point(p.x, p.y)).collect();
    c.bench_function("nearest_node_16k", |b| {
        b.iter(|| probes.iter().map(|&p| net.nearest(black_box(p))).sum::<usize>())
    });
}

fn radial_table(c: &mut Criterion) {
    let dom = TorusDomain::for_nodes(4096).unwrap();
    c.bench_function("radial_table_build", |b| {
        b.iter(|| RadialTable::build(black_box(2.5), &dom, DEFAULT_GRID_POINTS).unwrap())
    });
}

fn sessions(c: &mut Criterion) {
    let net = generate_network(4096, 9).unwrap();
    let params = ExponentParams::new(0.5, 0.5, 0.5).unwrap();
    let sampler = SessionSampler::for_network(&net, &params).unwrap();
    c.bench_function("session_sample_4096", |b| {
        let mut k = 0usize;
        b.iter(|| {
            k = (k + 1) % net.len();
            sampler.sample(&net, k, &mut session_rng(1, k))
        })
    });
}

fn replicate(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulate");
    g.sample_size(10);
    for (name, i, s, d) in [("sarnoff", 0.0, 3.0, 3.0), ("metcalfe", 0.5, 0.5, 0.5)] {
        let cfg = SimConfig::new(1024, ExponentParams::new(i, s, d).unwrap(), LambdaClass::Const);
        g.bench_function(BenchmarkId::new(name, 1024), |b| b.iter(|| simulate_replicate(&cfg, 0).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, emst, nearest, radial_table, sessions, replicate);
criterion_main!(benches);
