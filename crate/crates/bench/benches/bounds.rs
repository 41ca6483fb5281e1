use std::hint::black_box;

use acmac_core::channels::{binary_additive, mod_channel};
use acmac_core::gaussian::{gaussian_inner, GaussianSpec};
use acmac_core::{
    inner_point, outer_point, q_n_point, run_experiment, search_inner, Cognition, DelaySet,
    InnerParams, NLetterLaw, Pmf, SearchConfig, SimConfig,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn points(c: &mut Criterion) {
    let ch = mod_channel();
    let mut group = c.benchmark_group("point");
    for d_max in [0, 1, 2] {
        let ds = DelaySet::new(0, d_max);
        let params = InnerParams::independent(ds, Pmf::uniform(2), Pmf::uniform(4)).unwrap();
        let ext = params.product_extension(ds).unwrap();
        group.bench_with_input(BenchmarkId::new("inner", ds.size()), &params, |b, p| {
            b.iter(|| inner_point(&ch, ds, black_box(p)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("outer", ds.size()), &ext, |b, p| {
            b.iter(|| outer_point(&ch, ds, black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let ch = binary_additive(0.11).unwrap();
    let ds = DelaySet::new(0, 1);
    let cfg = SearchConfig::default();
    c.bench_function("search inner, binary additive D=2", |b| {
        b.iter(|| search_inner(&ch, ds, &cfg, Cognition::Message, &[]).unwrap())
    });
    let spec = GaussianSpec::new(0.5, 1.0, 1.0).unwrap();
    c.bench_function("gaussian inner 101x51", |b| {
        b.iter(|| gaussian_inner(&spec, 101, 51).unwrap())
    });
}

fn multiletter(c: &mut Criterion) {
    let ch = binary_additive(0.11).unwrap();
    let ds = DelaySet::new(0, 1);
    let params = InnerParams::independent(ds, Pmf::uniform(2), Pmf::uniform(2)).unwrap();
    let mut group = c.benchmark_group("q_n");
    group.sample_size(10);
    for n in [4, 6, 8] {
        let law = NLetterLaw::Iid {
            n,
            params: params.clone(),
        };
        group.bench_with_input(BenchmarkId::from_parameter(n), &law, |b, law| {
            b.iter(|| q_n_point(&ch, ds, law).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let ch = binary_additive(0.0).unwrap();
    let ds = DelaySet::new(0, 1);
    let params =
        InnerParams::independent(ds, Pmf::uniform(2), Pmf::new(vec![0.89, 0.11]).unwrap()).unwrap();
    let mut group = c.benchmark_group("simulate 200 trials");
    group.sample_size(10);
    for n in [64, 256] {
        let cfg = SimConfig::new(n, 0.4, 0.4, 0.3, 200, 0);
        group.bench_with_input(BenchmarkId::from_parameter(n), &cfg, |b, cfg| {
            b.iter(|| run_experiment(&ch, ds, cfg, &params).unwrap())
        });
    }
    // small rates switch to stored codebooks
    let cfg = SimConfig::new(64, 0.05, 0.05, 0.3, 200, 0);
    group.bench_function("exhaustive n=64", |b| {
        b.iter(|| run_experiment(&ch, ds, &cfg, &params).unwrap())
    });
    group.finish();
}

criterion_group!(benches, points, searches, multiletter, simulation);
criterion_main!(benches);
