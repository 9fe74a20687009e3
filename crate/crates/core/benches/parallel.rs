use std::hint::black_box;
use std::sync::Arc;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dashu_ratio::RBig;
use galelab::circuit::Census;
use galelab::dimension::{estimate_dimension, EstimateConfig, FrequencyFamily};
use galelab::gale::suite::{run_property_suite, SuiteConfig};
use galelab::source::{Periodic, Source};
use galelab::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census n=3 t=4");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(Census::build(3, 4, exec).unwrap().novel_count(4).unwrap()))
        });
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("property suite 20 tables");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let cfg = SuiteConfig { tables: 20, exec, ..SuiteConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(run_property_suite(&cfg).unwrap().clean()))
        });
    }
    group.finish();
}

fn grid_estimate(c: &mut Criterion) {
    let mut group = c.benchmark_group("frequency grid estimate");
    group.sample_size(10);
    let fam = FrequencyFamily::new(RBig::from_parts(1.into(), 4u8.into())).unwrap();
    let src: Source = Arc::new(Periodic::new("0001".parse().unwrap()).unwrap());
    for (name, exec) in STRATEGIES {
        let cfg = EstimateConfig { depth: 3000, exec, ..EstimateConfig::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(estimate_dimension(&fam, std::slice::from_ref(&src), &cfg).unwrap().lower))
        });
    }
    group.finish();
}

criterion_group!(benches, census, suite, grid_estimate);
criterion_main!(benches);
