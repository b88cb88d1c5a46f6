use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use simplexkit::{apollonius, enclosing, metrics};
use simplexkit_bench::{point_cloud, simplices};
use std::hint::black_box;

fn medians(c: &mut Criterion) {
    let mut group = c.benchmark_group("median_sums");
    for m in [2, 4, 8] {
        let corpus = simplices(1, 64, m, m + 2);
        group.bench_with_input(BenchmarkId::from_parameter(m), &corpus, |b, corpus| {
            b.iter(|| {
                for s in corpus {
                    black_box(apollonius::median_sums(s).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn exact_meb(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_meb");
    for n in [2, 3, 6] {
        let cloud = point_cloud(2, 2000, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &cloud, |b, cloud| {
            b.iter(|| black_box(enclosing::exact_meb(cloud).unwrap()))
        });
    }
    group.finish();
}

fn inradius(c: &mut Criterion) {
    let mut group = c.benchmark_group("barycentric_inradius");
    for m in [2, 4, 6] {
        let corpus = simplices(3, 32, m, m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &corpus, |b, corpus| {
            b.iter(|| {
                for s in corpus {
                    black_box(metrics::barycentric_inradius(s));
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, medians, exact_meb, inradius);
criterion_main!(benches);
