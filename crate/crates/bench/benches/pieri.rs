use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use schubert_core::{
    enumerate_group, monk_recursion_expand, pieri_expand, solve_expand, xi_value, Permutation,
    XiTable,
};

fn products(c: &mut Criterion) {
    let w = Permutation::parse("s4 s3 s5 s4", 7).unwrap();
    c.bench_function("pieri_expand n=7 c[4,2]", |b| {
        b.iter(|| pieri_expand(4, 2, &w).unwrap())
    });
    c.bench_function("monk_recursion n=7 c[4,2]", |b| {
        b.iter(|| monk_recursion_expand(4, 2, &w).unwrap())
    });

    let mut group = c.benchmark_group("three routes on S5");
    let w5 = Permutation::parse("s2 s3 s1", 5).unwrap();
    // warm the shared localization table so the solve timing excludes it
    XiTable::shared(5);
    for (k, m) in [(2, 1), (3, 2), (4, 2), (4, 4)] {
        let id = format!("c[{k},{m}]");
        group.bench_with_input(BenchmarkId::new("closed", &id), &(k, m), |b, &(k, m)| {
            b.iter(|| pieri_expand(k, m, &w5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("recursion", &id), &(k, m), |b, &(k, m)| {
            b.iter(|| monk_recursion_expand(k, m, &w5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("solve", &id), &(k, m), |b, &(k, m)| {
            b.iter(|| solve_expand(k, m, &w5).unwrap())
        });
    }
    group.finish();
}

fn localization(c: &mut Criterion) {
    let group = enumerate_group(5);
    c.bench_function("billey all pairs S5", |b| {
        b.iter(|| {
            for v in &group {
                for w in &group {
                    xi_value(v, w).unwrap();
                }
            }
        })
    });
    let w0 = group.last().unwrap().clone();
    let v = Permutation::parse("s1 s2 s3 s4 s1 s2", 5).unwrap();
    c.bench_function("billey single S5", |b| {
        b.iter(|| xi_value(&v, &w0).unwrap())
    });
    c.bench_function("table build S4", |b| b.iter(|| XiTable::new(4)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = products, localization
}
criterion_main!(benches);
