use criterion::{criterion_group, criterion_main, Criterion};

use theta5::exact::int;
use theta5::identities::{verify_all, VariantSelection};
use theta5::numeric::{check_residues, NumericConfig};

fn catalog(c: &mut Criterion) {
    let order = int(12);
    let mut g = c.benchmark_group("verify_all");
    g.sample_size(10);
    for (name, par) in [("sequential", false), ("parallel", true)] {
        g.bench_function(name, |b| b.iter(|| verify_all(&order, par, VariantSelection::All)));
    }
    g.finish();
}

fn residues(c: &mut Criterion) {
    let cfg = NumericConfig::default();
    let mut g = c.benchmark_group("residues");
    for (name, par) in [("sequential", false), ("parallel", true)] {
        g.bench_function(name, |b| b.iter(|| check_residues(16, &cfg, par).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, catalog, residues);
criterion_main!(benches);
