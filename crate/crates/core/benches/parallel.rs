//! Sequential against rayon-parallel scheduling on the batch workloads: the
//! corpus sweep, the oracle bidegree grid and the per-degree membership scan.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reltype::blowup::{rees_ideal, relation_type};
use reltype::corpus::{run_manifest, standard_corpus, RunOptions};
use reltype::geometry;
use reltype::oracle::minimal_generator_bidegrees;
use reltype::{Config, Exec, PrimeField};

const SCHEDULES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

fn corpus(c: &mut Criterion) {
    let mut manifest = standard_corpus().unwrap();
    manifest.instances.retain(|e| e.ring.starts_with("GF"));
    let options = RunOptions::default();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    for (name, exec) in SCHEDULES {
        let config = Config { exec, ..Config::default() };
        group.bench_function(name, |b| b.iter(|| run_manifest(&manifest, &options, &config)));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let inst = geometry::monomial_algebra_gens(gf(), 2, 4).unwrap();
    let nodal = geometry::nodal_curve_instance(gf(), 3, &[2, 3, 5], &[7, 11, 13]).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (label, f) in [("veronese-2-4", &inst.generators), ("nodal-3", &nodal.generators)] {
        for (name, exec) in SCHEDULES {
            let config = Config { exec, ..Config::default() };
            group.bench_with_input(BenchmarkId::new(name, label), f, |b, f| {
                b.iter(|| minimal_generator_bidegrees(f, 8, 6, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn membership_scan(c: &mut Criterion) {
    let inst = geometry::unbounded_family_gens(gf(), 6).unwrap();
    let pres = rees_ideal(&inst.base, &inst.generators, &Config::default()).unwrap();
    let mut group = c.benchmark_group("relation_type");
    group.sample_size(20);
    for (name, exec) in SCHEDULES {
        let config = Config { exec, ..Config::default() };
        group.bench_function(name, |b| b.iter(|| relation_type(&pres, &config).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, corpus, oracle, membership_scan);
criterion_main!(benches);
