use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lrdesk::building::{self, DominancePair, FrobOperator};
use lrdesk::gerbe::{self, LocalConfig};
use lrdesk::shimura::{self, GmScenario};
use lrdesk::tate;
use lrdesk::weil::{self, CMGaloisDatum};
use lrdesk::{FiniteGroup, GModule};

fn tate_h(c: &mut Criterion) {
    let mut group = c.benchmark_group("tate_h");
    for name in ["Z/4", "(Z/2)^2", "S3"] {
        let m = GModule::regular(FiniteGroup::named(name).unwrap());
        group.bench_with_input(BenchmarkId::new("regular_h2", name), &m, |b, m| {
            b.iter(|| tate::tate_h(black_box(m), 2).unwrap())
        });
    }
    group.finish();
}

fn weil_checks(c: &mut Criterion) {
    let g = FiniteGroup::named("Z/4").unwrap();
    let d = CMGaloisDatum::new(Arc::clone(&g), 2, g.generated(&[])).unwrap();
    c.bench_function("weil_check_datum_z4", |b| b.iter(|| weil::check_datum(black_box(&d)).unwrap()));
}

fn gerbe_instance(c: &mut Criterion) {
    let inst = gerbe::generate_instance(LocalConfig::Z4Sub, 7, true).unwrap();
    c.bench_function("cocycle_instance_z4_averaged", |b| b.iter(|| gerbe::run_instance(black_box(&inst)).unwrap()));
}

fn building_kernels(c: &mut Criterion) {
    let f = FrobOperator::quaternionic(1, 3, 5, None).unwrap();
    c.bench_function("frob_power_n2", |b| b.iter(|| building::frob_power(black_box(&f), 4)));
    let perm = building::cyclic_perm(4);
    let mut group = c.benchmark_group("enumerate_xp_n2");
    group.sample_size(10);
    for depth in [1usize, 2] {
        group.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| building::enumerate_xp(&f, DominancePair::new(1, 0), &perm, d).unwrap())
        });
    }
    group.finish();
}

fn gm_model(c: &mut Criterion) {
    let s = GmScenario::new(49, 3).unwrap();
    c.bench_function("gm_double_coset_model_49_3", |b| b.iter(|| shimura::gm_double_coset_model(black_box(&s))));
}

criterion_group!(benches, tate_h, weil_checks, gerbe_instance, building_kernels, gm_model);
criterion_main!(benches);
