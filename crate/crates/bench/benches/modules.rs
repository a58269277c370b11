use auslander_core::algebra::ext_dim;
use auslander_core::tilt::{is_tilting, tilting_by_tensor};
use auslander_core::{build_algebra, TiltingModules};
use criterion::{criterion_group, criterion_main, Criterion};

fn mutation(c: &mut Criterion) {
    let mut group = c.benchmark_group("module layer");
    group.sample_size(10);
    group.bench_function("TiltingModules n = 4", |b| b.iter(|| TiltingModules::build(4).unwrap()));
    let mods = TiltingModules::build(4).unwrap();
    let alg = build_algebra(4).unwrap();
    let x = mods.poset.nodes()[100].clone();
    group.bench_function("tensor route, one object n = 4", |b| b.iter(|| tilting_by_tensor(&alg, &x).unwrap()));
    group.bench_function("is_tilting, one object n = 4", |b| b.iter(|| is_tilting(&mods.objects[100]).unwrap()));
    let (m, k) = (mods.objects[150].slot(2).clone(), mods.objects[40].slot(3).clone());
    group.bench_function("Ext^1 between slots n = 4", |b| b.iter(|| ext_dim(&m, &k, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, mutation);
criterion_main!(benches);
