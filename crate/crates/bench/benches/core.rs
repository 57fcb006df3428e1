use std::hint::black_box;
use std::sync::Arc;

use cclab_core::apps::product_one_count;
use cclab_core::bounds::{delta_solver, orbit_count, DELTA_A};
use cclab_core::catalog::table_str;
use cclab_core::real::rat;
use cclab_core::{build_table, enumerate, CharacterTable, Classes, GroupSpec, Psi, WeilModel};
use criterion::{criterion_group, criterion_main, Criterion};

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    for s in ["SL(2,5)", "GL(2,3)", "Sp(4,2)", "SO+(4,3)"] {
        let grp = enumerate(&s.parse::<GroupSpec>().unwrap()).unwrap();
        g.bench_function(format!("classes {s}"), |b| b.iter(|| Classes::new(black_box(grp.clone()))));
        g.bench_function(format!("table {s}"), |b| b.iter(|| build_table(black_box(grp.clone())).unwrap()));
    }
    g.finish();
}

fn counting(c: &mut Criterion) {
    let sl25: Arc<CharacterTable> = table_str("SL(2,5)").unwrap();
    c.bench_function("product-one SL(2,5) 4 classes", |b| b.iter(|| product_one_count(&sl25, black_box(&[6, 6, 7, 8])).unwrap()));
    let sp43 = table_str("Sp(4,3)").unwrap();
    c.bench_function("orbit count Sp(4,3) j=3", |b| b.iter(|| orbit_count(sp43.classes(), black_box(3))));
    c.bench_function("delta solver gamma=0.99", |b| b.iter(|| delta_solver(black_box(&rat(99, 100)), DELTA_A).unwrap()));
}

fn weil(c: &mut Criterion) {
    let g = enumerate(&GroupSpec::sp(4, 3)).unwrap();
    let m = WeilModel::new(g.field().clone(), 2, Psi::Standard).unwrap();
    let x = g.mat(g.order() as u32 / 3);
    c.bench_function("weil trace Sp(4,3)", |b| b.iter(|| m.trace(black_box(&x)).unwrap()));
    c.bench_function("weil operator Sp(4,3)", |b| b.iter(|| m.operator(black_box(&x)).unwrap()));
}

criterion_group!(benches, tables, counting, weil);
criterion_main!(benches);
