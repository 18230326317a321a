use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ftri_core::{Budget, NCLattice, ReflectionRep, RootSystemSpec, TriangleMemo};

fn spec(s: &str) -> RootSystemSpec {
    s.parse().unwrap()
}

fn f_triangles(c: &mut Criterion) {
    let e8 = spec("E8");
    c.bench_function("f_triangle E8 cold", |b| {
        b.iter(|| TriangleMemo::new().f_triangle(black_box(&e8)).unwrap())
    });
    let a8 = spec("A8");
    c.bench_function("f_triangle A8 cold", |b| {
        b.iter(|| TriangleMemo::new().f_triangle(black_box(&a8)).unwrap())
    });
}

fn lattices(c: &mut Criterion) {
    let mut group = c.benchmark_group("nc_lattice");
    group.sample_size(10);
    for s in ["A4", "D5", "E6"] {
        let sp = spec(s);
        group.bench_function(s, |b| {
            b.iter(|| NCLattice::for_spec(black_box(&sp), None, &Budget::unlimited()).unwrap())
        });
    }
    group.finish();
}

fn absolute_length(c: &mut Criterion) {
    let rep = ReflectionRep::new(&spec("E6"));
    let c6 = rep.default_coxeter_element();
    c.bench_function("abs_length E6 Coxeter element", |b| b.iter(|| rep.abs_length(black_box(&c6))));
}

criterion_group!(benches, f_triangles, lattices, absolute_length);
criterion_main!(benches);
