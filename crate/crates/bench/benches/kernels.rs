use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use freediv_core::blowup::BlowupContext;
use freediv_core::divisor::{gradient, is_free_divisor, jacobian_ideal};
use freediv_core::families::{example, family1, family3, normal_crossing};
use freediv_core::groebner::Ideal;
use freediv_core::homalg::quotient_invariants;
use freediv_core::maxspread::depth_power_table;
use freediv_core::Deadline;

fn groebner(c: &mut Criterion) {
    let f = family1(6).unwrap();
    let gens = jacobian_ideal(&f).unwrap().generators().to_vec();
    c.bench_function("groebner/jacobian family1 n=6", |b| {
        b.iter(|| {
            let i = Ideal::new(f.ring(), gens.clone()).unwrap();
            black_box(i.groebner_basis(Deadline::none()).unwrap().len())
        })
    });
}

fn resolution(c: &mut Criterion) {
    let f = normal_crossing(5).unwrap();
    c.bench_function("resolution/R/J normal crossing n=5", |b| {
        b.iter(|| {
            let j = jacobian_ideal(&f).unwrap();
            black_box(quotient_invariants(&j, Deadline::none()).unwrap().projective_dimension())
        })
    });
    let g = family3(3, 3).unwrap();
    c.bench_function("freeness/family3 (3,3)", |b| b.iter(|| black_box(is_free_divisor(&g, Deadline::none()).unwrap().free)));
}

fn rees(c: &mut Criterion) {
    for (name, f) in [("sextic", example("sextic").unwrap()), ("family1 n=5", family1(5).unwrap())] {
        c.bench_function(&format!("rees/{name}"), |b| {
            b.iter(|| {
                let ctx = BlowupContext::new(gradient(&f), Deadline::none()).unwrap();
                let rees = ctx.rees_ideal(Deadline::none()).unwrap();
                black_box(ctx.fiber_from_rees(&rees, Deadline::none()).unwrap().generators().len())
            })
        });
    }
}

fn depth(c: &mut Criterion) {
    let f = example("quintic").unwrap();
    c.bench_function("depth-table/quintic m≤4", |b| b.iter(|| black_box(depth_power_table(&f, 4, Deadline::none()).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = groebner, resolution, rees, depth
}
criterion_main!(benches);
