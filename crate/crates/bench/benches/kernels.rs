use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use kzdyn_bench::{lowering_word, selberg_points};
use kzdyn_core::dynamical::fusion_solve;
use kzdyn_core::hyper::{phi_vector, verify_order_invariance, Flavor};
use kzdyn_core::numeric::{gauss_jacobi_unit, quad_chamber, selberg_closed, ChamberIntegral};
use kzdyn_core::rep::TensorModule;
use kzdyn_core::uea::{PbwBasis, UEAElement};

fn straightening(c: &mut Criterion) {
    let word = lowering_word(4, 2);
    c.bench_function("straighten sl4 word (cold table)", |b| {
        b.iter_batched(|| PbwBasis::standard(4), |basis| black_box(basis.raw_product(&word)), BatchSize::SmallInput)
    });
    let std = PbwBasis::standard(4);
    let special = PbwBasis::special(4, 2).unwrap();
    let elem = UEAElement::from_raw(std.clone(), std.raw_product(&lowering_word(4, 1)).into_iter().map(|(m, c)| (m, c.into())).collect());
    c.bench_function("change PBW basis sl4 standard → special h=2", |b| b.iter(|| black_box(elem.change_pbw_basis(&special).unwrap())));
}

fn exact(c: &mut Criterion) {
    c.bench_function("Shapovalov Gram sl3 ν₀=(2,2)", |b| {
        b.iter_batched(
            || TensorModule::symbolic_vermas(3, 1, PbwBasis::standard(3)).unwrap(),
            |m| black_box(m.shapovalov_gram(&[2, 2]).unwrap()),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("fusion solve sl3 depth 3", |b| b.iter(|| black_box(fusion_solve(3, 3).unwrap())));
    c.bench_function("phi vector sl3 n=2 ν₀=(1,1)", |b| b.iter(|| black_box(phi_vector(3, 2, &[1, 1], Flavor::Standard).unwrap())));
    c.bench_function("order invariance sl3 n=1 ν₀=(2,2) h=1", |b| {
        b.iter(|| black_box(verify_order_invariance(3, 1, &[2, 2], 1).unwrap()))
    });
}

fn numeric(c: &mut Criterion) {
    let pts = selberg_points();
    c.bench_function("Selberg closed form", |b| b.iter(|| pts.iter().map(|p| selberg_closed(p).unwrap().value()).sum::<f64>()));
    c.bench_function("Gauss–Jacobi rule 96 nodes", |b| b.iter(|| black_box(gauss_jacobi_unit(96, -0.4, 0.3).unwrap())));
    let ci = ChamberIntegral::selberg(&pts[1]);
    c.bench_function("chamber quadrature m=2", |b| b.iter(|| black_box(quad_chamber(&ci, 1e-6).unwrap())));
}

criterion_group!(benches, straightening, exact, numeric);
criterion_main!(benches);
