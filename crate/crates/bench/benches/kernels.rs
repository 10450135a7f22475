use criterion::{criterion_group, criterion_main, Criterion};

use septool_bench::{dense_series, square_alpha};
use septool_core::blowup::{descend_quartic_to_saddle_node, double_blowup_quartic};
use septool_core::divergence::elizarov_derivative;
use septool_core::gallery;
use septool_core::index::winding_index;
use septool_core::rational::{rat, Rational};
use septool_core::separatrix::{graph_separatrix, GraphAxis};
use septool_core::series::Series1;

fn series_kernels(c: &mut Criterion) {
    let a = dense_series(("x", "y"), 24, 1);
    let b = dense_series(("x", "y"), 24, 7);
    c.bench_function("series2_mul_trunc24", |bench| {
        bench.iter(|| a.mul(&b).unwrap())
    });
    let unit = {
        let one = septool_core::series::Series2::one(("x", "y"), 24);
        one.add(&dense_series(("x", "y"), 24, 3).mul(&a).unwrap())
            .unwrap()
    };
    c.bench_function("series2_invert_unit_trunc24", |bench| {
        bench.iter(|| unit.invert_unit().unwrap())
    });
}

fn blowup_kernels(c: &mut Criterion) {
    let a = Series1::monomial("x", 2, Rational::from_integer(1.into()), 40);
    c.bench_function("double_blowup_quartic_n16", |bench| {
        bench.iter(|| double_blowup_quartic(&a, 16).unwrap())
    });
    let alpha = square_alpha(40);
    c.bench_function("full_descent_to_saddle_node_n16", |bench| {
        bench.iter(|| descend_quartic_to_saddle_node(&alpha, 16).unwrap())
    });
}

fn separatrix_kernels(c: &mut Criterion) {
    let euler = gallery::euler_field(26);
    c.bench_function("weak_graph_euler_n24", |bench| {
        bench.iter(|| graph_separatrix(&euler, GraphAxis::YOverX, 24).unwrap())
    });
    let alpha = square_alpha(40);
    let xi = gallery::ramified_saddle_node(&alpha.scale(&rat(1, 10)), 34).unwrap();
    c.bench_function("weak_graph_ramified_n30", |bench| {
        bench.iter(|| graph_separatrix(&xi, GraphAxis::YOverX, 30).unwrap())
    });
}

fn index_kernels(c: &mut Criterion) {
    let center = gallery::center(10);
    let tol = Rational::from_integer(0.into());
    c.bench_function("winding_center_r_half", |bench| {
        bench.iter(|| winding_index(&center, &rat(1, 2), &tol).unwrap())
    });
    let a = Series1::zero("x", 16);
    let quartic = gallery::quartic_family(&a, 14).unwrap();
    c.bench_function("winding_quartic_base_r_quarter", |bench| {
        bench.iter(|| winding_index(&quartic, &rat(1, 4), &tol).unwrap())
    });
}

fn divergence_kernels(c: &mut Criterion) {
    let alpha = square_alpha(50);
    c.bench_function("first_variation_sum_n40", |bench| {
        bench.iter(|| elizarov_derivative(&alpha, 40).unwrap())
    });
}

criterion_group!(
    benches,
    series_kernels,
    blowup_kernels,
    separatrix_kernels,
    index_kernels,
    divergence_kernels
);
criterion_main!(benches);
