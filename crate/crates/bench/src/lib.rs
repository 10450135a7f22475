//! Benchmark-only crate; see `benches/kernels.rs`.
//!
//! Shared fixture builders live here so the bench harness stays terse.

use septool_core::rational::{rat, Rational};
use septool_core::series::{Series1, Series2};

/// A dense-ish bivariate series covering every total degree below `trunc`.
pub fn dense_series(vars: (&str, &str), trunc: u32, salt: i64) -> Series2 {
    let mut terms = Vec::new();
    for d in 0..trunc {
        for i in 0..=d {
            let n = (i as i64 + 1) * (d as i64 - i as i64 + 2) + salt;
            terms.push(((i, d - i), rat(n % 17 - 8, (n % 5).abs() + 1)));
        }
    }
    Series2::from_terms(vars, &terms, trunc)
}

/// The quadratic perturbation used throughout the divergence pipelines.
pub fn square_alpha(trunc: u32) -> Series1 {
    Series1::monomial("z", 2, Rational::from_integer(1.into()), trunc)
}
