#![allow(dead_code)] // each test binary uses a subset of these helpers

//! Shared helpers for the integration suites: seeded random generators for
//! series and fields, and the dense-sampling float winding oracle kept
//! deliberately independent of the certified implementation.

use num::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use septool_core::rational::{rat, Rational};
use septool_core::series::{Series1, Series2};
use septool_core::PlanarField;

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=9);
    rat(num, den)
}

pub fn random_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Sparse random bivariate series with terms of total degree `<= max_deg`.
pub fn random_series2(
    rng: &mut ChaCha8Rng,
    vars: (&str, &str),
    max_deg: u32,
    terms: usize,
    trunc: u32,
) -> Series2 {
    let mut entries = Vec::new();
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        let i = rng.gen_range(0..=d);
        entries.push(((i, d - i), random_rational(rng)));
    }
    Series2::from_terms(vars, &entries, trunc)
}

/// Random polynomial field with terms of degree 1..=2 and no constant part.
pub fn random_quadratic_field(rng: &mut ChaCha8Rng, trunc: u32) -> PlanarField {
    let vars = ("x", "y");
    let mut comp = || {
        let mut entries = Vec::new();
        for _ in 0..4 {
            let d = rng.gen_range(1..=2u32);
            let i = rng.gen_range(0..=d);
            entries.push(((i, d - i), random_rational(rng)));
        }
        Series2::from_terms(vars, &entries, trunc)
    };
    loop {
        let f = PlanarField::new(comp(), comp()).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random admissible parameter series: `a(0) = a'(0) = 0`.
pub fn random_admissible_parameter(rng: &mut ChaCha8Rng, trunc: u32) -> Series1 {
    let mut entries = Vec::new();
    for d in 2..=6u32 {
        if rng.gen_bool(0.7) {
            entries.push((d, random_rational(rng)));
        }
    }
    Series1::from_terms("x", &entries, trunc)
}

fn eval_f64(s: &Series2, x: f64, y: f64) -> f64 {
    let mut acc = 0.0;
    for ((i, j), c) in s.terms() {
        let cf = c.to_f64().unwrap_or(0.0);
        acc += cf * x.powi(i as i32) * y.powi(j as i32);
    }
    acc
}

/// Brute-force winding number by dense uniform sampling and `atan2`
/// accumulation. Float-based and oblivious to certificates: an oracle for
/// the exact engine, not a replacement.
pub fn dense_winding_oracle(f: &PlanarField, radius: f64, samples: usize) -> i64 {
    let mut total = 0.0f64;
    let mut prev: Option<f64> = None;
    let mut first = 0.0;
    for k in 0..=samples {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (samples as f64);
        let (x, y) = (radius * theta.cos(), radius * theta.sin());
        let vx = eval_f64(f.x_comp(), x, y);
        let vy = eval_f64(f.y_comp(), x, y);
        let angle = vy.atan2(vx);
        if let Some(p) = prev {
            let mut d = angle - p;
            while d > std::f64::consts::PI {
                d -= 2.0 * std::f64::consts::PI;
            }
            while d < -std::f64::consts::PI {
                d += 2.0 * std::f64::consts::PI;
            }
            total += d;
        } else {
            first = angle;
        }
        prev = Some(angle);
    }
    let _ = first;
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}
