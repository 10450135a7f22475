//! Arbitrary-precision exact rational scalars.
//!
//! `Rational` (an alias for `num`'s `BigRational`) is the coefficient type
//! of every series in this crate: always reduced, denominator positive,
//! zero stored as 0/1 — `num` maintains those invariants on construction.
//! The numeric diagnostics that genuinely need floats convert explicitly
//! through [`ln_abs`] / [`to_f64`].

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p"` or `"p/q"` with arbitrary-precision parts.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| format!("invalid integer `{num_str}`"))?;
    let denom: BigInt = den_str
        .parse()
        .map_err(|_| format!("invalid integer `{den_str}`"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(numer, denom))
}

/// Render as `"p"` or `"p/q"`; this is the JSON wire format for rationals.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

/// `binomial(n, k)` as a big integer.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact square root when the argument is the square of a rational.
///
/// Returns `None` for negative input and for non-squares; never approximates.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}

/// Natural logarithm of `|r|`, robust to magnitudes far outside f64 range.
///
/// Returns `None` when `r == 0`.
pub fn ln_abs(r: &Rational) -> Option<f64> {
    if r.is_zero() {
        return None;
    }
    Some(ln_big(&r.numer().abs()) - ln_big(r.denom()))
}

fn ln_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().expect("small BigInt fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit mantissa fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Best-effort f64 conversion (diagnostics only).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range magnitude: reconstruct from logs.
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * ln_abs(r).map(f64::exp).unwrap_or(0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-2/5", "0", "7/3", "-11"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // Non-reduced input normalises.
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&rat(2, 1)), None);
        assert_eq!(exact_sqrt(&rat(-4, 1)), None);
        assert_eq!(exact_sqrt(&rat(0, 1)), Some(rat(0, 1)));
    }

    #[test]
    fn ln_abs_handles_huge_values() {
        let big = Rational::from_integer(factorial(200));
        let expected: f64 = (2..=200u32).map(|k| (k as f64).ln()).sum();
        let got = ln_abs(&big).unwrap();
        assert!((got - expected).abs() < 1e-6 * expected);
        assert!(ln_abs(&rat(0, 1)).is_none());
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
