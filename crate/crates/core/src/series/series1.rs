//! Univariate truncated power series.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::{check_var, SeriesError};
use crate::rational::{format_rational, Rational};

/// A truncated formal power series in one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series1 {
    var: String,
    coeffs: BTreeMap<u32, Rational>,
    trunc: u32,
    exact: bool,
}

impl Series1 {
    pub fn zero(var: &str, trunc: u32) -> Self {
        Series1 {
            var: var.to_string(),
            coeffs: BTreeMap::new(),
            trunc: trunc.max(1),
            exact: true,
        }
    }

    pub fn one(var: &str, trunc: u32) -> Self {
        Self::monomial(var, 0, Rational::one(), trunc)
    }

    pub fn monomial(var: &str, exp: u32, coeff: Rational, trunc: u32) -> Self {
        let mut s = Self::zero(var, trunc);
        if !coeff.is_zero() {
            if exp < s.trunc {
                s.coeffs.insert(exp, coeff);
            } else {
                s.exact = false;
            }
        }
        s
    }

    /// Series from a dense coefficient list starting at degree 0.
    ///
    /// The list is taken as a polynomial: the tail beyond it is known zero.
    pub fn from_coeffs(var: &str, coeffs: &[Rational], trunc: u32) -> Self {
        let mut s = Self::zero(var, trunc);
        for (n, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if (n as u32) < s.trunc {
                s.coeffs.insert(n as u32, c.clone());
            } else {
                s.exact = false;
            }
        }
        s
    }

    pub fn from_terms(var: &str, terms: &[(u32, Rational)], trunc: u32) -> Self {
        let mut s = Self::zero(var, trunc);
        for (n, c) in terms {
            if c.is_zero() {
                continue;
            }
            if *n < s.trunc {
                let e = s.coeffs.entry(*n).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    s.coeffs.remove(n);
                }
            } else {
                s.exact = false;
            }
        }
        s
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// True when the stored jet is the whole object (tail known zero).
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub(crate) fn mark_inexact(&mut self) {
        self.exact = false;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: u32) -> Rational {
        self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    /// Order of vanishing of the stored jet; `None` for a zero jet.
    pub fn ord(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Largest stored exponent.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn rename_var(&self, var: &str) -> Series1 {
        let mut s = self.clone();
        s.var = var.to_string();
        s
    }

    /// Widen the window of an exact series (its tail is known zero);
    /// no-op for truncated series and for smaller targets.
    pub fn pad_to(&self, trunc: u32) -> Series1 {
        let mut s = self.clone();
        if s.exact && trunc > s.trunc {
            s.trunc = trunc;
        }
        s
    }

    pub fn truncate_to(&self, trunc: u32) -> Series1 {
        let trunc = trunc.max(1);
        if trunc >= self.trunc {
            return self.clone();
        }
        let mut dropped = false;
        let coeffs: BTreeMap<u32, Rational> = self
            .coeffs
            .iter()
            .filter(|(n, _)| {
                if **n < trunc {
                    true
                } else {
                    dropped = true;
                    false
                }
            })
            .map(|(n, c)| (*n, c.clone()))
            .collect();
        Series1 {
            var: self.var.clone(),
            coeffs,
            trunc,
            exact: self.exact && !dropped,
        }
    }

    pub fn neg(&self) -> Series1 {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn scale(&self, k: &Rational) -> Series1 {
        if k.is_zero() {
            let mut z = Self::zero(&self.var, self.trunc);
            z.exact = self.exact;
            return z;
        }
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c *= k;
        }
        s
    }

    pub fn add(&self, other: &Series1) -> Result<Series1, SeriesError> {
        check_var(&self.var, &other.var)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Series1::zero(&self.var, trunc);
        out.exact = self.exact && other.exact;
        for (n, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if *n >= trunc {
                out.exact = false;
                continue;
            }
            let e = out.coeffs.entry(*n).or_insert_with(Rational::zero);
            *e += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Series1) -> Result<Series1, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series1) -> Result<Series1, SeriesError> {
        check_var(&self.var, &other.var)?;
        let trunc = self.trunc.min(other.trunc);
        let both_exact = self.exact && other.exact;
        let mut kept: BTreeMap<u32, Rational> = BTreeMap::new();
        let mut dropped: BTreeMap<u32, Rational> = BTreeMap::new();
        for (n1, c1) in &self.coeffs {
            for (n2, c2) in &other.coeffs {
                let n = n1 + n2;
                if n < trunc {
                    let e = kept.entry(n).or_insert_with(Rational::zero);
                    *e += c1 * c2;
                } else if both_exact {
                    let e = dropped.entry(n).or_insert_with(Rational::zero);
                    *e += c1 * c2;
                }
                // Inexact operands: terms beyond trunc are unknown anyway.
            }
        }
        kept.retain(|_, c| !c.is_zero());
        let exact = both_exact && dropped.values().all(|c| c.is_zero());
        Ok(Series1 {
            var: self.var.clone(),
            coeffs: kept,
            trunc,
            exact,
        })
    }

    /// Multiplicative inverse of a unit, exact up to the truncation order.
    pub fn invert_unit(&self) -> Result<Series1, SeriesError> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let inv0 = Rational::one() / &c0;
        let mut out = Series1::monomial(&self.var, 0, inv0.clone(), self.trunc);
        // v_n = -1/c0 * sum_{k=1..n} u_k v_{n-k}
        for n in 1..self.trunc {
            let mut acc = Rational::zero();
            for (k, u) in self.coeffs.range(1..=n) {
                let v = match out.coeffs.get(&(n - k)) {
                    Some(v) => v,
                    None => continue,
                };
                acc += u * v;
            }
            if !acc.is_zero() {
                out.coeffs.insert(n, -acc * &inv0);
            }
        }
        // A constant has a constant inverse; anything else expands forever.
        out.exact = self.exact && self.coeffs.len() == 1 && self.coeffs.contains_key(&0);
        Ok(out)
    }

    /// Exact quotient `self / other`.
    ///
    /// Univariate divisibility up to truncation amounts to an order check:
    /// `other = t^d * unit`, so the quotient exists iff `ord(self) >= d`.
    /// The result is truncated to `min(truncs) - d`.
    pub fn divide_exact(&self, other: &Series1) -> Result<Series1, SeriesError> {
        check_var(&self.var, &other.var)?;
        let d = match other.ord() {
            Some(d) => d,
            None => {
                return Err(SeriesError::NotDivisible(
                    "division by zero series".to_string(),
                ))
            }
        };
        let trunc = self.trunc.min(other.trunc);
        // An exact zero dividend divides to an exact zero; otherwise the
        // quotient window trunc - d must be nonempty.
        if trunc <= d && !(self.is_zero() && self.exact) {
            return Err(SeriesError::TruncationTooSmall(format!(
                "quotient window is empty (trunc {trunc}, divisor order {d})"
            )));
        }
        let out_trunc = trunc.saturating_sub(d).max(1);
        if self.is_zero() {
            let mut z = Series1::zero(&self.var, out_trunc);
            z.exact = self.exact && other.exact;
            return Ok(z);
        }
        if self.ord().unwrap() < d {
            return Err(SeriesError::NotDivisible(format!(
                "order {} term is not divisible by {}^{}",
                self.ord().unwrap(),
                self.var,
                d
            )));
        }
        let shifted_self = self.shift_down(d).truncate_to(out_trunc);
        let shifted_other = other.shift_down(d).truncate_to(out_trunc);
        let mut q = shifted_self.mul(&shifted_other.invert_unit()?)?;
        if self.exact && other.exact {
            // Quotient is exact iff it multiplies back to the dividend.
            let back = poly_mul_unbounded(&q, other);
            q.exact = poly_eq_unbounded(&back, self);
        } else {
            q.exact = false;
        }
        Ok(q)
    }

    fn shift_down(&self, d: u32) -> Series1 {
        debug_assert!(self.coeffs.keys().all(|n| *n >= d));
        Series1 {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, c)| (n - d, c.clone()))
                .collect(),
            trunc: self.trunc.saturating_sub(d).max(1),
            exact: self.exact,
        }
    }

    /// Multiply by `var^d` (never loses terms below the truncation).
    pub fn shift_up(&self, d: u32) -> Series1 {
        let trunc = self.trunc.saturating_add(d);
        let mut out = Series1::zero(&self.var, trunc);
        out.exact = self.exact;
        for (n, c) in &self.coeffs {
            out.coeffs.insert(n + d, c.clone());
        }
        out
    }

    /// Composition `self(inner)`, requiring `inner(0) = 0`.
    ///
    /// The result is valid to `min(inner.trunc, self.trunc * ord(inner))`:
    /// the outer unknown tail enters at degree `trunc * ord(inner)`, the
    /// inner tail at `inner.trunc`. An exact outer polynomial has no tail,
    /// so only the inner window applies.
    pub fn compose(&self, inner: &Series1) -> Result<Series1, SeriesError> {
        if !inner.coeff(0).is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let d = inner.ord().unwrap_or(inner.trunc).max(1);
        let out_trunc = if self.exact {
            inner.trunc
        } else {
            inner.trunc.min(self.trunc.saturating_mul(d)).max(1)
        };
        let mut out = Series1::zero(inner.var(), out_trunc);
        out.exact = self.exact && inner.exact;
        let mut power = Series1::one(inner.var(), out_trunc);
        let mut next_exp = 0u32;
        for (n, c) in &self.coeffs {
            while next_exp < *n {
                power = power.mul(&inner.truncate_to(out_trunc))?;
                next_exp += 1;
                if power.is_zero() {
                    break;
                }
            }
            if next_exp < *n {
                break; // inner^n vanished below the truncation
            }
            out = out.add(&power.scale(c))?;
        }
        Ok(out)
    }

    /// Formal derivative. The known window shrinks by one for a truncated
    /// series; an exact polynomial keeps its window.
    pub fn derive(&self) -> Series1 {
        let trunc = if self.exact {
            self.trunc
        } else {
            self.trunc.saturating_sub(1).max(1)
        };
        let mut out = Series1::zero(&self.var, trunc);
        out.exact = self.exact;
        for (n, c) in &self.coeffs {
            if *n == 0 {
                continue;
            }
            if n - 1 < trunc {
                out.coeffs
                    .insert(n - 1, c * Rational::from_integer((*n).into()));
            }
        }
        out
    }

    /// Evaluate the stored jet as a polynomial at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        // Horner over the sparse exponents, highest first.
        let mut prev_exp: Option<u32> = None;
        for (n, c) in self.coeffs.iter().rev() {
            match prev_exp {
                None => acc = c.clone(),
                Some(p) => {
                    acc = acc * pow_rat(x, p - n) + c;
                }
            }
            prev_exp = Some(*n);
        }
        match prev_exp {
            None => Rational::zero(),
            Some(n) => acc * pow_rat(x, n),
        }
    }

    /// Count of nonzero coefficients with exponent in `[lo, hi]`.
    pub fn nonzero_in(&self, lo: u32, hi: u32) -> usize {
        self.coeffs.range(lo..=hi).count()
    }

    /// Same stored coefficients and variable (ignores truncation bookkeeping
    /// and exactness). The right notion for golden-value comparisons.
    pub fn jet_eq(&self, other: &Series1) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}

pub(crate) fn pow_rat(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        n >>= 1;
    }
    acc
}

/// Full polynomial product of the stored jets, ignoring truncation.
fn poly_mul_unbounded(a: &Series1, b: &Series1) -> BTreeMap<u32, Rational> {
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    for (n1, c1) in &a.coeffs {
        for (n2, c2) in &b.coeffs {
            let e = out.entry(n1 + n2).or_insert_with(Rational::zero);
            *e += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_eq_unbounded(a: &BTreeMap<u32, Rational>, b: &Series1) -> bool {
    a.len() == b.coeffs.len() && a.iter().all(|(n, c)| b.coeffs.get(n) == Some(c))
}

impl fmt::Display for Series1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (n, c)) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                if *n == 0 {
                    write!(f, "{}", format_rational(c))?;
                } else if c.is_one() {
                    write!(f, "{}^{}", self.var, n)?;
                } else {
                    write!(f, "{}*{}^{}", format_rational(c), self.var, n)?;
                }
            }
        }
        write!(f, " + O({}^{})", self.var, self.trunc)
    }
}
