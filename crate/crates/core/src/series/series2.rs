//! Bivariate truncated power series (total-degree truncation).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::series1::pow_rat;
use super::{Series1, SeriesError};
use crate::rational::{binomial, format_rational, Rational};

type DegreeSlices = BTreeMap<u32, Vec<((u32, u32), Rational)>>;

/// A truncated formal power series in two variables with total-degree window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series2 {
    vars: (String, String),
    coeffs: BTreeMap<(u32, u32), Rational>,
    trunc: u32,
    exact: bool,
}

impl Series2 {
    pub fn zero(vars: (&str, &str), trunc: u32) -> Self {
        Series2 {
            vars: (vars.0.to_string(), vars.1.to_string()),
            coeffs: BTreeMap::new(),
            trunc: trunc.max(1),
            exact: true,
        }
    }

    pub fn one(vars: (&str, &str), trunc: u32) -> Self {
        Self::monomial(vars, (0, 0), Rational::one(), trunc)
    }

    pub fn monomial(vars: (&str, &str), exps: (u32, u32), coeff: Rational, trunc: u32) -> Self {
        let mut s = Self::zero(vars, trunc);
        if !coeff.is_zero() {
            if exps.0 + exps.1 < s.trunc {
                s.coeffs.insert(exps, coeff);
            } else {
                s.exact = false;
            }
        }
        s
    }

    pub fn from_terms(vars: (&str, &str), terms: &[((u32, u32), Rational)], trunc: u32) -> Self {
        let mut s = Self::zero(vars, trunc);
        for ((i, j), c) in terms {
            if c.is_zero() {
                continue;
            }
            if i + j < s.trunc {
                let e = s.coeffs.entry((*i, *j)).or_insert_with(Rational::zero);
                *e += c;
                if e.is_zero() {
                    s.coeffs.remove(&(*i, *j));
                }
            } else {
                s.exact = false;
            }
        }
        s
    }

    /// Embed a univariate series as a series in `vars`, where the variable
    /// occupies `position` 0 or 1. The variable names must agree.
    pub fn embed(s1: &Series1, vars: (&str, &str), position: usize) -> Result<Self, SeriesError> {
        let expected = if position == 0 { vars.0 } else { vars.1 };
        super::check_var(expected, s1.var())?;
        let mut s = Self::zero(vars, s1.trunc());
        s.exact = s1.is_exact();
        for (n, c) in s1.terms() {
            let key = if position == 0 { (n, 0) } else { (0, n) };
            s.coeffs.insert(key, c.clone());
        }
        Ok(s)
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub(crate) fn set_inexact(&mut self) {
        self.exact = false;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Order of vanishing (minimal total degree); `None` for a zero jet.
    pub fn ord(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).min()
    }

    /// Largest stored total degree.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j)| i + j).max()
    }

    /// Minimal exponent of the selected variable across the jet, `None` if zero.
    pub fn min_exponent(&self, position: usize) -> Option<u32> {
        self.coeffs
            .keys()
            .map(|(i, j)| if position == 0 { *i } else { *j })
            .min()
    }

    pub fn rename_vars(&self, vars: (&str, &str)) -> Series2 {
        let mut s = self.clone();
        s.vars = (vars.0.to_string(), vars.1.to_string());
        s
    }

    /// Widen the window of an exact series (its tail is known zero);
    /// no-op for truncated series and for smaller targets.
    pub fn pad_to(&self, trunc: u32) -> Series2 {
        let mut s = self.clone();
        if s.exact && trunc > s.trunc {
            s.trunc = trunc;
        }
        s
    }

    pub fn truncate_to(&self, trunc: u32) -> Series2 {
        let trunc = trunc.max(1);
        if trunc >= self.trunc {
            return self.clone();
        }
        let mut dropped = false;
        let coeffs: BTreeMap<(u32, u32), Rational> = self
            .coeffs
            .iter()
            .filter(|((i, j), _)| {
                if i + j < trunc {
                    true
                } else {
                    dropped = true;
                    false
                }
            })
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        Series2 {
            vars: self.vars.clone(),
            coeffs,
            trunc,
            exact: self.exact && !dropped,
        }
    }

    pub fn neg(&self) -> Series2 {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn scale(&self, k: &Rational) -> Series2 {
        if k.is_zero() {
            let mut z = Self::zero(self.vars(), self.trunc);
            z.exact = self.exact;
            return z;
        }
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c *= k;
        }
        s
    }

    fn check_vars(&self, other: &Series2) -> Result<(), SeriesError> {
        super::check_var(&self.vars.0, &other.vars.0)?;
        super::check_var(&self.vars.1, &other.vars.1)
    }

    pub fn add(&self, other: &Series2) -> Result<Series2, SeriesError> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Series2::zero(self.vars(), trunc);
        out.exact = self.exact && other.exact;
        for ((i, j), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if i + j >= trunc {
                out.exact = false;
                continue;
            }
            let e = out.coeffs.entry((*i, *j)).or_insert_with(Rational::zero);
            *e += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Series2) -> Result<Series2, SeriesError> {
        self.add(&other.neg())
    }

    /// Cauchy product, truncated to the minimum of the operand windows.
    pub fn mul(&self, other: &Series2) -> Result<Series2, SeriesError> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let both_exact = self.exact && other.exact;
        let mut kept: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        let mut dropped: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                let key = (i1 + i2, j1 + j2);
                if key.0 + key.1 < trunc {
                    let e = kept.entry(key).or_insert_with(Rational::zero);
                    *e += c1 * c2;
                } else if both_exact {
                    let e = dropped.entry(key).or_insert_with(Rational::zero);
                    *e += c1 * c2;
                }
            }
        }
        kept.retain(|_, c| !c.is_zero());
        let exact = both_exact && dropped.values().all(|c| c.is_zero());
        Ok(Series2 {
            vars: self.vars.clone(),
            coeffs: kept,
            trunc,
            exact,
        })
    }

    /// Homogeneous part of the given total degree, as dehomogenised
    /// coefficients: entry `j` is the coefficient of `x^(d-j) y^j`.
    pub(crate) fn homogeneous_slice(&self, d: u32) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); d as usize + 1];
        for ((i, j), c) in &self.coeffs {
            if i + j == d {
                out[*j as usize] = c.clone();
            }
        }
        out
    }

    /// Homogeneous part of the given total degree as a polynomial series.
    pub fn homogeneous_part(&self, d: u32) -> Series2 {
        let terms: Vec<((u32, u32), Rational)> = self
            .coeffs
            .iter()
            .filter(|((i, j), _)| i + j == d)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        Series2::from_terms(self.vars(), &terms, d + 1)
    }

    /// Multiplicative inverse of a unit, by homogeneous-degree recursion.
    pub fn invert_unit(&self) -> Result<Series2, SeriesError> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        let inv0 = Rational::one() / &c0;
        let mut out = Series2::monomial(self.vars(), (0, 0), inv0.clone(), self.trunc);
        // Group the operand by total degree once.
        let mut by_degree: DegreeSlices = BTreeMap::new();
        for ((i, j), c) in &self.coeffs {
            if i + j > 0 {
                by_degree
                    .entry(i + j)
                    .or_default()
                    .push(((*i, *j), c.clone()));
            }
        }
        let mut out_by_degree: DegreeSlices = BTreeMap::new();
        out_by_degree.insert(0, vec![((0, 0), inv0.clone())]);
        for d in 1..self.trunc {
            let mut acc: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
            for (e, u_terms) in by_degree.range(1..=d) {
                if let Some(v_terms) = out_by_degree.get(&(d - e)) {
                    for ((i1, j1), cu) in u_terms {
                        for ((i2, j2), cv) in v_terms {
                            let key = (i1 + i2, j1 + j2);
                            let slot = acc.entry(key).or_insert_with(Rational::zero);
                            *slot += cu * cv;
                        }
                    }
                }
            }
            let mut slice = Vec::new();
            for (key, c) in acc {
                if c.is_zero() {
                    continue;
                }
                let v = -c * &inv0;
                out.coeffs.insert(key, v.clone());
                slice.push((key, v));
            }
            if !slice.is_empty() {
                out_by_degree.insert(d, slice);
            }
        }
        out.exact = self.exact && self.coeffs.len() == 1 && self.coeffs.contains_key(&(0, 0));
        Ok(out)
    }

    /// Exact quotient `self / other` up to the propagated truncation.
    ///
    /// Let `m = ord(other)`. The quotient is built degree by degree, each
    /// step dividing a homogeneous bivariate polynomial by the lowest part
    /// of the divisor; any forced nonzero remainder aborts with
    /// `NotDivisible`. The result window is `min(truncs) - m`.
    pub fn divide_exact(&self, other: &Series2) -> Result<Series2, SeriesError> {
        self.check_vars(other)?;
        let m = match other.ord() {
            Some(m) => m,
            None => {
                return Err(SeriesError::NotDivisible(
                    "division by zero series".to_string(),
                ))
            }
        };
        let trunc = self.trunc.min(other.trunc);
        // An exact zero dividend divides to an exact zero; otherwise the
        // quotient window trunc - m must be nonempty.
        if trunc <= m && !(self.is_zero() && self.exact) {
            return Err(SeriesError::TruncationTooSmall(format!(
                "quotient window is empty (trunc {trunc}, divisor order {m})"
            )));
        }
        let out_trunc = trunc.saturating_sub(m).max(1);
        let mut q = Series2::zero(self.vars(), out_trunc);
        if self.is_zero() {
            q.exact = self.exact && other.exact;
            return Ok(q);
        }
        if self.ord().unwrap() < m {
            return Err(SeriesError::NotDivisible(format!(
                "dividend order {} below divisor order {}",
                self.ord().unwrap(),
                m
            )));
        }
        let den = other.homogeneous_slice(m);
        let mut q_by_degree: Vec<Vec<Rational>> = Vec::new();
        for d in 0..out_trunc {
            // r_d = a_{m+d} - sum_{e=1..d} b_{m+e} q_{d-e}
            let mut r = self.homogeneous_slice(m + d);
            for e in 1..=d {
                let b = other.homogeneous_slice(m + e);
                if b.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let qe = &q_by_degree[(d - e) as usize];
                // subtract the homogeneous product b * q_{d-e}
                for (jb, cb) in b.iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    for (jq, cq) in qe.iter().enumerate() {
                        if cq.is_zero() {
                            continue;
                        }
                        r[jb + jq] -= cb * cq;
                    }
                }
            }
            let qd = divide_homogeneous(&r, m + d, &den, m).ok_or_else(|| {
                SeriesError::NotDivisible(format!(
                    "forced nonzero remainder at total degree {}",
                    m + d
                ))
            })?;
            for (j, c) in qd.iter().enumerate() {
                if !c.is_zero() {
                    q.coeffs.insert((d - j as u32, j as u32), c.clone());
                }
            }
            q_by_degree.push(qd);
        }
        if self.exact && other.exact {
            let back = poly_mul_unbounded(&q, other);
            q.exact = poly_eq_unbounded(&back, self);
        } else {
            q.exact = false;
        }
        Ok(q)
    }

    /// Substitute both variables by series in a shared target variable pair.
    /// Each inner series must vanish at the origin.
    ///
    /// Validity window: the inner windows apply directly; the unknown outer
    /// tail enters at `trunc * min(ord(gx), ord(gy))` (not at all when the
    /// outer jet is exact).
    pub fn substitute(&self, gx: &Series2, gy: &Series2) -> Result<Series2, SeriesError> {
        gx.check_vars(gy)?;
        if !gx.coeff(0, 0).is_zero() || !gy.coeff(0, 0).is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let d = gx
            .ord()
            .unwrap_or(gx.trunc)
            .min(gy.ord().unwrap_or(gy.trunc))
            .max(1);
        let out_trunc = if self.exact {
            gx.trunc.min(gy.trunc)
        } else {
            gx.trunc
                .min(gy.trunc)
                .min(self.trunc.saturating_mul(d))
                .max(1)
        };
        let mut out = Series2::zero(gx.vars(), out_trunc);
        out.exact = self.exact && gx.exact && gy.exact;
        // Memoised powers, grown on demand.
        let mut pow_x: Vec<Series2> = vec![Series2::one(gx.vars(), out_trunc)];
        let mut pow_y: Vec<Series2> = vec![Series2::one(gx.vars(), out_trunc)];
        let gx_t = gx.truncate_to(out_trunc);
        let gy_t = gy.truncate_to(out_trunc);
        for ((i, j), c) in &self.coeffs {
            while pow_x.len() <= *i as usize {
                let next = pow_x.last().unwrap().mul(&gx_t)?;
                pow_x.push(next);
            }
            while pow_y.len() <= *j as usize {
                let next = pow_y.last().unwrap().mul(&gy_t)?;
                pow_y.push(next);
            }
            let term = pow_x[*i as usize].mul(&pow_y[*j as usize])?.scale(c);
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Recenter at a rational point: `x -> x + p`, `y -> y + q`.
    ///
    /// The stored jet is recentered as a polynomial (formal recentering):
    /// for a truncated series the result is the recentering of the jet, not
    /// of the unknown full series. The window is kept.
    pub fn translate(&self, p: &Rational, q: &Rational) -> Series2 {
        if p.is_zero() && q.is_zero() {
            return self.clone();
        }
        let mut out = Series2::zero(self.vars(), self.trunc);
        out.exact = self.exact;
        for ((i, j), c) in &self.coeffs {
            // (x+p)^i (y+q)^j expanded exactly
            for a in 0..=*i {
                let pa = Rational::from(binomial(*i, a)) * pow_rat(p, i - a);
                if pa.is_zero() {
                    continue;
                }
                for b in 0..=*j {
                    let qb = Rational::from(binomial(*j, b)) * pow_rat(q, j - b);
                    if qb.is_zero() {
                        continue;
                    }
                    let e = out.coeffs.entry((a, b)).or_insert_with(Rational::zero);
                    *e += c * &pa * &qb;
                }
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// Formal partial derivative with respect to variable 0 or 1.
    pub fn derive(&self, position: usize) -> Series2 {
        let trunc = if self.exact {
            self.trunc
        } else {
            self.trunc.saturating_sub(1).max(1)
        };
        let mut out = Series2::zero(self.vars(), trunc);
        out.exact = self.exact;
        for ((i, j), c) in &self.coeffs {
            let (e, key) = if position == 0 {
                (*i, (i.wrapping_sub(1), *j))
            } else {
                (*j, (*i, j.wrapping_sub(1)))
            };
            if e == 0 {
                continue;
            }
            if key.0 + key.1 < trunc {
                out.coeffs.insert(key, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Set the selected variable to zero, collapsing to a univariate series.
    pub fn restrict(&self, zero_position: usize) -> Series1 {
        let keep = 1 - zero_position;
        let var = if keep == 0 {
            &self.vars.0
        } else {
            &self.vars.1
        };
        let mut terms = Vec::new();
        for ((i, j), c) in &self.coeffs {
            let (z, k) = if zero_position == 0 {
                (*i, *j)
            } else {
                (*j, *i)
            };
            if z == 0 {
                terms.push((k, c.clone()));
            }
        }
        let mut s = Series1::from_terms(var, &terms, self.trunc);
        if !self.exact {
            s.mark_inexact();
        }
        s
    }

    /// Substitute the graph `y = s(x)` (the second variable by a univariate
    /// series in the first), collapsing to a univariate series.
    pub fn substitute_second(&self, s: &Series1) -> Result<Series1, SeriesError> {
        super::check_var(&self.vars.0, s.var())?;
        if !s.coeff(0).is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        self.compose_curve(
            &Series1::monomial(s.var(), 1, Rational::one(), s.trunc()),
            s,
        )
    }

    /// Compose with a parametrised curve `t -> (g1(t), g2(t))`, both
    /// components vanishing at the origin.
    pub fn compose_curve(&self, g1: &Series1, g2: &Series1) -> Result<Series1, SeriesError> {
        super::check_var(g1.var(), g2.var())?;
        if !g1.coeff(0).is_zero() || !g2.coeff(0).is_zero() {
            return Err(SeriesError::InnerConstantTerm);
        }
        let d = g1
            .ord()
            .unwrap_or(g1.trunc())
            .min(g2.ord().unwrap_or(g2.trunc()))
            .max(1);
        let out_trunc = if self.exact {
            g1.trunc().min(g2.trunc())
        } else {
            g1.trunc()
                .min(g2.trunc())
                .min(self.trunc.saturating_mul(d))
                .max(1)
        };
        let mut out = Series1::zero(g1.var(), out_trunc);
        if !(self.exact && g1.is_exact() && g2.is_exact()) {
            out.mark_inexact();
        }
        let g1_t = g1.truncate_to(out_trunc);
        let g2_t = g2.truncate_to(out_trunc);
        let mut pow1: Vec<Series1> = vec![Series1::one(g1.var(), out_trunc)];
        let mut pow2: Vec<Series1> = vec![Series1::one(g1.var(), out_trunc)];
        for ((i, j), c) in &self.coeffs {
            while pow1.len() <= *i as usize {
                let next = pow1.last().unwrap().mul(&g1_t)?;
                pow1.push(next);
            }
            while pow2.len() <= *j as usize {
                let next = pow2.last().unwrap().mul(&g2_t)?;
                pow2.push(next);
            }
            let term = pow1[*i as usize].mul(&pow2[*j as usize])?.scale(c);
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Replace `first_var^2` by `scale * new_var`, requiring every exponent
    /// of the first variable to be even. Used for ramification descents.
    ///
    /// A monomial `x^(2k) y^j` is known when `2k + j < trunc`, so every
    /// output monomial of total degree `< ceil(trunc/2)` is determined.
    pub fn even_substitute_first(
        &self,
        new_var: &str,
        scale: &Rational,
    ) -> Result<Series2, SeriesError> {
        // An exact jet has no unknown tail, so its full window survives.
        let out_trunc = if self.exact {
            self.trunc
        } else {
            self.trunc.div_ceil(2).max(1)
        };
        let mut out = Series2::zero((new_var, &self.vars.1), out_trunc);
        out.exact = self.exact;
        for ((i, j), c) in &self.coeffs {
            if i % 2 != 0 {
                return Err(SeriesError::OddExponent(self.vars.0.clone()));
            }
            let k = i / 2;
            if k + j < out.trunc {
                out.coeffs.insert((k, *j), c * pow_rat(scale, k));
            }
            // terms beyond the halved window are outside the guaranteed
            // region for a truncated input (an exact input never gets here:
            // k + j <= 2k + j < trunc)
        }
        Ok(out)
    }

    /// Evaluate the stored jet as a polynomial at a rational point.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((i, j), c) in &self.coeffs {
            acc += c * pow_rat(x, *i) * pow_rat(y, *j);
        }
        acc
    }

    /// Same stored coefficients and variables (ignores truncation bookkeeping
    /// and exactness). This is the right notion for golden-value comparisons.
    pub fn jet_eq(&self, other: &Series2) -> bool {
        self.vars == other.vars && self.coeffs == other.coeffs
    }

    /// Swap the two variables (names and exponents).
    pub fn swap_vars(&self) -> Series2 {
        Series2 {
            vars: (self.vars.1.clone(), self.vars.0.clone()),
            coeffs: self
                .coeffs
                .iter()
                .map(|((i, j), c)| ((*j, *i), c.clone()))
                .collect(),
            trunc: self.trunc,
            exact: self.exact,
        }
    }
}

/// Divide homogeneous bivariate polynomials exactly: `num` of degree `dn`
/// by `den` of degree `dd`, both given as dehomogenised coefficient vectors
/// (`entry j` = coefficient of `x^(d-j) y^j`). Returns the quotient slice of
/// degree `dn - dd`, or `None` when the division has a remainder.
fn divide_homogeneous(
    num: &[Rational],
    dn: u32,
    den: &[Rational],
    dd: u32,
) -> Option<Vec<Rational>> {
    let out_deg = (dn - dd) as usize;
    if num.iter().all(|c| c.is_zero()) {
        return Some(vec![Rational::zero(); out_deg + 1]);
    }
    // As univariate polynomials in t = y/x: num(t) = den(t) * q(t) with
    // deg q <= dn - dd; homogeneity then forces the quotient slice.
    let nd = num.iter().rposition(|c| !c.is_zero())?;
    let dd_t = den.iter().rposition(|c| !c.is_zero())?;
    if nd < dd_t {
        return None;
    }
    let mut rem: Vec<Rational> = num.to_vec();
    let mut quot = vec![Rational::zero(); nd - dd_t + 1];
    let lead = den[dd_t].clone();
    for k in (0..=nd - dd_t).rev() {
        let c = rem[k + dd_t].clone() / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (idx, dc) in den.iter().enumerate().take(dd_t + 1) {
                if !dc.is_zero() {
                    rem[k + idx] -= &c * dc;
                }
            }
        }
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    if quot.len() > out_deg + 1 {
        return None;
    }
    quot.resize(out_deg + 1, Rational::zero());
    Some(quot)
}

/// Full polynomial product of the stored jets, ignoring truncation.
fn poly_mul_unbounded(a: &Series2, b: &Series2) -> BTreeMap<(u32, u32), Rational> {
    let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for ((i1, j1), c1) in &a.coeffs {
        for ((i2, j2), c2) in &b.coeffs {
            let e = out.entry((i1 + i2, j1 + j2)).or_insert_with(Rational::zero);
            *e += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_eq_unbounded(a: &BTreeMap<(u32, u32), Rational>, b: &Series2) -> bool {
    a.len() == b.coeffs.len() && a.iter().all(|(k, c)| b.coeffs.get(k) == Some(c))
}

impl fmt::Display for Series2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            for (idx, ((i, j), c)) in self.coeffs.iter().enumerate() {
                if idx > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "{}", format_rational(c))?;
                if *i > 0 {
                    write!(f, "*{}^{}", self.vars.0, i)?;
                }
                if *j > 0 {
                    write!(f, "*{}^{}", self.vars.1, j)?;
                }
            }
        }
        write!(f, " + O(deg {})", self.trunc)
    }
}
