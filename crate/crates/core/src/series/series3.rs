//! Trivariate truncated power series.
//!
//! Same contract as [`Series2`], restricted to the operations the
//! three-dimensional constructions actually need (sums, products,
//! derivatives, restriction to a coordinate hyperplane, division by a
//! series in a single variable).

use std::collections::BTreeMap;

use num::Zero;

use super::{Series1, Series2, SeriesError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series3 {
    vars: (String, String, String),
    coeffs: BTreeMap<(u32, u32, u32), Rational>,
    trunc: u32,
    exact: bool,
}

impl Series3 {
    pub fn zero(vars: (&str, &str, &str), trunc: u32) -> Self {
        Series3 {
            vars: (vars.0.to_string(), vars.1.to_string(), vars.2.to_string()),
            coeffs: BTreeMap::new(),
            trunc: trunc.max(1),
            exact: true,
        }
    }

    pub fn monomial(
        vars: (&str, &str, &str),
        exps: (u32, u32, u32),
        coeff: Rational,
        trunc: u32,
    ) -> Self {
        let mut s = Self::zero(vars, trunc);
        if !coeff.is_zero() {
            if exps.0 + exps.1 + exps.2 < s.trunc {
                s.coeffs.insert(exps, coeff);
            } else {
                s.exact = false;
            }
        }
        s
    }

    /// Embed a bivariate series into the plane spanned by two of the three
    /// variables: `positions` gives the slots (0, 1 or 2) taken by the
    /// bivariate variables, in order.
    pub fn embed2(
        s2: &Series2,
        vars: (&str, &str, &str),
        positions: (usize, usize),
    ) -> Result<Self, SeriesError> {
        let slot = |p: usize| -> &str {
            match p {
                0 => vars.0,
                1 => vars.1,
                _ => vars.2,
            }
        };
        super::check_var(slot(positions.0), s2.vars().0)?;
        super::check_var(slot(positions.1), s2.vars().1)?;
        let mut s = Self::zero(vars, s2.trunc());
        if !s2.is_exact() {
            s.exact = false;
        }
        for ((i, j), c) in s2.terms() {
            let mut key = [0u32; 3];
            key[positions.0] = i;
            key[positions.1] = j;
            s.coeffs.insert((key[0], key[1], key[2]), c.clone());
        }
        Ok(s)
    }

    pub fn vars(&self) -> (&str, &str, &str) {
        (&self.vars.0, &self.vars.1, &self.vars.2)
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> Rational {
        self.coeffs
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn ord(&self) -> Option<u32> {
        self.coeffs.keys().map(|(i, j, k)| i + j + k).min()
    }

    fn check_vars(&self, other: &Series3) -> Result<(), SeriesError> {
        super::check_var(&self.vars.0, &other.vars.0)?;
        super::check_var(&self.vars.1, &other.vars.1)?;
        super::check_var(&self.vars.2, &other.vars.2)
    }

    pub fn neg(&self) -> Series3 {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn add(&self, other: &Series3) -> Result<Series3, SeriesError> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = Series3::zero(self.vars(), trunc);
        out.exact = self.exact && other.exact;
        for ((i, j, k), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if i + j + k >= trunc {
                out.exact = false;
                continue;
            }
            let e = out
                .coeffs
                .entry((*i, *j, *k))
                .or_insert_with(Rational::zero);
            *e += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn sub(&self, other: &Series3) -> Result<Series3, SeriesError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series3) -> Result<Series3, SeriesError> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let both_exact = self.exact && other.exact;
        let mut kept: BTreeMap<(u32, u32, u32), Rational> = BTreeMap::new();
        let mut dropped: BTreeMap<(u32, u32, u32), Rational> = BTreeMap::new();
        for ((i1, j1, k1), c1) in &self.coeffs {
            for ((i2, j2, k2), c2) in &other.coeffs {
                let key = (i1 + i2, j1 + j2, k1 + k2);
                if key.0 + key.1 + key.2 < trunc {
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
        Ok(Series3 {
            vars: self.vars.clone(),
            coeffs: kept,
            trunc,
            exact,
        })
    }

    pub fn scale(&self, k: &Rational) -> Series3 {
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

    pub fn derive(&self, position: usize) -> Series3 {
        let trunc = if self.exact {
            self.trunc
        } else {
            self.trunc.saturating_sub(1).max(1)
        };
        let mut out = Series3::zero(self.vars(), trunc);
        out.exact = self.exact;
        for ((i, j, k), c) in &self.coeffs {
            let mut key = [*i, *j, *k];
            let e = key[position];
            if e == 0 {
                continue;
            }
            key[position] -= 1;
            if key[0] + key[1] + key[2] < trunc {
                out.coeffs.insert(
                    (key[0], key[1], key[2]),
                    c * Rational::from_integer(e.into()),
                );
            }
        }
        out
    }

    /// Set the selected variable to zero, collapsing to a bivariate series
    /// in the two remaining variables (in their original order).
    pub fn restrict(&self, zero_position: usize) -> Series2 {
        let names: [&str; 3] = [&self.vars.0, &self.vars.1, &self.vars.2];
        let kept: Vec<usize> = (0..3).filter(|p| *p != zero_position).collect();
        let mut terms = Vec::new();
        for ((i, j, k), c) in &self.coeffs {
            let e = [*i, *j, *k];
            if e[zero_position] == 0 {
                terms.push(((e[kept[0]], e[kept[1]]), c.clone()));
            }
        }
        let mut s = Series2::from_terms((names[kept[0]], names[kept[1]]), &terms, self.trunc);
        if !self.exact {
            s.set_inexact();
        }
        s
    }

    /// View the series as univariate when every term involves (at most) a
    /// single, common variable. Returns the variable position and the
    /// collapsed series; a constant collapses to position 0.
    pub fn as_univariate(&self) -> Option<(usize, Series1)> {
        let mut used: Option<usize> = None;
        for (i, j, k) in self.coeffs.keys() {
            for (pos, e) in [(0usize, *i), (1, *j), (2, *k)] {
                if e > 0 {
                    match used {
                        None => used = Some(pos),
                        Some(u) if u == pos => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        let pos = used.unwrap_or(0);
        let names: [&str; 3] = [&self.vars.0, &self.vars.1, &self.vars.2];
        let mut terms = Vec::new();
        for ((i, j, k), c) in &self.coeffs {
            let e = [*i, *j, *k][pos];
            terms.push((e, c.clone()));
        }
        let mut s = Series1::from_terms(names[pos], &terms, self.trunc);
        if !self.exact {
            s.mark_inexact();
        }
        Some((pos, s))
    }

    /// Exact division by a series involving only the variable at `position`.
    pub fn divide_univariate(
        &self,
        divisor: &Series1,
        position: usize,
    ) -> Result<Series3, SeriesError> {
        let d = match divisor.ord() {
            Some(d) => d,
            None => {
                return Err(SeriesError::NotDivisible(
                    "division by zero series".to_string(),
                ))
            }
        };
        let trunc = self.trunc.min(divisor.trunc());
        if trunc <= d && !(self.is_zero() && self.exact) {
            return Err(SeriesError::TruncationTooSmall(format!(
                "quotient window is empty (trunc {trunc}, divisor order {d})"
            )));
        }
        let out_trunc = trunc.saturating_sub(d).max(1);
        // Shift out var^d, then multiply by the inverse of the unit cofactor.
        let mut shifted = Series3::zero(self.vars(), out_trunc);
        shifted.exact = self.exact;
        for ((i, j, k), c) in &self.coeffs {
            let mut key = [*i, *j, *k];
            if key[position] < d {
                return Err(SeriesError::NotDivisible(format!(
                    "term not divisible by {}^{}",
                    divisor.var(),
                    d
                )));
            }
            key[position] -= d;
            if key[0] + key[1] + key[2] < out_trunc {
                shifted.coeffs.insert((key[0], key[1], key[2]), c.clone());
            } else if shifted.exact {
                shifted.exact = false;
            }
        }
        let unit = {
            let mut u = Series1::zero(divisor.var(), out_trunc);
            for (n, c) in divisor.terms() {
                if n - d < out_trunc {
                    u = u
                        .add(&Series1::monomial(
                            divisor.var(),
                            n - d,
                            c.clone(),
                            out_trunc,
                        ))
                        .expect("same variable");
                }
            }
            if !divisor.is_exact() {
                u.mark_inexact();
            }
            u
        };
        let inv = unit.invert_unit()?;
        let inv3 = {
            let names: [&str; 3] = [&self.vars.0, &self.vars.1, &self.vars.2];
            let mut s = Series3::zero(self.vars(), out_trunc);
            s.exact = inv.is_exact();
            for (n, c) in inv.terms() {
                let mut key = [0u32; 3];
                key[position] = n;
                let _ = names;
                s.coeffs.insert((key[0], key[1], key[2]), c.clone());
            }
            s
        };
        shifted.mul(&inv3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn xyz() -> (&'static str, &'static str, &'static str) {
        ("x", "y", "z")
    }

    #[test]
    fn restrict_drops_a_variable() {
        // y^2 + x^4 + z^2 restricted to z = 0 is y^2 + x^4
        let s = Series3::monomial(xyz(), (0, 2, 0), rat_int(1), 10)
            .add(&Series3::monomial(xyz(), (4, 0, 0), rat_int(1), 10))
            .unwrap()
            .add(&Series3::monomial(xyz(), (0, 0, 2), rat_int(1), 10))
            .unwrap();
        let r = s.restrict(2);
        assert_eq!(r.coeff(0, 2), rat_int(1));
        assert_eq!(r.coeff(4, 0), rat_int(1));
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn derive_and_mul() {
        let s = Series3::monomial(xyz(), (1, 1, 1), rat(3, 2), 9);
        let d = s.derive(2);
        assert_eq!(d.coeff(1, 1, 0), rat(3, 2));
        let p = s.mul(&s).unwrap();
        assert_eq!(p.coeff(2, 2, 2), rat(9, 4));
    }

    #[test]
    fn divide_univariate_by_x() {
        let s = Series3::monomial(xyz(), (3, 0, 1), rat_int(2), 9);
        let x = Series1::monomial("x", 1, rat_int(1), 9);
        let q = s.divide_univariate(&x, 0).unwrap();
        assert_eq!(q.coeff(2, 0, 1), rat_int(2));
        let y = Series3::monomial(xyz(), (0, 1, 0), rat_int(1), 9);
        assert!(y.divide_univariate(&x, 0).is_err());
    }
}
