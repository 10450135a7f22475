//! Divergence diagnostics for formal series.
//!
//! Two independent signals are produced for a weak separatrix candidate:
//!
//! 1. an empirical Gevrey-order fit on its coefficient stream — factorial
//!    growth `|c_n| ~ C·Aⁿ·(n!)^s` with `s ≈ 1` is the signature of a
//!    divergent weak separatrix, geometric growth of a convergent one;
//! 2. the exact first-variation functional `−Σ_{k≥2} c_k · k/(k+1)!` of
//!    the perturbation direction, whose non-vanishing predicts divergence
//!    for small positive multiples of the direction.
//!
//! The second is computed in exact rational arithmetic (`k/Γ(k+2)` is the
//! integer identity `k/(k+1)!`, never a float); floating point enters only
//! the regression and root-test estimates, and every float that leaves
//! this module is tagged approximate by the report layer.

use num::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gallery;
use crate::jsonutil;
use crate::rational::{factorial, ln_abs, Rational};
use crate::separatrix::{graph_separatrix, GraphAxis, SeparatrixError};
use crate::series::{Series1, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivergenceError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Separatrix(#[from] Box<SeparatrixError>),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

impl From<SeparatrixError> for DivergenceError {
    fn from(e: SeparatrixError) -> Self {
        DivergenceError::Separatrix(Box::new(e))
    }
}

impl From<crate::field::FieldError> for DivergenceError {
    fn from(e: crate::field::FieldError) -> Self {
        DivergenceError::Separatrix(Box::new(e.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GevreyVerdict {
    DivergentGevreyLike,
    ConvergentLike,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GevreyReport {
    /// Fitted Gevrey order ŝ.
    pub fitted_order: f64,
    /// Fitted log of the geometric base A.
    pub log_base: f64,
    pub window: (u32, u32),
    pub points: usize,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    pub verdict: GevreyVerdict,
    /// Max of `|c_n|^{1/n}` on the window, recorded when a geometric bound
    /// was checked for a convergent-like verdict.
    pub growth_base: f64,
    pub geometric_bound_checked: bool,
}

/// Verdict thresholds: divergent needs `ŝ ≥ 0.5` with residual at most
/// `0.75`; convergent-like needs `ŝ < 0.35` plus a geometric coefficient
/// bound on the window; anything else is inconclusive.
const DIVERGENT_MIN_ORDER: f64 = 0.5;
const CONVERGENT_MAX_ORDER: f64 = 0.35;
const FIT_RESIDUAL_MAX: f64 = 0.75;

/// Least-squares fit of `log|c_n| ≈ n·log A + s·log(n!) + const` over the
/// nonzero coefficients with index in the (inclusive) window; `log(n!)` is
/// the quantity `n·log n − n` approximates, used exactly for conditioning.
pub fn gevrey_fit(coeffs: &Series1, window: (u32, u32)) -> Result<GevreyReport, DivergenceError> {
    let (n0, n1) = window;
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for n in n0..=n1.min(coeffs.trunc().saturating_sub(1)) {
        let c = coeffs.coeff(n);
        if c.is_zero() {
            continue;
        }
        let y = ln_abs(&c).expect("nonzero coefficient");
        rows.push((n as f64, ln_factorial(n), y));
    }
    if rows.len() < 12 {
        return Err(DivergenceError::InsufficientData(format!(
            "{} nonzero coefficients in [{n0}, {n1}], need 12",
            rows.len()
        )));
    }
    // Normal equations for (log A, s, const).
    let mut m = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (x1, x2, y) in &rows {
        let v = [*x1, *x2, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] += v[i] * v[j];
            }
            rhs[i] += v[i] * y;
        }
    }
    let beta = solve3(m, rhs).ok_or_else(|| {
        DivergenceError::InsufficientData("degenerate regression system".to_string())
    })?;
    let (log_base, fitted_order) = (beta[0], beta[1]);
    let mut sq = 0.0;
    for (x1, x2, y) in &rows {
        let p = beta[0] * x1 + beta[1] * x2 + beta[2];
        sq += (y - p) * (y - p);
    }
    let residual = (sq / rows.len() as f64).sqrt();
    // Geometric growth base over the window, for the convergent check.
    let growth_base = rows
        .iter()
        .map(|(n, _, y)| (y / n).exp())
        .fold(0.0f64, f64::max);
    let geometric_bound_checked = fitted_order < CONVERGENT_MAX_ORDER && growth_base.is_finite();
    let verdict = if fitted_order >= DIVERGENT_MIN_ORDER && residual <= FIT_RESIDUAL_MAX {
        GevreyVerdict::DivergentGevreyLike
    } else if fitted_order < CONVERGENT_MAX_ORDER && geometric_bound_checked {
        GevreyVerdict::ConvergentLike
    } else {
        GevreyVerdict::Inconclusive
    };
    Ok(GevreyReport {
        fitted_order,
        log_base,
        window,
        points: rows.len(),
        residual,
        verdict,
        growth_base,
        geometric_bound_checked,
    })
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n as u64).map(|k| (k as f64).ln()).sum()
}

#[allow(clippy::needless_range_loop)] // in-place elimination over both axes
fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|i, j| {
            m[*i][col]
                .abs()
                .partial_cmp(&m[*j][col].abs())
                .expect("finite")
        })?;
        if m[pivot][col].abs() < 1e-12 {
            return None;
        }
        m.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..3 {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    Some([b[0] / m[0][0], b[1] / m[1][1], b[2] / m[2][2]])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BorelReport {
    /// Root-test estimate of the radius of `Σ c_n/n! · zⁿ`.
    pub radius_estimate: f64,
    /// Set when the transform looks entire (radius growing without bound
    /// across the window).
    pub entire: bool,
    pub window: (u32, u32),
    pub points: usize,
}

/// Root-test estimate of the Borel-transform radius: the reciprocal of
/// `limsup |c_n/n!|^{1/n}`, proxied by the maximum over the second half of
/// the window. A radius that keeps growing across the window flags an
/// entire transform.
pub fn borel_radius(coeffs: &Series1, window: (u32, u32)) -> Result<BorelReport, DivergenceError> {
    let (n0, n1) = window;
    let mut vals: Vec<(u32, f64)> = Vec::new();
    for n in n0.max(1)..=n1.min(coeffs.trunc().saturating_sub(1)) {
        let c = coeffs.coeff(n);
        if c.is_zero() {
            continue;
        }
        let ln_b = ln_abs(&c).expect("nonzero") - ln_factorial(n);
        vals.push((n, (ln_b / n as f64).exp()));
    }
    if vals.len() < 12 {
        return Err(DivergenceError::InsufficientData(format!(
            "{} nonzero coefficients in [{n0}, {n1}], need 12",
            vals.len()
        )));
    }
    let half = vals.len() / 2;
    let limsup = vals[half..].iter().map(|(_, v)| *v).fold(0.0f64, f64::max);
    let radius_estimate = if limsup > 0.0 {
        1.0 / limsup
    } else {
        f64::INFINITY
    };
    let r_mid = 1.0 / vals[half].1;
    let r_end = 1.0 / vals.last().expect("nonempty").1;
    let entire = radius_estimate > 4.0 && r_end > 1.3 * r_mid;
    Ok(BorelReport {
        radius_estimate,
        entire,
        window,
        points: vals.len(),
    })
}

fn check_perturbation_hypothesis(alpha: &Series1) -> Result<(), DivergenceError> {
    if !alpha.coeff(0).is_zero() || !alpha.coeff(1).is_zero() {
        return Err(DivergenceError::HypothesisViolated(
            "perturbation series must satisfy alpha(0) = alpha'(0) = 0".to_string(),
        ));
    }
    Ok(())
}

/// The coefficient stream `Σ_{k≥2} c_k z^k = −α(−z)·(1 + z + z² + ⋯)`,
/// exact to order `n`.
pub fn elizarov_coeffs(alpha: &Series1, n: u32) -> Result<Series1, DivergenceError> {
    check_perturbation_hypothesis(alpha)?;
    let trunc = n + 1;
    let var = alpha.var();
    let minus = Series1::monomial(var, 1, -Rational::one(), trunc);
    let alpha_neg = alpha.pad_to(trunc).compose(&minus)?;
    let geometric = Series1::from_terms(var, &[(0, Rational::one()), (1, -Rational::one())], trunc)
        .invert_unit()?;
    Ok(alpha_neg.neg().mul(&geometric)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElizarovVerdict {
    NonZero,
    Zero,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElizarovResult {
    /// Exact partial sums `S_N = −Σ_{k=2}^{N} c_k · k/(k+1)!`.
    #[serde(serialize_with = "ser_partial_sums")]
    pub partial_sums: Vec<(u32, Rational)>,
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub final_sum: Rational,
    /// Exact limit when the coefficient tail is provably constant
    /// (polynomial perturbations), by the telescoping identity
    /// `Σ_{k≥k₀} k/(k+1)! = 1/k₀!`.
    #[serde(serialize_with = "jsonutil::ser_opt_rational")]
    pub limit: Option<Rational>,
    /// First index from which the coefficients are constant, when detected.
    pub constant_tail_from: Option<u32>,
    pub verdict: ElizarovVerdict,
    /// Geometric-extrapolation bound on the dropped tail, when available.
    #[serde(serialize_with = "jsonutil::ser_opt_rational")]
    pub tail_bound: Option<Rational>,
}

fn ser_partial_sums<S: serde::Serializer>(v: &[(u32, Rational)], s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<(u32, String)> = v
        .iter()
        .map(|(n, r)| (*n, crate::rational::format_rational(r)))
        .collect();
    rows.serialize(s)
}

/// The exact first-variation sum `−Σ_{k=2}^{n} c_k·k/(k+1)!` with partial
/// sums, telescoped limit when the tail is provably constant, and a
/// zero/nonzero verdict guarded by a tail bound.
///
/// `k/Γ(k+2) = k/(k+1)!` is used as an exact integer identity throughout.
pub fn elizarov_derivative(alpha: &Series1, n: u32) -> Result<ElizarovResult, DivergenceError> {
    check_perturbation_hypothesis(alpha)?;
    if n < 2 {
        return Err(DivergenceError::InsufficientData(
            "need at least the k = 2 term".to_string(),
        ));
    }
    let c = elizarov_coeffs(alpha, n)?;
    let mut partial_sums = Vec::new();
    let mut acc = Rational::zero();
    for k in 2..=n {
        let weight = Rational::new(k.into(), factorial(k + 1));
        acc -= c.coeff(k) * weight;
        partial_sums.push((k, acc.clone()));
    }
    let final_sum = acc.clone();
    // Constant-tail detection; provable only for exact polynomial input.
    let mut constant_tail_from = None;
    if alpha.is_exact() {
        let last = c.coeff(n);
        let mut k0 = n;
        while k0 > 2 && c.coeff(k0 - 1) == last {
            k0 -= 1;
        }
        // the tail is constant from max(k0, deg alpha) on; need the detected
        // run to reach past the polynomial degree to be a proof
        let deg = alpha.degree().unwrap_or(0);
        if k0 <= deg.max(2) {
            constant_tail_from = Some(k0);
        }
    }
    let limit = constant_tail_from.map(|k0| {
        let mut head = Rational::zero();
        for k in 2..k0 {
            head -= c.coeff(k) * Rational::new(k.into(), factorial(k + 1));
        }
        head - c.coeff(k0) * Rational::new(One::one(), factorial(k0))
    });
    // Tail bound by geometric extrapolation of the window ratios.
    let nonzero: Vec<(u32, Rational)> = (2..=n)
        .filter_map(|k| {
            let v = c.coeff(k);
            if v.is_zero() {
                None
            } else {
                Some((k, v))
            }
        })
        .collect();
    if nonzero.is_empty() {
        return Ok(ElizarovResult {
            partial_sums,
            final_sum,
            limit: Some(Rational::zero()),
            constant_tail_from,
            verdict: ElizarovVerdict::Zero,
            tail_bound: Some(Rational::zero()),
        });
    }
    let cmax = nonzero
        .iter()
        .map(|(_, v)| v.abs())
        .max()
        .expect("nonempty");
    let mut ratio = Rational::one();
    for w in nonzero.windows(2) {
        if w[1].0 == w[0].0 + 1 {
            let r = (w[1].1.abs()) / (w[0].1.abs());
            if r > ratio {
                ratio = r;
            }
        }
    }
    let n_plus_2 = Rational::from_integer((n + 2).into());
    let (tail_bound, verdict) = if ratio < n_plus_2 {
        let bound = &cmax * &ratio * &n_plus_2
            / (Rational::from_integer(factorial(n + 1)) * (&n_plus_2 - &ratio));
        let verdict = if final_sum.abs() > bound {
            ElizarovVerdict::NonZero
        } else {
            ElizarovVerdict::Inconclusive
        };
        (Some(bound), verdict)
    } else {
        (None, ElizarovVerdict::Inconclusive)
    };
    Ok(ElizarovResult {
        partial_sums,
        final_sum,
        limit,
        constant_tail_from,
        verdict,
        tail_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    AgreeDivergent,
    AgreeConvergent,
    Inconclusive,
    Disagree,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheckReport {
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub delta: Rational,
    pub order: u32,
    /// Weak-separatrix coefficients of the scaled family.
    pub separatrix: Series1,
    pub separatrix_is_zero: bool,
    pub gevrey_verdict: GevreyVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gevrey: Option<GevreyReport>,
    pub elizarov: ElizarovResult,
    pub agreement: Agreement,
}

/// Build the ramified saddle-node family for the scaled perturbation
/// `δ·α`, solve its weak separatrix, fit its growth, and pair the verdict
/// with the exact first-variation verdict for `α`.
pub fn divergence_cross_check(
    alpha: &Series1,
    delta: &Rational,
    n: u32,
) -> Result<CrossCheckReport, DivergenceError> {
    check_perturbation_hypothesis(alpha)?;
    if delta.is_negative() {
        return Err(DivergenceError::HypothesisViolated(
            "delta must be nonnegative".to_string(),
        ));
    }
    let scaled = alpha.scale(delta);
    let field = gallery::ramified_saddle_node(&scaled, n + 2)?;
    let separatrix = graph_separatrix(&field, GraphAxis::YOverX, n)?;
    let separatrix_is_zero = separatrix.is_zero();
    let (gevrey, gevrey_verdict) = if separatrix_is_zero {
        // the zero series is trivially convergent
        (None, GevreyVerdict::ConvergentLike)
    } else {
        let window = (8.min(n / 2).max(2), n);
        let report = gevrey_fit(&separatrix, window)?;
        let verdict = report.verdict;
        (Some(report), verdict)
    };
    let elizarov = elizarov_derivative(alpha, n.max(12))?;
    let agreement = match (gevrey_verdict, elizarov.verdict) {
        (GevreyVerdict::DivergentGevreyLike, ElizarovVerdict::NonZero) => Agreement::AgreeDivergent,
        (GevreyVerdict::ConvergentLike, ElizarovVerdict::Zero) => Agreement::AgreeConvergent,
        (GevreyVerdict::Inconclusive, _) | (_, ElizarovVerdict::Inconclusive) => {
            Agreement::Inconclusive
        }
        _ => Agreement::Disagree,
    };
    Ok(CrossCheckReport {
        delta: delta.clone(),
        order: n,
        separatrix,
        separatrix_is_zero,
        gevrey_verdict,
        gevrey,
        elizarov,
        agreement,
    })
}
