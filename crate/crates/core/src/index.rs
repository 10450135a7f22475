//! Poincaré–Hopf index of a planar field at an isolated singularity by a
//! certified winding number, plus the tangency-count and Bendixson sector
//! formulas.
//!
//! All circle arithmetic is exact: points come from the tan-half-angle
//! parametrisation `(x, y) = r·((1−t²)/(1+t²), 2t/(1+t²))` at rational `t`
//! (plus the point `(−r, 0)` at `t = ∞`), so field values on the circle
//! are rationals. An arc is accepted when the direction change across it
//! is provably under a quarter turn (`⟨V(u), V(v)⟩ > 0`) and the field is
//! provably zero-free on it (`‖V(u)‖∞ > L·‖P(v)−P(u)‖∞ + tolerance` with
//! `L` a coefficient-magnitude Lipschitz bound). Under those certificates
//! the degree is the quadrant-transition sum divided by four — an integer
//! computed without a single floating-point operation.
//!
//! Certification refers to the stored polynomial jet: fields whose
//! components carry truncated tails get `certified = false` and a caveat.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::PlanarField;
use crate::jsonutil;
use crate::rational::{rat, Rational};
use crate::series::pow_rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error(
        "cannot certify the field nonzero on the circle of radius {radius} (tolerance {tolerance})"
    )]
    ZeroOnCircle { radius: String, tolerance: String },
    #[error("component jets vanish at this truncation; winding undefined")]
    TruncationTooCoarse,
    #[error("parity violation: {0}")]
    ParityError(String),
    #[error("no stabilisation after {0} radius levels")]
    NoStabilization(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexMethod {
    Winding,
    TangencyFormula,
    Bendixson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub index: i64,
    pub method: IndexMethod,
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub radius: Rational,
    pub samples: usize,
    pub certified: bool,
    /// Lower bound achieved for `‖V‖∞` over the circle (0 for the
    /// combinatorial formulas).
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub min_norm_lower_bound: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// A point of the circle parametrisation: rational tan-half-angle or the
/// antipode of the parametrisation origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum CircleParam {
    Finite(Rational),
    Infinity,
}

impl CircleParam {
    fn point(&self, r: &Rational) -> (Rational, Rational) {
        match self {
            CircleParam::Infinity => (-r.clone(), Rational::zero()),
            CircleParam::Finite(t) => {
                let one = Rational::from_integer(1.into());
                let t2 = t * t;
                let denom = &one + &t2;
                (r * (&one - &t2) / &denom, r * rat(2, 1) * t / &denom)
            }
        }
    }
}

fn midpoint(a: &CircleParam, b: &CircleParam) -> CircleParam {
    let two = rat(2, 1);
    match (a, b) {
        (CircleParam::Finite(x), CircleParam::Finite(y)) => CircleParam::Finite((x + y) / &two),
        // Arcs touching t = ∞ have endpoints of large |t|; doubling walks
        // monotonically towards the antipode.
        (CircleParam::Infinity, CircleParam::Finite(y)) => CircleParam::Finite(y * &two),
        (CircleParam::Finite(x), CircleParam::Infinity) => CircleParam::Finite(x * &two),
        _ => unreachable!("arc with two infinite endpoints"),
    }
}

/// Half-open quadrant of a nonzero vector: 0 for `x>0, y≥0`, then
/// counterclockwise.
fn quadrant(v: &(Rational, Rational)) -> u8 {
    let (x, y) = v;
    if x.is_positive() && !y.is_negative() {
        0
    } else if y.is_positive() && !x.is_positive() {
        1
    } else if x.is_negative() && !y.is_positive() {
        2
    } else {
        3
    }
}

/// Coefficient-magnitude Lipschitz bound in the ∞-norm over the closed
/// disc of radius `r`: `Σ |c| · (i+j) · r^(i+j-1)`.
fn lipschitz_bound(f: &PlanarField, r: &Rational) -> Rational {
    let mut best = Rational::zero();
    for comp in [f.x_comp(), f.y_comp()] {
        let mut l = Rational::zero();
        for ((i, j), c) in comp.terms() {
            let d = i + j;
            if d == 0 {
                continue;
            }
            l += c.abs() * Rational::from_integer(d.into()) * pow_rat(r, d - 1);
        }
        if l > best {
            best = l;
        }
    }
    best
}

struct WindingMachine<'a> {
    field: &'a PlanarField,
    radius: Rational,
    tolerance: Rational,
    lipschitz: Rational,
    values: BTreeMap<CircleParam, (Rational, Rational)>,
    min_lower_bound: Option<Rational>,
    budget: usize,
}

impl<'a> WindingMachine<'a> {
    fn value(&mut self, p: &CircleParam) -> Result<(Rational, Rational), IndexError> {
        if let Some(v) = self.values.get(p) {
            return Ok(v.clone());
        }
        let (x, y) = p.point(&self.radius);
        let v = self.field.eval(&x, &y);
        if v.0.is_zero() && v.1.is_zero() {
            return Err(self.zero_err());
        }
        self.values.insert(p.clone(), v.clone());
        Ok(v)
    }

    fn zero_err(&self) -> IndexError {
        IndexError::ZeroOnCircle {
            radius: crate::rational::format_rational(&self.radius),
            tolerance: crate::rational::format_rational(&self.tolerance),
        }
    }

    /// Refine the arc `(a, b)` until both certificates hold; push the
    /// interior breakpoints and `b` onto `out`.
    fn refine(
        &mut self,
        a: CircleParam,
        b: CircleParam,
        depth: u32,
        out: &mut Vec<CircleParam>,
    ) -> Result<(), IndexError> {
        if depth > 16 || self.budget == 0 {
            return Err(self.zero_err());
        }
        self.budget -= 1;
        let va = self.value(&a)?;
        let vb = self.value(&b)?;
        let dot = &va.0 * &vb.0 + &va.1 * &vb.1;
        let pa = a.point(&self.radius);
        let pb = b.point(&self.radius);
        let chord = (&pa.0 - &pb.0).abs().max((&pa.1 - &pb.1).abs());
        let norm_a = va.0.abs().max(va.1.abs());
        let lower = norm_a - &self.lipschitz * &chord;
        if dot.is_positive() && lower > self.tolerance {
            self.min_lower_bound = Some(match self.min_lower_bound.take() {
                None => lower,
                Some(cur) => cur.min(lower),
            });
            out.push(b);
            return Ok(());
        }
        let m = midpoint(&a, &b);
        self.refine(a, m.clone(), depth + 1, out)?;
        self.refine(m, b, depth + 1, out)
    }
}

/// Certified winding number of the field direction along the circle of the
/// given radius.
///
/// Errors with `ZeroOnCircle` when the zero-free certificate cannot be
/// established above the tolerance (in particular when a singularity sits
/// on or near the circle).
pub fn winding_index(
    f: &PlanarField,
    radius: &Rational,
    tolerance: &Rational,
) -> Result<IndexReport, IndexError> {
    if f.x_comp().is_zero() && f.y_comp().is_zero() {
        return Err(IndexError::TruncationTooCoarse);
    }
    assert!(radius.is_positive(), "radius must be positive");
    let mut machine = WindingMachine {
        field: f,
        radius: radius.clone(),
        tolerance: tolerance.clone(),
        lipschitz: lipschitz_bound(f, radius),
        values: BTreeMap::new(),
        min_lower_bound: None,
        budget: 40_000,
    };
    // Initial cycle: t = ∞ then a symmetric ladder of rational angles.
    let ladder: Vec<Rational> = [
        (-6, 1),
        (-3, 1),
        (-3, 2),
        (-1, 1),
        (-2, 3),
        (-1, 3),
        (0, 1),
        (1, 3),
        (2, 3),
        (1, 1),
        (3, 2),
        (3, 1),
        (6, 1),
    ]
    .iter()
    .map(|(p, q)| rat(*p, *q))
    .collect();
    let mut cycle = vec![CircleParam::Infinity];
    cycle.extend(ladder.into_iter().map(CircleParam::Finite));
    let mut breakpoints = vec![cycle[0].clone()];
    for w in 0..cycle.len() {
        let a = cycle[w].clone();
        let b = cycle[(w + 1) % cycle.len()].clone();
        machine.refine(a, b, 0, &mut breakpoints)?;
    }
    // breakpoints now traverse the full circle, ending back at t = ∞.
    let mut delta_sum: i64 = 0;
    for w in breakpoints.windows(2) {
        let qa = quadrant(machine.values.get(&w[0]).expect("cached"));
        let qb = quadrant(machine.values.get(&w[1]).expect("cached"));
        let d = (4 + qb as i64 - qa as i64) % 4;
        delta_sum += match d {
            0 => 0,
            1 => 1,
            3 => -1,
            _ => unreachable!("quarter-turn certificate violated"),
        };
    }
    debug_assert_eq!(delta_sum % 4, 0);
    let samples = machine.values.len();
    let exact = f.is_exact();
    Ok(IndexReport {
        index: delta_sum / 4,
        method: IndexMethod::Winding,
        radius: radius.clone(),
        samples,
        certified: exact,
        min_norm_lower_bound: machine.min_lower_bound.unwrap_or_else(Rational::zero),
        caveat: if exact {
            None
        } else {
            Some(
                "components carry truncated tails: the certificate applies to the stored jet only"
                    .to_string(),
            )
        },
    })
}

/// Degree from interior/exterior tangency counts of a surrounding curve:
/// `1 + (i - e)/2`.
pub fn index_from_tangencies(interior: u64, exterior: u64) -> Result<i64, IndexError> {
    let diff = interior as i64 - exterior as i64;
    if diff.rem_euclid(2) != 0 {
        return Err(IndexError::ParityError(format!(
            "interior - exterior = {diff} must be even"
        )));
    }
    Ok(1 + diff / 2)
}

/// Bendixson's sector formula: `1 + (e - h)/2` from elliptic and
/// hyperbolic sector counts.
pub fn bendixson_index(elliptic: u64, hyperbolic: u64) -> Result<i64, IndexError> {
    let diff = elliptic as i64 - hyperbolic as i64;
    if diff.rem_euclid(2) != 0 {
        return Err(IndexError::ParityError(format!(
            "elliptic - hyperbolic = {diff} must be even"
        )));
    }
    Ok(1 + diff / 2)
}

#[derive(Debug, Clone, Copy)]
pub struct StabilizeOptions {
    pub max_levels: u32,
    pub zero_retries: u32,
}

impl Default for StabilizeOptions {
    fn default() -> Self {
        StabilizeOptions {
            max_levels: 12,
            zero_retries: 5,
        }
    }
}

/// Run the winding computation at radii `r, r/2, r/4, …` until three
/// consecutive runs agree; a `ZeroOnCircle` at some radius retries at 9/10
/// of it a few times (bad radii form a measure-zero set) before moving on.
pub fn radius_stabilized_index(
    f: &PlanarField,
    start_radius: &Rational,
    tolerance: &Rational,
    opts: StabilizeOptions,
) -> Result<IndexReport, IndexError> {
    let mut radius = start_radius.clone();
    let half = rat(1, 2);
    let shrink = rat(9, 10);
    let mut agreeing: Vec<IndexReport> = Vec::new();
    for _level in 0..opts.max_levels {
        let mut attempt = radius.clone();
        let mut report = None;
        for _retry in 0..=opts.zero_retries {
            match winding_index(f, &attempt, tolerance) {
                Ok(r) => {
                    report = Some(r);
                    break;
                }
                Err(IndexError::ZeroOnCircle { .. }) => {
                    attempt *= &shrink;
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(r) = report {
            if agreeing.last().is_none_or(|p| p.index == r.index) {
                agreeing.push(r);
            } else {
                agreeing = vec![r];
            }
            if agreeing.len() >= 3 {
                let mut last = agreeing.pop().expect("nonempty");
                last.certified = agreeing.iter().all(|r| r.certified) && last.certified;
                return Ok(last);
            }
        }
        radius *= &half;
    }
    Err(IndexError::NoStabilization(opts.max_levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::rational::rat_int;
    use crate::series::Series1;

    fn tol0() -> Rational {
        Rational::zero()
    }

    #[test]
    fn center_has_index_one() {
        let r = winding_index(&gallery::center(10), &rat(1, 2), &tol0()).unwrap();
        assert_eq!(r.index, 1);
        assert!(r.certified);
        assert!(r.min_norm_lower_bound.is_positive());
    }

    #[test]
    fn saddle_has_index_minus_one() {
        let r = winding_index(&gallery::saddle(10), &rat(1, 2), &tol0()).unwrap();
        assert_eq!(r.index, -1);
        assert!(r.certified);
    }

    #[test]
    fn linear_fields_follow_det_sign() {
        let cases: [([i64; 4], i64); 4] = [
            ([2, 1, 1, 1], 1),
            ([1, 3, 0, -2], -1),
            ([0, 1, -1, -1], 1),
            ([5, 0, 0, 3], 1),
        ];
        for (m, want) in cases {
            let matrix = [
                [rat_int(m[0]), rat_int(m[1])],
                [rat_int(m[2]), rat_int(m[3])],
            ];
            let f = gallery::linear_field(&matrix, 8);
            let r = winding_index(&f, &rat(1, 1), &tol0()).unwrap();
            assert_eq!(r.index, want, "matrix {m:?}");
        }
    }

    #[test]
    fn quartic_base_field_has_index_zero() {
        // the radial component is nonnegative, so the direction never wraps
        let a = Series1::zero("x", 16);
        let f = gallery::quartic_family(&a, 14).unwrap();
        let r = winding_index(&f, &rat(1, 4), &tol0()).unwrap();
        assert_eq!(r.index, 0);
        assert!(r.certified);
    }

    #[test]
    fn unit_multiple_leaves_index_unchanged() {
        use crate::series::Series2;
        let f = gallery::saddle(10);
        let unit = Series2::one(("x", "y"), 10)
            .add(&Series2::monomial(("x", "y"), (2, 0), rat_int(1), 10))
            .unwrap()
            .add(&Series2::monomial(("x", "y"), (0, 2), rat_int(1), 10))
            .unwrap();
        let g = f.mul_components(&unit).unwrap();
        let r1 = winding_index(&f, &rat(1, 2), &tol0()).unwrap();
        let r2 = winding_index(&g, &rat(1, 2), &tol0()).unwrap();
        assert_eq!(r1.index, r2.index);
    }

    #[test]
    fn zero_on_circle_detected() {
        use crate::series::Series2;
        // components share the zero set x² + y² = 1
        let vars = ("x", "y");
        let ring = Series2::from_terms(
            vars,
            &[
                ((2, 0), rat_int(1)),
                ((0, 2), rat_int(1)),
                ((0, 0), rat_int(-1)),
            ],
            10,
        );
        let f = PlanarField::new(ring.clone(), ring).unwrap();
        assert!(matches!(
            winding_index(&f, &rat(1, 1), &tol0()),
            Err(IndexError::ZeroOnCircle { .. })
        ));
    }

    #[test]
    fn tangency_and_sector_formulas() {
        assert_eq!(index_from_tangencies(0, 0).unwrap(), 1);
        assert_eq!(index_from_tangencies(2, 0).unwrap(), 2);
        assert_eq!(index_from_tangencies(0, 4).unwrap(), -1);
        assert!(index_from_tangencies(1, 0).is_err());
        assert_eq!(bendixson_index(0, 4).unwrap(), -1);
        assert_eq!(bendixson_index(0, 0).unwrap(), 1);
        assert_eq!(bendixson_index(2, 0).unwrap(), 2);
        assert!(bendixson_index(3, 0).is_err());
    }

    #[test]
    fn sector_formulas_agree_with_winding_corpus() {
        use crate::series::Series2;
        let tol = tol0();
        // saddle: four hyperbolic sectors, none elliptic
        let w = winding_index(&gallery::saddle(10), &rat(1, 2), &tol).unwrap();
        assert_eq!(w.index, bendixson_index(0, 4).unwrap());
        // node (radial): no elliptic or hyperbolic sectors
        let node = PlanarField::new(
            Series2::monomial(("x", "y"), (1, 0), rat_int(1), 8),
            Series2::monomial(("x", "y"), (0, 1), rat_int(1), 8),
        )
        .unwrap();
        let w = winding_index(&node, &rat(1, 2), &tol).unwrap();
        assert_eq!(w.index, bendixson_index(0, 0).unwrap());
        // center: a transversal circle has no tangencies
        let w = winding_index(&gallery::center(10), &rat(1, 2), &tol).unwrap();
        assert_eq!(w.index, index_from_tangencies(0, 0).unwrap());
        // two elliptic sectors: (x² − y²) ∂x + 2xy ∂y has degree 2
        let vars = ("x", "y");
        let f = PlanarField::new(
            Series2::from_terms(vars, &[((2, 0), rat_int(1)), ((0, 2), rat_int(-1))], 8),
            Series2::monomial(vars, (1, 1), rat_int(2), 8),
        )
        .unwrap();
        let w = winding_index(&f, &rat(1, 2), &tol).unwrap();
        assert_eq!(w.index, 2);
        assert_eq!(w.index, bendixson_index(2, 0).unwrap());
    }

    #[test]
    fn stabilized_index_on_center_and_saddle() {
        let r = radius_stabilized_index(
            &gallery::center(10),
            &rat(1, 2),
            &tol0(),
            StabilizeOptions::default(),
        )
        .unwrap();
        assert_eq!(r.index, 1);
        let r = radius_stabilized_index(
            &gallery::saddle(10),
            &rat(1, 2),
            &tol0(),
            StabilizeOptions::default(),
        )
        .unwrap();
        assert_eq!(r.index, -1);
    }

    #[test]
    fn winding_is_deterministic() {
        let f = gallery::center(10);
        let a = winding_index(&f, &rat(1, 2), &tol0()).unwrap();
        let b = winding_index(&f, &rat(1, 2), &tol0()).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
