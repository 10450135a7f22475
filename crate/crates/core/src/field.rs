//! Planar and three-dimensional vector fields as series tuples: linear
//! parts, exact singularity classification, tangent cones, first-integral
//! residuals and isolatedness witnesses.
//!
//! All classification decisions are exact. In particular the resonance test
//! `λ/μ ∈ Q_{>0}` is decided without algebraic-number arithmetic: when the
//! discriminant is a rational square both eigenvalues are rational and the
//! ratio is compared directly; when it is not, a rational ratio would force
//! the square root of the discriminant to be rational (for nonzero trace),
//! so the only remaining case is trace zero, ratio -1.

use num::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::jsonutil;
use crate::poly::{
    gcd_bivariate, isolate_irrational_roots, rational_roots, resultant_y, BPoly, UPoly,
};
use crate::rational::{exact_sqrt, Rational};
use crate::series::{Series2, Series3, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("field is not singular at the base point")]
    NotSingular,
    #[error("field components are identically zero")]
    ZeroField,
    #[error("tangent cone jet vanishes identically (dicritical)")]
    DicriticalCone,
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// A planar vector field `A ∂/∂x + B ∂/∂y`, base point at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarField {
    x_comp: Series2,
    y_comp: Series2,
}

impl PlanarField {
    /// Build from the two components (same variable pair; the truncation is
    /// normalised to the common minimum).
    pub fn new(x_comp: Series2, y_comp: Series2) -> Result<Self, FieldError> {
        if x_comp.vars() != y_comp.vars() {
            return Err(SeriesError::VariableMismatch {
                expected: format!("{:?}", x_comp.vars()),
                found: format!("{:?}", y_comp.vars()),
            }
            .into());
        }
        let trunc = x_comp.trunc().min(y_comp.trunc());
        Ok(PlanarField {
            x_comp: x_comp.truncate_to(trunc),
            y_comp: y_comp.truncate_to(trunc),
        })
    }

    pub fn x_comp(&self) -> &Series2 {
        &self.x_comp
    }

    pub fn y_comp(&self) -> &Series2 {
        &self.y_comp
    }

    pub fn vars(&self) -> (&str, &str) {
        self.x_comp.vars()
    }

    pub fn trunc(&self) -> u32 {
        self.x_comp.trunc().min(self.y_comp.trunc())
    }

    /// Both components carry exact polynomial jets.
    pub fn is_exact(&self) -> bool {
        self.x_comp.is_exact() && self.y_comp.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        self.x_comp.is_zero() && self.y_comp.is_zero()
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.x_comp.coeff(0, 0).is_zero() && self.y_comp.coeff(0, 0).is_zero()
    }

    pub fn truncate_to(&self, trunc: u32) -> PlanarField {
        PlanarField {
            x_comp: self.x_comp.truncate_to(trunc),
            y_comp: self.y_comp.truncate_to(trunc),
        }
    }

    /// Widen both windows when the jets are exact polynomials.
    pub fn pad_to(&self, trunc: u32) -> PlanarField {
        PlanarField {
            x_comp: self.x_comp.pad_to(trunc),
            y_comp: self.y_comp.pad_to(trunc),
        }
    }

    /// Evaluate both components at a rational point (jet as polynomial).
    pub fn eval(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (self.x_comp.eval(x, y), self.y_comp.eval(x, y))
    }

    /// Multiply both components by the same series (time reparametrisation
    /// by a unit when `u` is one).
    pub fn mul_components(&self, u: &Series2) -> Result<PlanarField, FieldError> {
        Ok(PlanarField {
            x_comp: self.x_comp.mul(u)?,
            y_comp: self.y_comp.mul(u)?,
        })
    }

    /// Divide both components exactly by the same series.
    pub fn divide_components(&self, u: &Series2) -> Result<PlanarField, FieldError> {
        Ok(PlanarField {
            x_comp: self.x_comp.divide_exact(u)?,
            y_comp: self.y_comp.divide_exact(u)?,
        })
    }

    /// Swap the roles of the two coordinates.
    pub fn swap_axes(&self) -> PlanarField {
        PlanarField {
            x_comp: self.y_comp.swap_vars(),
            y_comp: self.x_comp.swap_vars(),
        }
    }

    /// Push forward through the linear change `(x, y) = M (u, v)`:
    /// the new components are `M^{-1} · F(M (u, v))`.
    pub fn conjugate_linear(&self, m: &[[Rational; 2]; 2]) -> Result<PlanarField, FieldError> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_zero() {
            return Err(FieldError::SingularMatrix);
        }
        let vars = self.vars();
        let trunc = self.trunc();
        let lin = |a: &Rational, b: &Rational| -> Series2 {
            Series2::from_terms(vars, &[((1, 0), a.clone()), ((0, 1), b.clone())], trunc)
        };
        let gx = lin(&m[0][0], &m[0][1]);
        let gy = lin(&m[1][0], &m[1][1]);
        let ax = self.x_comp.substitute(&gx, &gy)?;
        let ay = self.y_comp.substitute(&gx, &gy)?;
        // inverse matrix rows
        let inv = [
            [&m[1][1] / &det, -(&m[0][1] / &det)],
            [-(&m[1][0] / &det), &m[0][0] / &det],
        ];
        let nx = ax.scale(&inv[0][0]).add(&ay.scale(&inv[0][1]))?;
        let ny = ax.scale(&inv[1][0]).add(&ay.scale(&inv[1][1]))?;
        PlanarField::new(nx, ny)
    }
}

/// A three-dimensional vector field `A ∂/∂x + B ∂/∂y + C ∂/∂z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Field3 {
    x_comp: Series3,
    y_comp: Series3,
    z_comp: Series3,
}

impl Field3 {
    pub fn new(x_comp: Series3, y_comp: Series3, z_comp: Series3) -> Result<Self, FieldError> {
        if x_comp.vars() != y_comp.vars() || x_comp.vars() != z_comp.vars() {
            return Err(FieldError::HypothesisViolated(
                "components must share the variable triple".to_string(),
            ));
        }
        Ok(Field3 {
            x_comp,
            y_comp,
            z_comp,
        })
    }

    pub fn x_comp(&self) -> &Series3 {
        &self.x_comp
    }

    pub fn y_comp(&self) -> &Series3 {
        &self.y_comp
    }

    pub fn z_comp(&self) -> &Series3 {
        &self.z_comp
    }

    pub fn vars(&self) -> (&str, &str, &str) {
        self.x_comp.vars()
    }

    pub fn is_singular_at_origin(&self) -> bool {
        self.x_comp.coeff(0, 0, 0).is_zero()
            && self.y_comp.coeff(0, 0, 0).is_zero()
            && self.z_comp.coeff(0, 0, 0).is_zero()
    }

    /// Restrict to the hyperplane where the selected variable vanishes,
    /// keeping the two complementary components as a planar field.
    ///
    /// Only meaningful when the dropped component vanishes on that
    /// hyperplane (the hyperplane is invariant); the caller checks.
    pub fn restrict_to_hyperplane(&self, zero_position: usize) -> Result<PlanarField, FieldError> {
        let comps = [&self.x_comp, &self.y_comp, &self.z_comp];
        let kept: Vec<usize> = (0..3).filter(|p| *p != zero_position).collect();
        PlanarField::new(
            comps[kept[0]].restrict(zero_position),
            comps[kept[1]].restrict(zero_position),
        )
    }
}

/// Exact 2×2 linear part data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearPart {
    #[serde(serialize_with = "jsonutil::ser_matrix2")]
    pub matrix: [[Rational; 2]; 2],
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub trace: Rational,
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub det: Rational,
    #[serde(serialize_with = "jsonutil::ser_rational")]
    pub discriminant: Rational,
}

impl LinearPart {
    pub fn from_matrix(matrix: [[Rational; 2]; 2]) -> Self {
        let trace = &matrix[0][0] + &matrix[1][1];
        let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
        let discriminant = &trace * &trace - Rational::from_integer(4.into()) * &det;
        LinearPart {
            matrix,
            trace,
            det,
            discriminant,
        }
    }

    /// Exact eigenvalues when they are rational.
    pub fn rational_eigenvalues(&self) -> Option<(Rational, Rational)> {
        let s = exact_sqrt(&self.discriminant)?;
        let two = Rational::from_integer(2.into());
        Some(((&self.trace + &s) / &two, (&self.trace - &s) / &two))
    }

    /// A rational eigenvector for a rational eigenvalue.
    pub fn eigenvector(&self, lambda: &Rational) -> (Rational, Rational) {
        let a = &self.matrix[0][0];
        let b = &self.matrix[0][1];
        let c = &self.matrix[1][0];
        let d = &self.matrix[1][1];
        if !b.is_zero() {
            (b.clone(), lambda - a)
        } else if !c.is_zero() {
            (lambda - d, c.clone())
        } else if a == lambda {
            (Rational::from_integer(1.into()), Rational::zero())
        } else {
            (Rational::zero(), Rational::from_integer(1.into()))
        }
    }
}

/// The Jacobian of the components at the origin.
///
/// Errors with `NotSingular` when either component has a constant term: the
/// linear part of a vector field is only invariant at a singular point.
pub fn linear_part(f: &PlanarField) -> Result<LinearPart, FieldError> {
    if !f.is_singular_at_origin() {
        return Err(FieldError::NotSingular);
    }
    Ok(jacobian(f))
}

fn jacobian(f: &PlanarField) -> LinearPart {
    LinearPart::from_matrix([
        [f.x_comp.coeff(1, 0), f.x_comp.coeff(0, 1)],
        [f.y_comp.coeff(1, 0), f.y_comp.coeff(0, 1)],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SingularityTag {
    NonSingular,
    SimpleTwoSeparatrix,
    SaddleNode,
    ComplexEigenvalues,
    ResonantOrDegenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityClass {
    pub tag: SingularityTag,
    pub linear: LinearPart,
    /// Exact eigenvalues when they exist as rationals.
    #[serde(serialize_with = "jsonutil::ser_opt_rational_pair")]
    pub rational_eigenvalues: Option<(Rational, Rational)>,
}

/// Exact classification of the singularity at the origin.
///
/// A nonsingular base point yields the `NonSingular` tag (reduction leaves
/// need it); everything else follows the eigenvalue case analysis, decided
/// entirely in rational arithmetic.
pub fn classify_singularity(f: &PlanarField) -> SingularityClass {
    let linear = jacobian(f);
    if !f.is_singular_at_origin() {
        return SingularityClass {
            tag: SingularityTag::NonSingular,
            rational_eigenvalues: linear.rational_eigenvalues(),
            linear,
        };
    }
    let disc = linear.discriminant.clone();
    if disc.is_negative() {
        return SingularityClass {
            tag: SingularityTag::ComplexEigenvalues,
            rational_eigenvalues: None,
            linear,
        };
    }
    let eigs = linear.rational_eigenvalues();
    let tag = if linear.det.is_zero() {
        if linear.trace.is_zero() {
            // nilpotent or zero linear part
            SingularityTag::ResonantOrDegenerate
        } else {
            SingularityTag::SaddleNode
        }
    } else {
        match &eigs {
            Some((l, m)) => {
                let ratio = l / m;
                if ratio.is_positive() {
                    // includes the ratio-1 (repeated eigenvalue) case
                    SingularityTag::ResonantOrDegenerate
                } else {
                    SingularityTag::SimpleTwoSeparatrix
                }
            }
            None => {
                // Irrational real pair: the ratio is rational only when the
                // trace vanishes (ratio -1), never in Q_{>0}.
                SingularityTag::SimpleTwoSeparatrix
            }
        }
    };
    SingularityClass {
        tag,
        rational_eigenvalues: eigs,
        linear,
    }
}

/// A tangent direction of a line through the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Direction {
    /// The line `y = slope · x`.
    Slope {
        #[serde(serialize_with = "jsonutil::ser_rational")]
        slope: Rational,
    },
    /// The line `x = 0`.
    Vertical,
    /// `y = c·x` for an irrational algebraic `c` certified inside `(low, high)`.
    IrrationalSlope {
        #[serde(serialize_with = "jsonutil::ser_rational")]
        low: Rational,
        #[serde(serialize_with = "jsonutil::ser_rational")]
        high: Rational,
    },
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Slope { slope } => {
                write!(f, "y = {}·x", crate::rational::format_rational(slope))
            }
            Direction::Vertical => write!(f, "x = 0"),
            Direction::IrrationalSlope { low, high } => write!(
                f,
                "y = c·x, c in ({}, {})",
                crate::rational::format_rational(low),
                crate::rational::format_rational(high)
            ),
        }
    }
}

/// The tangent-cone polynomial of a singular planar field and its real
/// root lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentCone {
    /// Homogeneous polynomial whose zero lines are the candidate
    /// separatrix tangents: the lowest homogeneous part of `y·A - x·B`.
    pub poly: Series2,
    pub degree: u32,
    pub directions: Vec<(Direction, u32)>,
}

/// Candidate separatrix tangents at the origin.
///
/// The cone is the degree-(ν+1) homogeneous part of `y·A − x·B`, where ν is
/// the minimal component order; when that jet vanishes identically the
/// point is dicritical and reported as such. Real root lines come with
/// exact certificates: rational slopes by rational-root search, irrational
/// ones as Sturm isolating intervals; complex-conjugate factors contribute
/// no direction.
pub fn tangent_cone(f: &PlanarField) -> Result<TangentCone, FieldError> {
    if !f.is_singular_at_origin() {
        return Err(FieldError::NotSingular);
    }
    if f.is_zero() {
        return Err(FieldError::ZeroField);
    }
    let nu = f
        .x_comp
        .ord()
        .into_iter()
        .chain(f.y_comp.ord())
        .min()
        .ok_or(FieldError::ZeroField)?;
    let vars = f.vars();
    let trunc = f.trunc();
    let one = Rational::from_integer(1.into());
    let y = Series2::monomial(vars, (0, 1), one.clone(), trunc + 2);
    let x = Series2::monomial(vars, (1, 0), one, trunc + 2);
    let pencil = y.mul(&f.x_comp)?.sub(&x.mul(&f.y_comp)?)?;
    if nu + 1 >= pencil.trunc() {
        return Err(FieldError::HypothesisViolated(
            "truncation too small to read the tangent cone".to_string(),
        ));
    }
    let cone = pencil.homogeneous_part(nu + 1);
    if cone.is_zero() {
        return Err(FieldError::DicriticalCone);
    }
    let degree = nu + 1;
    // slope polynomial p(c) = cone(1, c)
    let slice = cone.homogeneous_slice(degree);
    let slope_poly = UPoly::new(slice.clone());
    let mut directions: Vec<(Direction, u32)> = Vec::new();
    // the line x = 0 is a root line iff the y^degree coefficient vanishes
    if slice[degree as usize].is_zero() {
        let mult = degree as usize - slope_poly.degree().unwrap_or(0);
        directions.push((Direction::Vertical, mult as u32));
    }
    let mut remaining = slope_poly.clone();
    for (root, mult) in rational_roots(&slope_poly) {
        directions.push((
            Direction::Slope {
                slope: root.clone(),
            },
            mult,
        ));
        for _ in 0..mult {
            let lin = UPoly::new(vec![-root.clone(), Rational::from_integer(1.into())]);
            remaining = remaining.div_exact(&lin);
        }
    }
    for (low, high) in isolate_irrational_roots(&remaining) {
        directions.push((Direction::IrrationalSlope { low, high }, 1));
    }
    Ok(TangentCone {
        poly: cone,
        degree,
        directions,
    })
}

/// Residual `df(F) = Σ ∂f/∂xᵢ · Fᵢ` for a planar field; zero up to the
/// truncation iff `f` is a first integral to that order.
pub fn check_first_integral_planar(
    f: &Series2,
    field: &PlanarField,
) -> Result<Series2, FieldError> {
    let gx = f.derive(0).mul(&field.x_comp)?;
    let gy = f.derive(1).mul(&field.y_comp)?;
    Ok(gx.add(&gy)?)
}

/// Residual `df(F)` for a three-dimensional field.
pub fn check_first_integral_3d(f: &Series3, field: &Field3) -> Result<Series3, FieldError> {
    let gx = f.derive(0).mul(&field.x_comp)?;
    let gy = f.derive(1).mul(&field.y_comp)?;
    let gz = f.derive(2).mul(&field.z_comp)?;
    Ok(gx.add(&gy)?.add(&gz)?)
}

/// Answer of an isolatedness test, with a human-readable certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum IsolatedWitness {
    Isolated { certificate: String },
    NotIsolated { certificate: String },
    Unknown { reason: String },
}

/// Decide isolatedness of the origin for the stored polynomial jets.
///
/// Strategy, in order: a structurally positive-definite component (all
/// exponents even, all coefficients positive, pure even powers of both
/// variables present) vanishes only at the origin; a nondegenerate linear
/// part forces isolation; otherwise the bivariate gcd of the jets decides —
/// a nonconstant common factor through the origin gives a singular curve,
/// a trivial gcd gives finitely many common zeros (cross-checked against
/// the resultant). Degenerate truncations return `Unknown`.
pub fn isolated_singularity_witness(f: &PlanarField) -> IsolatedWitness {
    if f.x_comp.is_zero() && f.y_comp.is_zero() {
        return IsolatedWitness::Unknown {
            reason: "both component jets vanish at this truncation".to_string(),
        };
    }
    for (comp, name) in [(&f.x_comp, "x"), (&f.y_comp, "y")] {
        if is_positive_definite_2(comp) {
            return IsolatedWitness::Isolated {
                certificate: format!(
                    "the d/d{name} component is a positive combination of even powers covering both variables; it vanishes only at the origin"
                ),
            };
        }
    }
    let lin = jacobian(f);
    if !lin.det.is_zero() {
        return IsolatedWitness::Isolated {
            certificate: "nondegenerate linear part (det != 0)".to_string(),
        };
    }
    let a = to_bpoly(&f.x_comp);
    let b = to_bpoly(&f.y_comp);
    if a.is_zero() || b.is_zero() {
        return IsolatedWitness::Unknown {
            reason: "one component jet vanishes at this truncation".to_string(),
        };
    }
    let g = gcd_bivariate(&a, &b);
    if !g.is_constant() {
        if g.eval_origin().is_zero() {
            return IsolatedWitness::NotIsolated {
                certificate: format!(
                    "components share a nonconstant factor through the origin (degree {} in y)",
                    g.degree_y().unwrap_or(0)
                ),
            };
        }
        // common factor is a unit near the origin
        return IsolatedWitness::Isolated {
            certificate: "common factor does not vanish at the origin; cofactors are coprime"
                .to_string(),
        };
    }
    // coprime jets: finitely many common zeros; record the resultant order
    if a.degree_y() >= Some(1) && b.degree_y() >= Some(1) {
        let r = resultant_y(&a, &b);
        if r.is_zero() {
            return IsolatedWitness::Unknown {
                reason: "resultant vanished despite trivial gcd".to_string(),
            };
        }
        return IsolatedWitness::Isolated {
            certificate: format!(
                "coprime jets; Res_y is a nonzero polynomial of degree {}",
                r.degree().unwrap_or(0)
            ),
        };
    }
    IsolatedWitness::Isolated {
        certificate: "coprime jets (finitely many common zeros)".to_string(),
    }
}

/// Structural isolatedness certificate for a three-dimensional field: some
/// component is a positive combination of even powers covering all three
/// variables, hence positive away from the origin.
pub fn isolated_witness_3d(f: &Field3) -> IsolatedWitness {
    for (comp, name) in [(&f.x_comp, "x"), (&f.y_comp, "y"), (&f.z_comp, "z")] {
        if is_positive_definite_3(comp) {
            return IsolatedWitness::Isolated {
                certificate: format!(
                    "the d/d{name} component is a positive combination of even powers with pure powers of all three variables; it vanishes only at the origin"
                ),
            };
        }
    }
    IsolatedWitness::Unknown {
        reason: "no structurally positive-definite component found".to_string(),
    }
}

fn is_positive_definite_2(s: &Series2) -> bool {
    if s.is_zero() {
        return false;
    }
    let (mut pure_x, mut pure_y) = (false, false);
    for ((i, j), c) in s.terms() {
        if i % 2 != 0 || j % 2 != 0 || !c.is_positive() {
            return false;
        }
        if j == 0 && i > 0 {
            pure_x = true;
        }
        if i == 0 && j > 0 {
            pure_y = true;
        }
        if i == 0 && j == 0 {
            return false; // constant term: not singular at the origin anyway
        }
    }
    pure_x && pure_y
}

fn is_positive_definite_3(s: &Series3) -> bool {
    if s.is_zero() {
        return false;
    }
    let mut pure = [false; 3];
    for ((i, j, k), c) in s.terms() {
        if i % 2 != 0 || j % 2 != 0 || k % 2 != 0 || !c.is_positive() {
            return false;
        }
        match (i > 0, j > 0, k > 0) {
            (true, false, false) => pure[0] = true,
            (false, true, false) => pure[1] = true,
            (false, false, true) => pure[2] = true,
            (false, false, false) => return false,
            _ => {}
        }
    }
    pure.iter().all(|p| *p)
}

/// Stored jet as a polynomial in y with Q[x] coefficients.
fn to_bpoly(s: &Series2) -> BPoly {
    let max_j = s.terms().map(|((_, j), _)| j).max().unwrap_or(0);
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); max_j as usize + 1];
    for ((i, j), c) in s.terms() {
        let row = &mut rows[j as usize];
        if row.len() <= i as usize {
            row.resize(i as usize + 1, Rational::zero());
        }
        row[i as usize] = c.clone();
    }
    BPoly::new(rows.into_iter().map(UPoly::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::rational::{rat, rat_int};
    use crate::series::Series1;

    fn xy() -> (&'static str, &'static str) {
        ("x", "y")
    }

    fn mono(e: (u32, u32), c: i64, t: u32) -> Series2 {
        Series2::monomial(xy(), e, rat_int(c), t)
    }

    #[test]
    fn linear_part_center() {
        let f = gallery::center(12);
        let lp = linear_part(&f).unwrap();
        assert_eq!(lp.matrix[0][1], rat_int(-1));
        assert_eq!(lp.matrix[1][0], rat_int(1));
        assert_eq!(lp.trace, rat_int(0));
        assert_eq!(lp.det, rat_int(1));
    }

    #[test]
    fn linear_part_saddle_and_nonsingular() {
        let f = gallery::saddle(12);
        let lp = linear_part(&f).unwrap();
        assert_eq!(lp.trace, rat_int(0));
        assert_eq!(lp.det, rat_int(-1));

        let g = PlanarField::new(Series2::one(xy(), 6), mono((0, 1), 1, 6)).unwrap();
        assert!(matches!(linear_part(&g), Err(FieldError::NotSingular)));
    }

    #[test]
    fn linear_part_of_quartic_family_vanishes() {
        let a = Series1::zero("x", 12);
        let f = gallery::quartic_family(&a, 12).unwrap();
        let lp = linear_part(&f).unwrap();
        assert_eq!(
            lp.matrix,
            [[rat_int(0), rat_int(0)], [rat_int(0), rat_int(0)]]
        );
    }

    #[test]
    fn classify_basic_cases() {
        assert_eq!(
            classify_singularity(&gallery::saddle(8)).tag,
            SingularityTag::SimpleTwoSeparatrix
        );
        assert_eq!(
            classify_singularity(&gallery::center(8)).tag,
            SingularityTag::ComplexEigenvalues
        );
        // z^2 d/dz - w(1+z) d/dw: saddle-node with eigenvalues 0, -1
        let n = gallery::saddle_node_normal_form(8);
        let c = classify_singularity(&n);
        assert_eq!(c.tag, SingularityTag::SaddleNode);
        assert_eq!(c.rational_eigenvalues, Some((rat_int(0), rat_int(-1))));
        // 2x d/dx + y d/dy: ratio 2 in Q_{>0}
        let f = PlanarField::new(mono((1, 0), 2, 8), mono((0, 1), 1, 8)).unwrap();
        assert_eq!(
            classify_singularity(&f).tag,
            SingularityTag::ResonantOrDegenerate
        );
    }

    #[test]
    fn classify_irrational_pair_is_simple() {
        // x' = x + y, y' = x: trace 1, det -1, disc 5 (not a square)
        let f = PlanarField::new(
            mono((1, 0), 1, 8).add(&mono((0, 1), 1, 8)).unwrap(),
            mono((1, 0), 1, 8),
        )
        .unwrap();
        let c = classify_singularity(&f);
        assert_eq!(c.tag, SingularityTag::SimpleTwoSeparatrix);
        assert!(c.rational_eigenvalues.is_none());
    }

    #[test]
    fn tangent_cone_quartic_family() {
        let a = Series1::from_terms("x", &[(2, rat_int(1))], 16);
        let f = gallery::quartic_family(&a, 16).unwrap();
        let cone = tangent_cone(&f).unwrap();
        assert_eq!(cone.degree, 3);
        assert_eq!(cone.poly.coeff(0, 3), rat_int(1));
        assert_eq!(cone.poly.coeff(2, 1), rat_int(1));
        assert_eq!(cone.poly.num_terms(), 2);
        assert_eq!(
            cone.directions,
            vec![(Direction::Slope { slope: rat_int(0) }, 1)]
        );
    }

    #[test]
    fn tangent_cone_stable_across_truncations() {
        let a = Series1::from_terms("x", &[(2, rat(1, 2)), (3, rat_int(-2))], 32);
        for n in 4..=24u32 {
            let f = gallery::quartic_family(&a, n).unwrap();
            let cone = tangent_cone(&f).unwrap();
            assert_eq!(cone.degree, 3, "trunc {n}");
            assert_eq!(cone.poly.coeff(0, 3), rat_int(1), "trunc {n}");
            assert_eq!(cone.poly.coeff(2, 1), rat_int(1), "trunc {n}");
            assert_eq!(cone.poly.num_terms(), 2, "trunc {n}");
        }
    }

    #[test]
    fn tangent_cone_radial_is_dicritical() {
        let f = PlanarField::new(mono((1, 0), 1, 8), mono((0, 1), 1, 8)).unwrap();
        assert!(matches!(tangent_cone(&f), Err(FieldError::DicriticalCone)));
    }

    #[test]
    fn tangent_cone_two_slopes() {
        // F = y d/dx + x d/dy: yA - xB = y^2 - x^2, directions y = ±x
        let f = PlanarField::new(mono((0, 1), 1, 8), mono((1, 0), 1, 8)).unwrap();
        let cone = tangent_cone(&f).unwrap();
        assert_eq!(cone.degree, 2);
        let slopes: Vec<_> = cone.directions.iter().map(|(d, _)| d.clone()).collect();
        assert!(slopes.contains(&Direction::Slope { slope: rat_int(1) }));
        assert!(slopes.contains(&Direction::Slope { slope: rat_int(-1) }));
    }

    #[test]
    fn first_integral_center() {
        let f = gallery::center(12);
        let h = mono((2, 0), 1, 12).add(&mono((0, 2), 1, 12)).unwrap();
        let r = check_first_integral_planar(&h, &f).unwrap();
        assert!(r.is_zero());
        let x = mono((1, 0), 1, 12);
        let r2 = check_first_integral_planar(&x, &f).unwrap();
        assert_eq!(r2.coeff(0, 1), rat_int(-1));
        assert_eq!(r2.num_terms(), 1);
    }

    #[test]
    fn isolated_witness_cases() {
        // common factor through the origin: (x y) d/dx + (x y^2) d/dy
        let f = PlanarField::new(mono((1, 1), 1, 8), mono((1, 2), 1, 8)).unwrap();
        assert!(matches!(
            isolated_singularity_witness(&f),
            IsolatedWitness::NotIsolated { .. }
        ));
        // center: nondegenerate linear part
        assert!(matches!(
            isolated_singularity_witness(&gallery::center(8)),
            IsolatedWitness::Isolated { .. }
        ));
        // quartic family: positive-definite first component
        let a = Series1::from_terms("x", &[(2, rat(1, 3))], 12);
        let f = gallery::quartic_family(&a, 12).unwrap();
        assert!(matches!(
            isolated_singularity_witness(&f),
            IsolatedWitness::Isolated { .. }
        ));
    }

    #[test]
    fn isolated_witness_3d_unfolding() {
        let a = Series1::from_terms("x", &[(2, rat_int(1))], 12);
        let f = gallery::quartic_family_unfolding(&a, 12).unwrap();
        match isolated_witness_3d(&f) {
            IsolatedWitness::Isolated { certificate } => {
                assert!(certificate.contains("d/dx"));
            }
            other => panic!("expected isolated, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_preserves_classification() {
        let f = gallery::saddle(10);
        let m = [[rat_int(2), rat_int(1)], [rat_int(1), rat_int(1)]];
        let g = f.conjugate_linear(&m).unwrap();
        assert_eq!(
            classify_singularity(&g).tag,
            SingularityTag::SimpleTwoSeparatrix
        );
    }

    #[test]
    fn leibniz_square_of_first_integral() {
        let f = gallery::center(12);
        let h = mono((2, 0), 1, 12).add(&mono((0, 2), 1, 12)).unwrap();
        let h2 = h.mul(&h).unwrap();
        assert!(check_first_integral_planar(&h2, &f).unwrap().is_zero());
    }
}
