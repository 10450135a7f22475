//! Formal separatrices: graph-series solutions of the invariance equation
//! at simple and saddle-node singularities, and the recursive blow-up
//! search returning every formal separatrix with its blow-down chain.
//!
//! The graph solver works coefficient by coefficient. Writing the field as
//! `A ∂x + B ∂y` with `∂A/∂y(0) = 0` (the vertical axis is an
//! eigendirection), the invariance equation `B(x, s(x)) = s'(x)·A(x, s(x))`
//! determines `s_k` through the multiplier `μ − k·λ`, where `λ = ∂A/∂x(0)`
//! and `μ = ∂B/∂y(0)`. Simplicity of the singularity is exactly what keeps
//! every multiplier nonzero, so a vanishing multiplier is reported as a
//! classification cross-check failure rather than patched over.

use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::blowup::{blowup_point, translate, BlowupError, ChartKind};
use crate::field::{
    classify_singularity, isolated_witness_3d, tangent_cone, Direction, Field3, FieldError,
    IsolatedWitness, PlanarField, SingularityTag,
};
use crate::gallery;
use crate::jsonutil;
use crate::rational::Rational;
use crate::series::{Series1, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatrixError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error("resonant multiplier at order {order}: classification should have excluded it")]
    Resonance { order: u32 },
    #[error("axis is not prepared for a graph solve: {0}")]
    NotPrepared(String),
    #[error("field is not singular at the origin")]
    NotSingular,
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("degenerate curve: both parametrisation derivatives vanish")]
    DegenerateCurve,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// Parameter variable of every stored curve parametrisation.
pub const PARAM_VAR: &str = "t";

/// Which graph form to solve for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphAxis {
    /// `y = s(x)`: graph over the first variable.
    YOverX,
    /// `x = s(y)`: graph over the second variable.
    XOverY,
}

/// Solve the invariance equation for a graph separatrix `s` with `s(0)=0`.
///
/// Preconditions: the complementary axis must be an eigendirection (for
/// `y = s(x)` this means `∂A/∂y(0) = 0`); the caller normalises first when
/// needed. The field window must exceed `n`.
pub fn graph_separatrix(
    f: &PlanarField,
    axis: GraphAxis,
    n: u32,
) -> Result<Series1, SeparatrixError> {
    let g = match axis {
        GraphAxis::YOverX => f.clone(),
        GraphAxis::XOverY => f.swap_axes(),
    };
    if !g.is_singular_at_origin() {
        return Err(SeparatrixError::NotSingular);
    }
    if g.trunc() <= n {
        return Err(SeparatrixError::TruncationTooSmall(format!(
            "field window {} cannot determine {} coefficients",
            g.trunc(),
            n
        )));
    }
    let a_cross = g.x_comp().coeff(0, 1);
    if !a_cross.is_zero() {
        return Err(SeparatrixError::NotPrepared(
            "the transversal axis is not an eigendirection (∂A/∂y(0) ≠ 0)".to_string(),
        ));
    }
    let lambda = g.x_comp().coeff(1, 0);
    let mu = g.y_comp().coeff(0, 1);
    let var = g.vars().0.to_string();
    let mut s = Series1::zero(&var, n + 1);
    for k in 1..=n {
        let multiplier = &mu - Rational::from_integer(k.into()) * &lambda;
        if multiplier.is_zero() {
            return Err(SeparatrixError::Resonance { order: k });
        }
        let b_on = g.y_comp().substitute_second(&s)?;
        let a_on = g.x_comp().substitute_second(&s)?;
        let residual = b_on.sub(&s.derive().mul(&a_on)?)?;
        let r_k = residual.coeff(k);
        if !r_k.is_zero() {
            let coeff = -r_k / &multiplier;
            s = s.add(&Series1::monomial(&var, k, coeff, n + 1))?;
        }
    }
    Ok(s)
}

/// One step of a blow-down chain, in application (leaf-to-root) order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum ChainStep {
    /// Undo `y = x·y₁`: `(γ₁, γ₂) ↦ (γ₁, γ₁·γ₂)`.
    BlowdownX,
    /// Undo `x = x₁·y`: `(γ₁, γ₂) ↦ (γ₁·γ₂, γ₂)`.
    BlowdownY,
    /// Undo a recentering: add the point back.
    Translate {
        #[serde(serialize_with = "jsonutil::ser_rational_pair")]
        point: (Rational, Rational),
    },
    /// Undo a linear normalisation: multiply by the matrix.
    Linear {
        #[serde(serialize_with = "jsonutil::ser_matrix2")]
        matrix: [[Rational; 2]; 2],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveRole {
    /// Tangent to the nonzero eigenvalue of a saddle-node.
    Strong,
    /// Tangent to the zero eigenvalue of a saddle-node.
    Weak,
    /// One of the two separatrices of a simple singularity.
    Eigendirection,
    /// Contained in the exceptional divisor (blows down to the point).
    DivisorContained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveForm {
    GraphY,
    GraphX,
    Parametrized,
}

/// A formal invariant curve through the origin, stored as a parametrised
/// pair `t ↦ (γ₁(t), γ₂(t))` together with the blow-down chain that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalCurve {
    pub form: CurveForm,
    pub param_x: Series1,
    pub param_y: Series1,
    pub chain: Vec<ChainStep>,
    pub tangent: Direction,
    pub role: CurveRole,
    /// Orders up to which the stored parametrisation is determined.
    pub guaranteed_order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Uniqueness {
    /// Exactly one curve and no unresolved branches.
    Unique,
    /// Exactly one curve, but some branch was deferred (irrational
    /// direction, dicritical divisor or depth cap).
    Conditional,
    Multiple,
    NoneFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatrixReport {
    pub curves: Vec<FormalCurve>,
    /// Curves retained internally that blow down to the point.
    pub divisor_contained: usize,
    /// Unresolved branches (deferred irrational directions, dicritical
    /// components, exhausted depth).
    pub notes: Vec<String>,
    pub uniqueness: Uniqueness,
    pub fiber_constraint: Option<String>,
}

struct LocalCurve {
    gamma: (Series1, Series1),
    role: CurveRole,
    chain: Vec<ChainStep>,
}

/// All formal separatrices of a singular planar field, found by recursive
/// blow-up, solved at simple / saddle-node leaves, and blown back down to
/// the original coordinates. Divisor-contained curves are counted but
/// excluded from the final list.
pub fn separatrix_search(
    f: &PlanarField,
    n: u32,
    max_depth: u32,
) -> Result<SeparatrixReport, SeparatrixError> {
    if !f.is_singular_at_origin() {
        return Err(SeparatrixError::NotSingular);
    }
    let mut notes = Vec::new();
    let locals = search_node(f, n, max_depth, &mut notes)?;
    let mut curves = Vec::new();
    let mut divisor_contained = 0;
    for lc in locals {
        if lc.gamma.0.is_zero() && lc.gamma.1.is_zero() {
            divisor_contained += 1;
            continue;
        }
        curves.push(finish_curve(lc, f));
    }
    let uniqueness = match (curves.len(), notes.is_empty()) {
        (0, _) => Uniqueness::NoneFound,
        (1, true) => Uniqueness::Unique,
        (1, false) => Uniqueness::Conditional,
        _ => Uniqueness::Multiple,
    };
    Ok(SeparatrixReport {
        curves,
        divisor_contained,
        notes,
        uniqueness,
        fiber_constraint: None,
    })
}

fn finish_curve(lc: LocalCurve, f: &PlanarField) -> FormalCurve {
    let (g1, g2) = &lc.gamma;
    let o1 = g1.ord();
    let o2 = g2.ord();
    let m = o1
        .into_iter()
        .chain(o2)
        .min()
        .expect("nonzero curve has an order");
    let v1 = if o1 == Some(m) {
        g1.coeff(m)
    } else {
        Rational::zero()
    };
    let v2 = if o2 == Some(m) {
        g2.coeff(m)
    } else {
        Rational::zero()
    };
    let tangent = if v1.is_zero() {
        Direction::Vertical
    } else {
        Direction::Slope { slope: v2 / v1 }
    };
    let t_mono = Series1::monomial(PARAM_VAR, 1, Rational::one(), g1.trunc());
    let form = if g1.jet_eq(&t_mono) {
        CurveForm::GraphY
    } else if g2.jet_eq(&t_mono) {
        CurveForm::GraphX
    } else {
        CurveForm::Parametrized
    };
    let guaranteed_order = g1.trunc().min(g2.trunc()).min(f.trunc());
    FormalCurve {
        form,
        param_x: g1.clone(),
        param_y: g2.clone(),
        chain: lc.chain,
        tangent,
        role: lc.role,
        guaranteed_order,
    }
}

fn search_node(
    f: &PlanarField,
    n: u32,
    depth_left: u32,
    notes: &mut Vec<String>,
) -> Result<Vec<LocalCurve>, SeparatrixError> {
    let class = classify_singularity(f);
    match class.tag {
        SingularityTag::NonSingular | SingularityTag::ComplexEigenvalues => Ok(Vec::new()),
        SingularityTag::SimpleTwoSeparatrix | SingularityTag::SaddleNode => {
            match class.rational_eigenvalues {
                Some(_) => solve_at_leaf(f, n),
                None => {
                    notes.push(
                        "simple singularity with irrational eigenvalues: separatrices exist but are not computed over the rationals"
                            .to_string(),
                    );
                    Ok(Vec::new())
                }
            }
        }
        SingularityTag::ResonantOrDegenerate => {
            if depth_left == 0 {
                notes.push("depth exhausted on a non-simple branch".to_string());
                return Ok(Vec::new());
            }
            let cone = match tangent_cone(f) {
                Ok(c) => c,
                Err(FieldError::DicriticalCone) => {
                    notes.push(
                        "dicritical branch: divisor not invariant, generic-point separatrices not extracted"
                            .to_string(),
                    );
                    return Ok(Vec::new());
                }
                Err(e) => return Err(e.into()),
            };
            let mut out = Vec::new();
            for (direction, _) in &cone.directions {
                match direction {
                    Direction::Slope { slope } => {
                        let (blown, _m) = blowup_point(f, ChartKind::XDirectional)?;
                        let moved = translate(&blown, &Rational::zero(), slope);
                        let children = search_node(&moved, n, depth_left - 1, notes)?;
                        for mut child in children {
                            if !slope.is_zero() {
                                child.chain.push(ChainStep::Translate {
                                    point: (Rational::zero(), slope.clone()),
                                });
                                child.gamma.1 = child.gamma.1.add(&Series1::monomial(
                                    child.gamma.1.var(),
                                    0,
                                    slope.clone(),
                                    child.gamma.1.trunc(),
                                ))?;
                            }
                            child.chain.push(ChainStep::BlowdownX);
                            child.gamma.1 = child.gamma.0.mul(&child.gamma.1)?;
                            out.push(child);
                        }
                    }
                    Direction::Vertical => {
                        let (blown, _m) = blowup_point(f, ChartKind::YDirectional)?;
                        let children = search_node(&blown, n, depth_left - 1, notes)?;
                        for mut child in children {
                            child.chain.push(ChainStep::BlowdownY);
                            child.gamma.0 = child.gamma.0.mul(&child.gamma.1)?;
                            out.push(child);
                        }
                    }
                    Direction::IrrationalSlope { low, high } => {
                        notes.push(format!(
                            "irrational tangent direction in ({}, {}) not pursued",
                            low, high
                        ));
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Solve both separatrices at a simple or saddle-node point with rational
/// eigenvalues, normalising the eigenframe to the axes first.
fn solve_at_leaf(f: &PlanarField, n: u32) -> Result<Vec<LocalCurve>, SeparatrixError> {
    let n = n.min(f.trunc().saturating_sub(1)).max(1);
    let class = classify_singularity(f);
    let (l1, l2) = class
        .rational_eigenvalues
        .clone()
        .expect("caller checked rational eigenvalues");
    // Order the pair so the first column is the zero eigenvalue for a
    // saddle-node (the weak direction lands on the x-axis).
    let (e_first, e_second) = if l1.is_zero() {
        (l1, l2)
    } else if l2.is_zero() {
        (l2, l1)
    } else {
        (l1, l2)
    };
    let v1 = class.linear.eigenvector(&e_first);
    let v2 = class.linear.eigenvector(&e_second);
    let m = [[v1.0.clone(), v2.0.clone()], [v1.1.clone(), v2.1.clone()]];
    let identity = m[0][0].is_one() && m[0][1].is_zero() && m[1][0].is_zero() && m[1][1].is_one();
    let g = if identity {
        f.clone()
    } else {
        f.conjugate_linear(&m)?
    };
    let saddle_node = class.tag == SingularityTag::SaddleNode;
    let mut out = Vec::new();
    let n_eff = n.min(g.trunc().saturating_sub(1)).max(1);
    // Both components of every parametrisation live in the parameter `t`.
    let s = graph_separatrix(&g, GraphAxis::YOverX, n_eff)?;
    let t_mono = Series1::monomial(PARAM_VAR, 1, Rational::one(), s.trunc());
    out.push(LocalCurve {
        gamma: (t_mono, s.rename_var(PARAM_VAR)),
        role: if saddle_node {
            CurveRole::Weak
        } else {
            CurveRole::Eigendirection
        },
        chain: Vec::new(),
    });
    let s = graph_separatrix(&g, GraphAxis::XOverY, n_eff)?;
    let t_mono = Series1::monomial(PARAM_VAR, 1, Rational::one(), s.trunc());
    out.push(LocalCurve {
        gamma: (s.rename_var(PARAM_VAR), t_mono),
        role: if saddle_node {
            CurveRole::Strong
        } else {
            CurveRole::Eigendirection
        },
        chain: Vec::new(),
    });
    if !identity {
        for lc in &mut out {
            lc.chain.push(ChainStep::Linear { matrix: m.clone() });
            let g1 = lc
                .gamma
                .0
                .scale(&m[0][0])
                .add(&lc.gamma.1.scale(&m[0][1]))?;
            let g2 = lc
                .gamma
                .0
                .scale(&m[1][0])
                .add(&lc.gamma.1.scale(&m[1][1]))?;
            lc.gamma = (g1, g2);
        }
    }
    Ok(out)
}

/// What `verify_invariance` found: the time-change factor `h` (when the
/// exact division is defined) and the residual, zero up to its window iff
/// the curve is invariant. `h ≢ 0` iff the curve is not contained in the
/// singular locus.
#[derive(Debug, Clone, Serialize)]
pub struct InvarianceCheck {
    pub h: Option<Series1>,
    pub residual: Series1,
    pub h_nonzero: bool,
    pub guaranteed_order: u32,
}

impl InvarianceCheck {
    pub fn is_invariant(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Substitute a parametrised curve into the field and compare directions:
/// `h(t) = A(γ(t)) / γ₁'(t)` by exact division (or the symmetric form) and
/// residual `B(γ(t)) − h(t)·γ₂'(t)`.
pub fn verify_invariance(
    f: &PlanarField,
    curve: &FormalCurve,
    n: u32,
) -> Result<InvarianceCheck, SeparatrixError> {
    let g1 = curve.param_x.truncate_to(n + 1);
    let g2 = curve.param_y.truncate_to(n + 1);
    let a_on = f.x_comp().compose_curve(&g1, &g2)?;
    let b_on = f.y_comp().compose_curve(&g1, &g2)?;
    let d1 = g1.derive();
    let d2 = g2.derive();
    if d1.is_zero() && d2.is_zero() {
        return Err(SeparatrixError::DegenerateCurve);
    }
    let attempt = |num: &Series1, den: &Series1| -> Option<Series1> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Series1::zero(num.var(), num.trunc()));
        }
        if num.ord() >= den.ord() {
            num.divide_exact(den).ok()
        } else {
            None
        }
    };
    if let Some(h) = attempt(&a_on, &d1) {
        let residual = b_on.sub(&h.mul(&d2)?)?;
        let guaranteed_order = residual.trunc().saturating_sub(1);
        let h_nonzero = !h.is_zero();
        return Ok(InvarianceCheck {
            h: Some(h),
            residual,
            h_nonzero,
            guaranteed_order,
        });
    }
    if let Some(h) = attempt(&b_on, &d2) {
        let residual = a_on.sub(&h.mul(&d1)?)?;
        let guaranteed_order = residual.trunc().saturating_sub(1);
        let h_nonzero = !h.is_zero();
        return Ok(InvarianceCheck {
            h: Some(h),
            residual,
            h_nonzero,
            guaranteed_order,
        });
    }
    // Division undefined in both orientations: fall back to the cross form,
    // which vanishes iff the directions are parallel.
    let residual = b_on.mul(&d1)?.sub(&a_on.mul(&d2)?)?;
    let guaranteed_order = residual.trunc().saturating_sub(1);
    Ok(InvarianceCheck {
        h: None,
        residual,
        h_nonzero: false,
        guaranteed_order,
    })
}

/// Separatrices of the three-dimensional unfolding: the last component is
/// a first integral (`ż = 0`) and the radial component contains the square
/// of the integral, so every formal separatrix lies in the invariant fibre
/// through the origin. Restrict there and search the planar field.
pub fn separatrices_of_unfolding(a: &Series1, n: u32) -> Result<SeparatrixReport, SeparatrixError> {
    let f3 = gallery::quartic_family_unfolding(a, n + 4)?;
    separatrices_in_invariant_fibre(&f3, n)
}

/// The fibre-restriction search for any field whose third component
/// vanishes identically (so the third coordinate is a first integral).
pub fn separatrices_in_invariant_fibre(
    f3: &Field3,
    n: u32,
) -> Result<SeparatrixReport, SeparatrixError> {
    if !f3.z_comp().is_zero() {
        return Err(SeparatrixError::HypothesisViolated(
            "third component must vanish (third coordinate a first integral)".to_string(),
        ));
    }
    let witness = isolated_witness_3d(f3);
    let planar = f3.restrict_to_hyperplane(2)?;
    let mut report = separatrix_search(&planar, n, 8)?;
    report.fiber_constraint = Some(match witness {
        IsolatedWitness::Isolated { certificate } => format!(
            "curves lie in the invariant hyperplane {} = 0 (isolated origin: {})",
            f3.vars().2,
            certificate
        ),
        _ => format!(
            "curves lie in the invariant hyperplane {} = 0 (isolatedness not certified)",
            f3.vars().2
        ),
    });
    Ok(report)
}
