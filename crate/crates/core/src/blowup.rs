//! Point blow-ups of planar fields in the two directional charts, strict
//! transforms with exact divisor division, recentering along the
//! exceptional divisor, and reduction trees.
//!
//! Conventions (fixed by the worked examples in the test suite):
//!
//! * x-chart: substitute `y = x·y₁`; the pulled-back field is
//!   `A(x, x·y₁) ∂x + ((B(x,x·y₁) − y₁·A(x,x·y₁))/x) ∂y₁`, and the strict
//!   transform divides the largest common power `x^m` out of the pair
//!   (`m` is the returned multiplicity). A component whose jet vanishes
//!   identically blocks the division (`m = 0`): that is the dicritical
//!   situation and the transform is kept whole.
//! * y-chart: symmetric, with `x = x₁·y` and divisor `y = 0`.
//!
//! A blow-up costs `multiplicity + 1` orders of the truncation window for
//! truncated input; exact polynomial jets keep everything.

use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{
    classify_singularity, tangent_cone, Direction, FieldError, PlanarField, SingularityClass,
    SingularityTag,
};
use crate::gallery;
use crate::jsonutil;
use crate::rational::{rat, Rational};
use crate::series::{Series1, Series2, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("field is not singular at the origin")]
    NotSingular,
    #[error("truncation too small to determine the divisor multiplicity")]
    MultiplicityUndetermined,
    #[error("ramification hypothesis violated: {0}")]
    RamificationHypothesis(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
}

/// The two standard directional charts of a point blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartKind {
    /// `(x, y₁) = (x, y/x)`, divisor `x = 0`.
    XDirectional,
    /// `(x₁, y) = (x/y, y)`, divisor `y = 0`.
    YDirectional,
}

fn next_chart_name(name: &str) -> String {
    let split = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i)
        .unwrap_or(name.len());
    let (stem, digits) = name.split_at(split);
    let n: u64 = digits.parse().unwrap_or(0);
    format!("{stem}{}", n + 1)
}

/// Strict transform of a singular field under one point blow-up.
///
/// Returns the transformed field together with the multiplicity of the
/// divisor power divided out.
pub fn blowup_point(f: &PlanarField, chart: ChartKind) -> Result<(PlanarField, u32), BlowupError> {
    if !f.is_singular_at_origin() {
        return Err(BlowupError::NotSingular);
    }
    let g = match chart {
        ChartKind::XDirectional => f.clone(),
        ChartKind::YDirectional => f.swap_axes(),
    };
    let (old_x, old_y) = g.vars();
    let new_y = next_chart_name(old_y);
    let vars = (old_x, new_y.as_str());
    // Truncation of the substitution targets: wide enough to keep every
    // term of an exact polynomial jet, the input window otherwise.
    let inner_trunc = if g.is_exact() {
        let max_deg = g
            .x_comp()
            .degree()
            .into_iter()
            .chain(g.y_comp().degree())
            .max()
            .unwrap_or(1);
        (2 * max_deg + 2).max(g.trunc() + 2)
    } else {
        g.trunc()
    }
    .max(2);
    let gx = Series2::monomial(vars, (1, 0), Rational::one(), inner_trunc);
    let gxy = Series2::monomial(vars, (1, 1), Rational::one(), inner_trunc);
    let a_t = g.x_comp().substitute(&gx, &gxy)?;
    let b_t = g.y_comp().substitute(&gx, &gxy)?;
    let y1 = Series2::monomial(vars, (0, 1), Rational::one(), a_t.trunc().max(b_t.trunc()));
    let x_mono = Series2::monomial(vars, (1, 0), Rational::one(), b_t.trunc().max(2));
    let q = b_t.sub(&y1.mul(&a_t)?)?.divide_exact(&x_mono)?;
    // Common divisor power: a vanishing jet blocks the division.
    let m = if a_t.is_zero() || q.is_zero() {
        0
    } else {
        let ma = a_t.min_exponent(0).unwrap_or(0);
        let mq = q.min_exponent(0).unwrap_or(0);
        let m = ma.min(mq);
        if m >= a_t.trunc().min(q.trunc()) {
            return Err(BlowupError::MultiplicityUndetermined);
        }
        m
    };
    let (na, nq) = if m == 0 {
        (a_t, q)
    } else {
        let xm = Series2::monomial(vars, (m, 0), Rational::one(), a_t.trunc().max(m + 2));
        (a_t.divide_exact(&xm)?, q.divide_exact(&xm)?)
    };
    let out = PlanarField::new(na, nq)?;
    let out = match chart {
        ChartKind::XDirectional => out,
        ChartKind::YDirectional => out.swap_axes(),
    };
    Ok((out, m))
}

/// Recenter the field at a rational point (formal recentering of the jets;
/// translation has identity Jacobian, so the components just shift).
pub fn translate(f: &PlanarField, p: &Rational, q: &Rational) -> PlanarField {
    PlanarField::new(f.x_comp().translate(p, q), f.y_comp().translate(p, q))
        .expect("translation preserves variables")
}

/// How a reduction node was reached from its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrival {
    pub chart: ChartKind,
    /// Recentering applied after the chart substitution.
    #[serde(serialize_with = "jsonutil::ser_rational_pair")]
    pub translation: (Rational, Rational),
    /// Divisor power divided out of the strict transform.
    pub multiplicity: u32,
    /// The tangent direction this branch pursued.
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeafKind {
    NonSingular,
    Simple,
    SaddleNode,
    ComplexEigenvalues,
    Dicritical,
    DepthCapped,
    IrrationalDirectionDeferred,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionNode {
    pub field: PlanarField,
    pub class: SingularityClass,
    pub arrival: Option<Arrival>,
    /// `Some` exactly on leaves.
    pub leaf: Option<LeafKind>,
    pub children: Vec<ReductionNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTree {
    pub root: ReductionNode,
    pub max_depth: u32,
    pub expand_saddle_nodes: bool,
}

impl ReductionTree {
    /// Depth-first iterator over all nodes.
    pub fn nodes(&self) -> Vec<&ReductionNode> {
        let mut out = Vec::new();
        let mut stack = vec![&self.root];
        while let Some(n) = stack.pop() {
            out.push(n);
            for c in &n.children {
                stack.push(c);
            }
        }
        out
    }

    pub fn leaves(&self) -> Vec<&ReductionNode> {
        self.nodes()
            .into_iter()
            .filter(|n| n.leaf.is_some())
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReduceOptions {
    pub max_depth: u32,
    /// Blow up saddle-node points instead of stopping (they are already
    /// simple in the reduction sense; pursuing the weak direction exposes
    /// the next saddle-node in a chain).
    pub expand_saddle_nodes: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            max_depth: 8,
            expand_saddle_nodes: false,
        }
    }
}

/// Reduction of singularities by iterated point blow-ups.
///
/// Children of a non-simple node are its real tangent-cone directions,
/// blown up and recentered. Every leaf is nonsingular, simple, saddle-node,
/// complex-eigenvalue, dicritical, an irrational direction left as a
/// certified interval, or a depth cap; depth exhaustion is recorded on the
/// branch, never raised.
pub fn seidenberg_reduce(
    f: &PlanarField,
    opts: ReduceOptions,
) -> Result<ReductionTree, BlowupError> {
    if !f.is_singular_at_origin() {
        return Err(BlowupError::NotSingular);
    }
    let root = reduce_node(f.clone(), None, opts.max_depth, &opts)?;
    Ok(ReductionTree {
        root,
        max_depth: opts.max_depth,
        expand_saddle_nodes: opts.expand_saddle_nodes,
    })
}

fn reduce_node(
    field: PlanarField,
    arrival: Option<Arrival>,
    depth_left: u32,
    opts: &ReduceOptions,
) -> Result<ReductionNode, BlowupError> {
    let class = classify_singularity(&field);
    let stop = match class.tag {
        SingularityTag::NonSingular => Some(LeafKind::NonSingular),
        SingularityTag::SimpleTwoSeparatrix => Some(LeafKind::Simple),
        SingularityTag::ComplexEigenvalues => Some(LeafKind::ComplexEigenvalues),
        SingularityTag::SaddleNode if !opts.expand_saddle_nodes => Some(LeafKind::SaddleNode),
        _ => None,
    };
    if let Some(kind) = stop {
        return Ok(ReductionNode {
            field,
            class,
            arrival,
            leaf: Some(kind),
            children: Vec::new(),
        });
    }
    if depth_left == 0 {
        return Ok(ReductionNode {
            field,
            class,
            arrival,
            leaf: Some(LeafKind::DepthCapped),
            children: Vec::new(),
        });
    }
    let cone = match tangent_cone(&field) {
        Ok(c) => c,
        Err(FieldError::DicriticalCone) => {
            return Ok(ReductionNode {
                field,
                class,
                arrival,
                leaf: Some(LeafKind::Dicritical),
                children: Vec::new(),
            });
        }
        Err(e) => return Err(e.into()),
    };
    let mut children = Vec::new();
    for (direction, _mult) in &cone.directions {
        match direction {
            Direction::Slope { slope } => {
                let (blown, m) = blowup_point(&field, ChartKind::XDirectional)?;
                let moved = translate(&blown, &Rational::zero(), slope);
                let arrival = Arrival {
                    chart: ChartKind::XDirectional,
                    translation: (Rational::zero(), slope.clone()),
                    multiplicity: m,
                    direction: direction.clone(),
                };
                children.push(reduce_node(moved, Some(arrival), depth_left - 1, opts)?);
            }
            Direction::Vertical => {
                let (blown, m) = blowup_point(&field, ChartKind::YDirectional)?;
                let arrival = Arrival {
                    chart: ChartKind::YDirectional,
                    translation: (Rational::zero(), Rational::zero()),
                    multiplicity: m,
                    direction: direction.clone(),
                };
                children.push(reduce_node(blown, Some(arrival), depth_left - 1, opts)?);
            }
            Direction::IrrationalSlope { .. } => {
                // Algebraic-number recentering is out of scope; record the
                // certified interval and stop this branch.
                children.push(ReductionNode {
                    field: field.clone(),
                    class: class.clone(),
                    arrival: Some(Arrival {
                        chart: ChartKind::XDirectional,
                        translation: (Rational::zero(), Rational::zero()),
                        multiplicity: 0,
                        direction: direction.clone(),
                    }),
                    leaf: Some(LeafKind::IrrationalDirectionDeferred),
                    children: Vec::new(),
                });
            }
        }
    }
    Ok(ReductionNode {
        field,
        class,
        arrival,
        leaf: None,
        children,
    })
}

/// The composite of two x-directional blow-ups of the quartic family,
/// computed through the generic machinery (never a transcribed formula),
/// truncated to the requested order.
pub fn double_blowup_quartic(a: &Series1, n: u32) -> Result<PlanarField, BlowupError> {
    let build_trunc = n + 3; // two blow-ups cost 1+m each: m = 1 then 0
    let f = gallery::quartic_family(a, build_trunc)?;
    let (once, m1) = blowup_point(&f, ChartKind::XDirectional)?;
    debug_assert_eq!(m1, 1);
    let (twice, m2) = blowup_point(&once, ChartKind::XDirectional)?;
    debug_assert_eq!(m2, 0);
    let out = twice.pad_to(n).truncate_to(n);
    if out.trunc() < n {
        return Err(BlowupError::TruncationTooSmall(format!(
            "double blow-up retained window {} < requested {}",
            out.trunc(),
            n
        )));
    }
    Ok(out)
}

/// Descend the second transform of the quartic family to the ramified
/// saddle-node form: divide both components by the unit `1 + y₂²`, then
/// substitute `z = 2x²` (renaming the fibre variable to `w`).
///
/// The substitution absorbs the time change exactly: after the unit
/// division the radial component is `x³`, and `ż = 4x·ẋ = 4x⁴ = z²`, so no
/// further power is divided out. Requires the parameter relation
/// `a(x) = α(2x²)` between the upstream family and `alpha`, which is
/// verified coefficient-wise (it is what makes every x-exponent even).
pub fn ramify_to_saddle_node(
    f2: &PlanarField,
    alpha: &Series1,
    n: u32,
) -> Result<PlanarField, BlowupError> {
    if !alpha.coeff(0).is_zero() || !alpha.coeff(1).is_zero() {
        return Err(BlowupError::RamificationHypothesis(
            "alpha must satisfy alpha(0) = alpha'(0) = 0".to_string(),
        ));
    }
    let vars = f2.vars();
    let trunc = f2.trunc();
    let unit =
        Series2::one(vars, trunc).add(&Series2::monomial(vars, (0, 2), Rational::one(), trunc))?;
    let orbital = f2.divide_components(&unit)?;
    // z-component upstairs: 4x · ẋ
    let four_x = Series2::monomial(vars, (1, 0), rat(4, 1), orbital.trunc() + 1);
    let z_up = orbital.x_comp().mul(&four_x)?;
    let half = rat(1, 2);
    let z_comp = z_up.even_substitute_first("z", &half)?;
    let w_comp = orbital.y_comp().even_substitute_first("z", &half)?;
    let z_comp = z_comp.rename_vars(("z", "w"));
    let w_comp = w_comp.rename_vars(("z", "w"));
    // Hypothesis check: the fibre-independent part of the w-component is α(z).
    let pure_z = w_comp.restrict(1);
    let window = pure_z.trunc().min(alpha.trunc()).min(n);
    for k in 0..window {
        if pure_z.coeff(k) != alpha.coeff(k) {
            return Err(BlowupError::RamificationHypothesis(format!(
                "parameter mismatch at z^{k}: expected {}, found {}",
                alpha.coeff(k),
                pure_z.coeff(k)
            )));
        }
    }
    let out = PlanarField::new(z_comp, w_comp)?.pad_to(n).truncate_to(n);
    if out.trunc() < n {
        return Err(BlowupError::TruncationTooSmall(format!(
            "ramified field retained window {} < requested {}",
            out.trunc(),
            n
        )));
    }
    Ok(out)
}

/// Full descent: quartic family with `a(x) = α(2x²)`, double blow-up,
/// unit division and ramification, to order `n`.
pub fn descend_quartic_to_saddle_node(alpha: &Series1, n: u32) -> Result<PlanarField, BlowupError> {
    let a = parameter_from_alpha(alpha, 2 * n + 4)?;
    let f2 = double_blowup_quartic(&a, 2 * n + 1)?;
    ramify_to_saddle_node(&f2, alpha, n)
}

/// `a(x) = α(2x²)` as a series in x.
pub fn parameter_from_alpha(alpha: &Series1, trunc: u32) -> Result<Series1, BlowupError> {
    let inner = Series1::monomial("x", 2, rat(2, 1), trunc);
    Ok(alpha.pad_to(trunc.div_ceil(2)).compose(&inner)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::classify_singularity;
    use crate::rational::rat_int;

    fn xy() -> (&'static str, &'static str) {
        ("x", "y")
    }

    fn mono(e: (u32, u32), c: i64, t: u32) -> Series2 {
        Series2::monomial(xy(), e, rat_int(c), t)
    }

    #[test]
    fn chart_names_increment() {
        assert_eq!(next_chart_name("y"), "y1");
        assert_eq!(next_chart_name("y1"), "y2");
        assert_eq!(next_chart_name("w"), "w1");
    }

    #[test]
    fn blowup_center_x_chart() {
        let f = gallery::center(12);
        let (g, m) = blowup_point(&f, ChartKind::XDirectional).unwrap();
        assert_eq!(m, 0);
        // -x·y1 ∂x + (1 + y1²) ∂y1
        assert_eq!(g.x_comp().coeff(1, 1), rat_int(-1));
        assert_eq!(g.x_comp().num_terms(), 1);
        assert_eq!(g.y_comp().coeff(0, 0), rat_int(1));
        assert_eq!(g.y_comp().coeff(0, 2), rat_int(1));
        assert_eq!(g.y_comp().num_terms(), 2);
    }

    #[test]
    fn blowup_quartic_family_first_step() {
        let a = Series1::zero("x", 16);
        let f = gallery::quartic_family(&a, 14).unwrap();
        let (g, m) = blowup_point(&f, ChartKind::XDirectional).unwrap();
        assert_eq!(m, 1);
        // x(y1² + x²) ∂x + (-y1(1 + y1²) - x² y1) ∂y1
        assert_eq!(g.x_comp().coeff(1, 2), rat_int(1));
        assert_eq!(g.x_comp().coeff(3, 0), rat_int(1));
        assert_eq!(g.x_comp().num_terms(), 2);
        assert_eq!(g.y_comp().coeff(0, 1), rat_int(-1));
        assert_eq!(g.y_comp().coeff(0, 3), rat_int(-1));
        assert_eq!(g.y_comp().coeff(2, 1), rat_int(-1));
        assert_eq!(g.y_comp().num_terms(), 3);
        // saddle-node at the origin of the chart
        assert_eq!(classify_singularity(&g).tag, SingularityTag::SaddleNode);
    }

    #[test]
    fn blowup_radial_is_dicritical() {
        let f = PlanarField::new(mono((1, 0), 1, 10), mono((0, 1), 1, 10)).unwrap();
        let (g, m) = blowup_point(&f, ChartKind::XDirectional).unwrap();
        assert_eq!(m, 0);
        assert_eq!(g.x_comp().coeff(1, 0), rat_int(1));
        assert_eq!(g.x_comp().num_terms(), 1);
        assert!(g.y_comp().is_zero());
    }

    #[test]
    fn translate_examples() {
        let f = PlanarField::new(mono((1, 0), 1, 8), Series2::zero(xy(), 8)).unwrap();
        let t = translate(&f, &rat_int(1), &rat_int(0));
        assert_eq!(t.x_comp().coeff(0, 0), rat_int(1));
        assert_eq!(t.x_comp().coeff(1, 0), rat_int(1));
        let back = translate(&t, &rat_int(-1), &rat_int(0));
        assert_eq!(back.x_comp(), f.x_comp());

        // first transform of the quartic family at a nonzero divisor point
        let a = Series1::zero("x", 16);
        let f = gallery::quartic_family(&a, 14).unwrap();
        let (g, _) = blowup_point(&f, ChartKind::XDirectional).unwrap();
        let moved = translate(&g, &rat_int(0), &rat_int(2));
        assert!(!moved.is_singular_at_origin());
    }

    #[test]
    fn reduce_saddle_is_single_leaf() {
        let tree = seidenberg_reduce(&gallery::saddle(10), ReduceOptions::default()).unwrap();
        assert_eq!(tree.root.leaf, Some(LeafKind::Simple));
        assert!(tree.root.children.is_empty());
    }

    #[test]
    fn reduce_center_is_complex_leaf() {
        let tree = seidenberg_reduce(&gallery::center(10), ReduceOptions::default()).unwrap();
        assert_eq!(tree.root.leaf, Some(LeafKind::ComplexEigenvalues));
    }

    #[test]
    fn reduce_quartic_family_chain() {
        let a = Series1::monomial("x", 2, rat_int(1), 20);
        let f = gallery::quartic_family(&a, 16).unwrap();
        let tree = seidenberg_reduce(&f, ReduceOptions::default()).unwrap();
        assert!(tree.root.leaf.is_none());
        assert_eq!(tree.root.children.len(), 1);
        let p1 = &tree.root.children[0];
        assert_eq!(p1.leaf, Some(LeafKind::SaddleNode));
        assert_eq!(p1.class.tag, SingularityTag::SaddleNode);

        // pursuing the weak direction exposes the saddle-node at depth 2
        let opts = ReduceOptions {
            max_depth: 2,
            expand_saddle_nodes: true,
        };
        let tree = seidenberg_reduce(&f, opts).unwrap();
        let p1 = &tree.root.children[0];
        assert_eq!(p1.class.tag, SingularityTag::SaddleNode);
        assert!(p1.leaf.is_none());
        let slope_child = p1
            .children
            .iter()
            .find(|c| {
                matches!(
                    c.arrival.as_ref().map(|a| &a.direction),
                    Some(Direction::Slope { .. })
                )
            })
            .expect("weak-direction child");
        assert_eq!(slope_child.class.tag, SingularityTag::SaddleNode);
    }

    #[test]
    fn double_blowup_matches_closed_form() {
        for coeffs in [
            vec![],
            vec![(2u32, rat_int(1))],
            vec![(2, rat_int(1)), (3, rat_int(1))],
        ] {
            let a = Series1::from_terms("x", &coeffs, 24);
            let n = 12;
            let got = double_blowup_quartic(&a, n).unwrap();
            let want = closed_form_second_transform(&a, n);
            assert!(
                got.x_comp().jet_eq(want.x_comp()),
                "x-component mismatch for a = {a}"
            );
            assert!(
                got.y_comp().jet_eq(want.y_comp()),
                "y-component mismatch for a = {a}"
            );
        }
    }

    /// The displayed second transform, transcribed term by term:
    /// `x³(1+y₂²) ∂x + (−y₂(1+2x²(1+y₂²)) + a(x)(1+y₂²)) ∂y₂`.
    fn closed_form_second_transform(a: &Series1, n: u32) -> PlanarField {
        let vars = ("x", "y2");
        let one = Series2::one(vars, n);
        let y22 = Series2::monomial(vars, (0, 2), rat_int(1), n);
        let unit = one.add(&y22).unwrap();
        let x3 = Series2::monomial(vars, (3, 0), rat_int(1), n);
        let x_comp = x3.mul(&unit).unwrap();
        let y2 = Series2::monomial(vars, (0, 1), rat_int(1), n);
        let x2 = Series2::monomial(vars, (2, 0), rat_int(1), n);
        let inner = Series2::one(vars, n)
            .add(&x2.scale(&rat_int(2)).mul(&unit).unwrap())
            .unwrap();
        let a2 = Series2::embed(&a.rename_var("x"), vars, 0).unwrap();
        let y_comp = y2
            .mul(&inner)
            .unwrap()
            .neg()
            .add(&a2.mul(&unit).unwrap())
            .unwrap();
        PlanarField::new(x_comp, y_comp).unwrap()
    }

    #[test]
    fn second_transform_displayed_coefficients() {
        let a = Series1::zero("x", 24);
        let f = double_blowup_quartic(&a, 12).unwrap();
        // x³(1+y₂²) and the -2x²y₂ term of -y₂(1+2x²(1+y₂²))
        assert_eq!(f.x_comp().coeff(3, 0), rat_int(1));
        assert_eq!(f.x_comp().coeff(3, 2), rat_int(1));
        assert_eq!(f.y_comp().coeff(0, 1), rat_int(-1));
        assert_eq!(f.y_comp().coeff(2, 1), rat_int(-2));
        assert_eq!(f.y_comp().coeff(2, 3), rat_int(-2));

        // a = x² adds a(x)(1+y₂²)
        let a = Series1::monomial("x", 2, rat_int(1), 24);
        let f = double_blowup_quartic(&a, 12).unwrap();
        assert_eq!(f.y_comp().coeff(2, 0), rat_int(1));
        assert_eq!(f.y_comp().coeff(2, 2), rat_int(1));
    }

    #[test]
    fn ramification_reaches_saddle_node_family() {
        for alpha_terms in [vec![], vec![(2u32, rat_int(1))], vec![(3, rat_int(1))]] {
            let alpha = Series1::from_terms("z", &alpha_terms, 40);
            let n = 16;
            let got = descend_quartic_to_saddle_node(&alpha, n).unwrap();
            let want = gallery::ramified_saddle_node(&alpha, n).unwrap();
            assert!(got.x_comp().jet_eq(want.x_comp()), "alpha = {alpha}");
            assert!(got.y_comp().jet_eq(want.y_comp()), "alpha = {alpha}");
        }
    }

    #[test]
    fn ramified_field_displayed_coefficients() {
        let alpha = Series1::zero("z", 40);
        let f = descend_quartic_to_saddle_node(&alpha, 16).unwrap();
        assert_eq!(f.x_comp().coeff(2, 0), rat_int(1));
        assert_eq!(f.x_comp().num_terms(), 1);
        assert_eq!(f.y_comp().coeff(0, 1), rat_int(-1));
        assert_eq!(f.y_comp().coeff(1, 1), rat_int(-1));
        assert_eq!(f.y_comp().coeff(0, 3), rat_int(1));
        assert_eq!(f.y_comp().coeff(0, 5), rat_int(-1));

        let alpha = Series1::monomial("z", 2, rat_int(1), 40);
        let f = descend_quartic_to_saddle_node(&alpha, 16).unwrap();
        assert_eq!(f.y_comp().coeff(2, 0), rat_int(1));
    }

    #[test]
    fn multiplicity_round_trip() {
        // F = x^k · G with G not divisible by x: blow-up divisions are exact
        let g = PlanarField::new(
            mono((0, 1), 1, 12).add(&mono((2, 0), 3, 12)).unwrap(),
            mono((1, 0), 2, 12).add(&mono((0, 2), -1, 12)).unwrap(),
        )
        .unwrap();
        let x2 = mono((2, 0), 1, 12);
        let f = g.mul_components(&x2).unwrap();
        let back = f.divide_components(&x2).unwrap();
        assert!(back
            .x_comp()
            .jet_eq(&g.truncate_to(back.trunc()).x_comp().clone()));
        assert!(back
            .y_comp()
            .jet_eq(&g.truncate_to(back.trunc()).y_comp().clone()));
    }
}
