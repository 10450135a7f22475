//! The command pipelines: wire parsed documents through the core engines
//! and produce run reports plus human summaries.

use std::fmt::Write as _;

use num::Zero;

use serde::Serialize;

use septool_core::blowup::{
    blowup_point, descend_quartic_to_saddle_node, double_blowup_quartic, parameter_from_alpha,
    seidenberg_reduce, ChartKind, ReduceOptions, ReductionTree,
};
use septool_core::divergence::{
    borel_radius, divergence_cross_check, elizarov_derivative, Agreement, BorelReport,
    CrossCheckReport, DivergenceError, ElizarovResult, GevreyReport, GevreyVerdict,
};
use septool_core::field::{
    check_first_integral_3d, check_first_integral_planar, classify_singularity,
    isolated_singularity_witness, isolated_witness_3d, tangent_cone, Direction, IsolatedWitness,
    SingularityTag,
};
use septool_core::index::{radius_stabilized_index, winding_index, IndexReport, StabilizeOptions};
use septool_core::rational::{format_rational, rat, rat_int, to_f64, Rational};
use septool_core::separatrix::{
    separatrices_in_invariant_fibre, separatrix_search, verify_invariance, SeparatrixReport,
};
use septool_core::series::{Series1, Series2};
use septool_core::{gallery, PlanarField};

use crate::dsl::{render_field, BuiltDocument, FieldValue, SeriesValue};
use crate::error::CliError;
use crate::report::Approx;

fn planar(built: &BuiltDocument) -> Result<&PlanarField, CliError> {
    match &built.field {
        FieldValue::Planar(f) => Ok(f),
        FieldValue::ThreeD(_) => Err(CliError::Hypothesis(
            "this pipeline needs a planar document (two variables)".to_string(),
        )),
    }
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct ReduceOutput {
    pub name: Option<String>,
    pub trunc: u32,
    /// Canonical document text of the parsed field (round-trips exactly).
    pub canonical_field: String,
    pub leaf_counts: Vec<(String, usize)>,
    pub tree: ReductionTree,
}

pub fn run_reduce(
    built: &BuiltDocument,
    max_depth: u32,
    expand_saddle_nodes: bool,
) -> Result<(ReduceOutput, String), CliError> {
    let f = planar(built)?;
    let tree = seidenberg_reduce(
        f,
        ReduceOptions {
            max_depth,
            expand_saddle_nodes,
        },
    )?;
    let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
    for leaf in tree.leaves() {
        let kind = leaf.leaf.expect("leaf");
        *counts.entry(format!("{kind:?}")).or_default() += 1;
    }
    let leaf_counts: Vec<(String, usize)> = counts.into_iter().collect();
    let mut human = format!(
        "reduction tree: {} nodes, {} leaves\n",
        tree.nodes().len(),
        tree.leaves().len()
    );
    for (kind, n) in &leaf_counts {
        let _ = writeln!(human, "  {kind}: {n}");
    }
    let out = ReduceOutput {
        name: built.name.clone(),
        trunc: built.trunc,
        canonical_field: render_field(built.name.as_deref(), &built.field, built.trunc),
        leaf_counts,
        tree,
    };
    Ok((out, human))
}

// ---------------------------------------------------------------------------
// separatrix
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct CurveVerification {
    pub role: String,
    pub tangent: Direction,
    pub invariant: bool,
    pub h_nonzero: bool,
    pub residual_zero_to: u32,
}

#[derive(Serialize)]
pub struct SeparatrixOutput {
    pub name: Option<String>,
    pub trunc: u32,
    /// Canonical document text of the parsed field (round-trips exactly).
    pub canonical_field: String,
    pub report: SeparatrixReport,
    pub verifications: Vec<CurveVerification>,
}

pub fn run_separatrix(
    built: &BuiltDocument,
    order: u32,
    max_depth: u32,
) -> Result<(SeparatrixOutput, String), CliError> {
    let (report, base_field) = match &built.field {
        FieldValue::Planar(f) => (separatrix_search(f, order, max_depth)?, f.clone()),
        FieldValue::ThreeD(f3) => {
            let report = separatrices_in_invariant_fibre(f3, order)?;
            (report, f3.restrict_to_hyperplane(2)?)
        }
    };
    let mut verifications = Vec::new();
    for curve in &report.curves {
        let chk = verify_invariance(&base_field, curve, curve.guaranteed_order.min(order))?;
        verifications.push(CurveVerification {
            role: format!("{:?}", curve.role),
            tangent: curve.tangent.clone(),
            invariant: chk.is_invariant(),
            h_nonzero: chk.h_nonzero,
            residual_zero_to: chk.guaranteed_order,
        });
    }
    let mut human = format!(
        "separatrices: {} found ({} divisor-contained filtered), uniqueness: {:?}\n",
        report.curves.len(),
        report.divisor_contained,
        report.uniqueness
    );
    for (curve, v) in report.curves.iter().zip(&verifications) {
        let _ = writeln!(
            human,
            "  {:?} tangent to {}: invariant = {}, h ≢ 0 = {}, residual zero to order {}",
            curve.role, curve.tangent, v.invariant, v.h_nonzero, v.residual_zero_to
        );
    }
    for note in &report.notes {
        let _ = writeln!(human, "  note: {note}");
    }
    if let Some(fc) = &report.fiber_constraint {
        let _ = writeln!(human, "  fibre: {fc}");
    }
    let out = SeparatrixOutput {
        name: built.name.clone(),
        trunc: built.trunc,
        canonical_field: render_field(built.name.as_deref(), &built.field, built.trunc),
        report,
        verifications,
    };
    Ok((out, human))
}

// ---------------------------------------------------------------------------
// index
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct IndexOutput {
    pub name: Option<String>,
    pub stabilized: bool,
    pub isolatedness: IsolatedWitness,
    pub report: IndexReport,
}

pub fn run_index(
    built: &BuiltDocument,
    radius: Option<Rational>,
    tolerance: Rational,
) -> Result<(IndexOutput, String), CliError> {
    let f = planar(built)?;
    let isolatedness = isolated_singularity_witness(f);
    let (report, stabilized) = match &radius {
        Some(r) => (winding_index(f, r, &tolerance)?, false),
        None => (
            radius_stabilized_index(f, &rat(1, 2), &tolerance, StabilizeOptions::default())?,
            true,
        ),
    };
    let human = format!(
        "index {} at radius {} ({} samples, certified: {}, min ∞-norm bound {})",
        report.index,
        format_rational(&report.radius),
        report.samples,
        report.certified,
        format_rational(&report.min_norm_lower_bound),
    );
    let out = IndexOutput {
        name: built.name.clone(),
        stabilized,
        isolatedness,
        report,
    };
    Ok((out, human))
}

/// Dense plotting dump: uniform circle samples with field directions.
pub fn circle_csv(f: &PlanarField, radius: &Rational, samples: usize) -> String {
    let r = to_f64(radius);
    let mut out = String::from("theta,x,y,vx,vy\n");
    for k in 0..samples {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) / (samples as f64);
        let x = r * theta.cos();
        let y = r * theta.sin();
        let vx: f64 = f
            .x_comp()
            .terms()
            .map(|((i, j), c)| to_f64(c) * x.powi(i as i32) * y.powi(j as i32))
            .sum();
        let vy: f64 = f
            .y_comp()
            .terms()
            .map(|((i, j), c)| to_f64(c) * x.powi(i as i32) * y.powi(j as i32))
            .sum();
        let _ = writeln!(out, "{theta:.6},{x:.6},{y:.6},{vx:.6e},{vy:.6e}");
    }
    out
}

// ---------------------------------------------------------------------------
// check-integral
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct IntegralOutput {
    pub name: Option<String>,
    pub trunc: u32,
    pub is_first_integral: bool,
    pub residual: serde_json::Value,
}

pub fn run_check_integral(built: &BuiltDocument) -> Result<(IntegralOutput, String), CliError> {
    let candidate = built.integral.as_ref().ok_or_else(|| {
        CliError::Hypothesis("document has no `integral = ...` statement".to_string())
    })?;
    let (residual, is_zero) = match (&built.field, candidate) {
        (FieldValue::Planar(f), SeriesValue::Two(h)) => {
            let r = check_first_integral_planar(h, f)?;
            (serde_json::to_value(&r)?, r.is_zero())
        }
        (FieldValue::ThreeD(f), SeriesValue::Three(h)) => {
            let r = check_first_integral_3d(h, f)?;
            (serde_json::to_value(&r)?, r.is_zero())
        }
        _ => {
            return Err(CliError::Hypothesis(
                "integral arity does not match the field".to_string(),
            ))
        }
    };
    let human = if is_zero {
        format!(
            "df(F) = 0 exactly to order {}: the candidate is a first integral",
            built.trunc
        )
    } else {
        "df(F) ≠ 0: the candidate is not a first integral (see residual)".to_string()
    };
    Ok((
        IntegralOutput {
            name: built.name.clone(),
            trunc: built.trunc,
            is_first_integral: is_zero,
            residual,
        },
        human,
    ))
}

// ---------------------------------------------------------------------------
// diverge
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct GevreyOut {
    pub fitted_order: Approx,
    pub log_base: Approx,
    pub window: (u32, u32),
    pub points: usize,
    pub residual: Approx,
    pub verdict: GevreyVerdict,
    pub growth_base: Approx,
    pub geometric_bound_checked: bool,
}

impl From<&GevreyReport> for GevreyOut {
    fn from(r: &GevreyReport) -> Self {
        GevreyOut {
            fitted_order: Approx(r.fitted_order),
            log_base: Approx(r.log_base),
            window: r.window,
            points: r.points,
            residual: Approx(r.residual),
            verdict: r.verdict,
            growth_base: Approx(r.growth_base),
            geometric_bound_checked: r.geometric_bound_checked,
        }
    }
}

#[derive(Serialize)]
pub struct BorelOut {
    pub radius_estimate: Approx,
    pub entire: bool,
    pub window: (u32, u32),
    pub points: usize,
}

impl From<&BorelReport> for BorelOut {
    fn from(r: &BorelReport) -> Self {
        BorelOut {
            radius_estimate: Approx(r.radius_estimate),
            entire: r.entire,
            window: r.window,
            points: r.points,
        }
    }
}

#[derive(Serialize)]
pub struct DivergeOutput {
    pub alpha: Series1,
    #[serde(serialize_with = "ser_rational_str")]
    pub delta: Rational,
    pub order: u32,
    pub separatrix: Series1,
    pub separatrix_is_zero: bool,
    pub gevrey_verdict: GevreyVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gevrey: Option<GevreyOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub borel: Option<BorelOut>,
    pub elizarov: ElizarovResult,
    pub agreement: Agreement,
}

fn ser_rational_str<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn run_diverge(
    alpha: &Series1,
    delta: &Rational,
    order: u32,
) -> Result<(DivergeOutput, String), CliError> {
    let cross: CrossCheckReport = divergence_cross_check(alpha, delta, order)?;
    let borel = if cross.separatrix_is_zero {
        None
    } else {
        match borel_radius(&cross.separatrix, (8.min(order / 2).max(2), order)) {
            Ok(b) => Some(BorelOut::from(&b)),
            Err(DivergenceError::InsufficientData(_)) => None,
            Err(e) => return Err(e.into()),
        }
    };
    let mut human = format!(
        "divergence cross-check for δ = {} to order {}:\n",
        format_rational(delta),
        order
    );
    if cross.separatrix_is_zero {
        let _ = writeln!(human, "  weak separatrix ≡ 0 (trivially convergent)");
    } else if let Some(g) = &cross.gevrey {
        let _ = writeln!(
            human,
            "  Gevrey fit: order ≈ {:.3} (residual {:.3}) → {:?}",
            g.fitted_order, g.residual, g.verdict
        );
    }
    let _ = writeln!(
        human,
        "  first-variation sum: {}{} → {:?}",
        format_rational(&cross.elizarov.final_sum),
        cross
            .elizarov
            .limit
            .as_ref()
            .map(|l| format!(" (limit {})", format_rational(l)))
            .unwrap_or_default(),
        cross.elizarov.verdict
    );
    let _ = write!(human, "  agreement: {:?}", cross.agreement);
    let out = DivergeOutput {
        alpha: alpha.clone(),
        delta: delta.clone(),
        order,
        separatrix: cross.separatrix,
        separatrix_is_zero: cross.separatrix_is_zero,
        gevrey_verdict: cross.gevrey_verdict,
        gevrey: cross.gevrey.as_ref().map(GevreyOut::from),
        borel,
        elizarov: cross.elizarov,
        agreement: cross.agreement,
    };
    Ok((out, human))
}

/// Log-magnitude dump of a coefficient stream for plotting.
pub fn loglog_csv(series: &Series1) -> String {
    let mut out = String::from("n,ln_abs_c_n\n");
    for (n, c) in series.terms() {
        if let Some(l) = septool_core::rational::ln_abs(c) {
            let _ = writeln!(out, "{n},{l:.9}");
        }
    }
    out
}

// ---------------------------------------------------------------------------
// paper-example: the end-to-end showcase pipeline
// ---------------------------------------------------------------------------

#[derive(Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Serialize)]
pub struct ShowcaseOutput {
    pub alpha: Series1,
    #[serde(serialize_with = "ser_rational_str")]
    pub delta: Rational,
    pub order: u32,
    pub checks: Vec<GoldenCheck>,
    pub all_pass: bool,
    pub diverge: DivergeOutput,
}

fn check(
    checks: &mut Vec<GoldenCheck>,
    name: &str,
    pass: bool,
    expected: impl Into<String>,
    actual: impl Into<String>,
) {
    checks.push(GoldenCheck {
        name: name.to_string(),
        pass,
        expected: expected.into(),
        actual: actual.into(),
    });
}

/// The displayed second transform, transcribed term by term (used as the
/// golden value for the blow-up route).
fn golden_second_transform(a: &Series1, n: u32) -> Result<PlanarField, CliError> {
    let vars = ("x", "y2");
    let unit = Series2::one(vars, n).add(&Series2::monomial(vars, (0, 2), rat_int(1), n))?;
    let x3 = Series2::monomial(vars, (3, 0), rat_int(1), n);
    let y2 = Series2::monomial(vars, (0, 1), rat_int(1), n);
    let two_x2 = Series2::monomial(vars, (2, 0), rat_int(2), n);
    let a2 = Series2::embed(&a.rename_var("x"), vars, 0)?;
    let x_comp = x3.mul(&unit)?;
    let y_comp = y2
        .mul(&Series2::one(vars, n).add(&two_x2.mul(&unit)?)?)?
        .neg()
        .add(&a2.mul(&unit)?)?;
    Ok(PlanarField::new(x_comp, y_comp)?)
}

pub fn run_showcase(
    alpha: &Series1,
    delta: &Rational,
    order: u32,
) -> Result<(ShowcaseOutput, String), CliError> {
    if !alpha.coeff(0).is_zero() || !alpha.coeff(1).is_zero() {
        return Err(CliError::Hypothesis(
            "alpha must satisfy alpha(0) = alpha'(0) = 0".to_string(),
        ));
    }
    let mut checks = Vec::new();
    let a = parameter_from_alpha(alpha, 2 * order + 4)?;

    // tangent cone of the quartic family
    let f = gallery::quartic_family(&a, 16)?;
    let cone = tangent_cone(&f)?;
    let cone_ok = cone.degree == 3
        && cone.poly.coeff(0, 3) == rat_int(1)
        && cone.poly.coeff(2, 1) == rat_int(1)
        && cone.poly.num_terms() == 2
        && cone.directions == vec![(Direction::Slope { slope: rat_int(0) }, 1)];
    check(
        &mut checks,
        "tangent-cone",
        cone_ok,
        "y^3 + x^2 y with the single real direction y = 0",
        format!(
            "degree {} with {} directions",
            cone.degree,
            cone.directions.len()
        ),
    );

    // first blow-up: multiplicity one, saddle-node at the distinguished point
    let (up1, m1) = blowup_point(&f, ChartKind::XDirectional)?;
    check(
        &mut checks,
        "first-blowup-multiplicity",
        m1 == 1,
        "1",
        m1.to_string(),
    );
    let class1 = classify_singularity(&up1);
    check(
        &mut checks,
        "saddle-node-after-first-blowup",
        class1.tag == SingularityTag::SaddleNode,
        "saddle-node",
        format!("{:?}", class1.tag),
    );

    // second transform against the displayed field
    let n2 = 12;
    let got2 = double_blowup_quartic(&a, n2)?;
    let want2 = golden_second_transform(&a.truncate_to(n2), n2)?;
    let disp_ok = got2.x_comp().jet_eq(want2.x_comp()) && got2.y_comp().jet_eq(want2.y_comp());
    check(
        &mut checks,
        "second-transform-display",
        disp_ok,
        "x^3(1+y2^2) d/dx + (-y2(1+2x^2(1+y2^2)) + a(x)(1+y2^2)) d/dy2",
        if disp_ok {
            "coefficient-for-coefficient match"
        } else {
            "mismatch"
        },
    );

    // ramified family against the direct construction
    let n_xi = 16;
    let via_blowups = descend_quartic_to_saddle_node(alpha, n_xi)?;
    let direct = gallery::ramified_saddle_node(alpha, n_xi)?;
    let xi_ok = via_blowups.x_comp().jet_eq(direct.x_comp())
        && via_blowups.y_comp().jet_eq(direct.y_comp());
    check(
        &mut checks,
        "ramified-family-match",
        xi_ok,
        "z^2 d/dz + (-w(1+z) + w^3/(1+w^2) + alpha(z)) d/dw",
        if xi_ok {
            "blow-up route equals the direct construction"
        } else {
            "mismatch"
        },
    );

    // the unfolding: first integral and isolatedness
    let f3 = gallery::quartic_family_unfolding(&a, 24)?;
    let z = septool_core::series::Series3::monomial(("x", "y", "z"), (0, 0, 1), rat_int(1), 24);
    let residual = check_first_integral_3d(&z, &f3)?;
    check(
        &mut checks,
        "unfolding-first-integral",
        residual.is_zero(),
        "dz(F) = 0",
        if residual.is_zero() {
            "0"
        } else {
            "nonzero residual"
        },
    );
    let witness = isolated_witness_3d(&f3);
    let isolated = matches!(witness, IsolatedWitness::Isolated { .. });
    check(
        &mut checks,
        "unfolding-isolated-origin",
        isolated,
        "isolated (positive-definite component)",
        format!("{witness:?}"),
    );

    // unique separatrix with verified invariance
    let f20 = gallery::quartic_family(&a, 20)?;
    let report = separatrix_search(&f20, 12, 6)?;
    let unique_ok = report.curves.len() == 1
        && report.curves[0].tangent == Direction::Slope { slope: rat_int(0) };
    let invariant_ok = if unique_ok {
        let curve = &report.curves[0];
        verify_invariance(&f20, curve, curve.guaranteed_order.min(10))?.is_invariant()
    } else {
        false
    };
    check(
        &mut checks,
        "unique-separatrix",
        unique_ok && invariant_ok,
        "exactly one formal separatrix, tangent to y = 0, invariance residual 0",
        format!(
            "{} curve(s), invariant: {invariant_ok}",
            report.curves.len()
        ),
    );

    // divergence diagnostics
    let (diverge, _) = run_diverge(alpha, delta, order)?;
    let alpha_is_square = {
        let probe = Series1::monomial(alpha.var(), 2, rat_int(1), alpha.trunc());
        alpha.jet_eq(&probe)
    };
    if alpha_is_square {
        let eli = elizarov_derivative(alpha, 20)?;
        check(
            &mut checks,
            "first-variation-limit",
            eli.limit == Some(rat(1, 2)),
            "1/2",
            eli.limit
                .as_ref()
                .map(format_rational)
                .unwrap_or_else(|| "none".to_string()),
        );
    }
    check(
        &mut checks,
        "first-variation-nonzero",
        matches!(
            diverge.elizarov.verdict,
            septool_core::divergence::ElizarovVerdict::NonZero
        ) || alpha.is_zero(),
        if alpha.is_zero() { "zero" } else { "nonzero" },
        format!("{:?}", diverge.elizarov.verdict),
    );
    check(
        &mut checks,
        "weak-separatrix-growth",
        diverge.gevrey_verdict == GevreyVerdict::DivergentGevreyLike || alpha.is_zero(),
        if alpha.is_zero() {
            "convergent (zero perturbation)"
        } else {
            "divergent factorial growth"
        },
        format!("{:?}", diverge.gevrey_verdict),
    );

    let all_pass = checks.iter().all(|c| c.pass);
    let mut human = String::from("showcase pipeline:\n");
    for c in &checks {
        let _ = writeln!(
            human,
            "  [{}] {} — expected {}, got {}",
            if c.pass { "ok" } else { "FAIL" },
            c.name,
            c.expected,
            c.actual
        );
    }
    let _ = write!(
        human,
        "{} of {} checks passed",
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    );
    let out = ShowcaseOutput {
        alpha: alpha.clone(),
        delta: delta.clone(),
        order,
        checks,
        all_pass,
        diverge,
    };
    Ok((out, human))
}
