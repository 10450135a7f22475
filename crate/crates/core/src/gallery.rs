//! Built-in example fields used by the test suites and the CLI pipelines.
//!
//! The centrepiece is the quartic nilpotent family
//!
//! ```text
//!   (y² + x⁴) ∂/∂x + (−x·y + x³·a(x) + (a(x)/x)·y²) ∂/∂y
//! ```
//!
//! parametrised by a series `a(x)` with `a(0) = a'(0) = 0`, together with
//! its three-dimensional unfolding (adding `z² ∂/∂x`, so `z` is a first
//! integral) and the ramified saddle-node family
//!
//! ```text
//!   z² ∂/∂z + (−w(1+z) + w³/(1+w²) + α(z)) ∂/∂w
//! ```
//!
//! that its double blow-up descends to.

use num::One;

use crate::field::{Field3, FieldError, PlanarField};
use crate::rational::{rat_int, Rational};
use crate::series::{Series1, Series2, Series3};

/// `-y ∂/∂x + x ∂/∂y`: linear rotation, no real invariant curve.
pub fn center(trunc: u32) -> PlanarField {
    let vars = ("x", "y");
    PlanarField::new(
        Series2::monomial(vars, (0, 1), rat_int(-1), trunc),
        Series2::monomial(vars, (1, 0), rat_int(1), trunc),
    )
    .expect("same variables")
}

/// `x ∂/∂x - y ∂/∂y`: linear saddle, axes invariant.
pub fn saddle(trunc: u32) -> PlanarField {
    let vars = ("x", "y");
    PlanarField::new(
        Series2::monomial(vars, (1, 0), rat_int(1), trunc),
        Series2::monomial(vars, (0, 1), rat_int(-1), trunc),
    )
    .expect("same variables")
}

/// A linear field from an exact matrix.
pub fn linear_field(m: &[[Rational; 2]; 2], trunc: u32) -> PlanarField {
    let vars = ("x", "y");
    let row = |r: &[Rational; 2]| {
        Series2::from_terms(
            vars,
            &[((1, 0), r[0].clone()), ((0, 1), r[1].clone())],
            trunc,
        )
    };
    PlanarField::new(row(&m[0]), row(&m[1])).expect("same variables")
}

/// `z² ∂/∂z − w(1+z) ∂/∂w`: the saddle-node orbital normal form.
pub fn saddle_node_normal_form(trunc: u32) -> PlanarField {
    let vars = ("z", "w");
    let z2 = Series2::monomial(vars, (2, 0), rat_int(1), trunc);
    let w = Series2::monomial(vars, (0, 1), rat_int(1), trunc);
    let zw = Series2::monomial(vars, (1, 1), rat_int(1), trunc);
    PlanarField::new(z2, w.add(&zw).expect("vars").neg()).expect("same variables")
}

/// `z² ∂/∂z + (−w + z) ∂/∂w`: the saddle-node whose weak invariant graph
/// has the factorial (Euler) coefficient stream.
pub fn euler_field(trunc: u32) -> PlanarField {
    let vars = ("z", "w");
    let z2 = Series2::monomial(vars, (2, 0), rat_int(1), trunc);
    let w = Series2::monomial(vars, (0, 1), rat_int(-1), trunc);
    let z = Series2::monomial(vars, (1, 0), rat_int(1), trunc);
    PlanarField::new(z2, w.add(&z).expect("vars")).expect("same variables")
}

fn check_admissible(a: &Series1) -> Result<(), FieldError> {
    if !a.coeff(0).is_zero() || !a.coeff(1).is_zero() {
        return Err(FieldError::HypothesisViolated(
            "series parameter must satisfy a(0) = a'(0) = 0".to_string(),
        ));
    }
    Ok(())
}

use num::Zero;

/// The quartic nilpotent family in the plane.
///
/// Requires `a(0) = a'(0) = 0`, which is exactly what makes `a(x)/x`
/// an exact division. The parameter series is taken at face value: extend
/// its truncation before calling if more output orders are needed.
pub fn quartic_family(a: &Series1, trunc: u32) -> Result<PlanarField, FieldError> {
    check_admissible(a)?;
    let vars = ("x", "y");
    let a_ext = a.pad_to(trunc + 1);
    let a2 = Series2::embed(&a_ext, vars, 0)?;
    let x = Series2::monomial(vars, (1, 0), rat_int(1), trunc + 1);
    let y2 = Series2::monomial(vars, (0, 2), rat_int(1), trunc);
    let x4 = Series2::monomial(vars, (4, 0), rat_int(1), trunc);
    let x_comp = y2.add(&x4)?;
    let xy = Series2::monomial(vars, (1, 1), rat_int(1), trunc);
    let x3 = Series2::monomial(vars, (3, 0), rat_int(1), trunc);
    let a_over_x = a2.divide_exact(&x)?;
    let y2_full = Series2::monomial(vars, (0, 2), rat_int(1), a_over_x.trunc());
    let y_comp = xy.neg().add(&x3.mul(&a2)?)?.add(&a_over_x.mul(&y2_full)?)?;
    PlanarField::new(x_comp, y_comp)
}

/// The three-dimensional unfolding of [`quartic_family`]: the planar field
/// plus `z² ∂/∂x`, making `z` a first integral and the origin isolated.
pub fn quartic_family_unfolding(a: &Series1, trunc: u32) -> Result<Field3, FieldError> {
    let planar = quartic_family(a, trunc)?;
    let vars = ("x", "y", "z");
    let x3 = Series3::embed2(planar.x_comp(), vars, (0, 1))?;
    let y3 = Series3::embed2(planar.y_comp(), vars, (0, 1))?;
    let z2 = Series3::monomial(vars, (0, 0, 2), rat_int(1), planar.trunc());
    Field3::new(x3.add(&z2)?, y3, Series3::zero(vars, planar.trunc()))
}

/// The ramified saddle-node family
/// `z² ∂/∂z + (−w(1+z) + w³/(1+w²) + α(z)) ∂/∂w`, built directly.
///
/// Requires `α(0) = α'(0) = 0`.
pub fn ramified_saddle_node(alpha: &Series1, trunc: u32) -> Result<PlanarField, FieldError> {
    check_admissible(alpha)?;
    let vars = ("z", "w");
    let z_comp = Series2::monomial(vars, (2, 0), rat_int(1), trunc);
    let w = Series2::monomial(vars, (0, 1), rat_int(1), trunc);
    let zw = Series2::monomial(vars, (1, 1), rat_int(1), trunc);
    let w3 = Series2::monomial(vars, (0, 3), rat_int(1), trunc);
    let unit =
        Series2::one(vars, trunc).add(&Series2::monomial(vars, (0, 2), rat_int(1), trunc))?;
    let alpha2 = Series2::embed(&alpha.rename_var("z").pad_to(trunc), vars, 0)?;
    let w_comp = w
        .add(&zw)?
        .neg()
        .add(&w3.divide_exact(&unit)?)?
        .add(&alpha2)?;
    PlanarField::new(z_comp, w_comp)
}

/// Convenience: `x^k` as an admissible parameter series.
pub fn monomial_parameter(var: &str, exp: u32, trunc: u32) -> Series1 {
    Series1::monomial(var, exp, Rational::one(), trunc)
}
