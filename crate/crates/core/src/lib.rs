//! Exact local analysis of planar (and simple three-dimensional) real
//! analytic vector fields.
//!
//! The crate is organised as a stack:
//!
//! * [`rational`] / [`series`] — truncated formal power series in one, two
//!   and three variables over arbitrary-precision rationals. This is the
//!   computational substrate: no floating point enters these modules.
//! * [`field`] — vector fields as series tuples: linear parts, exact
//!   singularity classification, tangent cones, first-integral residuals,
//!   isolatedness witnesses.
//! * [`blowup`] — point blow-ups in directional charts, strict transforms,
//!   recentering along the exceptional divisor, reduction trees.
//! * [`separatrix`] — graph-series solutions of the invariance equation at
//!   simple and saddle-node singularities, and the recursive blow-up search
//!   returning all formal separatrices with their blow-down chains.
//! * [`index`] — Poincaré–Hopf index by certified winding number, plus the
//!   tangency-count and Bendixson sector formulas.
//! * [`divergence`] — Gevrey-order fitting, Borel-radius estimation, and
//!   the exact telescoping derivative functional used to predict divergence
//!   of weak separatrices.
//! * [`gallery`] — built-in example fields used throughout the test suite
//!   and the command-line pipelines.

pub mod blowup;
pub mod divergence;
pub mod field;
pub mod gallery;
pub mod index;
mod jsonutil;
mod poly;
pub mod rational;
pub mod separatrix;
pub mod series;

pub use field::{Field3, LinearPart, PlanarField, SingularityClass, SingularityTag, TangentCone};
pub use rational::Rational;
pub use series::{Series1, Series2, Series3, SeriesError};

/// Default working truncation order for series and fields.
///
/// Overridable everywhere a truncation is accepted; the golden pipelines use
/// orders between 12 and 48.
pub const DEFAULT_TRUNC: u32 = 24;
