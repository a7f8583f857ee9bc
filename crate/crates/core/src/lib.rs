//! Round-off analysis of Bernstein-form polynomial evaluation.
//!
//! This crate evaluates polynomials `p(s) = sum b_j B_{j,n}(s)` with two
//! binary64 algorithms, the de Casteljau triangle and the VS (scaled
//! Bernstein Horner) method, and measures their forward error against an
//! exact rational oracle. It also carries the a priori bounds for both
//! algorithms and the much sharper bound that applies to the family
//! `b0 [(1 - s) - 2^t s]^n`, whose computed de Casteljau intermediates keep
//! the exact ratio `-2^t`.
//!
//! Module map:
//!
//! * [`fp_model`]: unit roundoff, `gamma_k`, exact power-of-two scaling.
//! * [`rational`]: exact conversions between binary64 and rationals.
//! * [`bernstein`]: polynomial types, binomials, construction from roots.
//! * [`evaluators`]: de Casteljau and VS in binary64.
//! * [`oracle`]: exact values, condition numbers, relative errors.
//! * [`family`]: family detection, `phi`, and all error bounds.
//! * [`experiments`]: the three reproducible experiment tables and CSV I/O.

pub mod bernstein;
pub mod evaluators;
pub mod experiments;
pub mod family;
pub mod fp_model;
pub mod oracle;
pub mod rational;
pub mod suites;

mod error;

pub use bernstein::{binomial, family_rational, poly_from_roots, round_coeffs, BernsteinPoly, RationalPoly};
pub use error::Error;
pub use evaluators::{decasteljau, decasteljau_value, vs, EvalTriangle};
pub use family::{
    check_triangle_ratio, decasteljau_bound, detect_family, improved_bound, naive_bound, phi,
    vs_bound, FamilySpec, VsBound,
};
pub use fp_model::{exact_scaling_holds, gamma, unit_roundoff, Check, GammaBound};
pub use oracle::{condition_number, eval_abs_exact, eval_exact, relative_error, ErrorReport};
pub use rational::{Magnitude, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;
