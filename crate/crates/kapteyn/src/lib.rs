//! Kapteyn series toolkit.
//!
//! A Kapteyn series of the first kind expands a function against Bessel
//! terms whose order and argument grow together,
//!
//! ```text
//! z^nu f(z) = sum_{n>=0} a_n J_{nu+n}((nu+n) z),
//! ```
//!
//! one of the second kind against products of two such terms,
//!
//! ```text
//! z^{mu+nu} f(z) = sum_{n>=0} (a_n + z c_n)
//!                  J_{mu+n}((mu+nu+2n) z) J_{nu+n}((mu+nu+2n) z).
//! ```
//!
//! This crate converts coefficient sequences between those expansions and
//! ordinary Taylor coefficients (exactly over rationals, or in floating
//! point), produces closed rational and algebraic forms for the power
//! weighted sums `sum n^{2p} J_n(nz)` and `sum n^{2p} J_n(nz)^2`, and
//! evaluates everything numerically with reported truncation data.
//!
//! The numeric core is generic over [`Scalar`]; use [`Rational`] for the
//! exact path and `f64` for the floating path.

pub mod bessel;
pub mod closed_form;
pub mod error;
pub mod eval;
pub mod first_kind;
pub mod poly;
pub mod record;
pub mod scalar;
pub mod second_kind;
pub mod series;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Exact polynomial, the default for closed form numerators.
pub type RationalPolynomial = poly::Polynomial<Rational>;
/// Exact truncated series.
pub type RationalSeries = series::TruncSeries<Rational>;
/// Floating truncated series.
pub type FloatSeries = series::TruncSeries<f64>;
