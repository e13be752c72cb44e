//! Numerical toolkit for the critical-exponent theory of the inhomogeneous
//! higher-order evolution equation
//!
//! ```text
//! d^k u/dt^k - Lap u = |u|^p + |d^{k-1}u/dt^{k-1}|^q + w(t, x)
//! ```
//!
//! on `(0, inf) x R^N` with `k >= 2`, `p, q > 1` and `w >= 0`.
//!
//! * [`exponents`] — exact exponent arithmetic (first and second critical
//!   exponents, Strauss and Glassey exponents, the balanced scaling rates)
//!   and region classification.
//! * [`testfunc`] — the compactly supported space-time cutoff used by the
//!   nonexistence machinery, with analytic derivatives.
//! * [`scaling`] — quadrature of the two cutoff integrals over a ladder of
//!   scales and power-law verification of their `T`-exponents.
//! * [`criterion`] — finite-ladder evidence for the blow-up criterion
//!   functional on user-supplied inhomogeneities.
//! * [`stationary`] — certified global stationary profiles for the
//!   supercritical regime.
//! * [`simulator`] — a radial method-of-lines integrator exhibiting
//!   finite-time blow-up and near-stationarity at desk scale.
//!
//! Scale ladders, sweep grids, and certification grids are data-parallel;
//! the `parallel` feature (on by default) distributes them via rayon, and
//! disabling it swaps in an order-identical sequential fallback.

// negated float comparisons (`!(x > 0.0)`) are used on purpose in argument
// validation: they reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criterion;
pub mod error;
pub mod exponents;
pub mod parallel;
pub mod quad;
pub mod scaling;
pub mod simulator;
pub mod stationary;
pub mod testfunc;

pub use error::{Error, Result};
