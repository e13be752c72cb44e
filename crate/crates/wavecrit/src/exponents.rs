//! Critical exponents for the evolution equation
//! `d^k u/dt^k - Lap u = |u|^p + |d^{k-1}u/dt^{k-1}|^q + w(t,x)`
//! and classification of parameter points into nonexistence / possible
//! global-existence regions.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Relative tolerance below which `p` counts as sitting exactly on a
/// critical exponent. The critical case is reported as open, never guessed.
pub const CRITICAL_REL_TOL: f64 = 1e-12;

/// A positive real exponent that may be infinite (`N` in {1, 2} cases).
///
/// Kept as an explicit sum type so comparisons against infinity are total and
/// no sentinel float ever leaks into classification logic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            Exponent::Finite(v) => Some(*v),
            Exponent::Infinite => None,
        }
    }
}

impl PartialEq<f64> for Exponent {
    fn eq(&self, other: &f64) -> bool {
        matches!(self, Exponent::Finite(v) if v == other)
    }
}

impl PartialOrd<f64> for Exponent {
    fn partial_cmp(&self, other: &f64) -> Option<std::cmp::Ordering> {
        match self {
            Exponent::Finite(v) => v.partial_cmp(other),
            Exponent::Infinite => Some(std::cmp::Ordering::Greater),
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(v) => write!(f, "{v}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(v) => serializer.serialize_f64(*v),
            Exponent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

/// The tuple `(k, p, q, N)` defining the evolution problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProblemParams {
    /// Order of the time derivative, `k >= 2`.
    pub k: u32,
    /// Power on `|u|`.
    pub p: f64,
    /// Power on `|d^{k-1}u/dt^{k-1}|`.
    pub q: f64,
    /// Spatial dimension `N >= 1`.
    pub dim: u32,
}

impl ProblemParams {
    pub fn new(k: u32, p: f64, q: f64, dim: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Domain(format!("k must be at least 2 (got {k})")));
        }
        if !(p > 1.0) {
            return Err(Error::Domain(format!("p must exceed 1 (got {p})")));
        }
        if !(q > 1.0) {
            return Err(Error::Domain(format!("q must exceed 1 (got {q})")));
        }
        if dim < 1 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        Ok(Self { k, p, q, dim })
    }
}

/// Every derived exponent for one parameter point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExponentSet {
    /// First critical exponent `p*(N)`.
    pub p_star: Exponent,
    /// Strauss exponent `p_c(N)` (undefined for `N = 1`).
    pub p_strauss: Option<f64>,
    /// Glassey exponent `q_c(N)`.
    pub q_glassey: Exponent,
    /// Second critical exponent `a* = 2p/(p-1)`.
    pub a_star: f64,
    /// Spatial scaling rate `theta = (p-1)q / (2(q-1)p)`.
    pub theta: f64,
    /// Cutoff power `ell = max{q/(q-1), 2p/(p-1)}`.
    pub ell: f64,
    /// Criterion exponent `E = q/(q-1) [1 - N(p-1)/(2p)] - 1`.
    pub criterion_exp: f64,
}

/// First critical exponent: infinite for `N` in {1, 2}, else `N/(N-2)`.
pub fn fujita_exponent(dim: u32) -> Result<Exponent> {
    match dim {
        0 => Err(Error::Domain("N must be at least 1".into())),
        1 | 2 => Ok(Exponent::Infinite),
        n => Ok(Exponent::Finite(n as f64 / (n as f64 - 2.0))),
    }
}

/// Strauss exponent: positive root of `(N-1)p^2 - (N+1)p - 2 = 0`.
pub fn strauss_exponent(dim: u32) -> Result<f64> {
    if dim < 2 {
        return Err(Error::Domain(format!(
            "Strauss exponent needs N >= 2 (the defining quadratic degenerates at N = {dim})"
        )));
    }
    let n = dim as f64;
    Ok(((n + 1.0) + (n * n + 10.0 * n - 7.0).sqrt()) / (2.0 * (n - 1.0)))
}

/// Glassey exponent: `1 + 2/(N-1)`, infinite for `N = 1`.
pub fn glassey_exponent(dim: u32) -> Result<Exponent> {
    match dim {
        0 => Err(Error::Domain("N must be at least 1".into())),
        1 => Ok(Exponent::Infinite),
        n => Ok(Exponent::Finite(1.0 + 2.0 / (n as f64 - 1.0))),
    }
}

/// Second critical exponent `a* = 2p/(p-1)`.
pub fn second_critical_exponent(p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("p must exceed 1 (got {p})")));
    }
    Ok(2.0 * p / (p - 1.0))
}

/// The scaling choices that balance the two cutoff integrals.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Scaling {
    pub theta: f64,
    pub ell: f64,
    /// Exponent of `T` in front of the criterion integral.
    pub criterion_exp: f64,
}

/// `theta`, `ell` and the criterion exponent for a parameter point.
///
/// `theta` is chosen so that `1 + N theta - 2p theta/(p-1)` equals
/// `1 + N theta - q/(q-1)`; the identity holds exactly in floating point
/// because `2p theta/(p-1)` simplifies to `q/(q-1)`.
pub fn optimal_scaling(p: f64, q: f64, dim: u32) -> Result<Scaling> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("p must exceed 1 (got {p})")));
    }
    if !(q > 1.0) {
        return Err(Error::Domain(format!("q must exceed 1 (got {q})")));
    }
    let n = dim as f64;
    let theta = (p - 1.0) * q / (2.0 * (q - 1.0) * p);
    let ell = (q / (q - 1.0)).max(2.0 * p / (p - 1.0));
    let criterion_exp = q / (q - 1.0) * (1.0 - n * (p - 1.0) / (2.0 * p)) - 1.0;
    Ok(Scaling {
        theta,
        ell,
        criterion_exp,
    })
}

/// All derived exponents for one parameter point.
pub fn exponent_set(params: &ProblemParams) -> ExponentSet {
    let scaling = optimal_scaling(params.p, params.q, params.dim)
        .expect("params validated at construction");
    ExponentSet {
        p_star: fujita_exponent(params.dim).expect("dim >= 1"),
        p_strauss: strauss_exponent(params.dim).ok(),
        q_glassey: glassey_exponent(params.dim).expect("dim >= 1"),
        a_star: second_critical_exponent(params.p).expect("p > 1"),
        theta: scaling.theta,
        ell: scaling.ell,
        criterion_exp: scaling.criterion_exp,
    }
}

/// Outcome of classifying a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// No global weak solution exists for any initial data.
    Nonexistence,
    /// Global solutions exist for some admissible inhomogeneity and data.
    GlobalExistencePossible,
    /// Exactly the boundary case the theory leaves open.
    CriticalUnknown,
    /// The hypotheses of the applicable result do not cover this point.
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    /// Which result of the theory produced the verdict.
    pub theorem_tag: String,
}

impl Classification {
    fn new(verdict: Verdict, tag: &str) -> Self {
        Self {
            verdict,
            theorem_tag: tag.to_string(),
        }
    }
}

/// Classify against the first critical exponent; `q` plays no role in
/// the verdict (the result holds for every `q > 1`).
pub fn classify_fujita(params: &ProblemParams) -> Classification {
    match fujita_exponent(params.dim).expect("dim >= 1") {
        Exponent::Infinite => Classification::new(Verdict::Nonexistence, "Theorem 2(I)"),
        Exponent::Finite(p_star) => {
            if (params.p - p_star).abs() <= CRITICAL_REL_TOL * p_star.max(1.0) {
                Classification::new(Verdict::CriticalUnknown, "Theorem 2 (critical case open)")
            } else if params.p < p_star {
                Classification::new(Verdict::Nonexistence, "Theorem 2(I)")
            } else {
                Classification::new(Verdict::GlobalExistencePossible, "Theorem 2(II)")
            }
        }
    }
}

/// Classify a spatial decay rate `a` against the second critical exponent.
///
/// Requires the supercritical regime `N >= 3`, `p > p*(N)` and `a < N`;
/// anything else is out of scope rather than an error.
pub fn classify_second(params: &ProblemParams, a: f64) -> Classification {
    let p_star = fujita_exponent(params.dim).expect("dim >= 1");
    if !(p_star < params.p) {
        return Classification::new(
            Verdict::OutOfScope,
            "Theorem 3 (requires N >= 3 and p > p*(N))",
        );
    }
    if a >= params.dim as f64 {
        return Classification::new(Verdict::OutOfScope, "Theorem 3 (requires a < N)");
    }
    let a_star = second_critical_exponent(params.p).expect("p > 1");
    if a < a_star {
        Classification::new(Verdict::Nonexistence, "Theorem 3(I)")
    } else {
        Classification::new(Verdict::GlobalExistencePossible, "Theorem 3(II)")
    }
}

/// Classify a separable inhomogeneity `w = f(t) g(x)` whose time factor
/// grows at least like `t^{q sigma/(q-1)}`.
///
/// `sigma` must lie in the open interval `(-1 + 1/q, -1 + N/2)`; outside it
/// the construction says nothing and the point is out of scope.
pub fn classify_sigma_example(params: &ProblemParams, sigma: f64) -> Classification {
    let n = params.dim as f64;
    let lo = -1.0 + 1.0 / params.q;
    let hi = -1.0 + n / 2.0;
    if !(sigma > lo && sigma < hi) {
        return Classification::new(
            Verdict::OutOfScope,
            "Corollary 1 example (requires -1 + 1/q < sigma < -1 + N/2)",
        );
    }
    let p_bound = n / (n - 2.0 * (sigma + 1.0));
    if params.p < p_bound && params.q > 1.0f64.max(2.0 / n) {
        Classification::new(Verdict::Nonexistence, "Corollary 1 example")
    } else {
        Classification::new(Verdict::CriticalUnknown, "Corollary 1 example (no conclusion)")
    }
}
