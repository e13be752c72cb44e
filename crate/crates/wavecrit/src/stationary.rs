//! Explicit global stationary solutions `u(x) = eps (1 + |x|^2)^{-delta/2}`
//! for the supercritical regime, and numerical certification that the induced
//! inhomogeneity `g = -Lap u - u^p` is positive with the advertised decay.
//!
//! Admissibility of `(delta, eps)` is the condition
//! `a - 2 <= delta < N - 2` and `0 < eps < [delta (N - delta - 2)]^{1/(p-1)}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::{fujita_exponent, second_critical_exponent};
use crate::scaling::fit_power_law;

pub const DEFAULT_R_MAX: f64 = 100.0;
pub const DEFAULT_N_GRID: usize = 2048;
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-9;

/// Parameters of one stationary profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryParams {
    pub dim: u32,
    pub p: f64,
    /// Target decay rate of `g`.
    pub a: f64,
    pub delta: f64,
    pub epsilon: f64,
}

/// Upper bound on `eps` for a given `delta`: `[delta (N - delta - 2)]^{1/(p-1)}`.
pub fn epsilon_bound(dim: u32, p: f64, delta: f64) -> f64 {
    (delta * (dim as f64 - delta - 2.0)).powf(1.0 / (p - 1.0))
}

impl StationaryParams {
    pub fn new(dim: u32, p: f64, a: f64, delta: f64, epsilon: f64) -> Result<Self> {
        let range = admissible_range(dim, p, a)?;
        if !(delta >= range.delta_min && delta < range.delta_max) {
            return Err(Error::Precondition(format!(
                "delta must satisfy a - 2 <= delta < N - 2, i.e. [{}, {}) (got {delta})",
                range.delta_min, range.delta_max
            )));
        }
        let bound = epsilon_bound(dim, p, delta);
        if !(epsilon > 0.0 && epsilon < bound) {
            return Err(Error::Precondition(format!(
                "epsilon must lie in (0, [delta(N-delta-2)]^(1/(p-1))) = (0, {bound}) (got {epsilon})"
            )));
        }
        Ok(Self {
            dim,
            p,
            a,
            delta,
            epsilon,
        })
    }

    /// Default admissible point: `delta = a - 2` (tight decay) and
    /// `eps` at half its bound (comfortable positivity margin).
    pub fn tight(dim: u32, p: f64, a: f64) -> Result<Self> {
        let delta = a - 2.0;
        let epsilon = 0.5 * epsilon_bound(dim, p, delta);
        Self::new(dim, p, a, delta, epsilon)
    }
}

/// The `delta` interval `[a - 2, N - 2)` admissible for given `(N, p, a)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AdmissibleRange {
    pub delta_min: f64,
    /// Exclusive.
    pub delta_max: f64,
}

pub fn admissible_range(dim: u32, p: f64, a: f64) -> Result<AdmissibleRange> {
    if dim < 3 {
        return Err(Error::Domain(format!(
            "stationary construction needs N >= 3 (got {dim})"
        )));
    }
    let p_star = fujita_exponent(dim)?
        .finite()
        .expect("finite for N >= 3");
    if !(p > p_star) {
        return Err(Error::Domain(format!(
            "stationary construction needs p > p*(N) = {p_star} (got p = {p})"
        )));
    }
    let a_star = second_critical_exponent(p)?;
    if !(a >= a_star && a < dim as f64) {
        return Err(Error::Domain(format!(
            "decay rate must satisfy a* <= a < N, i.e. [{a_star}, {dim}) (got a = {a})"
        )));
    }
    Ok(AdmissibleRange {
        delta_min: a - 2.0,
        delta_max: dim as f64 - 2.0,
    })
}

/// `u(r) = eps (1 + r^2)^{-delta/2}`.
pub fn u_value(sp: &StationaryParams, r: f64) -> f64 {
    sp.epsilon * (1.0 + r * r).powf(-sp.delta / 2.0)
}

fn u_prime(sp: &StationaryParams, r: f64) -> f64 {
    -sp.epsilon * sp.delta * r * (1.0 + r * r).powf(-sp.delta / 2.0 - 1.0)
}

fn u_second(sp: &StationaryParams, r: f64) -> f64 {
    let s = 1.0 + r * r;
    -sp.epsilon * sp.delta * s.powf(-sp.delta / 2.0 - 1.0)
        + sp.epsilon * sp.delta * (sp.delta + 2.0) * r * r * s.powf(-sp.delta / 2.0 - 2.0)
}

/// Radial Laplacian of `u`, computed from the differentiated form
/// `u'' + (N-1)/r u'` (limit `N u''(0)` at the origin). The induced `g` is
/// evaluated from an independent closed form, so the certification residual
/// genuinely measures agreement of two expression routes.
pub fn laplacian_u(sp: &StationaryParams, r: f64) -> f64 {
    if r == 0.0 {
        return sp.dim as f64 * u_second(sp, 0.0);
    }
    u_second(sp, r) + (sp.dim - 1) as f64 / r * u_prime(sp, r)
}

/// `g(r) = eps delta (N + (N - delta - 2) r^2) (1 + r^2)^{-delta/2 - 2}
///        - eps^p (1 + r^2)^{-delta p / 2}`.
pub fn g_value(sp: &StationaryParams, r: f64) -> f64 {
    let n = sp.dim as f64;
    let s = 1.0 + r * r;
    sp.epsilon * sp.delta * (n + (n - sp.delta - 2.0) * r * r) * s.powf(-sp.delta / 2.0 - 2.0)
        - sp.epsilon.powf(sp.p) * s.powf(-sp.delta * sp.p / 2.0)
}

/// Pointwise lower bound on `g` from the positivity chain:
/// `eps (1 + r^2)^{-delta/2 - 1} (delta (N - delta - 2) - eps^{p-1})`.
pub fn g_lower_bound(sp: &StationaryParams, r: f64) -> f64 {
    let margin = sp.delta * (sp.dim as f64 - sp.delta - 2.0) - sp.epsilon.powf(sp.p - 1.0);
    sp.epsilon * (1.0 + r * r).powf(-sp.delta / 2.0 - 1.0) * margin
}

/// A certified stationary solution with its verification summary.
#[derive(Debug, Clone, Serialize)]
pub struct StationarySolution {
    pub params: StationaryParams,
    /// Smallest grid constant with `g(r) <= C r^{-a}` on `[r_max/2, r_max]`.
    pub decay_constant: f64,
    pub max_residual: f64,
    pub min_g: f64,
    /// Fitted log-log slope of `g` on `[r_max/2, r_max]`.
    pub far_field_slope: f64,
}

/// Certification grid: `r = 0` plus geometric spacing up to `r_max`.
pub fn certification_grid(r_max: f64, n_grid: usize) -> Vec<f64> {
    let r_lo = r_max * 1e-5;
    let ratio = (r_max / r_lo).powf(1.0 / (n_grid - 2) as f64);
    let mut grid = Vec::with_capacity(n_grid);
    grid.push(0.0);
    for i in 0..n_grid - 1 {
        grid.push(r_lo * ratio.powi(i as i32));
    }
    grid
}

/// One row of the sampled profile, for tabular output.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProfileRow {
    pub r: f64,
    pub u: f64,
    pub g: f64,
    pub residual: f64,
}

/// Sample `(r, u, g, residual)` on the certification grid, with
/// `residual = -Lap u - u^p - g` (an algebraic identity; only rounding
/// should remain).
pub fn sample_table(sp: &StationaryParams, r_max: f64, n_grid: usize) -> Vec<ProfileRow> {
    certification_grid(r_max, n_grid)
        .into_iter()
        .map(|r| {
            let u = u_value(sp, r);
            let g = g_value(sp, r);
            let residual = -laplacian_u(sp, r) - u.powf(sp.p) - g;
            ProfileRow {
                r,
                u,
                g,
                residual: residual.abs(),
            }
        })
        .collect()
}

/// Certify positivity, the elliptic identity and the decay class of the
/// stationary profile on a grid.
pub fn certify(
    sp: &StationaryParams,
    r_max: f64,
    n_grid: usize,
    tol: f64,
) -> Result<StationarySolution> {
    if !(r_max > 1.0) || n_grid < 16 {
        return Err(Error::Config(format!(
            "certification needs r_max > 1 and at least 16 grid points (got {r_max}, {n_grid})"
        )));
    }
    let table = sample_table(sp, r_max, n_grid);

    let worst_res = table
        .iter()
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
        .unwrap();
    if worst_res.residual > tol {
        return Err(Error::Certification {
            check: "residual",
            r: worst_res.r,
            detail: format!(
                "|-Lap u - u^p - g| = {} exceeds tol {tol}",
                worst_res.residual
            ),
        });
    }

    let worst_g = table
        .iter()
        .min_by(|a, b| a.g.total_cmp(&b.g))
        .unwrap();
    if !(worst_g.g > 0.0) {
        return Err(Error::Certification {
            check: "positivity",
            r: worst_g.r,
            detail: format!("min g = {} is not positive", worst_g.g),
        });
    }

    let far: Vec<(f64, f64)> = table
        .iter()
        .filter(|row| row.r >= r_max / 2.0)
        .map(|row| (row.r, row.g))
        .collect();
    let fit = fit_power_law(&far).map_err(|e| Error::Certification {
        check: "decay",
        r: r_max / 2.0,
        detail: format!("far-field fit failed: {e}"),
    })?;
    let decay_constant = far
        .iter()
        .map(|&(r, g)| g * r.powf(sp.a))
        .fold(0.0f64, f64::max);

    Ok(StationarySolution {
        params: *sp,
        decay_constant,
        max_residual: worst_res.residual,
        min_g: worst_g.g,
        far_field_slope: fit.slope,
    })
}

/// The supercritical witness: for `N >= 3`, `p > p*(N)`, pick `a = a*`,
/// `delta = a* - 2 = 2/(p-1)` and `eps` at half its bound, and certify.
/// The result is a global positive stationary solution of the evolution
/// problem with `w = g` and all time derivatives zero.
pub fn fujita_supercritical_witness(dim: u32, p: f64) -> Result<StationarySolution> {
    let a_star = second_critical_exponent(p)?;
    let sp = StationaryParams::tight(dim, p, a_star)?;
    certify(&sp, DEFAULT_R_MAX, DEFAULT_N_GRID, DEFAULT_RESIDUAL_TOL)
}
