//! Numerical verification of the two cutoff-integral estimates: compute the
//! integrals over a geometric ladder of scales `T` and recover the predicted
//! power of `T` by log-log regression.
//!
//! The estimates being checked (for `m > 1`, over `Q = (0,inf) x R^N`):
//!
//! * time term, `ell >= m/(m-1)`:
//!   `int_Q phi_T^{-1/(m-1)} |dt phi_T|^{m/(m-1)} <= C T^{1 + N theta - m/(m-1)}`
//! * space term, `ell >= 2m/(m-1)`:
//!   `int_Q phi_T^{-1/(m-1)} |Lap phi_T|^{m/(m-1)} <= C T^{1 + N theta - 2m theta/(m-1)}`
//!
//! Both are stated as upper bounds, but the cutoff construction attains the
//! rate, so the fitted slope is expected to match the analytic one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quad::{integrate, radial_integral, QuadratureConfig};
use crate::testfunc::{CutoffProfile, TestFunction};

/// Which of the two cutoff estimates to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lemma {
    /// Time-derivative term (Lemma 2.1 scaling).
    L1,
    /// Laplacian term (Lemma 2.2 scaling).
    L2,
}

impl Lemma {
    pub fn theorem_tag(&self) -> &'static str {
        match self {
            Lemma::L1 => "Lemma 2.1",
            Lemma::L2 => "Lemma 2.2",
        }
    }
}

/// Integrand of the time term at time `t`, written in the bounded composed
/// form `(ell/T)^{m'} eta^{ell - m'} |eta'|^{m'}` with `m' = m/(m-1)`,
/// which is the continuous extension by 0 across the support boundary.
pub fn time_term_integrand(tf: &TestFunction, t: f64, m: f64) -> f64 {
    let mp = m / (m - 1.0);
    let s = t / tf.scale();
    let e = tf.profile().eta(s);
    if e <= 0.0 {
        return 0.0;
    }
    let ep = tf.profile().eta_prime(s);
    (tf.ell() / tf.scale()).powf(mp) * e.powf(tf.ell() - mp) * ep.abs().powf(mp)
}

/// Integrand of the space term at radius `r`: `mu^{-1/(m-1)} |Lap mu|^{m/(m-1)}`
/// computed as `|mu^{-1/m} Lap mu|^{m/(m-1)}` so every factor stays bounded
/// when `ell >= 2m/(m-1)`.
pub fn space_term_integrand(tf: &TestFunction, r: f64, m: f64, dim: u32) -> f64 {
    let sigma = tf.sigma(r);
    let x = crate::testfunc::xi(sigma).expect("sigma >= 0 by construction");
    if x <= 0.0 || sigma <= 1.0 {
        // plateau or outside support: Lap mu vanishes
        return 0.0;
    }
    let mp = m / (m - 1.0);
    let xp = crate::testfunc::xi_prime(sigma).expect("sigma >= 0");
    let xpp = crate::testfunc::xi_second(sigma).expect("sigma >= 0");
    let ss = tf.spatial_scale();
    let tau = 2.0 / (ss * ss);
    let ell = tf.ell();
    // xi powers shifted down by ell/m; nonnegative when ell >= 2m/(m-1)
    let e2 = ell - 2.0 - ell / m;
    let e1 = ell - 1.0 - ell / m;
    let scaled = 2.0 * ell * tau * sigma * ((ell - 1.0) * x.powf(e2) * xp * xp + x.powf(e1) * xpp)
        + dim as f64 * ell * tau * x.powf(e1) * xp;
    scaled.abs().powf(mp)
}

fn check_time_hypotheses(m: f64, ell: f64) -> Result<()> {
    if !(m > 1.0) {
        return Err(Error::Precondition(format!("m must exceed 1 (got {m})")));
    }
    let bound = m / (m - 1.0);
    if ell + 1e-9 < bound {
        return Err(Error::Precondition(format!(
            "time term needs ell >= m/(m-1) = {bound} (got ell = {ell})"
        )));
    }
    Ok(())
}

fn check_space_hypotheses(m: f64, ell: f64) -> Result<()> {
    if !(m > 1.0) {
        return Err(Error::Precondition(format!("m must exceed 1 (got {m})")));
    }
    let bound = 2.0 * m / (m - 1.0);
    if ell + 1e-9 < bound {
        return Err(Error::Precondition(format!(
            "space term needs ell >= 2m/(m-1) = {bound} (got ell = {ell})"
        )));
    }
    Ok(())
}

/// Spatial mass `int_{R^N} mu_T dx`; scales like `T^{N theta}`.
pub fn spatial_mass(tf: &TestFunction, dim: u32, cfg: &QuadratureConfig) -> f64 {
    radial_integral(
        |r| tf.mu(r),
        tf.support_radius(),
        dim,
        cfg.nr,
        cfg.scheme,
    )
}

/// Time mass `int_0^T lambda_T dt`; scales linearly in `T`.
pub fn time_mass(tf: &TestFunction, cfg: &QuadratureConfig) -> f64 {
    integrate(|t| tf.lambda(t), 0.0, tf.scale(), cfg.nt, cfg.scheme)
}

/// `int_Q phi_T^{-1/(m-1)} |dt phi_T|^{m/(m-1)}`, computed in the exact
/// separable form (time factor) x (spatial mass).
pub fn integral_time_term(
    m: f64,
    tf: &TestFunction,
    dim: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_time_hypotheses(m, tf.ell())?;
    let time_factor = integrate(
        |t| time_term_integrand(tf, t, m),
        0.0,
        tf.scale(),
        cfg.nt,
        cfg.scheme,
    );
    Ok(time_factor * spatial_mass(tf, dim, cfg))
}

/// `int_Q phi_T^{-1/(m-1)} |Lap phi_T|^{m/(m-1)}`, computed in the exact
/// separable form (time mass) x (spatial factor). The spatial integrand is
/// supported on the annulus `T^{2 theta} <= r^2 <= 2 T^{2 theta}`.
pub fn integral_space_term(
    m: f64,
    tf: &TestFunction,
    dim: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_space_hypotheses(m, tf.ell())?;
    let space_factor = radial_integral(
        |r| space_term_integrand(tf, r, m, dim),
        tf.support_radius(),
        dim,
        cfg.nr,
        cfg.scheme,
    );
    Ok(time_mass(tf, cfg) * space_factor)
}

/// Least-squares power-law fit in log-log coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Ordinary least squares on `(log T, log value)`.
///
/// Needs at least 4 samples with strictly increasing `T` and positive values.
pub fn fit_power_law(samples: &[(f64, f64)]) -> Result<ScalingFit> {
    if samples.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "power-law fit needs at least 4 samples (got {})",
            samples.len()
        )));
    }
    for w in samples.windows(2) {
        if w[1].0 <= w[0].0 {
            return Err(Error::Data(format!(
                "sample abscissae must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
    }
    for &(t, v) in samples {
        if !(t > 0.0) || !(v > 0.0) {
            return Err(Error::Data(format!(
                "power-law fit needs positive samples (got ({t}, {v}))"
            )));
        }
    }
    let n = samples.len() as f64;
    let logs: Vec<(f64, f64)> = samples.iter().map(|&(t, v)| (t.ln(), v.ln())).collect();
    let mean_x = logs.iter().map(|l| l.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|l| l.1).sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in &logs {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|&(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else if ss_res <= f64::EPSILON {
        1.0
    } else {
        0.0
    };
    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
        samples: samples.to_vec(),
    })
}

/// Geometric ladder of scales from `t_min` to `t_max` inclusive.
pub fn geometric_ladder(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0) || !(t_max > t_min) {
        return Err(Error::Domain(format!(
            "ladder needs 0 < t_min < t_max (got {t_min}, {t_max})"
        )));
    }
    if points < 2 {
        return Err(Error::Domain("ladder needs at least 2 points".into()));
    }
    let ratio = (t_max / t_min).powf(1.0 / (points - 1) as f64);
    Ok((0..points)
        .map(|i| t_min * ratio.powi(i as i32))
        .collect())
}

/// Default ladder `2^4 .. 2^12`, nine points.
pub fn default_ladder() -> Vec<f64> {
    (4..=12).map(|e| f64::powi(2.0, e)).collect()
}

/// Evaluate one lemma integral over a ladder of scales; evaluations at
/// different `T` are independent and run in parallel.
#[allow(clippy::too_many_arguments)]
pub fn ladder_samples(
    which: Lemma,
    m: f64,
    ell: f64,
    theta: f64,
    dim: u32,
    profile: CutoffProfile,
    scales: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    match which {
        Lemma::L1 => check_time_hypotheses(m, ell)?,
        Lemma::L2 => check_space_hypotheses(m, ell)?,
    }
    for &t in scales {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("scales must be positive (got {t})")));
        }
    }
    let values = par_map(scales, |&scale| {
        let tf = TestFunction::new(scale, ell, theta, profile).expect("validated scale");
        match which {
            Lemma::L1 => integral_time_term(m, &tf, dim, cfg).expect("hypotheses checked"),
            Lemma::L2 => integral_space_term(m, &tf, dim, cfg).expect("hypotheses checked"),
        }
    });
    Ok(scales.iter().copied().zip(values).collect())
}

/// Predicted power of `T` for a lemma integral.
pub fn analytic_slope(which: Lemma, m: f64, theta: f64, dim: u32) -> f64 {
    let n = dim as f64;
    match which {
        Lemma::L1 => 1.0 + n * theta - m / (m - 1.0),
        Lemma::L2 => 1.0 + n * theta - 2.0 * m * theta / (m - 1.0),
    }
}

/// Outcome of one scaling verification.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub m: f64,
    pub ell: f64,
    pub theta: f64,
    pub dim: u32,
    pub fitted_slope: f64,
    pub analytic_slope: f64,
    pub abs_error: f64,
    pub tol: f64,
    pub pass: bool,
    pub r_squared: f64,
    pub samples: Vec<(f64, f64)>,
}

/// Verify one lemma's `T`-scaling on a ladder of at least 5 scales.
///
/// The estimate is one-sided, but the construction attains it, so the check
/// is two-sided: `|fitted - analytic| <= tol`.
#[allow(clippy::too_many_arguments)]
pub fn verify_lemma(
    which: Lemma,
    m: f64,
    ell: f64,
    theta: f64,
    dim: u32,
    profile: CutoffProfile,
    scales: &[f64],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<LemmaReport> {
    if scales.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "lemma verification needs a ladder of at least 5 scales (got {})",
            scales.len()
        )));
    }
    if !(theta > 0.0) {
        return Err(Error::Precondition(format!("theta must be positive (got {theta})")));
    }
    let samples = ladder_samples(which, m, ell, theta, dim, profile, scales, cfg)?;
    let fit = fit_power_law(&samples)?;
    let analytic = analytic_slope(which, m, theta, dim);
    let abs_error = (fit.slope - analytic).abs();
    Ok(LemmaReport {
        lemma: which,
        m,
        ell,
        theta,
        dim,
        fitted_slope: fit.slope,
        analytic_slope: analytic,
        abs_error,
        tol,
        pass: abs_error <= tol,
        r_squared: fit.r_squared,
        samples,
    })
}
