//! Compactly supported space-time cutoff
//! `phi_T(t, x) = eta(t/T)^ell * xi(|x|^2 / T^{2 theta})^ell`
//! with closed-form first and second derivatives.
//!
//! Both profiles are built from the standard smooth step
//! `S(x) = s(x) / (s(x) + s(1-x))` with `s(x) = exp(-1/x)` for `x > 0`,
//! so every derivative is analytic; finite differences appear only in tests.

use serde::Serialize;

use crate::error::{Error, Result};

fn seed(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

fn seed_d1(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp() / (x * x)
    } else {
        0.0
    }
}

fn seed_d2(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp() * (1.0 - 2.0 * x) / (x * x * x * x)
    } else {
        0.0
    }
}

/// Smooth step: 0 for `x <= 0`, 1 for `x >= 1`, strictly increasing between.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let u = seed(x);
        u / (u + seed(1.0 - x))
    }
}

pub fn smooth_step_d1(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let (u, v) = (seed(x), seed(1.0 - x));
    let (du, dv) = (seed_d1(x), -seed_d1(1.0 - x));
    let d = u + v;
    (du * v - u * dv) / (d * d)
}

pub fn smooth_step_d2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    let (u, v) = (seed(x), seed(1.0 - x));
    let (du, dv) = (seed_d1(x), -seed_d1(1.0 - x));
    let (ddu, ddv) = (seed_d2(x), seed_d2(1.0 - x));
    let d = u + v;
    ((ddu * v - u * ddv) * d - 2.0 * (du * v - u * dv) * (du + dv)) / (d * d * d)
}

/// Plateau interval `[c1, c2]` of the time cutoff `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CutoffProfile {
    pub c1: f64,
    pub c2: f64,
}

impl CutoffProfile {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(0.0 < c1 && c1 < c2 && c2 < 1.0) {
            return Err(Error::Domain(format!(
                "plateau requires 0 < c1 < c2 < 1 (got c1 = {c1}, c2 = {c2})"
            )));
        }
        Ok(Self { c1, c2 })
    }

    /// Smooth bump: 1 on `[c1, c2]`, 0 outside `(0, 1)`.
    pub fn eta(&self, t: f64) -> f64 {
        smooth_step(t / self.c1) * smooth_step((1.0 - t) / (1.0 - self.c2))
    }

    pub fn eta_prime(&self, t: f64) -> f64 {
        let rise = smooth_step(t / self.c1);
        let fall = smooth_step((1.0 - t) / (1.0 - self.c2));
        smooth_step_d1(t / self.c1) / self.c1 * fall
            - rise * smooth_step_d1((1.0 - t) / (1.0 - self.c2)) / (1.0 - self.c2)
    }
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self { c1: 0.25, c2: 0.75 }
    }
}

/// Radial cutoff profile: 1 on `[0, 1]`, 0 on `[2, inf)`, smooth in between.
pub fn xi(sigma: f64) -> Result<f64> {
    if sigma < 0.0 {
        return Err(Error::Domain(format!("xi needs sigma >= 0 (got {sigma})")));
    }
    Ok(xi_unchecked(sigma))
}

pub fn xi_prime(sigma: f64) -> Result<f64> {
    if sigma < 0.0 {
        return Err(Error::Domain(format!("xi needs sigma >= 0 (got {sigma})")));
    }
    Ok(xi_prime_unchecked(sigma))
}

pub fn xi_second(sigma: f64) -> Result<f64> {
    if sigma < 0.0 {
        return Err(Error::Domain(format!("xi needs sigma >= 0 (got {sigma})")));
    }
    Ok(xi_second_unchecked(sigma))
}

#[inline]
fn xi_unchecked(sigma: f64) -> f64 {
    smooth_step(2.0 - sigma)
}

#[inline]
fn xi_prime_unchecked(sigma: f64) -> f64 {
    -smooth_step_d1(2.0 - sigma)
}

#[inline]
fn xi_second_unchecked(sigma: f64) -> f64 {
    smooth_step_d2(2.0 - sigma)
}

/// The scaled cutoff `phi_T = lambda_T(t) mu_T(|x|)` at scale `T`.
///
/// `lambda_T(t) = eta(t/T)^ell` is supported in `(0, T)`;
/// `mu_T(x) = xi(|x|^2/T^{2 theta})^ell` is supported in `|x| < sqrt(2) T^theta`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TestFunction {
    scale: f64,
    ell: f64,
    theta: f64,
    profile: CutoffProfile,
    /// Cached `T^theta`.
    #[serde(skip)]
    scale_theta: f64,
}

impl TestFunction {
    pub fn new(scale: f64, ell: f64, theta: f64, profile: CutoffProfile) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::Domain(format!("scale T must be positive (got {scale})")));
        }
        if !(ell > 0.0) {
            return Err(Error::Domain(format!("ell must be positive (got {ell})")));
        }
        if !(theta > 0.0) {
            return Err(Error::Domain(format!("theta must be positive (got {theta})")));
        }
        Ok(Self {
            scale,
            ell,
            theta,
            profile,
            scale_theta: scale.powf(theta),
        })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn profile(&self) -> &CutoffProfile {
        &self.profile
    }

    /// `T^theta`, the spatial scale.
    pub fn spatial_scale(&self) -> f64 {
        self.scale_theta
    }

    /// Radius of the spatial support, `sqrt(2) T^theta`.
    pub fn support_radius(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.scale_theta
    }

    /// Scaled radial coordinate `sigma = |x|^2 / T^{2 theta}`.
    pub fn sigma(&self, r: f64) -> f64 {
        let y = r / self.scale_theta;
        y * y
    }

    /// Time factor `lambda_T(t)`.
    pub fn lambda(&self, t: f64) -> f64 {
        let e = self.profile.eta(t / self.scale);
        if e <= 0.0 {
            0.0
        } else {
            e.powf(self.ell)
        }
    }

    /// `d lambda_T / dt`.
    pub fn dt_lambda(&self, t: f64) -> f64 {
        let s = t / self.scale;
        let e = self.profile.eta(s);
        if e <= 0.0 {
            return 0.0;
        }
        self.ell / self.scale * e.powf(self.ell - 1.0) * self.profile.eta_prime(s)
    }

    /// Spatial factor `mu_T(r)`.
    pub fn mu(&self, r: f64) -> f64 {
        let x = xi_unchecked(self.sigma(r));
        if x <= 0.0 {
            0.0
        } else {
            x.powf(self.ell)
        }
    }

    /// Radial Laplacian of `mu_T` in `dim` dimensions; regular at `r = 0`
    /// (the `(N-1)/r` term cancels against the factor `r` in `d sigma/dr`).
    pub fn laplacian_mu(&self, r: f64, dim: u32) -> f64 {
        let sigma = self.sigma(r);
        let x = xi_unchecked(sigma);
        if x <= 0.0 {
            return 0.0;
        }
        let xp = xi_prime_unchecked(sigma);
        let xpp = xi_second_unchecked(sigma);
        let tau = 2.0 / (self.scale_theta * self.scale_theta);
        let ell = self.ell;
        // mu = h(r) with h = xi(sigma)^ell, sigma = tau r^2 / 2:
        //   h'' + (N-1)/r h' =
        //   2 ell tau sigma [(ell-1) xi^{ell-2} xi'^2 + xi^{ell-1} xi'']
        //   + N ell tau xi^{ell-1} xi'
        2.0 * ell * tau * sigma * ((ell - 1.0) * x.powf(ell - 2.0) * xp * xp + x.powf(ell - 1.0) * xpp)
            + dim as f64 * ell * tau * x.powf(ell - 1.0) * xp
    }

    pub fn phi(&self, t: f64, r: f64) -> f64 {
        self.lambda(t) * self.mu(r)
    }

    pub fn dt_phi(&self, t: f64, r: f64) -> f64 {
        self.dt_lambda(t) * self.mu(r)
    }

    pub fn laplacian_phi(&self, t: f64, r: f64, dim: u32) -> f64 {
        self.lambda(t) * self.laplacian_mu(r, dim)
    }
}
