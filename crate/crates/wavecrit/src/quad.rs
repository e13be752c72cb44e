//! Composite quadrature rules and radial integration in `N` space dimensions.
//!
//! The integrands in this crate are smooth and compactly supported (or decay
//! polynomially), so fixed-grid composite rules converge fast; no adaptivity
//! is needed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Composite quadrature scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Midpoint,
    Simpson,
}

/// Grid resolution for the separable space-time integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Number of time-grid points.
    pub nt: usize,
    /// Number of radial grid points.
    pub nr: usize,
    pub scheme: Scheme,
}

impl QuadratureConfig {
    pub fn new(nt: usize, nr: usize, scheme: Scheme) -> Result<Self> {
        if nt < 16 || nr < 16 {
            return Err(Error::Config(format!(
                "quadrature grids need at least 16 points (got nt = {nt}, nr = {nr})"
            )));
        }
        Ok(Self { nt, nr, scheme })
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            nt: 513,
            nr: 1025,
            scheme: Scheme::Simpson,
        }
    }
}

/// Integrate `f` over `[a, b]` with roughly `n` nodes of the given scheme.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize, scheme: Scheme) -> f64 {
    match scheme {
        Scheme::Midpoint => midpoint(&f, a, b, n.max(2)),
        Scheme::Simpson => simpson(&f, a, b, n.max(3)),
    }
}

fn midpoint<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let sum: f64 = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum();
    sum * h
}

/// Composite Simpson; the interval count is forced even.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n_points: usize) -> f64 {
    let m = ((n_points - 1) + 1) & !1usize; // even interval count >= 2
    let h = (b - a) / m as f64;
    let mut sum = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function via the Lanczos approximation (relative error ~1e-13).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Surface area of the unit sphere in `R^dim`: 2 pi^{N/2} / Gamma(N/2).
pub fn unit_sphere_area(dim: u32) -> f64 {
    let n = dim as f64;
    2.0 * std::f64::consts::PI.powf(n / 2.0) / gamma(n / 2.0)
}

/// `omega_{N-1} * int_0^{r_max} f(r) r^{N-1} dr`, the integral of a radial
/// function over the ball of radius `r_max` in `R^dim`.
pub fn radial_integral<F: Fn(f64) -> f64>(
    f: F,
    r_max: f64,
    dim: u32,
    n: usize,
    scheme: Scheme,
) -> f64 {
    let pow = (dim - 1) as f64;
    let area = unit_sphere_area(dim);
    area * integrate(|r| f(r) * r.powf(pow), 0.0, r_max, n, scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 33, Scheme::Simpson);
        // antiderivative x^4/4 - x^2 + x
        assert_relative_eq!(v, 4.0 - 4.0 + 2.0, max_relative = 1e-14);
    }

    #[test]
    fn midpoint_and_simpson_agree_on_sine() {
        let exact = 2.0;
        let m = integrate(f64::sin, 0.0, std::f64::consts::PI, 4096, Scheme::Midpoint);
        let s = integrate(f64::sin, 0.0, std::f64::consts::PI, 4097, Scheme::Simpson);
        assert_relative_eq!(m, exact, max_relative = 1e-7);
        assert_relative_eq!(s, exact, max_relative = 1e-12);
    }

    #[test]
    fn gamma_matches_half_integer_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_relative_eq!(gamma(0.5), sqrt_pi, max_relative = 1e-12);
        assert_relative_eq!(gamma(1.0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(1.5), sqrt_pi / 2.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(2.5), 3.0 * sqrt_pi / 4.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(10.0), 362_880.0, max_relative = 1e-12);
    }

    #[test]
    fn sphere_areas_match_known_values() {
        use std::f64::consts::PI;
        assert_relative_eq!(unit_sphere_area(1), 2.0, max_relative = 1e-12);
        assert_relative_eq!(unit_sphere_area(2), 2.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(unit_sphere_area(3), 4.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(unit_sphere_area(4), 2.0 * PI * PI, max_relative = 1e-12);
        assert_relative_eq!(unit_sphere_area(5), 8.0 * PI * PI / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn ball_volume_from_radial_integral() {
        // |B_R| in R^3 is 4/3 pi R^3
        let v = radial_integral(|_| 1.0, 2.0, 3, 1025, Scheme::Simpson);
        assert_relative_eq!(v, 4.0 / 3.0 * std::f64::consts::PI * 8.0, max_relative = 1e-10);
    }

    #[test]
    fn config_rejects_tiny_grids() {
        assert!(QuadratureConfig::new(8, 64, Scheme::Simpson).is_err());
        assert!(QuadratureConfig::new(64, 8, Scheme::Midpoint).is_err());
        assert!(QuadratureConfig::new(16, 16, Scheme::Simpson).is_ok());
    }
}
