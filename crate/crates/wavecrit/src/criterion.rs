//! Finite-scale evaluation of the blow-up criterion functional
//! `J(T) = T^E int_{c1 T}^{c2 T} int_{|x| < T^theta} w(t,x) dx dt`
//! with `E = q/(q-1) [1 - N(p-1)/(2p)] - 1` and
//! `theta = q(p-1) / (2p(q-1))`.
//!
//! The underlying nonexistence condition asks for a limsup over `T -> inf`
//! to be infinite; a finite computation cannot decide that, so this module
//! reports *evidence*: the fitted power of `T` over a ladder of scales,
//! classified against an explicit slope margin.

use std::cell::Cell;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponents::{optimal_scaling, ProblemParams};
use crate::parallel::par_map;
use crate::quad::{integrate, unit_sphere_area, QuadratureConfig};
use crate::scaling::fit_power_law;
use crate::testfunc::CutoffProfile;

pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// The inhomogeneous forcing `w(t, x)`, radial in space.
#[derive(Clone)]
pub enum Inhomogeneity {
    /// `w = f(t) g(|x|)`.
    Separable { time: TimeFn, space: RadialFn },
    /// An arbitrary nonnegative callable `w(t, r)`.
    Analytic(SpaceTimeFn),
    /// Samples on a `(t, r)` tensor grid, bilinearly interpolated.
    Gridded(GriddedField),
}

impl Inhomogeneity {
    pub fn separable<F, G>(time: F, space: G) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Inhomogeneity::Separable {
            time: Arc::new(time),
            space: Arc::new(space),
        }
    }

    pub fn analytic<W>(w: W) -> Self
    where
        W: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Inhomogeneity::Analytic(Arc::new(w))
    }

    pub fn zero() -> Self {
        Inhomogeneity::analytic(|_, _| 0.0)
    }

    /// Time-independent compact bump `w = radial_bump(amplitude, radius)`.
    pub fn bump(amplitude: f64, radius: f64) -> Self {
        Inhomogeneity::separable(|_| 1.0, radial_bump(amplitude, radius))
    }

    /// Point evaluation; gridded fields are 0 outside their sampled domain.
    pub fn value(&self, t: f64, r: f64) -> f64 {
        match self {
            Inhomogeneity::Separable { time, space } => time(t) * space(r),
            Inhomogeneity::Analytic(w) => w(t, r),
            Inhomogeneity::Gridded(g) => g.value(t, r),
        }
    }
}

impl std::fmt::Debug for Inhomogeneity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Inhomogeneity::Separable { .. } => f.write_str("Inhomogeneity::Separable"),
            Inhomogeneity::Analytic(_) => f.write_str("Inhomogeneity::Analytic"),
            Inhomogeneity::Gridded(g) => f
                .debug_struct("Inhomogeneity::Gridded")
                .field("nt", &g.t_grid.len())
                .field("nr", &g.r_grid.len())
                .finish(),
        }
    }
}

/// Smooth bump supported in `r < radius` with the given peak amplitude:
/// `amplitude * exp(1 - 1/(1 - (r/radius)^2))`.
pub fn radial_bump(amplitude: f64, radius: f64) -> impl Fn(f64) -> f64 + Copy + Send + Sync {
    move |r: f64| {
        let s = r / radius;
        if s < 1.0 {
            amplitude * (1.0 - 1.0 / (1.0 - s * s)).exp()
        } else {
            0.0
        }
    }
}

/// Nonnegative samples of `w` on a rectangular `(t, r)` grid.
#[derive(Debug, Clone, Serialize)]
pub struct GriddedField {
    t_grid: Vec<f64>,
    r_grid: Vec<f64>,
    /// Row-major `[it * nr + ir]`.
    values: Vec<f64>,
}

impl GriddedField {
    pub fn new(t_grid: Vec<f64>, r_grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if t_grid.len() < 2 || r_grid.len() < 2 {
            return Err(Error::Data("gridded field needs at least 2x2 samples".into()));
        }
        for g in [&t_grid, &r_grid] {
            for w in g.windows(2) {
                if w[1] <= w[0] {
                    return Err(Error::Data(format!(
                        "grid coordinates must be strictly increasing ({} then {})",
                        w[0], w[1]
                    )));
                }
            }
        }
        if values.len() != t_grid.len() * r_grid.len() {
            return Err(Error::Data(format!(
                "expected {} x {} = {} samples, got {}",
                t_grid.len(),
                r_grid.len(),
                t_grid.len() * r_grid.len(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Data(format!(
                "gridded inhomogeneity must be finite and nonnegative (found {v})"
            )));
        }
        Ok(Self {
            t_grid,
            r_grid,
            values,
        })
    }

    /// Parse `t,r,w` rows (header optional). The rows must fill a complete
    /// tensor grid, in any order.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows: Vec<(f64, f64, f64)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(Error::Data(format!(
                    "line {}: expected 3 comma-separated fields, got {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            if lineno == 0 && fields[0].parse::<f64>().is_err() {
                continue; // header row
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse()
                    .map_err(|_| Error::Data(format!("line {}: bad number {s:?}", lineno + 1)))
            };
            rows.push((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
        }
        if rows.is_empty() {
            return Err(Error::Data("empty gridded CSV".into()));
        }
        let mut t_grid: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let mut r_grid: Vec<f64> = rows.iter().map(|r| r.1).collect();
        t_grid.sort_by(f64::total_cmp);
        t_grid.dedup();
        r_grid.sort_by(f64::total_cmp);
        r_grid.dedup();
        let (nt, nr) = (t_grid.len(), r_grid.len());
        if rows.len() != nt * nr {
            return Err(Error::Data(format!(
                "CSV does not form a tensor grid: {} rows for {} x {} coordinates",
                rows.len(),
                nt,
                nr
            )));
        }
        let mut values = vec![f64::NAN; nt * nr];
        for (t, r, w) in rows {
            let it = t_grid.partition_point(|&x| x < t);
            let ir = r_grid.partition_point(|&x| x < r);
            values[it * nr + ir] = w;
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Data("CSV has duplicate or missing grid cells".into()));
        }
        Self::new(t_grid, r_grid, values)
    }

    /// Bilinear interpolation; 0 outside the sampled rectangle.
    pub fn value(&self, t: f64, r: f64) -> f64 {
        let (tg, rg) = (&self.t_grid, &self.r_grid);
        if t < tg[0] || t > *tg.last().unwrap() || r < rg[0] || r > *rg.last().unwrap() {
            return 0.0;
        }
        let it = tg.partition_point(|&x| x <= t).min(tg.len() - 1).max(1) - 1;
        let ir = rg.partition_point(|&x| x <= r).min(rg.len() - 1).max(1) - 1;
        let ft = (t - tg[it]) / (tg[it + 1] - tg[it]);
        let fr = (r - rg[ir]) / (rg[ir + 1] - rg[ir]);
        let nr = rg.len();
        let v00 = self.values[it * nr + ir];
        let v01 = self.values[it * nr + ir + 1];
        let v10 = self.values[(it + 1) * nr + ir];
        let v11 = self.values[(it + 1) * nr + ir + 1];
        v00 * (1.0 - ft) * (1.0 - fr)
            + v01 * (1.0 - ft) * fr
            + v10 * ft * (1.0 - fr)
            + v11 * ft * fr
    }

    /// Whether the probe window `[t0, t1] x [0, r1]` lies inside the
    /// sampled domain (radially only the outer edge matters).
    pub fn covers_window(&self, t0: f64, t1: f64, r1: f64) -> bool {
        t0 >= self.t_grid[0]
            && t1 <= *self.t_grid.last().unwrap()
            && r1 <= *self.r_grid.last().unwrap()
    }
}

/// `J(T)` for a general inhomogeneity, by composite quadrature in radial
/// coordinates. Negative samples of `w` are a data error.
pub fn criterion_value(
    scale: f64,
    w: &Inhomogeneity,
    params: &ProblemParams,
    profile: &CutoffProfile,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(scale > 0.0) {
        return Err(Error::Domain(format!("T must be positive (got {scale})")));
    }
    let s = optimal_scaling(params.p, params.q, params.dim)?;
    let radius = scale.powf(s.theta);
    let negative = Cell::new(false);
    let area = unit_sphere_area(params.dim);
    let pow = (params.dim - 1) as f64;

    let integral = match w {
        Inhomogeneity::Separable { time, space } => {
            let time_part = integrate(
                |t| {
                    let v = time(t);
                    if v < 0.0 {
                        negative.set(true);
                    }
                    v
                },
                profile.c1 * scale,
                profile.c2 * scale,
                cfg.nt,
                cfg.scheme,
            );
            let space_part = integrate(
                |r| {
                    let v = space(r);
                    if v < 0.0 {
                        negative.set(true);
                    }
                    v * r.powf(pow)
                },
                0.0,
                radius,
                cfg.nr,
                cfg.scheme,
            );
            time_part * area * space_part
        }
        _ => {
            // full product quadrature for non-separable fields
            integrate(
                |t| {
                    area * integrate(
                        |r| {
                            let v = w.value(t, r);
                            if v < 0.0 {
                                negative.set(true);
                            }
                            v * r.powf(pow)
                        },
                        0.0,
                        radius,
                        cfg.nr,
                        cfg.scheme,
                    )
                },
                profile.c1 * scale,
                profile.c2 * scale,
                cfg.nt,
                cfg.scheme,
            )
        }
    };
    if negative.get() {
        return Err(Error::Data(
            "inhomogeneity must be nonnegative on the probed region".into(),
        ));
    }
    Ok(scale.powf(s.criterion_exp) * integral)
}

/// `J(T)` for a separable `w = f(t) g(x)`: the spatial factor drops out of
/// the criterion, leaving `T^E int_{c1 T}^{c2 T} f(t) dt`.
pub fn separable_criterion_value<F: Fn(f64) -> f64>(
    scale: f64,
    time: F,
    params: &ProblemParams,
    profile: &CutoffProfile,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !(scale > 0.0) {
        return Err(Error::Domain(format!("T must be positive (got {scale})")));
    }
    let s = optimal_scaling(params.p, params.q, params.dim)?;
    let negative = Cell::new(false);
    let integral = integrate(
        |t| {
            let v = time(t);
            if v < 0.0 {
                negative.set(true);
            }
            v
        },
        profile.c1 * scale,
        profile.c2 * scale,
        cfg.nt,
        cfg.scheme,
    );
    if negative.get() {
        return Err(Error::Data("time factor must be nonnegative".into()));
    }
    Ok(scale.powf(s.criterion_exp) * integral)
}

/// Evaluate `J` over a ladder of scales; the scales run in parallel.
pub fn criterion_ladder(
    scales: &[f64],
    w: &Inhomogeneity,
    params: &ProblemParams,
    profile: &CutoffProfile,
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    let results = par_map(scales, |&t| criterion_value(t, w, params, profile, cfg));
    scales
        .iter()
        .copied()
        .zip(results)
        .map(|(t, r)| r.map(|v| (t, v)))
        .collect()
}

/// Evidence classification for the growth of `J(T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthVerdict {
    /// `J` grows with a fitted slope above the margin: the nonexistence
    /// condition is plausibly met.
    GrowthEvidence,
    /// `J` decays with a fitted slope below minus the margin.
    BoundedEvidence,
    /// Too many zero values, a poor fit, or a slope inside the margin.
    Inconclusive,
}

/// Evidence report for one inhomogeneity. This is finite-ladder evidence
/// about a limit-superior condition, never a proof.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub values: Vec<(f64, f64)>,
    pub fitted_slope: Option<f64>,
    pub r_squared: Option<f64>,
    pub slope_margin: f64,
    pub verdict: GrowthVerdict,
    /// Set when a gridded field did not cover some probe window.
    pub out_of_domain: bool,
}

/// Classify ladder values by fitted slope sign against `slope_margin`.
///
/// Returns `Inconclusive` when at least half the values are zero, when
/// fewer than 4 positive values remain, or when the fit has `r^2 < 0.9`.
pub fn assess_growth(values: &[(f64, f64)], slope_margin: f64) -> Result<CriterionReport> {
    if values.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "growth assessment needs at least 5 scales (got {})",
            values.len()
        )));
    }
    if let Some(&(t, v)) = values.iter().find(|(_, v)| *v < 0.0 || !v.is_finite()) {
        return Err(Error::Data(format!(
            "criterion values must be finite and nonnegative (got J({t}) = {v})"
        )));
    }
    let zeros = values.iter().filter(|(_, v)| *v == 0.0).count();
    let positives: Vec<(f64, f64)> = values.iter().copied().filter(|(_, v)| *v > 0.0).collect();
    let inconclusive = |fit: Option<&crate::scaling::ScalingFit>| CriterionReport {
        values: values.to_vec(),
        fitted_slope: fit.map(|f| f.slope),
        r_squared: fit.map(|f| f.r_squared),
        slope_margin,
        verdict: GrowthVerdict::Inconclusive,
        out_of_domain: false,
    };
    if 2 * zeros >= values.len() || positives.len() < 4 {
        return Ok(inconclusive(None));
    }
    let fit = fit_power_law(&positives)?;
    if fit.r_squared < 0.9 {
        return Ok(inconclusive(Some(&fit)));
    }
    let verdict = if fit.slope > slope_margin {
        GrowthVerdict::GrowthEvidence
    } else if fit.slope < -slope_margin {
        GrowthVerdict::BoundedEvidence
    } else {
        GrowthVerdict::Inconclusive
    };
    Ok(CriterionReport {
        values: values.to_vec(),
        fitted_slope: Some(fit.slope),
        r_squared: Some(fit.r_squared),
        slope_margin,
        verdict,
        out_of_domain: false,
    })
}

/// Ladder evaluation plus growth assessment; flags gridded fields whose
/// sampled domain fails to cover some probe window.
pub fn evaluate(
    scales: &[f64],
    w: &Inhomogeneity,
    params: &ProblemParams,
    profile: &CutoffProfile,
    cfg: &QuadratureConfig,
    slope_margin: f64,
) -> Result<CriterionReport> {
    let values = criterion_ladder(scales, w, params, profile, cfg)?;
    let mut report = assess_growth(&values, slope_margin)?;
    if let Inhomogeneity::Gridded(g) = w {
        let s = optimal_scaling(params.p, params.q, params.dim)?;
        report.out_of_domain = scales.iter().any(|&t| {
            !g.covers_window(profile.c1 * t, profile.c2 * t, t.powf(s.theta))
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaling::default_ladder;
    use approx::assert_relative_eq;

    fn params(p: f64, q: f64, dim: u32) -> ProblemParams {
        ProblemParams::new(2, p, q, dim).unwrap()
    }

    fn bump(amp: f64, radius: f64) -> impl Fn(f64) -> f64 + Copy + Send + Sync {
        radial_bump(amp, radius)
    }

    #[test]
    fn zero_inhomogeneity_gives_zero() {
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        for t in [16.0, 256.0, 4096.0] {
            let v = criterion_value(t, &Inhomogeneity::zero(), &p, &prof, &cfg).unwrap();
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn separable_constant_time_factor_has_exact_half_slope() {
        // f == 1, N = 3, p = q = 2: J(T) = T^{-1/2} (c2 - c1) T
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let samples: Vec<(f64, f64)> = default_ladder()
            .into_iter()
            .map(|t| {
                (
                    t,
                    separable_criterion_value(t, |_| 1.0, &p, &prof, &cfg).unwrap(),
                )
            })
            .collect();
        let fit = fit_power_law(&samples).unwrap();
        assert_relative_eq!(fit.slope, 0.5, epsilon = 1e-9);
        // closed form value check at one scale
        let t: f64 = 64.0;
        assert_relative_eq!(
            samples[2].1,
            t.powf(-0.5) * 0.5 * t,
            max_relative = 1e-12
        );
    }

    #[test]
    fn separable_linear_time_factor_has_three_half_slope() {
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let samples: Vec<(f64, f64)> = default_ladder()
            .into_iter()
            .map(|t| {
                (
                    t,
                    separable_criterion_value(t, |s| s, &p, &prof, &cfg).unwrap(),
                )
            })
            .collect();
        let fit = fit_power_law(&samples).unwrap();
        assert_relative_eq!(fit.slope, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn supercritical_p_gives_negative_slope_and_bounded_evidence() {
        // N = 3, p = 4 > p*(3): E + 1 = -1/4
        let cfg = QuadratureConfig::default();
        let p = params(4.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let samples: Vec<(f64, f64)> = default_ladder()
            .into_iter()
            .map(|t| {
                (
                    t,
                    separable_criterion_value(t, |_| 1.0, &p, &prof, &cfg).unwrap(),
                )
            })
            .collect();
        let fit = fit_power_law(&samples).unwrap();
        assert_relative_eq!(fit.slope, -0.25, epsilon = 1e-9);
        let report = assess_growth(&samples, 0.05).unwrap();
        assert_eq!(report.verdict, GrowthVerdict::BoundedEvidence);
    }

    #[test]
    fn compact_bump_slope_is_criterion_exponent_plus_one() {
        // once T^theta exceeds the bump radius the spatial mass saturates
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let w = Inhomogeneity::separable(|_| 1.0, bump(1.0, 1.0));
        let values = criterion_ladder(&default_ladder(), &w, &p, &prof, &cfg).unwrap();
        let fit = fit_power_law(&values).unwrap();
        assert!((fit.slope - 0.5).abs() < 0.02, "slope {}", fit.slope);
    }

    #[test]
    fn sigma_power_time_factor_matches_predicted_slope() {
        // f(t) = t^{q sigma/(q-1)} with sigma = 0, q = 2, N = 3, p = 2:
        // slope = q/(q-1) [sigma + 1 - N(p-1)/(2p)] = 1/2
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let sigma = 0.0;
        let expo = p.q * sigma / (p.q - 1.0);
        let w = Inhomogeneity::separable(move |t: f64| t.powf(expo), bump(1.0, 1.0));
        let values = criterion_ladder(&default_ladder(), &w, &p, &prof, &cfg).unwrap();
        let fit = fit_power_law(&values).unwrap();
        assert!((fit.slope - 0.5).abs() < 0.02, "slope {}", fit.slope);
    }

    #[test]
    fn assess_growth_examples() {
        let grow: Vec<(f64, f64)> = default_ladder().into_iter().map(|t| (t, t.sqrt())).collect();
        assert_eq!(
            assess_growth(&grow, 0.05).unwrap().verdict,
            GrowthVerdict::GrowthEvidence
        );

        let decay: Vec<(f64, f64)> = default_ladder()
            .into_iter()
            .map(|t| (t, t.powf(-0.25)))
            .collect();
        assert_eq!(
            assess_growth(&decay, 0.05).unwrap().verdict,
            GrowthVerdict::BoundedEvidence
        );

        // alternating noise: r^2 collapses, inconclusive
        let noisy: Vec<(f64, f64)> = default_ladder()
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, if i % 2 == 0 { 10.0 } else { 0.1 }))
            .collect();
        let report = assess_growth(&noisy, 0.05).unwrap();
        assert_eq!(report.verdict, GrowthVerdict::Inconclusive);
        assert!(report.r_squared.unwrap() < 0.9);

        // half zeros: inconclusive without a fit
        let zeros: Vec<(f64, f64)> = default_ladder()
            .into_iter()
            .enumerate()
            .map(|(i, t)| (t, if i < 5 { 0.0 } else { t }))
            .collect();
        let report = assess_growth(&zeros, 0.05).unwrap();
        assert_eq!(report.verdict, GrowthVerdict::Inconclusive);
        assert!(report.fitted_slope.is_none());

        assert!(assess_growth(&grow[..4], 0.05).is_err());
        assert!(assess_growth(&[(1.0, -1.0); 5], 0.05).is_err());
    }

    #[test]
    fn scaling_w_scales_j_and_keeps_verdict() {
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let w1 = Inhomogeneity::separable(|_| 1.0, bump(1.0, 1.0));
        let w7 = Inhomogeneity::separable(|_| 1.0, bump(7.0, 1.0));
        let v1 = criterion_ladder(&default_ladder(), &w1, &p, &prof, &cfg).unwrap();
        let v7 = criterion_ladder(&default_ladder(), &w7, &p, &prof, &cfg).unwrap();
        for ((_, a), (_, b)) in v1.iter().zip(&v7) {
            assert_relative_eq!(7.0 * a, *b, max_relative = 1e-12);
        }
        assert_eq!(
            assess_growth(&v1, 0.05).unwrap().verdict,
            assess_growth(&v7, 0.05).unwrap().verdict
        );
    }

    #[test]
    fn plateau_choice_does_not_move_power_law_slopes() {
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let narrow = CutoffProfile::new(0.25, 0.75).unwrap();
        let wide = CutoffProfile::new(0.5, 0.9).unwrap();
        let slope_for = |prof: &CutoffProfile| {
            let samples: Vec<(f64, f64)> = default_ladder()
                .into_iter()
                .map(|t| {
                    (
                        t,
                        separable_criterion_value(t, |s| s.powf(0.7), &p, prof, &cfg).unwrap(),
                    )
                })
                .collect();
            fit_power_law(&samples).unwrap().slope
        };
        assert!((slope_for(&narrow) - slope_for(&wide)).abs() < 1e-9);
    }

    #[test]
    fn negative_inhomogeneity_is_a_data_error() {
        let cfg = QuadratureConfig::default();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let w = Inhomogeneity::analytic(|_, r| 1.0 - r);
        assert!(matches!(
            criterion_value(16.0, &w, &p, &prof, &cfg),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            separable_criterion_value(16.0, |t| 1.0 - t, &p, &prof, &cfg),
            Err(Error::Data(_))
        ));
    }

    #[test]
    fn gridded_csv_roundtrip_and_interpolation() {
        let csv = "t,r,w\n0,0,1\n0,1,2\n1,0,3\n1,1,4\n";
        let g = GriddedField::from_csv(csv).unwrap();
        assert_relative_eq!(g.value(0.0, 0.0), 1.0);
        assert_relative_eq!(g.value(0.0, 1.0), 2.0);
        assert_relative_eq!(g.value(1.0, 0.0), 3.0);
        assert_relative_eq!(g.value(0.5, 0.5), 2.5);
        // outside the sampled domain: 0
        assert_eq!(g.value(2.0, 0.5), 0.0);
        assert_eq!(g.value(0.5, 1.5), 0.0);
        assert!(g.covers_window(0.0, 1.0, 1.0));
        assert!(!g.covers_window(0.0, 2.0, 1.0));

        assert!(GriddedField::from_csv("t,r,w\n0,0,1\n0,1,2\n1,0,3\n").is_err());
        assert!(GriddedField::from_csv("t,r,w\n0,0,-1\n0,1,2\n1,0,3\n1,1,4\n").is_err());
    }

    #[test]
    fn gridded_out_of_domain_is_flagged() {
        // field sampled only up to t = 10, r = 4: larger probe windows escape
        let nt = 6;
        let nr = 5;
        let t_grid: Vec<f64> = (0..nt).map(|i| 2.0 * i as f64).collect();
        let r_grid: Vec<f64> = (0..nr).map(|i| i as f64).collect();
        let values = vec![1.0; nt * nr];
        let g = GriddedField::new(t_grid, r_grid, values).unwrap();
        let p = params(2.0, 2.0, 3);
        let prof = CutoffProfile::default();
        let cfg = QuadratureConfig::default();
        let report = evaluate(
            &default_ladder(),
            &Inhomogeneity::Gridded(g),
            &p,
            &prof,
            &cfg,
            0.05,
        )
        .unwrap();
        assert!(report.out_of_domain);
    }
}
