//! First-passage-time density, distribution and analytic bounds from the
//! Bessel-bridge representation
//!
//! `P(T < t) = ∫₀ᵗ E[exp(-∫₀ˢ f''(u) X_u du)] · exp(-½∫₀ˢ f'(u)² du - f'(0) a) · h(s, a) ds`,
//!
//! where `X` is a 3-d Bessel bridge from `a` to 0 over `[0, s]` and `h` the
//! fixed-level hitting density.

use serde::Serialize;

use crate::boundary::{level_density, Boundary};
use crate::bridge::{McConfig, UnitBridge};
use crate::error::{Error, Result};
use crate::io::{csv_document, fmt_f64};
use crate::mc::{accumulate, Estimate, Moments};
use crate::quad::{density_panels, GaussLegendre};
use crate::rng::{derive_seed, path_rng};

/// Gauss–Legendre points per panel for the distribution function.
pub const DEFAULT_QUAD_POINTS: usize = 32;

/// Number of `u`-points in the trapezoid for `∫ f''(u) E[X_u] du`.
pub const BOUND_GRID_POINTS: usize = 64;

const BOUNDS_STREAM: u64 = 0xB0_0D5;

/// Jensen sandwich for the density at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityBounds {
    pub lower: f64,
    pub upper: f64,
    /// Delta-method standard error of `lower` (the upper bound is exact).
    pub lower_stderr: f64,
}

/// Density estimates and bounds on a grid of `s` values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityCurve {
    pub times: Vec<f64>,
    pub density: Vec<Estimate>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower_stderr: Vec<f64>,
}

impl DensityCurve {
    /// CSV with columns `s, density, stderr, lower, upper`.
    pub fn to_csv(&self) -> String {
        csv_document(
            &["s", "density", "stderr", "lower", "upper"],
            (0..self.times.len()).map(|i| {
                vec![
                    fmt_f64(self.times[i]),
                    fmt_f64(self.density[i].value),
                    fmt_f64(self.density[i].stderr),
                    fmt_f64(self.lower[i]),
                    fmt_f64(self.upper[i]),
                ]
            }),
        )
    }
}

fn check_inputs(b: &Boundary, horizon: f64, cfg: &McConfig) -> Result<()> {
    cfg.check()?;
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::Domain(format!("time must be positive and finite, got {horizon}")));
    }
    b.validate(horizon).into_result()?;
    Ok(())
}

/// `exp(-½∫₀ˢ (f')² du - f'(0) a) · h(s, a)`: the density with the bridge
/// expectation replaced by 1, i.e. the upper bound.
pub fn upper_bound(b: &Boundary, s: f64) -> Result<f64> {
    let girsanov = (-0.5 * b.integral_fp_sq(0.0, s)? - b.eval_fp(0.0)? * b.a()).exp();
    Ok(girsanov * level_density(s, b.a())?)
}

/// Trapezoid weights `Δ·w_k·f''(s v_k)` on a unit grid scaled to `[0, s]`.
fn functional_weights(b: &Boundary, s: f64, unit_grid: &[f64]) -> Result<Vec<f64>> {
    let n = unit_grid.len() - 1;
    let dt = s / n as f64;
    unit_grid
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            Ok(w * dt * b.eval_fpp(s * v)?)
        })
        .collect()
}

/// `Σ_k weights[k] · X(v_k)` for one unit bridge rescaled to `(a, s)`.
#[inline]
fn weighted_path_sum(unit: &UnitBridge, weights: &[f64], a: f64, s: f64, root_s: f64) -> f64 {
    let n = unit.len() - 1;
    // Node n carries X = 0.
    let mut acc = weights[0] * a;
    for k in 1..n {
        acc += weights[k] * unit.value(k, a, s, root_s);
    }
    acc
}

/// Moments of `exp(-∫₀ˢ f'' X du)` jointly over `s_values`, with one set of
/// bridge draws per path shared by every `s` (common random numbers).
fn expectation_moments(b: &Boundary, s_values: &[f64], cfg: &McConfig, full: bool) -> Result<Moments> {
    let unit_grid = UnitBridge::uniform(cfg.n_steps).grid().to_vec();
    let tables = s_values
        .iter()
        .map(|&s| functional_weights(b, s, &unit_grid))
        .collect::<Result<Vec<_>>>()?;
    let roots: Vec<f64> = s_values.iter().map(|s| s.sqrt()).collect();
    let a = b.a();
    Ok(accumulate(
        cfg.n_paths,
        s_values.len(),
        full,
        || UnitBridge::new(unit_grid.clone()),
        |unit, i, out| {
            unit.resample(&mut path_rng(cfg.seed, i));
            for (j, slot) in out.iter_mut().enumerate() {
                let integral = weighted_path_sum(unit, &tables[j], a, s_values[j], roots[j]);
                *slot = (-integral).exp();
            }
        },
    ))
}

/// Monte Carlo estimate of `E[exp(-∫₀ˢ f''(u) X_u du)]`, always in `[0, 1]`.
pub fn expectation_term(b: &Boundary, s: f64, cfg: &McConfig) -> Result<Estimate> {
    check_inputs(b, s, cfg)?;
    if b.is_linear() {
        return Ok(Estimate::exact(1.0, cfg.n_paths));
    }
    Ok(expectation_moments(b, &[s], cfg, false)?.estimate(0))
}

/// First-passage density at `s`.
pub fn density_at(b: &Boundary, s: f64, cfg: &McConfig) -> Result<Estimate> {
    let e = expectation_term(b, s, cfg)?;
    Ok(e.scaled(upper_bound(b, s)?))
}

/// `P(T < t)` at every `t` in `times`, from one composite Gauss–Legendre
/// rule on `(0, max t]` with `n_quad` points per panel.
///
/// Targets inside a panel are integrated with the Legendre interpolant of
/// that panel's nodes, so a target on a panel edge reproduces the plain
/// composite rule. Standard errors account for the correlation between
/// nodes that share bridge draws.
pub fn cdf_curve(b: &Boundary, times: &[f64], cfg: &McConfig, n_quad: usize) -> Result<Vec<Estimate>> {
    if n_quad < 16 {
        return Err(Error::Argument(format!("n_quad must be at least 16, got {n_quad}")));
    }
    if times.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(t) = times.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
        return Err(Error::Domain(format!("distribution needs t > 0, got {t}")));
    }
    let t_max = times.iter().copied().fold(0.0, f64::max);
    check_inputs(b, t_max, cfg)?;

    let a = b.a();
    let rule = GaussLegendre::new(n_quad);
    let edges = density_panels(t_max, a * a / 3.0);
    let mut nodes = Vec::with_capacity(n_quad * (edges.len() - 1));
    for w in edges.windows(2) {
        nodes.extend(rule.on_interval(w[0], w[1]).0);
    }
    let prefactors = nodes.iter().map(|&s| upper_bound(b, s)).collect::<Result<Vec<_>>>()?;
    let moments = if b.is_linear() {
        None
    } else {
        Some(expectation_moments(b, &nodes, cfg, true)?)
    };

    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let mut coeffs = vec![0.0; nodes.len()];
        for (p, w) in edges.windows(2).enumerate() {
            let (lo, hi) = (w[0], w[1]);
            if lo >= t {
                break;
            }
            let half = 0.5 * (hi - lo);
            let weights = if t >= hi {
                rule.weights.clone()
            } else {
                rule.partial_weights((2.0 * t - lo - hi) / (hi - lo))
            };
            for (q, wq) in weights.iter().enumerate() {
                let j = p * n_quad + q;
                coeffs[j] = half * wq * prefactors[j];
            }
        }
        let mut est = match &moments {
            Some(m) => m.linear_estimate(&coeffs),
            None => Estimate::exact(coeffs.iter().sum(), cfg.n_paths),
        };
        est.value = est.value.clamp(0.0, 1.0);
        out.push(est);
    }
    Ok(out)
}

/// `P(T < t)`.
pub fn cdf(b: &Boundary, t: f64, cfg: &McConfig, n_quad: usize) -> Result<Estimate> {
    Ok(cdf_curve(b, &[t], cfg, n_quad)?[0])
}

/// Jensen bounds at every `s` in `s_values`. The lower bound's
/// `∫₀ˢ f''(u) E[X_u] du` uses a [`BOUND_GRID_POINTS`]-point trapezoid with
/// Monte Carlo bridge means.
pub fn bounds_curve(b: &Boundary, s_values: &[f64], cfg: &McConfig) -> Result<Vec<DensityBounds>> {
    let s_max = s_values.iter().copied().fold(0.0, f64::max);
    check_inputs(b, s_max, cfg)?;
    if let Some(s) = s_values.iter().find(|s| !(**s > 0.0)) {
        return Err(Error::Domain(format!("bounds need s > 0, got {s}")));
    }
    let uppers = s_values.iter().map(|&s| upper_bound(b, s)).collect::<Result<Vec<_>>>()?;
    if b.is_linear() {
        return Ok(uppers
            .into_iter()
            .map(|u| DensityBounds { lower: u, upper: u, lower_stderr: 0.0 })
            .collect());
    }
    let unit_grid = UnitBridge::uniform(BOUND_GRID_POINTS - 1).grid().to_vec();
    let tables = s_values
        .iter()
        .map(|&s| functional_weights(b, s, &unit_grid))
        .collect::<Result<Vec<_>>>()?;
    let roots: Vec<f64> = s_values.iter().map(|s| s.sqrt()).collect();
    let a = b.a();
    let seed = derive_seed(cfg.seed, BOUNDS_STREAM);
    // Per path: Σ_k w_k X(u_k), whose mean is the trapezoid of f'' · E[X].
    let m = accumulate(
        cfg.n_paths,
        s_values.len(),
        false,
        || UnitBridge::new(unit_grid.clone()),
        |unit, i, out| {
            unit.resample(&mut path_rng(seed, i));
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = weighted_path_sum(unit, &tables[j], a, s_values[j], roots[j]);
            }
        },
    );
    Ok(uppers
        .into_iter()
        .enumerate()
        .map(|(j, upper)| {
            let exponent = m.estimate(j);
            let lower = upper * (-exponent.value).exp();
            DensityBounds { lower, upper, lower_stderr: lower * exponent.stderr }
        })
        .collect())
}

pub fn bounds_at(b: &Boundary, s: f64, cfg: &McConfig) -> Result<DensityBounds> {
    Ok(bounds_curve(b, &[s], cfg)?[0])
}

/// Density and bounds on `s_i = i · t_max / n_points`, `i = 1..=n_points`.
pub fn density_curve(b: &Boundary, t_max: f64, n_points: usize, cfg: &McConfig) -> Result<DensityCurve> {
    if n_points < 2 {
        return Err(Error::Argument("density curve needs at least 2 points".into()));
    }
    check_inputs(b, t_max, cfg)?;
    let times: Vec<f64> = (1..=n_points).map(|i| t_max * i as f64 / n_points as f64).collect();
    let uppers = times.iter().map(|&s| upper_bound(b, s)).collect::<Result<Vec<_>>>()?;
    let density = if b.is_linear() {
        uppers.iter().map(|u| Estimate::exact(*u, cfg.n_paths)).collect()
    } else {
        let m = expectation_moments(b, &times, cfg, false)?;
        uppers.iter().enumerate().map(|(j, u)| m.estimate(j).scaled(*u)).collect()
    };
    let bounds = bounds_curve(b, &times, cfg)?;
    Ok(DensityCurve {
        times,
        density,
        lower: bounds.iter().map(|x| x.lower).collect(),
        upper: bounds.iter().map(|x| x.upper).collect(),
        lower_stderr: bounds.iter().map(|x| x.lower_stderr).collect(),
    })
}
