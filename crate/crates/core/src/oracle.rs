//! Ground truth for the bridge representation: direct simulation of the
//! Brownian hitting time with a Brownian-bridge crossing correction, and
//! closed forms for linear boundaries.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::Boundary;
use crate::error::{Error, Result};
use crate::io::{csv_document, fmt_f64};
use crate::quad::{density_panels, GaussLegendre};
use crate::rng::{derive_seed, path_rng};

/// Histogram bins on `(0, horizon]`.
pub const DEFAULT_BINS: usize = 200;

const UNIFORM_STREAM: u64 = 0xC0_55;

/// Crossing probabilities below `exp(-CROSSING_CUTOFF)` are not sampled.
const CROSSING_CUTOFF: f64 = 40.0;

/// Histogram of simulated hitting times.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalDistribution {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub n_paths_total: u64,
    /// Paths that had not hit by the horizon.
    pub n_not_hit: u64,
}

impl EmpiricalDistribution {
    /// Empirical CDF at every bin edge (first entry is 0 at t = 0).
    pub fn cdf_at_edges(&self) -> Vec<f64> {
        let n = self.n_paths_total as f64;
        let mut out = Vec::with_capacity(self.bin_edges.len());
        out.push(0.0);
        let mut running = 0u64;
        for c in &self.counts {
            running += c;
            out.push(running as f64 / n);
        }
        out
    }

    /// Histogram density estimate per bin: count / (n_total · width).
    pub fn density(&self) -> Vec<f64> {
        let n = self.n_paths_total as f64;
        self.counts
            .iter()
            .zip(self.bin_edges.windows(2))
            .map(|(c, w)| *c as f64 / (n * (w[1] - w[0])))
            .collect()
    }

    /// CSV with columns `bin_left, bin_right, count`.
    pub fn to_csv(&self) -> String {
        csv_document(
            &["bin_left", "bin_right", "count"],
            self.counts.iter().zip(self.bin_edges.windows(2)).map(|(c, w)| {
                vec![fmt_f64(w[0]), fmt_f64(w[1]), c.to_string()]
            }),
        )
    }

    pub fn summary_json(&self) -> serde_json::Value {
        let hit = self.n_paths_total - self.n_not_hit;
        serde_json::json!({
            "n_paths_total": self.n_paths_total,
            "n_not_hit": self.n_not_hit,
            "n_hit": hit,
            "horizon": self.bin_edges.last().copied().unwrap_or(0.0),
            "n_bins": self.counts.len(),
            "cdf_at_horizon": hit as f64 / self.n_paths_total as f64,
        })
    }
}

/// Settings for [`simulate_fpt_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FptSimulation {
    pub horizon: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub n_bins: usize,
    /// Apply the Brownian-bridge crossing correction inside each step.
    pub crossing_correction: bool,
}

impl FptSimulation {
    pub fn new(horizon: f64, n_paths: usize, n_steps: usize, seed: u64) -> Self {
        Self {
            horizon,
            n_paths,
            n_steps,
            seed,
            n_bins: DEFAULT_BINS,
            crossing_correction: true,
        }
    }
}

/// Probability that a Brownian bridge over a step of length `dt` crosses a
/// linear boundary, given gaps `d0, d1 ≥ 0` at the step ends.
pub fn crossing_probability(d0: f64, d1: f64, dt: f64) -> f64 {
    if d0 <= 0.0 || d1 <= 0.0 {
        return 1.0;
    }
    (-2.0 * d0 * d1 / dt).exp()
}

/// Direct simulation of `T = inf{t : B_t = f(t)}` with the crossing
/// correction on; see [`simulate_fpt_with`].
pub fn simulate_fpt(b: &Boundary, horizon: f64, n_paths: usize, n_steps: usize, seed: u64) -> Result<EmpiricalDistribution> {
    simulate_fpt_with(b, &FptSimulation::new(horizon, n_paths, n_steps, seed))
}

/// Euler paths of `B` on `[0, horizon]`. A step counts as a hit when the
/// gap `f - B` turns nonpositive, or, with the correction on, with the
/// bridge crossing probability for the chord of `f` over the step. Hits
/// are stamped at the step midpoint.
pub fn simulate_fpt_with(b: &Boundary, sim: &FptSimulation) -> Result<EmpiricalDistribution> {
    if !(sim.horizon > 0.0) || !sim.horizon.is_finite() {
        return Err(Error::Argument(format!("horizon must be positive, got {}", sim.horizon)));
    }
    if sim.n_paths == 0 || sim.n_steps == 0 || sim.n_bins == 0 {
        return Err(Error::Argument("n_paths, n_steps and n_bins must be positive".into()));
    }
    b.validate(sim.horizon).into_result()?;

    let dt = sim.horizon / sim.n_steps as f64;
    let sq_dt = dt.sqrt();
    let f_grid = (0..=sim.n_steps)
        .map(|k| b.eval_f(sim.horizon * k as f64 / sim.n_steps as f64))
        .collect::<Result<Vec<_>>>()?;
    let bin_width = sim.horizon / sim.n_bins as f64;
    let uniform_seed = derive_seed(sim.seed, UNIFORM_STREAM);

    let hit_slot = |i: u64| -> usize {
        let mut normals = path_rng(sim.seed, i);
        let mut uniforms = path_rng(uniform_seed, i);
        let mut x = 0.0;
        let mut gap = f_grid[0];
        for k in 0..sim.n_steps {
            let z: f64 = normals.sample(StandardNormal);
            x += sq_dt * z;
            let next_gap = f_grid[k + 1] - x;
            let crossed = if next_gap <= 0.0 || gap <= 0.0 {
                true
            } else if sim.crossing_correction {
                let exponent = 2.0 * gap * next_gap / dt;
                exponent < CROSSING_CUTOFF && uniforms.random::<f64>() < (-exponent).exp()
            } else {
                false
            };
            if crossed {
                let t_mid = (k as f64 + 0.5) * dt;
                return ((t_mid / bin_width) as usize).min(sim.n_bins - 1);
            }
            gap = next_gap;
        }
        sim.n_bins
    };
    // Slot n_bins collects the paths that never hit. Integer counts make the
    // reduction order irrelevant.
    let counts = (0..sim.n_paths as u64)
        .into_par_iter()
        .fold(
            || vec![0u64; sim.n_bins + 1],
            |mut acc, i| {
                acc[hit_slot(i)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; sim.n_bins + 1],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(p, q)| *p += q);
                x
            },
        );
    let bin_edges = (0..=sim.n_bins).map(|j| bin_width * j as f64).collect();
    Ok(EmpiricalDistribution {
        bin_edges,
        counts: counts[..sim.n_bins].to_vec(),
        n_paths_total: sim.n_paths as u64,
        n_not_hit: counts[sim.n_bins],
    })
}

/// Hitting density of the line `a + slope·t`:
/// `a / sqrt(2π s³) · exp(-(a + slope·s)² / (2s))`.
pub fn linear_density(a: f64, slope: f64, s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("linear density needs s > 0, got {s}")));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("linear density needs a > 0, got {a}")));
    }
    Ok(a / (2.0 * PI * s * s * s).sqrt() * (-(a + slope * s).powi(2) / (2.0 * s)).exp())
}

/// `P(T ≤ t)` for the line `a + slope·t` by composite 32-point
/// Gauss–Legendre quadrature of [`linear_density`].
pub fn linear_cdf(a: f64, slope: f64, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Ok(0.0);
    }
    linear_density(a, slope, t)?;
    let rule = GaussLegendre::new(32);
    let edges = density_panels(t, a * a / 3.0);
    let mut total = 0.0;
    for w in edges.windows(2) {
        // Halve each panel once more; the density is flat near 0 but steep around its mode.
        let mid = 0.5 * (w[0] + w[1]);
        for (lo, hi) in [(w[0], mid), (mid, w[1])] {
            total += rule.integrate(lo, hi, |s| linear_density(a, slope, s).unwrap_or(0.0));
        }
    }
    Ok(total)
}

/// `sup` over bin edges of `|F_empirical - F_model|`.
pub fn compare<F: Fn(f64) -> f64>(e: &EmpiricalDistribution, model_cdf: F) -> f64 {
    e.bin_edges
        .iter()
        .zip(e.cdf_at_edges())
        .map(|(t, emp)| (emp - model_cdf(*t)).abs())
        .fold(0.0, f64::max)
}

/// Like [`compare`] with model values precomputed at the bin edges.
pub fn compare_values(e: &EmpiricalDistribution, model_at_edges: &[f64]) -> Result<f64> {
    if model_at_edges.len() != e.bin_edges.len() {
        return Err(Error::Argument(format!(
            "expected {} model values, got {}",
            e.bin_edges.len(),
            model_at_edges.len()
        )));
    }
    Ok(e.cdf_at_edges()
        .iter()
        .zip(model_at_edges)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
