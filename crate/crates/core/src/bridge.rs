//! Three-dimensional Bessel bridges from `a` (time 0) to 0 (time `s`).
//!
//! The exact sampler takes the Euclidean norm of a 3-d Brownian bridge from
//! `(a, 0, 0)` to the origin. The noise is generated once on the unit
//! interval and rescaled by `sqrt(s)`, which is the same law as sampling the
//! bridge transitions on `[0, s]` directly and lets callers reuse one set of
//! draws across many horizons `s`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::boundary::Boundary;
use crate::error::{Error, Result};
use crate::mc::{accumulate, Estimate};
use crate::rng::path_rng;

/// Reflection level of the Euler scheme.
pub const EULER_REFLECTION: f64 = 1e-8;

/// A sampled path on the uniform grid `t_k = k s / n_steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathGrid {
    pub s: f64,
    pub values: Vec<f64>,
}

impl PathGrid {
    pub fn n_steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn time(&self, k: usize) -> f64 {
        self.s * k as f64 / self.n_steps() as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|k| self.time(k))
    }
}

/// Monte Carlo sizing and seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(n_paths: usize, n_steps: usize, seed: u64) -> Self {
        Self { n_paths, n_steps, seed }
    }

    pub fn check(&self) -> Result<()> {
        if self.n_paths < 1 {
            return Err(Error::Argument("n_paths must be at least 1".into()));
        }
        if self.n_steps < 2 {
            return Err(Error::Argument("n_steps must be at least 2".into()));
        }
        Ok(())
    }
}

pub(crate) fn check_bridge_params(a: f64, s: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Argument(format!("bridge start must be positive and finite, got {a}")));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Argument(format!("bridge length must be positive and finite, got {s}")));
    }
    Ok(())
}

/// Three independent standard Brownian bridges on `[0, 1]`, stored in the
/// form needed to evaluate the Bessel bridge for any `(a, s)`:
/// the first coordinate and the squared norm of the other two.
#[derive(Debug, Clone)]
pub(crate) struct UnitBridge {
    grid: Vec<f64>,
    first: Vec<f64>,
    rest_sq: Vec<f64>,
}

impl UnitBridge {
    pub(crate) fn new(grid: Vec<f64>) -> Self {
        debug_assert!(grid.first() == Some(&0.0) && grid.last() == Some(&1.0));
        let n = grid.len();
        Self { grid, first: vec![0.0; n], rest_sq: vec![0.0; n] }
    }

    pub(crate) fn uniform(n_steps: usize) -> Self {
        Self::new((0..=n_steps).map(|k| k as f64 / n_steps as f64).collect())
    }

    pub(crate) fn len(&self) -> usize {
        self.grid.len()
    }

    pub(crate) fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Sequential bridge transitions: given β(v_k), β(v_{k+1}) is normal with
    /// mean β(v_k)(1 - v_{k+1})/(1 - v_k) and variance
    /// (v_{k+1} - v_k)(1 - v_{k+1})/(1 - v_k). The final node is pinned to 0.
    pub(crate) fn resample<R: Rng>(&mut self, rng: &mut R) {
        let n = self.grid.len();
        let mut b = [0.0f64; 3];
        self.first[0] = 0.0;
        self.rest_sq[0] = 0.0;
        for k in 0..n - 2 {
            let (v0, v1) = (self.grid[k], self.grid[k + 1]);
            let shrink = (1.0 - v1) / (1.0 - v0);
            let sd = ((v1 - v0) * shrink).sqrt();
            for c in b.iter_mut() {
                let z: f64 = rng.sample(StandardNormal);
                *c = *c * shrink + sd * z;
            }
            self.first[k + 1] = b[0];
            self.rest_sq[k + 1] = b[1] * b[1] + b[2] * b[2];
        }
        self.first[n - 1] = 0.0;
        self.rest_sq[n - 1] = 0.0;
    }

    /// Bessel bridge value at node `k` for start `a` and length `s`
    /// (`root_s = sqrt(s)`).
    #[inline]
    pub(crate) fn value(&self, k: usize, a: f64, s: f64, root_s: f64) -> f64 {
        let x = a * (1.0 - self.grid[k]) + root_s * self.first[k];
        (x * x + s * self.rest_sq[k]).sqrt()
    }

    /// Fills `out` with the path, endpoints pinned to exactly `a` and 0.
    pub(crate) fn fill_path(&self, a: f64, s: f64, out: &mut [f64]) {
        let root_s = s.sqrt();
        let n = self.grid.len();
        for (k, slot) in out.iter_mut().enumerate().take(n) {
            *slot = self.value(k, a, s, root_s);
        }
        out[0] = a;
        out[n - 1] = 0.0;
    }
}

/// One exact Bessel(3) bridge path from `a` to 0 over `[0, s]`.
pub fn sample_exact<R: Rng>(a: f64, s: f64, n_steps: usize, rng: &mut R) -> Result<PathGrid> {
    check_bridge_params(a, s)?;
    if n_steps < 2 {
        return Err(Error::Argument("exact sampler needs n_steps >= 2".into()));
    }
    let mut unit = UnitBridge::uniform(n_steps);
    unit.resample(rng);
    let mut values = vec![0.0; n_steps + 1];
    unit.fill_path(a, s, &mut values);
    Ok(PathGrid { s, values })
}

/// Euler–Maruyama discretisation of
/// `dX = dW + (1/X - X/(s - t)) dt`, reflected at [`EULER_REFLECTION`]
/// and pinned to 0 at the last node. Biased near `t = s`; used only to
/// cross-check [`sample_exact`].
pub fn sample_euler<R: Rng>(a: f64, s: f64, n_steps: usize, rng: &mut R) -> Result<PathGrid> {
    check_bridge_params(a, s)?;
    if n_steps < 8 {
        return Err(Error::Argument("Euler sampler needs n_steps >= 8".into()));
    }
    let dt = s / n_steps as f64;
    let sq_dt = dt.sqrt();
    let mut values = Vec::with_capacity(n_steps + 1);
    let mut x = a;
    values.push(x);
    for k in 0..n_steps - 1 {
        let t = k as f64 * dt;
        let z: f64 = rng.sample(StandardNormal);
        x += (1.0 / x - x / (s - t)) * dt + sq_dt * z;
        if x < EULER_REFLECTION {
            x = 2.0 * EULER_REFLECTION - x;
        }
        values.push(x);
    }
    values.push(0.0);
    Ok(PathGrid { s, values })
}

/// Trapezoidal approximation of `∫₀ˢ f''(u) X_u du` on the path's grid.
pub fn path_functional(path: &PathGrid, b: &Boundary) -> Result<f64> {
    let n = path.n_steps();
    let dt = path.s / n as f64;
    let mut acc = 0.0;
    for (k, x) in path.values.iter().enumerate() {
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        acc += w * b.eval_fpp(path.time(k))? * x;
    }
    Ok(acc * dt)
}

/// Monte Carlo estimates of `E[X_u]` at each `u` in `us` (all in `[0, s]`),
/// sharing one set of bridge draws.
pub fn bridge_means(a: f64, s: f64, us: &[f64], cfg: &McConfig) -> Result<Vec<Estimate>> {
    check_bridge_params(a, s)?;
    if cfg.n_paths < 1 {
        return Err(Error::Argument("n_paths must be at least 1".into()));
    }
    if let Some(u) = us.iter().find(|u| !(**u >= 0.0 && **u <= s)) {
        return Err(Error::Argument(format!("time {u} lies outside [0, {s}]")));
    }
    let interior: Vec<f64> = {
        let mut v: Vec<f64> = us.iter().copied().filter(|u| *u > 0.0 && *u < s).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    let mut grid = Vec::with_capacity(interior.len() + 2);
    grid.push(0.0);
    grid.extend(interior.iter().map(|u| u / s));
    grid.push(1.0);
    let root_s = s.sqrt();
    let m = accumulate(
        cfg.n_paths,
        interior.len(),
        false,
        || UnitBridge::new(grid.clone()),
        |unit, i, out| {
            unit.resample(&mut path_rng(cfg.seed, i));
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = unit.value(j + 1, a, s, root_s);
            }
        },
    );
    Ok(us
        .iter()
        .map(|&u| {
            if u == 0.0 {
                Estimate::exact(a, cfg.n_paths)
            } else if u == s {
                Estimate::exact(0.0, cfg.n_paths)
            } else {
                let j = interior.partition_point(|v| *v < u);
                m.estimate(j)
            }
        })
        .collect())
}

/// Monte Carlo estimate of `E[X_u]`.
pub fn bridge_mean(a: f64, s: f64, u: f64, cfg: &McConfig) -> Result<Estimate> {
    Ok(bridge_means(a, s, &[u], cfg)?[0])
}
