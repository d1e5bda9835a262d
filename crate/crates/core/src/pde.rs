//! Finite-difference solvers for the backward Feynman–Kac problem
//!
//! `-v_t + f''(t) a v = ½ v_aa + (1/a - a/(s-t)) v_a`,  `v(s, a) = 1`,
//!
//! and for its Schrödinger form `-w_t + f''(t) a w = ½ w_aa`, the map
//! `v = w / h(s - t, a)` between them, and the Fourier representation of
//! `w` through a heat-equation solution `ω`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use ndarray::{s, Array2};
use serde::{Deserialize, Serialize};

use crate::boundary::{level_density, Boundary};
use crate::error::{Error, Result};
use crate::io::{csv_document, fmt_f64};
use crate::quad::GaussLegendre;

/// Largest admissible `Δt / (2 Δa²)`.
pub const MAX_DIFFUSION_NUMBER: f64 = 25.0;

/// Relative change allowed when the Fourier quadrature is doubled.
pub const FOURIER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Cauchy,
    Schrodinger,
    Heat,
}

/// Space-time grid for the solvers. `a_max = None` means `a + 6√s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n_t: usize,
    pub n_a: usize,
    pub a_min: f64,
    #[serde(default)]
    pub a_max: Option<f64>,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_t: 2000, n_a: 400, a_min: 1e-3, a_max: None }
    }
}

impl GridSpec {
    /// Same domain with `factor` times as many intervals in both directions.
    pub fn refined(&self, factor: usize) -> Self {
        Self { n_t: self.n_t * factor, n_a: self.n_a * factor, ..*self }
    }

    fn build(&self, a_ref: f64, s: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Config(format!("horizon s must be positive, got {s}")));
        }
        if self.n_t < 2 || self.n_a < 3 {
            return Err(Error::Config(format!(
                "grid needs n_t >= 2 and n_a >= 3, got {} x {}",
                self.n_t, self.n_a
            )));
        }
        let a_max = self.a_max.unwrap_or(a_ref + 6.0 * s.sqrt());
        if !(self.a_min > 0.0) || !(a_max > self.a_min) || !a_max.is_finite() {
            return Err(Error::Config(format!(
                "space domain must satisfy 0 < a_min < a_max, got [{}, {a_max}]",
                self.a_min
            )));
        }
        let dt = s / self.n_t as f64;
        let da = (a_max - self.a_min) / self.n_a as f64;
        let number = dt / (2.0 * da * da);
        if number > MAX_DIFFUSION_NUMBER {
            return Err(Error::Config(format!(
                "grid too coarse in time: dt/(2 da^2) = {number:.3} exceeds {MAX_DIFFUSION_NUMBER}"
            )));
        }
        let t_grid = (0..=self.n_t).map(|i| s * i as f64 / self.n_t as f64).collect();
        let a_grid = (0..=self.n_a).map(|j| self.a_min + da * j as f64).collect();
        Ok((t_grid, a_grid))
    }
}

/// Solution values on a (time × space) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub t_grid: Vec<f64>,
    pub a_grid: Vec<f64>,
    /// Indexed `[time, space]`.
    pub values: Array2<f64>,
    pub equation: Equation,
}

impl Field2D {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[[i, j]]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Rows `first..=last` as a new field.
    pub fn time_window(&self, first: usize, last: usize) -> Result<Field2D> {
        self.subgrid(first..=last, 0..=self.a_grid.len() - 1)
    }

    /// The block of rows `rows` and columns `cols` as a new field.
    pub fn subgrid(&self, rows: RangeInclusive<usize>, cols: RangeInclusive<usize>) -> Result<Field2D> {
        let (r0, r1, c0, c1) = (*rows.start(), *rows.end(), *cols.start(), *cols.end());
        if r0 > r1 || r1 >= self.t_grid.len() || c0 > c1 || c1 >= self.a_grid.len() {
            return Err(Error::Argument(format!(
                "block {rows:?} x {cols:?} outside {} x {}",
                self.t_grid.len(),
                self.a_grid.len()
            )));
        }
        Ok(Field2D {
            t_grid: self.t_grid[rows.clone()].to_vec(),
            a_grid: self.a_grid[cols.clone()].to_vec(),
            values: self.values.slice(s![r0..=r1, c0..=c1]).to_owned(),
            equation: self.equation,
        })
    }

    /// Cubic Lagrange interpolation in space along row `i`.
    pub fn interpolate(&self, i: usize, a: f64) -> Result<f64> {
        let grid = &self.a_grid;
        let n = grid.len();
        if !(a >= grid[0] && a <= grid[n - 1]) {
            return Err(Error::Domain(format!("a = {a} outside [{}, {}]", grid[0], grid[n - 1])));
        }
        let idx = grid.partition_point(|x| *x <= a).clamp(2, n - 2) - 2;
        let nodes = idx..(idx + 4).min(n);
        let mut acc = 0.0;
        for p in nodes.clone() {
            let mut basis = 1.0;
            for q in nodes.clone() {
                if q != p {
                    basis *= (a - grid[q]) / (grid[p] - grid[q]);
                }
            }
            acc += basis * self.values[[i, p]];
        }
        Ok(acc)
    }

    /// CSV with columns `t, a, value`, time-major.
    pub fn to_csv(&self) -> String {
        let rows = self.t_grid.iter().enumerate().flat_map(|(i, t)| {
            self.a_grid
                .iter()
                .enumerate()
                .map(move |(j, a)| vec![fmt_f64(*t), fmt_f64(*a), fmt_f64(self.values[[i, j]])])
        });
        csv_document(&["t", "a", "value"], rows)
    }
}

/// Solves `A x = rhs` for tridiagonal `A` (Thomas algorithm). `lower[0]`
/// and `upper[n-1]` are ignored.
fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [f64]) {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    c[0] = upper[0] / beta;
    rhs[0] /= beta;
    for j in 1..n {
        beta = diag[j] - lower[j] * c[j - 1];
        c[j] = if j + 1 < n { upper[j] / beta } else { 0.0 };
        rhs[j] = (rhs[j] - lower[j] * rhs[j - 1]) / beta;
    }
    for j in (0..n - 1).rev() {
        rhs[j] -= c[j] * rhs[j + 1];
    }
}

/// `∫ₜˢ f''(u) (s-u)/(s-t) du`: the potential integrated along the mean of
/// a bridge started at level 1, used for the far-field edge and the
/// first step off the terminal time.
fn linear_mean_decay(b: &Boundary, t: f64, s: f64) -> Result<f64> {
    if t >= s {
        return Ok(0.0);
    }
    let rule = GaussLegendre::new(8);
    let mut acc = 0.0;
    let (xs, ws) = rule.on_interval(t, s);
    for (u, w) in xs.iter().zip(ws) {
        acc += w * b.eval_fpp(*u)? * (s - u) / (s - t);
    }
    Ok(acc)
}

fn check_boundary(b: &Boundary, s: f64) -> Result<()> {
    b.validate(s).into_result().map(|_| ())
}

/// Backward solution of the Feynman–Kac problem with `v(s, ·) = 1`.
///
/// Diffusion and potential are Crank–Nicolson. The drift is central and
/// Crank–Nicolson where the cell Péclet number `|b| Δa` is at most 1, and
/// upwinded and implicit elsewhere (near `a_min` and close to `t = s`). The row at `t = s - Δt` is seeded with
/// `exp(-a ∫ f''(u)(s-u)/Δt du)` instead of marching through the `1/(s-t)`
/// singularity. The far edge carries the same expression with `a = a_max`;
/// at `a_min` the drift `1/a` dominates and only the upwinded drift and
/// potential act.
pub fn solve_cauchy(b: &Boundary, s: f64, grid: &GridSpec) -> Result<Field2D> {
    check_boundary(b, s)?;
    let (t_grid, a_grid) = grid.build(b.a(), s)?;
    let (n_t, n_a) = (grid.n_t, grid.n_a);
    let dt = s / n_t as f64;
    let da = a_grid[1] - a_grid[0];
    let a_max = a_grid[n_a];
    let kappa = 0.5 / (da * da);

    let mut values = Array2::<f64>::zeros((n_t + 1, n_a + 1));
    values.row_mut(n_t).fill(1.0);
    let seed = linear_mean_decay(b, t_grid[n_t - 1], s)?;
    for (j, a) in a_grid.iter().enumerate() {
        values[[n_t - 1, j]] = (-a * seed).exp();
    }

    let mut lower = vec![0.0; n_a + 1];
    let mut diag = vec![0.0; n_a + 1];
    let mut upper = vec![0.0; n_a + 1];
    let mut rhs = vec![0.0; n_a + 1];
    let mut fpp_old = b.eval_fpp(t_grid[n_t - 1])?;
    for i in (0..n_t - 1).rev() {
        let t = t_grid[i];
        let fpp_new = b.eval_fpp(t)?;
        let tau = s - t;
        let tau_old = s - t_grid[i + 1];
        let old = values.row(i + 1).to_owned();

        let drift0 = (1.0 / a_grid[0] - a_grid[0] / tau).max(0.0);
        let pot_new = 0.5 * dt * fpp_new * a_grid[0];
        let pot_old = 0.5 * dt * fpp_old * a_grid[0];
        diag[0] = 1.0 + dt * drift0 / da + pot_new;
        upper[0] = -dt * drift0 / da;
        rhs[0] = old[0] * (1.0 - pot_old);

        for j in 1..n_a {
            let a = a_grid[j];
            let drift_new = 1.0 / a - a / tau;
            let drift_old = 1.0 / a - a / tau_old;
            let pot_new = 0.5 * dt * fpp_new * a;
            let pot_old = 0.5 * dt * fpp_old * a;
            let diffusion = 0.5 * dt * kappa * (old[j - 1] - 2.0 * old[j] + old[j + 1]);
            if drift_new.abs().max(drift_old.abs()) * da <= 1.0 {
                let c_new = 0.25 * dt * drift_new / da;
                let c_old = 0.25 * dt * drift_old / da;
                lower[j] = -0.5 * dt * kappa + c_new;
                upper[j] = -0.5 * dt * kappa - c_new;
                diag[j] = 1.0 + dt * kappa + pot_new;
                rhs[j] = old[j] + diffusion + c_old * (old[j + 1] - old[j - 1]) - pot_old * old[j];
            } else {
                let (bp, bm) = (drift_new.max(0.0), (-drift_new).max(0.0));
                lower[j] = -0.5 * dt * kappa - dt * bm / da;
                upper[j] = -0.5 * dt * kappa - dt * bp / da;
                diag[j] = 1.0 + dt * kappa + dt * (bp + bm) / da + pot_new;
                rhs[j] = old[j] + diffusion - pot_old * old[j];
            }
        }

        lower[n_a] = 0.0;
        diag[n_a] = 1.0;
        rhs[n_a] = (-a_max * linear_mean_decay(b, t, s)?).exp();

        solve_tridiagonal(&lower, &diag, &upper, &mut rhs);
        values.row_mut(i).assign(&ndarray::ArrayView1::from(&rhs[..]));
        fpp_old = fpp_new;
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("Cauchy solve produced non-finite values".into()));
    }
    Ok(Field2D { t_grid, a_grid, values, equation: Equation::Cauchy })
}

/// Backward Crank–Nicolson solution of `-w_t + f''(t) a w = ½ w_aa` from
/// `terminal_w` at `t = s`, with both edges held at their terminal values.
pub fn solve_schrodinger(b: &Boundary, s: f64, grid: &GridSpec, terminal_w: &[f64]) -> Result<Field2D> {
    check_boundary(b, s)?;
    let (t_grid, a_grid) = grid.build(b.a(), s)?;
    let (n_t, n_a) = (grid.n_t, grid.n_a);
    if terminal_w.len() != n_a + 1 {
        return Err(Error::Argument(format!(
            "terminal data has {} values, grid has {}",
            terminal_w.len(),
            n_a + 1
        )));
    }
    if terminal_w.iter().any(|v| !v.is_finite()) {
        return Err(Error::Argument("terminal data must be finite".into()));
    }
    let dt = s / n_t as f64;
    let da = a_grid[1] - a_grid[0];
    let kappa = 0.5 / (da * da);

    let mut values = Array2::<f64>::zeros((n_t + 1, n_a + 1));
    values.row_mut(n_t).assign(&ndarray::ArrayView1::from(terminal_w));

    let mut lower = vec![-0.5 * dt * kappa; n_a + 1];
    let mut diag = vec![0.0; n_a + 1];
    let mut upper = vec![-0.5 * dt * kappa; n_a + 1];
    let mut rhs = vec![0.0; n_a + 1];
    upper[0] = 0.0;
    lower[n_a] = 0.0;
    diag[0] = 1.0;
    diag[n_a] = 1.0;
    let mut fpp_old = b.eval_fpp(s)?;
    for i in (0..n_t).rev() {
        let fpp_new = b.eval_fpp(t_grid[i])?;
        let old = values.row(i + 1).to_owned();
        rhs[0] = terminal_w[0];
        rhs[n_a] = terminal_w[n_a];
        for j in 1..n_a {
            let a = a_grid[j];
            diag[j] = 1.0 + dt * kappa + 0.5 * dt * fpp_new * a;
            rhs[j] = old[j] + 0.5 * dt * kappa * (old[j - 1] - 2.0 * old[j] + old[j + 1])
                - 0.5 * dt * fpp_old * a * old[j];
        }
        solve_tridiagonal(&lower, &diag, &upper, &mut rhs);
        values.row_mut(i).assign(&ndarray::ArrayView1::from(&rhs[..]));
        fpp_old = fpp_new;
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical("Schrödinger solve produced non-finite values".into()));
    }
    Ok(Field2D { t_grid, a_grid, values, equation: Equation::Schrodinger })
}

/// `v(t, a) = w(t, a) / h(s - t, a)` on a grid with every `t < s`.
pub fn v_from_w(w: &Field2D, s: f64) -> Result<Field2D> {
    if let Some(t) = w.t_grid.iter().find(|t| **t >= s) {
        return Err(Error::Domain(format!("v = w/h needs t < s, grid contains t = {t}")));
    }
    let mut values = w.values.clone();
    for (i, t) in w.t_grid.iter().enumerate() {
        for (j, a) in w.a_grid.iter().enumerate() {
            values[[i, j]] /= level_density(s - t, *a)?;
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numerical(
            "w/h overflowed; h(s - t, a) underflows on this grid".into(),
        ));
    }
    Ok(Field2D {
        t_grid: w.t_grid.clone(),
        a_grid: w.a_grid.clone(),
        values,
        equation: Equation::Cauchy,
    })
}

/// Max over interior nodes of the centered-difference residual of the
/// field's governing equation, divided by `max |field|`. For heat fields the
/// time axis is `τ` and the equation is `ω_τ = ½ ω_xx`.
pub fn pde_residual(field: &Field2D, b: &Boundary, s: f64) -> Result<f64> {
    let (nt, na) = (field.t_grid.len(), field.a_grid.len());
    let v = &field.values;
    let mut worst: f64 = 0.0;
    for i in 1..nt.saturating_sub(1) {
        let t = field.t_grid[i];
        if field.equation == Equation::Cauchy && t >= s {
            continue;
        }
        let dt2 = field.t_grid[i + 1] - field.t_grid[i - 1];
        let fpp = match field.equation {
            Equation::Heat => 0.0,
            _ => b.eval_fpp(t)?,
        };
        for j in 1..na - 1 {
            let a = field.a_grid[j];
            let hp = field.a_grid[j + 1] - a;
            let hm = a - field.a_grid[j - 1];
            let c = v[[i, j]];
            let v_t = (v[[i + 1, j]] - v[[i - 1, j]]) / dt2;
            let v_a = (v[[i, j + 1]] - v[[i, j - 1]]) / (hp + hm);
            let v_aa = 2.0 * ((v[[i, j + 1]] - c) / hp - (c - v[[i, j - 1]]) / hm) / (hp + hm);
            let r = match field.equation {
                Equation::Cauchy => -v_t + fpp * a * c - 0.5 * v_aa - (1.0 / a - a / (s - t)) * v_a,
                Equation::Schrodinger => -v_t + fpp * a * c - 0.5 * v_aa,
                Equation::Heat => v_t - 0.5 * v_aa,
            };
            worst = worst.max(r.abs());
        }
    }
    let scale = field.max_abs();
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

/// Spectral weight `Π(y)` and its truncated trapezoid quadrature.
#[derive(Clone)]
pub struct FourierData {
    pub pi_fn: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub y_max: f64,
    pub n_y: usize,
}

impl fmt::Debug for FourierData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FourierData")
            .field("y_max", &self.y_max)
            .field("n_y", &self.n_y)
            .finish_non_exhaustive()
    }
}

impl Default for FourierData {
    fn default() -> Self {
        Self::gaussian()
    }
}

impl FourierData {
    pub fn new(pi_fn: impl Fn(f64) -> f64 + Send + Sync + 'static, y_max: f64, n_y: usize) -> Self {
        Self { pi_fn: Arc::new(pi_fn), y_max, n_y }
    }

    /// `Π(y) = exp(-y²/2)`.
    pub fn gaussian() -> Self {
        Self::new(|y| (-0.5 * y * y).exp(), 40.0, 2048)
    }

    /// `Π(y) = exp(-1/(1 - y²))` on `|y| < 1`, zero outside.
    pub fn bump() -> Self {
        Self::new(
            |y| if y.abs() < 1.0 { (-1.0 / (1.0 - y * y)).exp() } else { 0.0 },
            1.0,
            2048,
        )
    }

    fn trapezoid(&self, n: usize, tau: f64, x: f64) -> (f64, f64) {
        let h = 2.0 * self.y_max / n as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for m in 0..=n {
            let y = -self.y_max + h * m as f64;
            let w = if m == 0 || m == n { 0.5 } else { 1.0 };
            let amp = w * (self.pi_fn)(y) * (-0.5 * y * y * tau).exp();
            let (sin, cos) = (y * x).sin_cos();
            re += amp * cos;
            im += amp * sin;
        }
        let scale = h / (2.0 * PI);
        (re * scale, im * scale)
    }

    fn check(&self, tau: f64) -> Result<()> {
        if !(tau >= 0.0) || !tau.is_finite() {
            return Err(Error::Domain(format!("heat time must be nonnegative, got {tau}")));
        }
        if !(self.y_max > 0.0) || self.n_y < 2 {
            return Err(Error::Argument("Fourier quadrature needs y_max > 0 and n_y >= 2".into()));
        }
        Ok(())
    }
}

/// Real and imaginary parts of `(1/2π) ∫ Π(y) exp(-½y²τ + iyx) dy`.
pub fn heat_omega_complex(fd: &FourierData, tau: f64, x: f64) -> Result<(f64, f64)> {
    fd.check(tau)?;
    let coarse = fd.trapezoid(fd.n_y, tau, x);
    let fine = fd.trapezoid(2 * fd.n_y, tau, x);
    let change = (coarse.0 - fine.0).abs().max((coarse.1 - fine.1).abs());
    if change > FOURIER_TOL || !fine.0.is_finite() {
        return Err(Error::Numerical(format!(
            "Fourier quadrature not converged at tau={tau}, x={x}: doubling n_y changed it by {change:e}"
        )));
    }
    Ok(fine)
}

/// `ω(τ, x)`: the real part of the Fourier integral, a solution of
/// `ω_τ = ½ ω_xx`.
pub fn heat_omega(fd: &FourierData, tau: f64, x: f64) -> Result<f64> {
    Ok(heat_omega_complex(fd, tau, x)?.0)
}

/// `w(t, a) = exp(½∫ₜˢ (f')² du + a f'(t)) · ω(s - t, a + ∫ₜˢ f' du)`.
pub fn w_from_heat(b: &Boundary, fd: &FourierData, s: f64, t: f64, a: f64) -> Result<f64> {
    if !(t >= 0.0 && t <= s) {
        return Err(Error::Argument(format!("need 0 <= t <= s, got t={t}, s={s}")));
    }
    let weight = (0.5 * b.integral_fp_sq(t, s)? + a * b.eval_fp(t)?).exp();
    Ok(weight * heat_omega(fd, s - t, a + b.integral_fp(t, s)?)?)
}

/// Samples `ω` on a `(τ, x)` grid.
pub fn heat_field(fd: &FourierData, taus: &[f64], xs: &[f64]) -> Result<Field2D> {
    let mut values = Array2::zeros((taus.len(), xs.len()));
    for (i, tau) in taus.iter().enumerate() {
        for (j, x) in xs.iter().enumerate() {
            values[[i, j]] = heat_omega(fd, *tau, *x)?;
        }
    }
    Ok(Field2D { t_grid: taus.to_vec(), a_grid: xs.to_vec(), values, equation: Equation::Heat })
}
