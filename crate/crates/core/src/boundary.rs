//! Moving boundaries `f(t) = a + ∫₀ᵗ f'(u) du` and the fixed-level
//! first-passage density.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of grid points used by [`Boundary::validate`].
pub const VALIDATION_POINTS: usize = 1024;

/// Threshold under which f'' counts as identically zero.
pub const LINEAR_TOL: f64 = 1e-14;

const MAX_DEGREE: usize = 4;

/// Boundary description as it appears in configuration files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BoundarySpec {
    /// `f(t) = c0 + c1 t + ... + c4 t^4`.
    Polynomial { coeffs: Vec<f64> },
    /// Nodal values of f' and f'' with linear interpolation between nodes.
    Tabulated {
        a: f64,
        times: Vec<f64>,
        fp: Vec<f64>,
        fpp: Vec<f64>,
    },
}

/// Piecewise-linear table of f' and f''. The first node is at t = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    times: Vec<f64>,
    fp: Vec<f64>,
    fpp: Vec<f64>,
    /// Running integral of f' at each node.
    cum_fp: Vec<f64>,
    /// Running integral of (f')² at each node.
    cum_fp_sq: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryKind {
    Polynomial(Vec<f64>),
    Tabulated(Table),
}

/// A moving boundary with start level `a = f(0)`.
///
/// Immutable once built; every evaluator is a pure function of its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary {
    a: f64,
    kind: BoundaryKind,
}

/// Outcome of [`Boundary::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    /// f'' vanishes on the whole horizon (linear boundary).
    pub degenerate_linear: bool,
    pub reasons: Vec<String>,
}

impl ValidationReport {
    pub fn into_result(self) -> Result<Self> {
        if self.passed {
            Ok(self)
        } else {
            Err(Error::Validation(self.reasons.join("; ")))
        }
    }
}

fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * c)
        .collect()
}

fn product(p: &[f64], q: &[f64]) -> Vec<f64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Antiderivative vanishing at 0.
fn antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    out.push(0.0);
    out.extend(coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)));
    out
}

impl Table {
    fn new(times: Vec<f64>, fp: Vec<f64>, fpp: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::Argument("tabulated boundary needs at least two nodes".into()));
        }
        if fp.len() != times.len() || fpp.len() != times.len() {
            return Err(Error::Argument(format!(
                "tabulated boundary arrays differ in length: times {}, fp {}, fpp {}",
                times.len(),
                fp.len(),
                fpp.len()
            )));
        }
        if times[0] != 0.0 {
            return Err(Error::Argument("tabulated boundary must start at t = 0".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("tabulated times must be strictly increasing".into()));
        }
        if times.iter().chain(&fp).chain(&fpp).any(|x| !x.is_finite()) {
            return Err(Error::Argument("tabulated boundary contains non-finite values".into()));
        }
        let mut cum_fp = vec![0.0; times.len()];
        let mut cum_fp_sq = vec![0.0; times.len()];
        for i in 1..times.len() {
            let h = times[i] - times[i - 1];
            let (p0, p1) = (fp[i - 1], fp[i]);
            cum_fp[i] = cum_fp[i - 1] + 0.5 * h * (p0 + p1);
            cum_fp_sq[i] = cum_fp_sq[i - 1] + h * (p0 * p0 + p0 * p1 + p1 * p1) / 3.0;
        }
        Ok(Self { times, fp, fpp, cum_fp, cum_fp_sq })
    }

    fn horizon(&self) -> f64 {
        *self.times.last().expect("non-empty table")
    }

    /// Segment index `i` with `times[i] <= t <= times[i+1]`.
    fn segment(&self, t: f64) -> usize {
        let idx = self.times.partition_point(|&x| x <= t);
        idx.saturating_sub(1).min(self.times.len() - 2)
    }

    fn lerp(&self, values: &[f64], t: f64) -> f64 {
        let i = self.segment(t);
        let w = (t - self.times[i]) / (self.times[i + 1] - self.times[i]);
        values[i] + w * (values[i + 1] - values[i])
    }

    /// ∫₀ᵗ f' and ∫₀ᵗ (f')², exact for the piecewise-linear f'.
    fn cumulative(&self, t: f64) -> (f64, f64) {
        let i = self.segment(t);
        let h = t - self.times[i];
        let p0 = self.fp[i];
        let p1 = self.lerp(&self.fp, t);
        (
            self.cum_fp[i] + 0.5 * h * (p0 + p1),
            self.cum_fp_sq[i] + h * (p0 * p0 + p0 * p1 + p1 * p1) / 3.0,
        )
    }
}

impl Boundary {
    /// Polynomial boundary from coefficients `c0, c1, ...` (degree ≤ 4).
    pub fn polynomial(coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() || coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Argument(format!(
                "polynomial boundary needs 1 to {} coefficients, got {}",
                MAX_DEGREE + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Argument("polynomial coefficients must be finite".into()));
        }
        Ok(Self {
            a: coeffs[0],
            kind: BoundaryKind::Polynomial(coeffs.to_vec()),
        })
    }

    /// Tabulated boundary from nodal f' and f''.
    pub fn tabulated(a: f64, times: Vec<f64>, fp: Vec<f64>, fpp: Vec<f64>) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Argument("boundary start level must be finite".into()));
        }
        Ok(Self {
            a,
            kind: BoundaryKind::Tabulated(Table::new(times, fp, fpp)?),
        })
    }

    pub fn from_spec(spec: &BoundarySpec) -> Result<Self> {
        match spec {
            BoundarySpec::Polynomial { coeffs } => Self::polynomial(coeffs),
            BoundarySpec::Tabulated { a, times, fp, fpp } => {
                Self::tabulated(*a, times.clone(), fp.clone(), fpp.clone())
            }
        }
    }

    pub fn to_spec(&self) -> BoundarySpec {
        match &self.kind {
            BoundaryKind::Polynomial(c) => BoundarySpec::Polynomial { coeffs: c.clone() },
            BoundaryKind::Tabulated(tab) => BoundarySpec::Tabulated {
                a: self.a,
                times: tab.times.clone(),
                fp: tab.fp.clone(),
                fpp: tab.fpp.clone(),
            },
        }
    }

    /// Same `f'` with the start level replaced by `a`.
    pub fn with_start(&self, a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Argument("boundary start level must be finite".into()));
        }
        let mut out = self.clone();
        out.a = a;
        if let BoundaryKind::Polynomial(c) = &mut out.kind {
            c[0] = a;
        }
        Ok(out)
    }

    /// Start level `f(0)`.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn kind(&self) -> &BoundaryKind {
        &self.kind
    }

    /// Largest admissible time; infinite for polynomials.
    pub fn horizon(&self) -> f64 {
        match &self.kind {
            BoundaryKind::Polynomial(_) => f64::INFINITY,
            BoundaryKind::Tabulated(tab) => tab.horizon(),
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain(format!("time {t} is not a finite nonnegative number")));
        }
        if t > self.horizon() {
            return Err(Error::Domain(format!(
                "time {t} lies beyond the tabulated horizon {}",
                self.horizon()
            )));
        }
        Ok(())
    }

    pub fn eval_f(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        if t == 0.0 {
            return Ok(self.a);
        }
        Ok(match &self.kind {
            BoundaryKind::Polynomial(c) => horner(c, t),
            BoundaryKind::Tabulated(tab) => self.a + tab.cumulative(t).0,
        })
    }

    pub fn eval_fp(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match &self.kind {
            BoundaryKind::Polynomial(c) => horner(&derivative(c), t),
            BoundaryKind::Tabulated(tab) => tab.lerp(&tab.fp, t),
        })
    }

    pub fn eval_fpp(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(match &self.kind {
            BoundaryKind::Polynomial(c) => horner(&derivative(&derivative(c)), t),
            BoundaryKind::Tabulated(tab) => tab.lerp(&tab.fpp, t),
        })
    }

    fn check_interval(&self, t0: f64, t1: f64) -> Result<()> {
        if t0 > t1 {
            return Err(Error::Argument(format!("integration bounds reversed: {t0} > {t1}")));
        }
        self.check_time(t0)?;
        self.check_time(t1)
    }

    /// ∫_{t0}^{t1} f'(u) du.
    pub fn integral_fp(&self, t0: f64, t1: f64) -> Result<f64> {
        self.check_interval(t0, t1)?;
        Ok(match &self.kind {
            BoundaryKind::Polynomial(c) => {
                let d = derivative(c);
                let anti = antiderivative(&d);
                horner(&anti, t1) - horner(&anti, t0)
            }
            BoundaryKind::Tabulated(tab) => tab.cumulative(t1).0 - tab.cumulative(t0).0,
        })
    }

    /// ∫_{t0}^{t1} (f'(u))² du.
    pub fn integral_fp_sq(&self, t0: f64, t1: f64) -> Result<f64> {
        self.check_interval(t0, t1)?;
        Ok(match &self.kind {
            BoundaryKind::Polynomial(c) => {
                let d = derivative(c);
                let anti = antiderivative(&product(&d, &d));
                horner(&anti, t1) - horner(&anti, t0)
            }
            BoundaryKind::Tabulated(tab) => tab.cumulative(t1).1 - tab.cumulative(t0).1,
        })
    }

    /// True when f'' vanishes identically.
    pub fn is_linear(&self) -> bool {
        match &self.kind {
            BoundaryKind::Polynomial(c) => c.iter().skip(2).all(|x| x.abs() <= LINEAR_TOL),
            BoundaryKind::Tabulated(tab) => tab.fpp.iter().all(|x| x.abs() <= LINEAR_TOL),
        }
    }

    /// Checks convexity, integrability and a > 0 on `[0, horizon]`.
    pub fn validate(&self, horizon: f64) -> ValidationReport {
        let mut reasons = Vec::new();
        let mut degenerate_linear = false;
        if !(horizon > 0.0) || !horizon.is_finite() {
            reasons.push(format!("horizon must be positive and finite, got {horizon}"));
            return ValidationReport { passed: false, degenerate_linear, reasons };
        }
        if horizon > self.horizon() {
            reasons.push(format!(
                "horizon {horizon} exceeds the tabulated range {}",
                self.horizon()
            ));
            return ValidationReport { passed: false, degenerate_linear, reasons };
        }
        if self.a == 0.0 {
            reasons.push("a = 0: the boundary starts at the process".into());
        } else if self.a < 0.0 {
            reasons.push(format!("a = {} < 0: the boundary must start above the process", self.a));
        }

        let mut fpp_values = Vec::with_capacity(VALIDATION_POINTS);
        for k in 0..VALIDATION_POINTS {
            let t = horizon * k as f64 / (VALIDATION_POINTS - 1) as f64;
            // t is inside the horizon by construction.
            fpp_values.push(self.eval_fpp(t).unwrap_or(f64::NAN));
        }
        if fpp_values.iter().all(|v| v.abs() <= LINEAR_TOL) {
            degenerate_linear = true;
        } else if let Some(k) = fpp_values.iter().position(|v| !(*v > 0.0)) {
            let t = horizon * k as f64 / (VALIDATION_POINTS - 1) as f64;
            reasons.push(format!("f″ ≤ 0 (f″({t}) = {})", fpp_values[k]));
        }

        match self.integral_fp_sq(0.0, horizon) {
            Ok(v) if v.is_finite() => {}
            Ok(v) => reasons.push(format!("∫(f′)² is not finite ({v})")),
            Err(e) => reasons.push(format!("∫(f′)² could not be evaluated: {e}")),
        }

        if let BoundaryKind::Tabulated(tab) = &self.kind {
            // f' increments must agree with the trapezoid integral of f''.
            for i in 1..tab.times.len() {
                let h = tab.times[i] - tab.times[i - 1];
                let from_fpp = 0.5 * h * (tab.fpp[i - 1] + tab.fpp[i]);
                let dfp = tab.fp[i] - tab.fp[i - 1];
                let scale = dfp.abs().max(from_fpp.abs()).max(1e-12);
                if (dfp - from_fpp).abs() > 1e-6 * scale.max(1.0) {
                    reasons.push(format!(
                        "tabulated f′ and f″ disagree on [{}, {}]",
                        tab.times[i - 1],
                        tab.times[i]
                    ));
                    break;
                }
            }
        }

        ValidationReport { passed: reasons.is_empty(), degenerate_linear, reasons }
    }
}

/// Density of the first time standard Brownian motion hits the fixed level `a`:
/// `|a| / sqrt(2π s³) · exp(-a² / (2s))`.
pub fn level_density(s: f64, a: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("level density needs s > 0, got {s}")));
    }
    Ok(a.abs() / (2.0 * PI * s * s * s).sqrt() * (-a * a / (2.0 * s)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::GaussLegendre;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn quadratic() -> Boundary {
        Boundary::polynomial(&[1.0, 0.0, 0.1]).unwrap()
    }

    fn linear() -> Boundary {
        Boundary::polynomial(&[1.0, 0.5]).unwrap()
    }

    #[test]
    fn polynomial_evaluation() {
        assert_eq!(linear().eval_f(2.0).unwrap(), 2.0);
        assert_relative_eq!(quadratic().eval_f(2.0).unwrap(), 1.4, max_relative = 1e-15);
        assert_eq!(quadratic().eval_f(0.0).unwrap(), 1.0);
        assert_relative_eq!(quadratic().eval_fpp(5.0).unwrap(), 0.2);
        assert_eq!(linear().eval_fpp(3.7).unwrap(), 0.0);
        assert_eq!(linear().eval_fp(11.0).unwrap(), 0.5);
    }

    #[test]
    fn polynomial_integrals() {
        assert_relative_eq!(linear().integral_fp_sq(0.0, 1.0).unwrap(), 0.25);
        assert_relative_eq!(linear().integral_fp(0.0, 2.0).unwrap(), 1.0);
        assert_relative_eq!(
            quadratic().integral_fp_sq(0.0, 1.0).unwrap(),
            0.04 / 3.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn reversed_bounds_rejected() {
        assert!(matches!(linear().integral_fp(2.0, 1.0), Err(Error::Argument(_))));
        assert!(matches!(linear().integral_fp_sq(2.0, 1.0), Err(Error::Argument(_))));
    }

    #[test]
    fn negative_time_rejected() {
        assert!(matches!(quadratic().eval_f(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn degree_limit() {
        assert!(Boundary::polynomial(&[1.0, 0.0, 0.1, 0.0, 0.01]).is_ok());
        assert!(Boundary::polynomial(&[1.0, 0.0, 0.1, 0.0, 0.01, 0.0]).is_err());
        assert!(Boundary::polynomial(&[]).is_err());
    }

    #[test]
    fn level_density_values() {
        assert_relative_eq!(
            level_density(1.0, 1.0).unwrap(),
            (-0.5f64).exp() / (2.0 * PI).sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(level_density(1.0, 1.0).unwrap(), 0.241970724519143, max_relative = 1e-12);
        assert_eq!(level_density(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(level_density(1.0, -1.0).unwrap(), level_density(1.0, 1.0).unwrap());
        assert!(matches!(level_density(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(level_density(-2.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn with_start_keeps_the_slope_profile() {
        let b = Boundary::polynomial(&[1.0, 0.25, 0.2]).unwrap().with_start(2.0).unwrap();
        assert_eq!(b.a(), 2.0);
        assert_eq!(b.eval_f(0.0).unwrap(), 2.0);
        assert_eq!(b.eval_fp(1.0).unwrap(), 0.65);
        assert!(b.with_start(f64::NAN).is_err());
    }

    #[test]
    fn level_density_has_unit_mass() {
        // Composite Gauss-Legendre over (0, 200], finer panels near the origin,
        // plus the closed-form tail P(T > 200) = erf(1/sqrt(400)).
        let rule = GaussLegendre::new(32);
        let edges = [0.0, 0.05, 0.2, 1.0, 5.0, 20.0, 60.0, 200.0];
        let mass: f64 = edges
            .windows(2)
            .map(|w| rule.integrate(w[0], w[1], |s| level_density(s, 1.0).unwrap()))
            .sum();
        let tail = statrs::function::erf::erf(1.0 / 400f64.sqrt());
        assert!((mass - (1.0 - tail)).abs() < 1e-10, "mass {mass}");
        assert!(mass + tail >= 0.999);
        assert!((mass + tail - 1.0).abs() < 1e-10);
    }

    #[test]
    fn level_density_mode_is_a_squared_over_three() {
        for a in [0.5, 1.0, 2.0] {
            let mode = a * a / 3.0;
            let h = 1e-5 * mode;
            let slope = (level_density(mode + h, a).unwrap() - level_density(mode - h, a).unwrap()) / (2.0 * h);
            let scale = level_density(mode, a).unwrap() / mode;
            assert!(slope.abs() < 1e-8 * scale, "a={a} slope={slope}");
            assert!(level_density(mode, a).unwrap() > level_density(mode * 1.1, a).unwrap());
            assert!(level_density(mode, a).unwrap() > level_density(mode * 0.9, a).unwrap());
        }
    }

    #[test]
    fn validation_outcomes() {
        let ok = quadratic().validate(2.0);
        assert!(ok.passed && !ok.degenerate_linear, "{ok:?}");

        let concave = Boundary::polynomial(&[1.0, 0.0, -1.0]).unwrap().validate(1.0);
        assert!(!concave.passed);
        assert!(concave.reasons.iter().any(|r| r.contains("f″ ≤ 0")));

        let lin = linear().validate(2.0);
        assert!(lin.passed && lin.degenerate_linear);

        let zero = Boundary::polynomial(&[0.0, 0.0, 0.1]).unwrap().validate(1.0);
        assert!(!zero.passed);
        assert!(zero.clone().into_result().is_err());
    }

    fn tabulated_quadratic() -> Boundary {
        // f = 1 + 0.1 t² sampled on [0, 3].
        let times: Vec<f64> = (0..=60).map(|k| k as f64 * 0.05).collect();
        let fp = times.iter().map(|t| 0.2 * t).collect();
        let fpp = vec![0.2; times.len()];
        Boundary::tabulated(1.0, times, fp, fpp).unwrap()
    }

    #[test]
    fn tabulated_matches_polynomial() {
        let tab = tabulated_quadratic();
        let poly = quadratic();
        for t in [0.0, 0.01, 0.5, 1.234, 2.999, 3.0] {
            assert_relative_eq!(tab.eval_f(t).unwrap(), poly.eval_f(t).unwrap(), max_relative = 1e-12);
            assert_relative_eq!(tab.eval_fp(t).unwrap(), poly.eval_fp(t).unwrap(), epsilon = 1e-14);
            assert_relative_eq!(tab.eval_fpp(t).unwrap(), 0.2, max_relative = 1e-14);
            assert_relative_eq!(
                tab.integral_fp_sq(0.0, t).unwrap(),
                poly.integral_fp_sq(0.0, t).unwrap(),
                max_relative = 1e-10,
                epsilon = 1e-15
            );
        }
        assert!(tab.validate(3.0).passed);
        assert!(matches!(tab.eval_f(3.5), Err(Error::Domain(_))));
        assert!(!tab.validate(4.0).passed);
    }

    #[test]
    fn tabulated_inconsistency_reported() {
        let times = vec![0.0, 1.0, 2.0];
        let b = Boundary::tabulated(1.0, times, vec![0.0, 1.0, 2.0], vec![0.1, 0.1, 0.1]).unwrap();
        let report = b.validate(2.0);
        assert!(!report.passed);
    }

    #[test]
    fn tabulated_construction_errors() {
        assert!(Boundary::tabulated(1.0, vec![0.0], vec![0.0], vec![0.0]).is_err());
        assert!(Boundary::tabulated(1.0, vec![0.0, 1.0], vec![0.0], vec![0.0, 0.0]).is_err());
        assert!(Boundary::tabulated(1.0, vec![0.5, 1.0], vec![0.0; 2], vec![0.0; 2]).is_err());
        assert!(Boundary::tabulated(1.0, vec![0.0, 0.0], vec![0.0; 2], vec![0.0; 2]).is_err());
    }

    #[test]
    fn spec_round_trip_through_json() {
        let json = r#"{"kind":"polynomial","coeffs":[1.0,0.25,0.2]}"#;
        let spec: BoundarySpec = serde_json::from_str(json).unwrap();
        let b = Boundary::from_spec(&spec).unwrap();
        assert_eq!(b.to_spec(), spec);
        let bad = r#"{"kind":"polynomial","coeffs":[1.0],"extra":1}"#;
        assert!(serde_json::from_str::<BoundarySpec>(bad).is_err());
    }

    prop_compose! {
        fn convex_poly()(c0 in 0.1f64..3.0, c1 in -1.0f64..1.0, c2 in 0.01f64..0.5,
                         c3 in 0.0f64..0.05, c4 in 0.0f64..0.01) -> Vec<f64> {
            vec![c0, c1, c2, c3, c4]
        }
    }

    proptest! {
        #[test]
        fn finite_difference_derivatives(coeffs in convex_poly(), t in 0.0f64..3.0) {
            let b = Boundary::polynomial(&coeffs).unwrap();
            let h = 1e-5;
            let lo = (t - h).max(0.0);
            let hi = t + h;
            let df = (b.eval_f(hi).unwrap() - b.eval_f(lo).unwrap()) / (hi - lo);
            let dfp = (b.eval_fp(hi).unwrap() - b.eval_fp(lo).unwrap()) / (hi - lo);
            prop_assert!((df - b.eval_fp(t).unwrap()).abs() < 1e-6);
            prop_assert!((dfp - b.eval_fpp(t).unwrap()).abs() < 1e-6);
        }

        #[test]
        fn integrals_are_additive(coeffs in convex_poly(), t0 in 0.0f64..1.0, d1 in 0.0f64..1.0, d2 in 0.0f64..1.0) {
            let b = Boundary::polynomial(&coeffs).unwrap();
            let (t1, t2) = (t0 + d1, t0 + d1 + d2);
            let whole = b.integral_fp(t0, t2).unwrap();
            let split = b.integral_fp(t0, t1).unwrap() + b.integral_fp(t1, t2).unwrap();
            prop_assert!((whole - split).abs() <= 1e-12 * whole.abs().max(1e-3));
            let whole = b.integral_fp_sq(t0, t2).unwrap();
            let split = b.integral_fp_sq(t0, t1).unwrap() + b.integral_fp_sq(t1, t2).unwrap();
            prop_assert!((whole - split).abs() <= 1e-12 * whole.abs().max(1e-3));
        }

        #[test]
        fn integral_fp_matches_f_increment(coeffs in convex_poly(), t in 0.0f64..3.0) {
            let b = Boundary::polynomial(&coeffs).unwrap();
            let inc = b.eval_f(t).unwrap() - b.a();
            prop_assert!((b.integral_fp(0.0, t).unwrap() - inc).abs() < 1e-12 * (1.0 + inc.abs()));
        }

        #[test]
        fn level_density_nonnegative(s in 1e-3f64..50.0, a in -5.0f64..5.0) {
            prop_assert!(level_density(s, a).unwrap() >= 0.0);
        }
    }
}
