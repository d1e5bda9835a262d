//! Gauss–Legendre rules and interpolatory partial integrals.
//!
//! Nodes are computed by Newton iteration on the three-term Legendre
//! recurrence, which is accurate to a few ulps for the orders used here
//! (up to a few hundred points).

use std::f64::consts::PI;

/// A Gauss–Legendre rule on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Evaluates P_n(x) and P_n'(x).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Values P_0(x), ..., P_n(x).
fn legendre_all(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n >= 1 {
        out.push(x);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * out[k - 1] - (kf - 1.0) * out[k - 2]) / kf;
        out.push(next);
    }
    out
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, ascending order after mirroring.
            let mut x = -(PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            weights[i] = w;
            nodes[n - 1 - i] = -x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto [lo, hi].
    pub fn on_interval(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let xs = self.nodes.iter().map(|x| mid + half * x).collect();
        let ws = self.weights.iter().map(|w| half * w).collect();
        (xs, ws)
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    /// Weights `c_j` such that `sum_j c_j g(x_j)` equals the integral over
    /// [-1, z] of the degree n-1 polynomial interpolating g at the nodes.
    ///
    /// At z = 1 these coincide with the ordinary quadrature weights.
    pub fn partial_weights(&self, z: f64) -> Vec<f64> {
        let n = self.len();
        let z = z.clamp(-1.0, 1.0);
        // Integral of P_k over [-1, z]: (P_{k+1}(z) - P_{k-1}(z)) / (2k+1), and z + 1 for k = 0.
        let pz = legendre_all(n, z);
        let mut integrals = Vec::with_capacity(n);
        integrals.push(z + 1.0);
        for k in 1..n {
            integrals.push((pz[k + 1] - pz[k - 1]) / (2.0 * k as f64 + 1.0));
        }
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| {
                let px = legendre_all(n - 1, x);
                w * (0..n)
                    .map(|k| 0.5 * (2.0 * k as f64 + 1.0) * px[k] * integrals[k])
                    .sum::<f64>()
            })
            .collect()
    }
}

/// Adaptive Simpson integration, for cheap closed-form integrands.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let fa = f(lo);
    let fb = f(hi);
    let m = 0.5 * (lo + hi);
    let fm = f(m);
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, lo, hi, fa, fm, fb, whole, tol, 50)
}

/// Panel edges for composite integration of a first-passage density over
/// `(0, t]`: split at `mode` and grow geometrically (×10) beyond it.
pub fn density_panels(t: f64, mode: f64) -> Vec<f64> {
    let mut edges = vec![0.0];
    if !(mode > 0.0) || mode >= t {
        edges.push(t);
        return edges;
    }
    let mut e = mode;
    while e < t {
        edges.push(e);
        e *= 10.0;
    }
    edges.push(t);
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // Degree 15 is the exactness limit for 8 points.
        let got = rule.integrate(0.0, 2.0, |x| x.powi(15) + 3.0 * x.powi(4));
        let want = 2f64.powi(16) / 16.0 + 3.0 * 2f64.powi(5) / 5.0;
        assert!((got - want).abs() / want < 1e-14);
    }

    #[test]
    fn weights_sum_to_two() {
        for n in [1, 2, 5, 16, 32, 64] {
            let rule = GaussLegendre::new(n);
            let s: f64 = rule.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn partial_weights_match_full_rule_at_right_end() {
        let rule = GaussLegendre::new(12);
        let pw = rule.partial_weights(1.0);
        for (a, b) in pw.iter().zip(&rule.weights) {
            assert!((a - b).abs() < 1e-13);
        }
        let zero = rule.partial_weights(-1.0);
        assert!(zero.iter().all(|w| w.abs() < 1e-14));
    }

    #[test]
    fn partial_weights_integrate_cubic() {
        let rule = GaussLegendre::new(6);
        let z = 0.3;
        let pw = rule.partial_weights(z);
        let got: f64 = rule.nodes.iter().zip(&pw).map(|(x, w)| w * x.powi(3)).sum();
        let want = (z.powi(4) - 1.0) / 4.0;
        assert!((got - want).abs() < 1e-14);
    }

    #[test]
    fn panels_split_at_mode() {
        assert_eq!(density_panels(3.0, 1.0 / 3.0), vec![0.0, 1.0 / 3.0, 3.0]);
        assert_eq!(density_panels(0.1, 1.0 / 3.0), vec![0.0, 0.1]);
        assert_eq!(density_panels(50.0, 1.0), vec![0.0, 1.0, 10.0, 50.0]);
    }

    #[test]
    fn simpson_gaussian() {
        let got = adaptive_simpson(&|x: f64| (-0.5 * x * x).exp(), -10.0, 10.0, 1e-13);
        assert!((got - (2.0 * PI).sqrt()).abs() < 1e-10);
    }
}
