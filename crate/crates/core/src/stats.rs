//! Small sample statistics used by the verification routines.

/// Two-sample Kolmogorov–Smirnov distance `sup |F_x - F_y|`.
pub fn ks_two_sample(x: &[f64], y: &[f64]) -> f64 {
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (nx, ny) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / nx - j as f64 / ny).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_have_zero_distance() {
        let x = [0.3, 0.1, 0.7, 0.7];
        assert_eq!(ks_two_sample(&x, &x), 0.0);
    }

    #[test]
    fn disjoint_samples_have_unit_distance() {
        assert_eq!(ks_two_sample(&[0.0, 1.0], &[2.0, 3.0, 4.0]), 1.0);
    }

    #[test]
    fn shifted_uniform_grid() {
        let x: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let y: Vec<f64> = (0..100).map(|i| i as f64 + 10.5).collect();
        assert!((ks_two_sample(&x, &y) - 0.11).abs() < 1e-12);
    }
}
