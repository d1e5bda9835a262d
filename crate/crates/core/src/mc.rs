//! Monte Carlo accumulation with worker-count-independent reductions.

use rayon::prelude::*;
use serde::Serialize;

/// Paths per reduction chunk. Chunks are merged in index order.
const CHUNK: usize = 2048;

/// A Monte Carlo estimate: mean, standard error of the mean, sample count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub n_samples: usize,
}

impl Estimate {
    pub fn exact(value: f64, n_samples: usize) -> Self {
        Self { value, stderr: 0.0, n_samples }
    }

    /// Multiplies by a deterministic factor.
    pub fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            stderr: self.stderr * factor.abs(),
            n_samples: self.n_samples,
        }
    }

    /// |self - other| measured in combined standard errors.
    pub fn z_distance(&self, other: &Estimate) -> f64 {
        let se = (self.stderr.powi(2) + other.stderr.powi(2)).sqrt();
        (self.value - other.value).abs() / se
    }
}

/// Running mean and (co)variance of a vector-valued sample (Welford/Chan).
#[derive(Debug, Clone)]
pub struct Moments {
    dim: usize,
    full: bool,
    count: usize,
    mean: Vec<f64>,
    /// Upper triangle of the co-moment matrix when `full`, else the diagonal.
    m2: Vec<f64>,
    delta: Vec<f64>,
}

impl Moments {
    pub fn new(dim: usize, full_covariance: bool) -> Self {
        let m2_len = if full_covariance { dim * dim } else { dim };
        Self {
            dim,
            full: full_covariance,
            count: 0,
            mean: vec![0.0; dim],
            m2: vec![0.0; m2_len],
            delta: vec![0.0; dim],
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn push(&mut self, x: &[f64]) {
        debug_assert_eq!(x.len(), self.dim);
        self.count += 1;
        let n = self.count as f64;
        for j in 0..self.dim {
            self.delta[j] = x[j] - self.mean[j];
            self.mean[j] += self.delta[j] / n;
        }
        if self.full {
            for j in 0..self.dim {
                let dj = self.delta[j];
                let row = &mut self.m2[j * self.dim..(j + 1) * self.dim];
                for k in j..self.dim {
                    row[k] += dj * (x[k] - self.mean[k]);
                }
            }
        } else {
            for j in 0..self.dim {
                self.m2[j] += self.delta[j] * (x[j] - self.mean[j]);
            }
        }
    }

    pub fn merge(mut self, other: &Moments) -> Self {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other.clone();
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        let delta: Vec<f64> = (0..self.dim).map(|j| other.mean[j] - self.mean[j]).collect();
        for j in 0..self.dim {
            self.mean[j] += delta[j] * nb / n;
        }
        let w = na * nb / n;
        if self.full {
            for j in 0..self.dim {
                for k in j..self.dim {
                    let idx = j * self.dim + k;
                    self.m2[idx] += other.m2[idx] + delta[j] * delta[k] * w;
                }
            }
        } else {
            for j in 0..self.dim {
                self.m2[j] += other.m2[j] + delta[j] * delta[j] * w;
            }
        }
        self.count += other.count;
        self
    }

    fn comoment(&self, j: usize, k: usize) -> f64 {
        if self.full {
            let (lo, hi) = if j <= k { (j, k) } else { (k, j) };
            self.m2[lo * self.dim + hi]
        } else {
            assert_eq!(j, k, "off-diagonal moments need full covariance tracking");
            self.m2[j]
        }
    }

    pub fn variance(&self, j: usize) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.comoment(j, j) / (self.count - 1) as f64).max(0.0)
        }
    }

    pub fn estimate(&self, j: usize) -> Estimate {
        Estimate {
            value: self.mean[j],
            stderr: (self.variance(j) / self.count.max(1) as f64).sqrt(),
            n_samples: self.count,
        }
    }

    /// Estimate of `sum_j weights[j] * X_j` with the full covariance.
    pub fn linear_estimate(&self, weights: &[f64]) -> Estimate {
        assert!(self.full, "linear combinations need full covariance tracking");
        let value = weights.iter().zip(&self.mean).map(|(w, m)| w * m).sum();
        let mut var = 0.0;
        if self.count >= 2 {
            for j in 0..self.dim {
                if weights[j] == 0.0 {
                    continue;
                }
                for k in 0..self.dim {
                    var += weights[j] * weights[k] * self.comoment(j, k);
                }
            }
            var /= (self.count - 1) as f64;
        }
        Estimate {
            value,
            stderr: (var.max(0.0) / self.count.max(1) as f64).sqrt(),
            n_samples: self.count,
        }
    }
}

/// Runs `n_paths` independent path computations and accumulates their
/// `dim`-vector outputs.
///
/// `init` builds per-chunk scratch state; `path` fills the output slice for
/// one path index. Chunks are reduced pairwise in a fixed order, so the
/// result is identical for any rayon pool size.
pub fn accumulate<S, I, F>(n_paths: usize, dim: usize, full_covariance: bool, init: I, path: F) -> Moments
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, u64, &mut [f64]) + Sync,
{
    let n_chunks = n_paths.div_ceil(CHUNK);
    let chunks: Vec<Moments> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut state = init();
            let mut out = vec![0.0; dim];
            let mut moments = Moments::new(dim, full_covariance);
            let end = ((c + 1) * CHUNK).min(n_paths);
            for i in c * CHUNK..end {
                path(&mut state, i as u64, &mut out);
                moments.push(&out);
            }
            moments
        })
        .collect();
    pairwise_merge(chunks, dim, full_covariance)
}

fn pairwise_merge(mut parts: Vec<Moments>, dim: usize, full: bool) -> Moments {
    if parts.is_empty() {
        return Moments::new(dim, full);
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut iter = parts.into_iter();
        while let Some(a) = iter.next() {
            match iter.next() {
                Some(b) => next.push(a.merge(&b)),
                None => next.push(a),
            }
        }
        parts = next;
    }
    parts.pop().expect("one part left")
}
