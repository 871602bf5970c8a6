use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::polynomials::PolyRing;

/// Monte Carlo estimate of a mean.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub shards: u32,
    /// Draws discarded because a root form vanished in floating point.
    pub rejected: u64,
}

/// Sampling parameters shared by all estimators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McParams {
    pub samples: u64,
    pub seed: u64,
    pub shards: u32,
}

impl McParams {
    pub fn new(samples: u64, seed: u64, shards: u32) -> Self {
        McParams { samples, seed, shards: shards.max(1) }
    }
}

/// Float view of a root system: `u = L z` with `L Lᵀ = G`, so that
/// `u_j = (α_j, x)` for a standard Gaussian `x`, and `(α, x) = Σ c_j u_j`.
#[derive(Clone, Debug)]
pub struct GaussianSampler {
    chol: Vec<Vec<f64>>,
    roots: Vec<Vec<f64>>,
}

impl GaussianSampler {
    pub fn new(ring: &PolyRing) -> Self {
        let r = ring.rank();
        let g: Vec<Vec<f64>> = (0..r).map(|i| (0..r).map(|j| ring.gram().get(i, j).to_f64()).collect()).collect();
        let mut l = vec![vec![0.0; r]; r];
        for i in 0..r {
            for j in 0..=i {
                let s: f64 = (0..j).map(|p| l[i][p] * l[j][p]).sum();
                if i == j {
                    l[i][i] = (g[i][i] - s).sqrt();
                } else {
                    l[i][j] = (g[i][j] - s) / l[j][j];
                }
            }
        }
        let roots = (0..ring.num_roots()).map(|a| ring.root_form(a).coeffs.iter().map(|c| c.to_f64()).collect()).collect();
        GaussianSampler { chol: l, roots }
    }

    pub fn rank(&self) -> usize {
        self.chol.len()
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Draws `u` and the root values `(α, x)`. Returns `false` if some root
    /// value is exactly zero.
    fn draw<R: Rng>(&self, rng: &mut R, z: &mut [f64], u: &mut [f64], vals: &mut [f64]) -> bool {
        for zi in z.iter_mut() {
            *zi = rng.sample(StandardNormal);
        }
        for (i, row) in self.chol.iter().enumerate() {
            u[i] = row[..=i].iter().zip(&z[..=i]).map(|(a, b)| a * b).sum();
        }
        for (v, c) in vals.iter_mut().zip(&self.roots) {
            *v = c.iter().zip(u.iter()).map(|(a, b)| a * b).sum();
            if *v == 0.0 {
                return false;
            }
        }
        true
    }
}

/// Running means and co-moments of a vector of outputs.
#[derive(Clone, Debug)]
pub struct Moments {
    pub n: u64,
    pub mean: Vec<f64>,
    /// `Σ (x_i - mean_i)(x_j - mean_j)`.
    pub comoment: Vec<Vec<f64>>,
    pub rejected: u64,
}

impl Moments {
    fn new(dim: usize) -> Self {
        Moments { n: 0, mean: vec![0.0; dim], comoment: vec![vec![0.0; dim]; dim], rejected: 0 }
    }

    fn push(&mut self, x: &[f64], delta: &mut [f64]) {
        self.n += 1;
        let n = self.n as f64;
        for (d, (xi, mi)) in delta.iter_mut().zip(x.iter().zip(&self.mean)) {
            *d = xi - mi;
        }
        for (m, d) in self.mean.iter_mut().zip(delta.iter()) {
            *m += d / n;
        }
        for i in 0..x.len() {
            let after = x[i] - self.mean[i];
            for j in 0..x.len() {
                self.comoment[i][j] += delta[j] * after;
            }
        }
    }

    /// Chan et al. pairwise combination.
    fn merge(&mut self, other: &Moments) {
        if other.n == 0 {
            self.rejected += other.rejected;
            return;
        }
        if self.n == 0 {
            let rejected = self.rejected + other.rejected;
            *self = other.clone();
            self.rejected = rejected;
            return;
        }
        let (na, nb) = (self.n as f64, other.n as f64);
        let n = na + nb;
        let delta: Vec<f64> = other.mean.iter().zip(&self.mean).map(|(b, a)| b - a).collect();
        for i in 0..delta.len() {
            for j in 0..delta.len() {
                self.comoment[i][j] += other.comoment[i][j] + delta[i] * delta[j] * na * nb / n;
            }
        }
        for (m, d) in self.mean.iter_mut().zip(&delta) {
            *m += d * nb / n;
        }
        self.n += other.n;
        self.rejected += other.rejected;
    }

    /// Sample covariance of outputs `i` and `j`.
    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.comoment[i][j] / (self.n - 1) as f64
    }

    pub fn estimate(&self, i: usize, p: &McParams) -> McEstimate {
        McEstimate {
            mean: self.mean[i],
            std_error: (self.covariance(i, i) / self.n as f64).sqrt(),
            samples: self.n,
            seed: p.seed,
            shards: p.shards,
            rejected: self.rejected,
        }
    }
}

/// Averages `f(u, root values, out)` over standard Gaussian draws.
///
/// Shard `s` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream
/// `(tag << 32) | s`, so a given `(seed, tag, samples, shards)` reproduces the
/// same result bit for bit. Shards run in parallel and are merged in shard
/// order.
pub fn sample_moments<F>(sampler: &GaussianSampler, p: &McParams, tag: u32, dim: usize, f: F) -> Moments
where
    F: Fn(&[f64], &[f64], &mut [f64]) + Sync,
{
    let shards = p.shards as u64;
    let per = p.samples / shards;
    let extra = p.samples % shards;
    let parts: Vec<Moments> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            rng.set_stream(((tag as u64) << 32) | s);
            let count = per + u64::from(s < extra);
            let mut m = Moments::new(dim);
            let (mut z, mut u) = (vec![0.0; sampler.rank()], vec![0.0; sampler.rank()]);
            let mut vals = vec![0.0; sampler.num_roots()];
            let (mut out, mut delta) = (vec![0.0; dim], vec![0.0; dim]);
            while m.n < count {
                if !sampler.draw(&mut rng, &mut z, &mut u, &mut vals) {
                    m.rejected += 1;
                    continue;
                }
                f(&u, &vals, &mut out);
                m.push(&out, &mut delta);
            }
            m
        })
        .collect();
    let mut total = Moments::new(dim);
    for part in &parts {
        total.merge(part);
    }
    total
}

/// `log Δ(x)² = Σ_α log (α, x)²`.
pub fn log_disc_sq(vals: &[f64]) -> f64 {
    vals.iter().map(|v| (v * v).ln()).sum()
}

/// `|Δ(x)|^{2k}`.
pub fn disc_weight(vals: &[f64], k: f64) -> f64 {
    if k == 0.0 {
        1.0
    } else {
        (k * log_disc_sq(vals)).exp()
    }
}

/// Estimates `F(k) = E[|Δ(x)|^{2k}]`.
pub fn mm_monte_carlo(ring: &PolyRing, k: f64, p: &McParams) -> McEstimate {
    mm_monte_carlo_tagged(ring, k, p, 0)
}

/// [`mm_monte_carlo`] on the substreams selected by `tag`.
pub fn mm_monte_carlo_tagged(ring: &PolyRing, k: f64, p: &McParams, tag: u32) -> McEstimate {
    assert!(k >= 0.0, "k must be nonnegative");
    let sampler = GaussianSampler::new(ring);
    sample_moments(&sampler, p, tag, 1, |_, vals, out| out[0] = disc_weight(vals, k)).estimate(0, p)
}
