//! Monte Carlo estimates of supremum functionals from discretized paths.
//!
//! A path is the cumulative sum of `n_steps` i.i.d. increments, each with
//! the exact law of `X(t/n_steps)`, so the grid values are exact in law and
//! the only error is grid maximum versus true supremum. Every path draws
//! from its own ChaCha8 stream `(seed, path_index)`, and results are
//! reduced in path order, so estimates do not depend on the thread count.
//!
//! Each path also yields its maximum over every second grid point (plus the
//! endpoint), giving a half-resolution estimate from the same randomness
//! that exposes the discretization trend.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::levy_model::{IncrementSampler, MarginalLaw};

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.576;

pub const MIN_PATHS: usize = 100;
pub const MIN_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub horizon: f64,
}

impl McConfig {
    pub fn new(n_paths: usize, n_steps: usize, seed: u64, horizon: f64) -> Result<Self> {
        let cfg = McConfig {
            n_paths,
            n_steps,
            seed,
            horizon,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_paths < MIN_PATHS {
            return Err(Error::domain(format!("n_paths = {} below {MIN_PATHS}", self.n_paths)));
        }
        if self.n_steps < MIN_STEPS {
            return Err(Error::domain(format!("n_steps = {} below {MIN_STEPS}", self.n_steps)));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::domain(format!(
                "horizon t = {} must be positive and finite",
                self.horizon
            )));
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        self.horizon / self.n_steps as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub ci99: (f64, f64),
    /// Same statistic on the half-resolution grid of the same paths.
    pub half_grid_estimate: f64,
    pub half_grid_std_error: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
}

impl McEstimate {
    fn new(cfg: &McConfig, fine: (f64, f64), half: (f64, f64)) -> Self {
        McEstimate {
            estimate: fine.0,
            std_error: fine.1,
            ci99: (fine.0 - Z99 * fine.1, fine.0 + Z99 * fine.1),
            half_grid_estimate: half.0,
            half_grid_std_error: half.1,
            n_paths: cfg.n_paths,
            n_steps: cfg.n_steps,
            seed: cfg.seed,
        }
    }

    /// `|value - estimate| <= max(3 SE, slack)`.
    pub fn agrees_with(&self, value: f64, slack: f64) -> bool {
        (value - self.estimate).abs() <= (3.0 * self.std_error).max(slack)
    }
}

fn path_rng(seed: u64, path_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path_index);
    rng
}

fn grid_maxima(sampler: &IncrementSampler, n_steps: usize, seed: u64, path_index: u64, strides: &[usize]) -> Vec<f64> {
    let mut rng = path_rng(seed, path_index);
    let mut maxima = vec![0.0f64; strides.len()];
    let mut countdown: Vec<usize> = strides.to_vec();
    let mut x = 0.0f64;
    for k in 1..=n_steps {
        x += sampler.sample(&mut rng);
        for ((m, c), &stride) in maxima.iter_mut().zip(countdown.iter_mut()).zip(strides) {
            *c -= 1;
            if *c == 0 || k == n_steps {
                *c = stride;
                if x > *m {
                    *m = x;
                }
            }
        }
    }
    maxima
}

/// Maximum of `0, X(t/n), ..., X(t)` for one path.
pub fn simulate_grid_supremum(m: &MarginalLaw, cfg: &McConfig, path_index: u64) -> Result<f64> {
    cfg.validate()?;
    let sampler = m.increment_sampler(cfg.step())?;
    Ok(grid_maxima(&sampler, cfg.n_steps, cfg.seed, path_index, &[1])[0])
}

/// Grid maxima of one path for several coarsenings; stride `k` keeps every
/// `k`-th grid point and the endpoint.
pub fn simulate_grid_suprema(m: &MarginalLaw, cfg: &McConfig, path_index: u64, strides: &[usize]) -> Result<Vec<f64>> {
    cfg.validate()?;
    if strides.contains(&0) {
        return Err(Error::domain("grid stride must be at least 1"));
    }
    let sampler = m.increment_sampler(cfg.step())?;
    Ok(grid_maxima(&sampler, cfg.n_steps, cfg.seed, path_index, strides))
}

/// `(full grid, half grid)` maxima of every path, in path order.
pub fn simulate_suprema(m: &MarginalLaw, cfg: &McConfig) -> Result<Vec<(f64, f64)>> {
    cfg.validate()?;
    let sampler = m.increment_sampler(cfg.step())?;
    Ok((0..cfg.n_paths as u64)
        .into_par_iter()
        .map(|i| {
            let v = grid_maxima(&sampler, cfg.n_steps, cfg.seed, i, &[1, 2]);
            (v[0], v[1])
        })
        .collect())
}

/// Pairwise sum; the result depends only on the order of `xs`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        xs.iter().sum()
    } else {
        let (a, b) = xs.split_at(xs.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum(xs) / n;
    let dev: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&dev) / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn proportion_and_se(hits: usize, n: usize) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt())
}

fn tail_estimates(cfg: &McConfig, suprema: &[(f64, f64)], us: &[f64]) -> Result<Vec<McEstimate>> {
    us.iter()
        .map(|&u| {
            if !(u >= 0.0 && u.is_finite()) {
                return Err(Error::domain(format!("level u = {u} must be finite and nonnegative")));
            }
            let fine = suprema.iter().filter(|s| s.0 >= u).count();
            let half = suprema.iter().filter(|s| s.1 >= u).count();
            Ok(McEstimate::new(
                cfg,
                proportion_and_se(fine, suprema.len()),
                proportion_and_se(half, suprema.len()),
            ))
        })
        .collect()
}

/// `P(sup X >= u)` for each level, all from one set of paths.
pub fn estimate_sup_tails(m: &MarginalLaw, cfg: &McConfig, us: &[f64]) -> Result<Vec<McEstimate>> {
    let suprema = simulate_suprema(m, cfg)?;
    tail_estimates(cfg, &suprema, us)
}

/// Fraction of grid suprema at or above `u`, with binomial standard error.
pub fn estimate_sup_tail(m: &MarginalLaw, cfg: &McConfig, u: f64) -> Result<McEstimate> {
    Ok(estimate_sup_tails(m, cfg, &[u])?.remove(0))
}

/// Sample mean of grid suprema.
pub fn estimate_esup(m: &MarginalLaw, cfg: &McConfig) -> Result<McEstimate> {
    let suprema = simulate_suprema(m, cfg)?;
    Ok(esup_estimate(cfg, &suprema))
}

fn esup_estimate(cfg: &McConfig, suprema: &[(f64, f64)]) -> McEstimate {
    let fine: Vec<f64> = suprema.iter().map(|s| s.0).collect();
    let half: Vec<f64> = suprema.iter().map(|s| s.1).collect();
    McEstimate::new(cfg, mean_and_se(&fine), mean_and_se(&half))
}

/// Expected supremum and tails at `us` from one set of paths.
pub fn estimate_all(m: &MarginalLaw, cfg: &McConfig, us: &[f64]) -> Result<(McEstimate, Vec<McEstimate>)> {
    let suprema = simulate_suprema(m, cfg)?;
    Ok((esup_estimate(cfg, &suprema), tail_estimates(cfg, &suprema, us)?))
}
