//! Strictly α-stable laws with `1 < α ≤ 2` and zero shift.
//!
//! Convention: `E e^{iθX} = exp(-σ^α |θ|^α (1 - iβ sign(θ) tan(πα/2)))`.
//! `β = -1` is the spectrally negative law (light right tail), `β = +1` the
//! spectrally positive one. At `α = 2` the law is `N(0, 2σ²)` whatever `β`.
//!
//! Evaluation strategy for the standardized variable `y = x/σ`:
//!
//! * `|y|` below half the series radius: convergent power series at 0;
//! * on the heavy side, `y` past [`TailSeries::threshold`]: asymptotic power
//!   tail;
//! * otherwise the Zolotarev integral of [`kernel`], with negative arguments
//!   reflected through `X(β) = -X(-β)`.

mod kernel;
mod sampler;
mod series;

use std::f64::consts::PI;

use libm::erfc;
use rand::Rng;

use crate::error::{Error, Result};
use crate::quadrature::{try_integrate_panels, try_integrate_upper_tail, QuadOptions, StretchedExponentialTail};

use kernel::{alpha_theta0, Kernel};
use series::{TailSeries, ZeroSeries};

pub use sampler::StableSampler;

/// Absolute accuracy targeted by distribution-level integrals.
pub const DIST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableParams {
    pub alpha: f64,
    pub beta: f64,
    pub sigma: f64,
}

impl StableParams {
    pub fn new(alpha: f64, beta: f64, sigma: f64) -> Result<Self> {
        let p = StableParams { alpha, beta, sigma };
        p.validate()?;
        Ok(p)
    }

    pub fn spectrally_negative(alpha: f64, sigma: f64) -> Result<Self> {
        Self::new(alpha, -1.0, sigma)
    }

    pub fn spectrally_positive(alpha: f64, sigma: f64) -> Result<Self> {
        Self::new(alpha, 1.0, sigma)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 1.0 && self.alpha <= 2.0) {
            return Err(Error::domain(format!("alpha = {} outside (1, 2]", self.alpha)));
        }
        if !(-1.0..=1.0).contains(&self.beta) {
            return Err(Error::domain(format!("beta = {} outside [-1, 1]", self.beta)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::domain(format!(
                "sigma = {} is not a positive finite number",
                self.sigma
            )));
        }
        Ok(())
    }

    /// Law of `-X`.
    pub fn negated(&self) -> Self {
        StableParams {
            beta: -self.beta,
            ..*self
        }
    }

    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, sigma)
    }

    pub fn is_gaussian(&self) -> bool {
        self.alpha == 2.0
    }
}

/// `P(X > 0)` in closed form: `1/2 + arctan(β tan(πα/2)) / (πα)`.
///
/// Exact values are returned for `β ∈ {-1, 0, 1}`: `1/α`, `1/2` and
/// `1 - 1/α`. The result does not depend on `σ`.
pub fn positivity(p: &StableParams) -> Result<f64> {
    p.validate()?;
    Ok(positivity_unchecked(p))
}

fn positivity_unchecked(p: &StableParams) -> f64 {
    if p.is_gaussian() || p.beta == 0.0 {
        0.5
    } else if p.beta == -1.0 {
        1.0 / p.alpha
    } else if p.beta == 1.0 {
        1.0 - 1.0 / p.alpha
    } else {
        0.5 + alpha_theta0(p.alpha, p.beta) / (PI * p.alpha)
    }
}

/// One half-line of the standardized law.
#[derive(Debug, Clone)]
struct Side {
    kernel: Kernel,
    tail: Option<TailSeries>,
}

impl Side {
    fn new(alpha: f64, beta: f64) -> Self {
        let kernel = Kernel::new(alpha, beta);
        let tail =
            (!kernel.has_light_tail()).then(|| TailSeries::new(alpha, alpha_theta0(alpha, beta), kernel.upper()));
        Side { kernel, tail }
    }

    fn sf(&self, y: f64) -> Result<f64> {
        match &self.tail {
            Some(t) if y >= t.threshold() => Ok(t.sf(y)),
            _ => self.kernel.sf(y),
        }
    }

    fn density(&self, y: f64) -> Result<f64> {
        match &self.tail {
            Some(t) if y >= t.threshold() => Ok(t.density(y)),
            _ => self.kernel.density(y),
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Gaussian,
    Stable {
        right: Box<Side>,
        left: Box<Side>,
        near_zero: ZeroSeries,
    },
}

/// Evaluator for one parameter set; construction precomputes the series
/// coefficients and kernel constants so repeated calls are cheap.
#[derive(Debug, Clone)]
pub struct StableLaw {
    params: StableParams,
    positivity: f64,
    repr: Repr,
}

impl StableLaw {
    pub fn new(params: StableParams) -> Result<Self> {
        params.validate()?;
        let positivity = positivity_unchecked(&params);
        let repr = if params.is_gaussian() {
            Repr::Gaussian
        } else {
            let (a, b) = (params.alpha, params.beta);
            Repr::Stable {
                right: Box::new(Side::new(a, b)),
                left: Box::new(Side::new(a, -b)),
                near_zero: ZeroSeries::new(a, alpha_theta0(a, b), 1.0 - positivity),
            }
        };
        Ok(StableLaw {
            params,
            positivity,
            repr,
        })
    }

    pub fn params(&self) -> &StableParams {
        &self.params
    }

    pub fn positivity(&self) -> f64 {
        self.positivity
    }

    fn check(x: f64) -> Result<()> {
        if x.is_nan() {
            Err(Error::domain("argument is NaN"))
        } else {
            Ok(())
        }
    }

    /// Density of the standardized law at `y`.
    fn std_density(&self, y: f64) -> Result<f64> {
        match &self.repr {
            Repr::Gaussian => Ok((-0.25 * y * y).exp() / (2.0 * PI.sqrt())),
            Repr::Stable { right, left, near_zero } => {
                if y.is_infinite() {
                    Ok(0.0)
                } else if y.abs() <= near_zero.radius() {
                    Ok(near_zero.density(y).max(0.0))
                } else if y > 0.0 {
                    right.density(y)
                } else {
                    left.density(-y)
                }
            }
        }
    }

    /// `(P(Y <= y), P(Y > y))` for the standardized law, each computed
    /// without subtracting from one when it is the small side.
    fn std_split(&self, y: f64) -> Result<(f64, f64)> {
        match &self.repr {
            Repr::Gaussian => {
                let lo = 0.5 * erfc(-0.5 * y);
                let hi = 0.5 * erfc(0.5 * y);
                Ok((lo, hi))
            }
            Repr::Stable { right, left, near_zero } => {
                if y == f64::INFINITY {
                    Ok((1.0, 0.0))
                } else if y == f64::NEG_INFINITY {
                    Ok((0.0, 1.0))
                } else if y == 0.0 {
                    Ok((1.0 - self.positivity, self.positivity))
                } else if y.abs() <= near_zero.radius() {
                    let c = near_zero.cdf(y).clamp(0.0, 1.0);
                    Ok((c, 1.0 - c))
                } else if y > 0.0 {
                    let s = right.sf(y)?;
                    Ok((1.0 - s, s))
                } else {
                    let c = left.sf(-y)?;
                    Ok((c, 1.0 - c))
                }
            }
        }
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        Self::check(x)?;
        let s = self.params.sigma;
        Ok(self.std_density(x / s)? / s)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Self::check(x)?;
        Ok(self.std_split(x / self.params.sigma)?.0)
    }

    /// `P(X > x)`, accurate in relative terms deep in the right tail.
    pub fn sf(&self, x: f64) -> Result<f64> {
        Self::check(x)?;
        Ok(self.std_split(x / self.params.sigma)?.1)
    }

    /// `E max(X, 0) = ∫_0^∞ P(X > u) du`, integrated in `u` at the law's
    /// own scale.
    pub fn mean_positive_part(&self) -> Result<f64> {
        self.mean_positive_part_with_tol(DIST_TOL)
    }

    pub fn mean_positive_part_with_tol(&self, tol: f64) -> Result<f64> {
        let sigma = self.params.sigma;
        let sf = |u: f64| self.sf(u);
        match &self.repr {
            Repr::Gaussian => {
                // P(X > u) = erfc(u/2σ)/2 <= exp(-u²/4σ²)/2
                let tail = StretchedExponentialTail {
                    scale: 0.5,
                    rate: 0.25 / (sigma * sigma),
                    power: 2.0,
                };
                let opts = QuadOptions::mixed(tol, 1e-12);
                Ok(try_integrate_upper_tail(sf, 0.0, &tail, sigma, &opts)?.value)
            }
            Repr::Stable { right, .. } => match &right.tail {
                None => {
                    // P(X > u) <= (U/π) exp(-V_min (u/σ)^p)
                    let k = &right.kernel;
                    let p = self.params.alpha / (self.params.alpha - 1.0);
                    let tail = StretchedExponentialTail {
                        scale: k.upper() / PI,
                        rate: k.v_min() / sigma.powf(p),
                        power: p,
                    };
                    let opts = QuadOptions::mixed(tol, 1e-12);
                    Ok(try_integrate_upper_tail(sf, 0.0, &tail, sigma, &opts)?.value)
                }
                Some(series) => {
                    // Heavy tail: integrate to the asymptotic threshold, then
                    // add the term-by-term integral of the power expansion.
                    let y_max = series.threshold();
                    let mut breaks = vec![0.0];
                    let mut y = 0.25;
                    while y < y_max {
                        breaks.push(y * sigma);
                        y *= 2.0;
                    }
                    breaks.push(y_max * sigma);
                    let opts = QuadOptions::mixed(0.5 * tol, 1e-12);
                    let body = try_integrate_panels(sf, &breaks, &opts)?.value;
                    Ok(body + sigma * series.sf_integral(y_max))
                }
            },
        }
    }

    pub fn sampler(&self) -> StableSampler {
        StableSampler::new(&self.params)
    }
}

/// Density of the law `p` at `x`.
pub fn std_density(x: f64, p: &StableParams) -> Result<f64> {
    StableLaw::new(*p)?.density(x)
}

/// Distribution function of the law `p` at `x`.
pub fn std_cdf(x: f64, p: &StableParams) -> Result<f64> {
    StableLaw::new(*p)?.cdf(x)
}

/// Survival function `P(X > x)` of the law `p`.
pub fn std_sf(x: f64, p: &StableParams) -> Result<f64> {
    StableLaw::new(*p)?.sf(x)
}

/// One Chambers–Mallows–Stuck draw from `p`.
pub fn sample<R: Rng + ?Sized>(p: &StableParams, rng: &mut R) -> Result<f64> {
    p.validate()?;
    Ok(StableSampler::new(p).sample(rng))
}

/// `E max(X, 0)`. The negative-part mean is `mean_positive_part(&p.negated())`.
pub fn mean_positive_part(p: &StableParams) -> Result<f64> {
    StableLaw::new(*p)?.mean_positive_part()
}
