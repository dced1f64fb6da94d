//! One-dimensional marginals `X(s)` of the processes the supremum formulas
//! are evaluated for.
//!
//! Stable kinds are self-similar: `X(s)` has the stable law with scale
//! `s^{1/α}`. The Brownian kind uses the same variance convention as the
//! `α = 2` stable law, `Var B(s) = 2 v² s`, but goes through its own
//! closed-form code path.

use std::f64::consts::PI;

use libm::erfc;

use crate::error::{Error, Result};
use crate::stable_dist::{StableLaw, StableParams, StableSampler, DIST_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MarginalLaw {
    /// Only upward jumps (`β = +1`).
    SpectrallyPositiveStable { alpha: f64 },
    /// Only downward jumps (`β = -1`).
    SpectrallyNegativeStable { alpha: f64 },
    /// Continuous paths, `Var B(s) = 2 volatility² s`.
    Brownian { volatility: f64 },
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("alpha = {alpha} outside (1, 2]")))
    }
}

fn check_time(s: f64) -> Result<()> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("time s = {s} must be positive and finite")))
    }
}

impl MarginalLaw {
    pub fn spectrally_positive(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(MarginalLaw::SpectrallyPositiveStable { alpha })
    }

    pub fn spectrally_negative(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(MarginalLaw::SpectrallyNegativeStable { alpha })
    }

    pub fn brownian(volatility: f64) -> Result<Self> {
        if volatility > 0.0 && volatility.is_finite() {
            Ok(MarginalLaw::Brownian { volatility })
        } else {
            Err(Error::domain(format!("volatility = {volatility} must be positive")))
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            MarginalLaw::SpectrallyPositiveStable { alpha } | MarginalLaw::SpectrallyNegativeStable { alpha } => {
                check_alpha(alpha)
            }
            MarginalLaw::Brownian { volatility } => Self::brownian(volatility).map(|_| ()),
        }
    }

    /// Stability index; 2 for Brownian motion.
    pub fn alpha(&self) -> f64 {
        match *self {
            MarginalLaw::SpectrallyPositiveStable { alpha } | MarginalLaw::SpectrallyNegativeStable { alpha } => alpha,
            MarginalLaw::Brownian { .. } => 2.0,
        }
    }

    /// `+1`, `-1`, or `0` for Brownian motion.
    pub fn spectral_sign(&self) -> i8 {
        match self {
            MarginalLaw::SpectrallyPositiveStable { .. } => 1,
            MarginalLaw::SpectrallyNegativeStable { .. } => -1,
            MarginalLaw::Brownian { .. } => 0,
        }
    }

    /// Law of `-X`.
    pub fn negated(&self) -> Self {
        match *self {
            MarginalLaw::SpectrallyPositiveStable { alpha } => MarginalLaw::SpectrallyNegativeStable { alpha },
            MarginalLaw::SpectrallyNegativeStable { alpha } => MarginalLaw::SpectrallyPositiveStable { alpha },
            b @ MarginalLaw::Brownian { .. } => b,
        }
    }

    /// Scale of `X(s)`: `s^{1/α}` for stable kinds, `v √s` for Brownian.
    pub fn scale_at(&self, s: f64) -> Result<f64> {
        self.validate()?;
        check_time(s)?;
        Ok(match *self {
            MarginalLaw::Brownian { volatility } => volatility * s.sqrt(),
            _ => s.powf(1.0 / self.alpha()),
        })
    }

    /// Stable parameters of `X(s)`; `None` for Brownian motion.
    pub fn stable_params(&self, s: f64) -> Result<Option<StableParams>> {
        let sigma = self.scale_at(s)?;
        Ok(match *self {
            MarginalLaw::SpectrallyPositiveStable { alpha } => Some(StableParams::spectrally_positive(alpha, sigma)?),
            MarginalLaw::SpectrallyNegativeStable { alpha } => Some(StableParams::spectrally_negative(alpha, sigma)?),
            MarginalLaw::Brownian { .. } => None,
        })
    }

    /// Evaluator for `X(s)`.
    pub fn at(&self, s: f64) -> Result<Marginal> {
        let scale = self.scale_at(s)?;
        Ok(match self.stable_params(s)? {
            Some(p) => Marginal::Stable(Box::new(StableLaw::new(p)?)),
            None => Marginal::Gaussian { scale },
        })
    }

    /// Sampler for the increment over a step of length `dt`.
    pub fn increment_sampler(&self, dt: f64) -> Result<IncrementSampler> {
        let scale = self.scale_at(dt)?;
        Ok(match self.stable_params(dt)? {
            Some(p) => IncrementSampler::Stable(StableSampler::new(&p)),
            None => IncrementSampler::Gaussian {
                std_dev: scale * std::f64::consts::SQRT_2,
            },
        })
    }
}

/// The law of `X(s)` at one fixed time.
#[derive(Debug, Clone)]
pub enum Marginal {
    Stable(Box<StableLaw>),
    /// `N(0, 2 scale²)`.
    Gaussian {
        scale: f64,
    },
}

impl Marginal {
    pub fn density(&self, u: f64) -> Result<f64> {
        match self {
            Marginal::Stable(law) => law.density(u),
            Marginal::Gaussian { scale } => {
                let z = u / scale;
                Ok((-0.25 * z * z).exp() / (2.0 * scale * PI.sqrt()))
            }
        }
    }

    pub fn cdf(&self, u: f64) -> Result<f64> {
        match self {
            Marginal::Stable(law) => law.cdf(u),
            Marginal::Gaussian { scale } => Ok(0.5 * erfc(-u / (2.0 * scale))),
        }
    }

    /// `P(X(s) > u)`.
    pub fn sf(&self, u: f64) -> Result<f64> {
        match self {
            Marginal::Stable(law) => law.sf(u),
            Marginal::Gaussian { scale } => Ok(0.5 * erfc(u / (2.0 * scale))),
        }
    }

    /// `(P(X > 0), P(X < 0))`.
    pub fn sign_probabilities(&self) -> (f64, f64) {
        match self {
            Marginal::Stable(law) => {
                let p = law.positivity();
                (p, 1.0 - p)
            }
            Marginal::Gaussian { .. } => (0.5, 0.5),
        }
    }

    /// `E X⁺`, integrated to absolute tolerance `tol`.
    pub fn mean_positive(&self, tol: f64) -> Result<f64> {
        match self {
            Marginal::Stable(law) => law.mean_positive_part_with_tol(tol),
            Marginal::Gaussian { scale } => Ok(scale / PI.sqrt()),
        }
    }

    /// `E X⁻ = E (-X)⁺`, from the right tail of the negated law.
    pub fn mean_negative(&self, tol: f64) -> Result<f64> {
        match self {
            Marginal::Stable(law) => StableLaw::new(law.params().negated())?.mean_positive_part_with_tol(tol),
            Marginal::Gaussian { scale } => Ok(scale / PI.sqrt()),
        }
    }
}

/// Increment generator for one grid step.
#[derive(Debug, Clone, Copy)]
pub enum IncrementSampler {
    Stable(StableSampler),
    Gaussian { std_dev: f64 },
}

impl IncrementSampler {
    #[inline]
    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            IncrementSampler::Stable(s) => s.sample(rng),
            IncrementSampler::Gaussian { std_dev } => {
                let z: f64 = rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng);
                std_dev * z
            }
        }
    }
}

/// Density of `X(s)` at `u`.
pub fn marginal_density(m: &MarginalLaw, u: f64, s: f64) -> Result<f64> {
    m.at(s)?.density(u)
}

/// `P(X(s) <= u)`.
pub fn marginal_cdf(m: &MarginalLaw, u: f64, s: f64) -> Result<f64> {
    m.at(s)?.cdf(u)
}

/// `P(X(s) > u)`.
pub fn marginal_sf(m: &MarginalLaw, u: f64, s: f64) -> Result<f64> {
    m.at(s)?.sf(u)
}

/// `(E X⁺(s), E X⁻(s))`. Both halves are integrated separately, so their
/// difference measures the quadrature error of the zero-mean identity.
pub fn partial_means(m: &MarginalLaw, s: f64) -> Result<(f64, f64)> {
    partial_means_with_tol(m, s, DIST_TOL)
}

pub fn partial_means_with_tol(m: &MarginalLaw, s: f64, tol: f64) -> Result<(f64, f64)> {
    let marginal = m.at(s)?;
    Ok((marginal.mean_positive(tol)?, marginal.mean_negative(tol)?))
}

/// `(P(X(s) > 0), P(X(s) < 0))`; constant in `s` for every kind here.
pub fn sign_probabilities(m: &MarginalLaw, s: f64) -> Result<(f64, f64)> {
    Ok(m.at(s)?.sign_probabilities())
}
