//! Supremum functionals of `X(s), s <= t`.
//!
//! For a spectrally positive process `X` (or Brownian motion):
//!
//! ```text
//! P(sup X > u) = P(X(t) > u) + ∫_0^t f(u,s)/(t-s) · E X⁻(t-s) ds
//! E sup X      = E X⁺(t)     + ∫_0^t P(X(t-s) > 0)/s · E X⁻(s) ds
//! ```
//!
//! and for a spectrally negative `Y`
//!
//! ```text
//! E sup Y = E Y⁺(t) + ∫_0^t P(Y(t-s) < 0)/s · E Y⁺(s) ds.
//! ```
//!
//! For spectrally negative stable `Z` the supremum law is exact:
//! `P(sup Z >= u) = α P(Z(t) >= u)` for `u >= 0`, so `E sup Z = α E Z⁺(t)`.
//!
//! All marginals are atomless, so `>` and `>=` give the same numbers.
//! Every outer integral has an `s^{1/α-1}` singularity at one endpoint,
//! which is removed by substitution (`α = 2` for Brownian motion).

use crate::error::{Error, Result};
use crate::levy_model::MarginalLaw;
use crate::quadrature::{try_integrate_power_endpoint, Endpoint, QuadOptions};
use crate::stable_dist::{StableLaw, StableParams, DIST_TOL};

/// Default tolerance of the outer time integrals.
pub const OUTER_TOL: f64 = 1e-7;

/// Evaluation budget of the outer integrals; each evaluation of a stable
/// integrand costs a distribution-level quadrature.
pub const OUTER_MAX_EVALUATIONS: usize = 20_000;

/// Environment variable overriding the outer tolerance in [`SupCalc::from_env`].
pub const QUAD_TOL_ENV: &str = "LEVYSUP_QUAD_TOL";

/// Tolerances used by the supremum formulas. `dist_tol` goes to the
/// distribution-level integrals (partial means), `outer_tol` to the
/// integrals over time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupCalc {
    dist_tol: f64,
    outer_tol: f64,
}

impl Default for SupCalc {
    fn default() -> Self {
        SupCalc {
            dist_tol: DIST_TOL,
            outer_tol: OUTER_TOL,
        }
    }
}

fn check_tol(name: &str, tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} = {tol} must be positive and finite")))
    }
}

fn check_horizon(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("horizon t = {t} must be positive and finite")))
    }
}

fn check_level(u: f64) -> Result<()> {
    if u >= 0.0 && u.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("level u = {u} must be finite and nonnegative")))
    }
}

fn stable_negative_at(alpha: f64, t: f64) -> Result<StableLaw> {
    check_horizon(t)?;
    let m = MarginalLaw::spectrally_negative(alpha)?;
    let sigma = m.scale_at(t)?;
    StableLaw::new(StableParams::spectrally_negative(alpha, sigma)?)
}

impl SupCalc {
    pub fn new(dist_tol: f64, outer_tol: f64) -> Result<Self> {
        check_tol("distribution tolerance", dist_tol)?;
        check_tol("outer tolerance", outer_tol)?;
        Ok(SupCalc { dist_tol, outer_tol })
    }

    /// Defaults, with the outer tolerance taken from `LEVYSUP_QUAD_TOL` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(QUAD_TOL_ENV) {
            Ok(raw) => {
                let tol: f64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("{QUAD_TOL_ENV} = {raw:?} is not a number")))?;
                SupCalc::new(DIST_TOL, tol)
            }
            Err(_) => Ok(SupCalc::default()),
        }
    }

    pub fn dist_tol(&self) -> f64 {
        self.dist_tol
    }

    pub fn outer_tol(&self) -> f64 {
        self.outer_tol
    }

    fn outer_opts(&self) -> QuadOptions {
        QuadOptions::mixed(self.outer_tol, self.outer_tol).with_max_evaluations(OUTER_MAX_EVALUATIONS)
    }

    /// `P(sup_{s<=t} X(s) > u)` for spectrally positive stable or Brownian `X`.
    /// Returns 1 at `u = 0`.
    pub fn sup_tail_spectrally_positive(&self, m: &MarginalLaw, t: f64, u: f64) -> Result<f64> {
        if m.spectral_sign() < 0 {
            return Err(Error::domain(
                "supremum tail formula needs a spectrally positive or Brownian model",
            ));
        }
        check_horizon(t)?;
        check_level(u)?;
        if u == 0.0 {
            return Ok(1.0);
        }
        let endpoint_tail = m.at(t)?.sf(u)?;
        let tol = self.dist_tol;
        let integrand = |s: f64| -> Result<f64> {
            let r = t - s;
            if s <= 0.0 || r <= 0.0 {
                return Ok(0.0);
            }
            let density = m.at(s)?.density(u)?;
            if density == 0.0 {
                return Ok(0.0);
            }
            Ok(density / r * m.at(r)?.mean_negative(tol)?)
        };
        let exponent = 1.0 / m.alpha() - 1.0;
        let jump_part = try_integrate_power_endpoint(integrand, 0.0, t, Endpoint::Upper, exponent, &self.outer_opts())?;
        Ok((endpoint_tail + jump_part.value).clamp(0.0, 1.0))
    }

    /// `E sup_{s<=t} X(s)` for spectrally positive stable or Brownian `X`.
    pub fn esup_spectrally_positive(&self, m: &MarginalLaw, t: f64) -> Result<f64> {
        if m.spectral_sign() < 0 {
            return Err(Error::domain("formula needs a spectrally positive or Brownian model"));
        }
        check_horizon(t)?;
        let tol = self.dist_tol;
        let endpoint = m.at(t)?.mean_positive(tol)?;
        let (p_pos, _) = m.at(t)?.sign_probabilities();
        let integrand = |s: f64| -> Result<f64> {
            if s <= 0.0 {
                return Ok(0.0);
            }
            Ok(p_pos / s * m.at(s)?.mean_negative(tol)?)
        };
        self.endpoint_plus_integral(endpoint, integrand, m.alpha(), t)
    }

    /// `E sup_{s<=t} Y(s)` for spectrally negative stable or Brownian `Y`.
    pub fn esup_spectrally_negative(&self, m: &MarginalLaw, t: f64) -> Result<f64> {
        if m.spectral_sign() > 0 {
            return Err(Error::domain("formula needs a spectrally negative or Brownian model"));
        }
        check_horizon(t)?;
        let tol = self.dist_tol;
        let endpoint = m.at(t)?.mean_positive(tol)?;
        let (_, p_neg) = m.at(t)?.sign_probabilities();
        let integrand = |s: f64| -> Result<f64> {
            if s <= 0.0 {
                return Ok(0.0);
            }
            Ok(p_neg / s * m.at(s)?.mean_positive(tol)?)
        };
        self.endpoint_plus_integral(endpoint, integrand, m.alpha(), t)
    }

    fn endpoint_plus_integral<F>(&self, endpoint: f64, integrand: F, alpha: f64, t: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let exponent = 1.0 / alpha - 1.0;
        let r = try_integrate_power_endpoint(integrand, 0.0, t, Endpoint::Lower, exponent, &self.outer_opts())?;
        Ok(endpoint + r.value)
    }

    /// `α · P(Z(t) >= u)` for spectrally negative stable `Z`; exactly 1 at `u = 0`.
    pub fn sup_tail_stable_negative(&self, alpha: f64, t: f64, u: f64) -> Result<f64> {
        check_level(u)?;
        let law = stable_negative_at(alpha, t)?;
        if u == 0.0 {
            return Ok(1.0);
        }
        Ok((theorem_factor(alpha) * (1.0 - law.cdf(u)?)).min(1.0))
    }

    /// `α · E Z⁺(t)`.
    pub fn esup_stable_negative_closed(&self, alpha: f64, t: f64) -> Result<f64> {
        let law = stable_negative_at(alpha, t)?;
        Ok(theorem_factor(alpha) * law.mean_positive_part_with_tol(self.dist_tol)?)
    }

    /// Upper bound `α · P(Z(t) >= u)` on the supremum tail of spectrally
    /// negative stable `Z`, evaluated from the survival function.
    pub fn albin_upper_bound(&self, alpha: f64, t: f64, u: f64) -> Result<f64> {
        check_level(u)?;
        let law = stable_negative_at(alpha, t)?;
        Ok(theorem_factor(alpha) * law.sf(u)?)
    }
}

/// The multiplier `C_α` in `P(sup Z >= u) = C_α P(Z(t) >= u)`; equal to `α`.
pub fn theorem_factor(alpha: f64) -> f64 {
    alpha
}

pub fn sup_tail_spectrally_positive(m: &MarginalLaw, t: f64, u: f64) -> Result<f64> {
    SupCalc::default().sup_tail_spectrally_positive(m, t, u)
}

pub fn esup_spectrally_positive(m: &MarginalLaw, t: f64) -> Result<f64> {
    SupCalc::default().esup_spectrally_positive(m, t)
}

pub fn esup_spectrally_negative(m: &MarginalLaw, t: f64) -> Result<f64> {
    SupCalc::default().esup_spectrally_negative(m, t)
}

pub fn sup_tail_stable_negative(alpha: f64, t: f64, u: f64) -> Result<f64> {
    SupCalc::default().sup_tail_stable_negative(alpha, t, u)
}

pub fn esup_stable_negative_closed(alpha: f64, t: f64) -> Result<f64> {
    SupCalc::default().esup_stable_negative_closed(alpha, t)
}

pub fn albin_upper_bound(alpha: f64, t: f64, u: f64) -> Result<f64> {
    SupCalc::default().albin_upper_bound(alpha, t, u)
}
