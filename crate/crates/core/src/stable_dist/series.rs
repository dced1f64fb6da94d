//! Power-series forms of the standardized law.
//!
//! Near the origin the density is an entire function for `α > 1`:
//! expanding `e^{-iθx}` inside the inversion integral gives
//!
//! ```text
//! f(x) = Σ_k x^k Γ((k+1)/α) ρ^{-(k+1)} cos((k+1)θ0 - kπ/2) / (π α k!)
//! ```
//!
//! with `ρ = cos(αθ0)^{-1/α}`. On the side carrying the jumps the survival
//! function has the asymptotic expansion
//!
//! ```text
//! P(X > y) ~ (1/π) Σ_{n≥1} (-1)^{n+1} cos(αθ0)^{-n} Γ(nα)/n! sin(nαU) y^{-nα}
//! ```
//!
//! which is only used where its terms fall off by several orders per step.

use std::f64::consts::{FRAC_PI_2, PI};

use libm::lgamma as ln_gamma;

const ZERO_SERIES_TERMS: usize = 72;
const TAIL_TERMS: usize = 12;

#[derive(Debug, Clone)]
pub(crate) struct ZeroSeries {
    coeffs: Vec<f64>,
    cdf0: f64,
    radius: f64,
}

impl ZeroSeries {
    pub(crate) fn new(alpha: f64, alpha_theta0: f64, cdf0: f64) -> Self {
        let theta0 = alpha_theta0 / alpha;
        let ln_rho = -alpha_theta0.cos().ln() / alpha;
        let coeffs = (0..ZERO_SERIES_TERMS)
            .map(|k| {
                let kf = k as f64;
                let mag = (ln_gamma((kf + 1.0) / alpha) - ln_gamma(kf + 1.0) - (kf + 1.0) * ln_rho).exp();
                mag * ((kf + 1.0) * theta0 - kf * FRAC_PI_2).cos() / (PI * alpha)
            })
            .collect();
        ZeroSeries {
            coeffs,
            cdf0,
            radius: 0.5 * ln_rho.exp(),
        }
    }

    /// Largest `|x|` at which the series is used.
    pub(crate) fn radius(&self) -> f64 {
        self.radius
    }

    pub(crate) fn density(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub(crate) fn cdf(&self, x: f64) -> f64 {
        let s = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (k, c)| acc * x + c / (k as f64 + 1.0));
        self.cdf0 + x * s
    }
}

#[derive(Debug, Clone)]
pub(crate) struct TailSeries {
    alpha: f64,
    coeffs: Vec<f64>,
    threshold: f64,
}

impl TailSeries {
    /// `upper` is `U = π/2 + θ0` of the side being expanded.
    pub(crate) fn new(alpha: f64, alpha_theta0: f64, upper: f64) -> Self {
        let ln_c = -alpha_theta0.cos().ln();
        let big_a = alpha * upper;
        let coeffs = (1..=TAIL_TERMS)
            .map(|n| {
                let nf = n as f64;
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign * (nf * ln_c + ln_gamma(nf * alpha) - ln_gamma(nf + 1.0)).exp() * (nf * big_a).sin() / PI
            })
            .collect();
        // y^α ≥ 1e6 |c| keeps consecutive terms at least ~1e5 apart.
        let threshold = 2.0 * (1e6 * ln_c.exp()).powf(1.0 / alpha);
        TailSeries {
            alpha,
            coeffs,
            threshold,
        }
    }

    pub(crate) fn threshold(&self) -> f64 {
        self.threshold
    }

    fn sum(&self, y: f64, term: impl Fn(usize, f64) -> f64) -> f64 {
        let mut total = 0.0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let n = (i + 1) as f64;
            let t = term(i, c) * y.powf(-n * self.alpha);
            total += t;
            if t.abs() <= 1e-17 * total.abs() {
                break;
            }
        }
        total
    }

    pub(crate) fn sf(&self, y: f64) -> f64 {
        self.sum(y, |_, c| c)
    }

    pub(crate) fn density(&self, y: f64) -> f64 {
        self.sum(y, |i, c| c * (i + 1) as f64 * self.alpha) / y
    }

    /// `∫_y^∞ P(X > v) dv`.
    pub(crate) fn sf_integral(&self, y: f64) -> f64 {
        self.sum(y, |i, c| c / ((i + 1) as f64 * self.alpha - 1.0)) * y
    }
}
