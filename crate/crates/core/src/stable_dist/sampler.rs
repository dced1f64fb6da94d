use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Open01};

use super::kernel::alpha_theta0;
use super::StableParams;

/// Chambers–Mallows–Stuck generator with Weron's shift term, producing
/// variates under `E e^{iθX} = exp(-σ^α|θ|^α (1 - iβ sign(θ) tan(πα/2)))`.
///
/// With `V ~ U(-π/2, π/2)`, `W ~ Exp(1)`, `a = α(V + θ0)`:
///
/// ```text
/// X = σ ρ sin(a) / cos(V) · (W cos(V) / cos(V - a))^((α-1)/α)
/// ```
#[derive(Debug, Clone, Copy)]
pub struct StableSampler {
    alpha: f64,
    theta0: f64,
    scale: f64,
    power: f64,
}

impl StableSampler {
    pub fn new(p: &StableParams) -> Self {
        let at0 = alpha_theta0(p.alpha, p.beta);
        // ρ = (1 + β² tan²(πα/2))^(1/(2α)) = cos(αθ0)^(-1/α)
        let rho = at0.cos().powf(-1.0 / p.alpha);
        StableSampler {
            alpha: p.alpha,
            theta0: at0 / p.alpha,
            scale: p.sigma * rho,
            power: (p.alpha - 1.0) / p.alpha,
        }
    }

    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = Open01.sample(rng);
        let v = PI * (u - 0.5);
        let w: f64 = Exp1.sample(rng);
        let a = self.alpha * (v + self.theta0);
        let cv = v.cos();
        self.scale * a.sin() / cv * (self.power * (w * cv / (v - a).cos()).ln()).exp()
    }
}

impl Distribution<f64> for StableSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        StableSampler::sample(self, rng)
    }
}
