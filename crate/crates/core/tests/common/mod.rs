//! Reference values computed by routes independent of the library code.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Trapezoid nodes used by the Fourier-inversion oracle.
pub const FOURIER_NODES: usize = 1_000_000;

fn compensated_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for t in terms {
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum
}

/// Trapezoid rule on `θ = v^4`, `v ∈ [0, v_max]`, for
/// `(1/π) ∫_0^∞ g(θ) dθ` where the characteristic function has been
/// written out explicitly. The substitution smooths the `θ^α` cusp at 0.
fn fourier_trapezoid(alpha: f64, integrand: impl Fn(f64, f64) -> f64) -> f64 {
    // e^{-θ^α} < 1e-20 beyond θ^α = 46
    let theta_max = 46f64.powf(1.0 / alpha);
    let v_max = theta_max.powf(0.25);
    let h = v_max / FOURIER_NODES as f64;
    let s = compensated_sum((1..FOURIER_NODES).map(|i| {
        let v = i as f64 * h;
        let theta = v * v * v * v;
        integrand(theta, v)
    }));
    s * h / PI
}

/// Density of the unit-scale law with E e^{iθX} = exp(-|θ|^α (1 - iβ sign θ tan(πα/2))).
pub fn fourier_density(x: f64, alpha: f64, beta: f64) -> f64 {
    let bt = beta * (0.5 * PI * alpha).tan();
    fourier_trapezoid(alpha, |theta, v| {
        let ta = theta.powf(alpha);
        (-ta).exp() * (ta * bt - theta * x).cos() * 4.0 * v * v * v
    })
}

/// Gil-Pelaez inversion: F(x) = 1/2 - (1/π) ∫ Im(e^{-iθx} φ(θ)) / θ dθ.
pub fn fourier_cdf(x: f64, alpha: f64, beta: f64) -> f64 {
    let bt = beta * (0.5 * PI * alpha).tan();
    0.5 - fourier_trapezoid(alpha, |theta, v| {
        let ta = theta.powf(alpha);
        (-ta).exp() * (ta * bt - theta * x).sin() * 4.0 / v
    })
}

/// E max(X, 0) = E|X|/2 = Γ(1 - 1/α) Re(c^{1/α}) / π with c = σ^α (1 - iβ tan(πα/2)).
pub fn closed_mean_positive_part(alpha: f64, beta: f64, sigma: f64) -> f64 {
    let t = (0.5 * PI * alpha).tan();
    let modulus = (1.0 + beta * beta * t * t).sqrt();
    let arg = (-beta * t).atan();
    sigma * libm::tgamma(1.0 - 1.0 / alpha) * modulus.powf(1.0 / alpha) * (arg / alpha).cos() / PI
}

/// P(N(0, 2 v²) > x).
pub fn gaussian_var2_tail(x: f64, v: f64) -> f64 {
    0.5 * libm::erfc(x / (2.0 * v))
}

pub fn gaussian_var2_density(x: f64, v: f64) -> f64 {
    (-(x * x) / (4.0 * v * v)).exp() / (2.0 * v * PI.sqrt())
}

/// α E Z⁺(t) for spectrally negative stable `Z`, from the closed-form mean.
pub fn closed_esup_stable_negative(alpha: f64, t: f64) -> f64 {
    alpha * closed_mean_positive_part(alpha, -1.0, t.powf(1.0 / alpha))
}

/// E sup of Brownian motion with Var B(t) = 2 v² t: E|B(t)| = 2 v √t / √π.
pub fn brownian_esup(v: f64, t: f64) -> f64 {
    2.0 * v * t.sqrt() / PI.sqrt()
}

/// A closed-form integral and the call that evaluates it numerically.
pub struct QuadCase {
    pub name: &'static str,
    pub exact: f64,
    pub tol: f64,
    pub run: Box<dyn Fn(f64) -> levysup::Result<levysup::quadrature::QuadratureResult>>,
}

/// Twenty integrals with known values, covering smooth, algebraic-endpoint
/// and semi-infinite cases.
pub fn quadrature_cases() -> Vec<QuadCase> {
    use levysup::quadrature::*;
    let e = std::f64::consts::E;
    let case = |name: &'static str, exact: f64, run: Box<dyn Fn(f64) -> levysup::Result<QuadratureResult>>| QuadCase {
        name,
        exact,
        tol: 1e-10,
        run,
    };
    let power_lower = |alpha: f64| 1.0 / alpha - 1.0;
    let ex13 = power_lower(1.3);
    vec![
        case(
            "x^2 on [0,1]",
            1.0 / 3.0,
            Box::new(|tol| integrate_adaptive(|x| x * x, 0.0, 1.0, tol)),
        ),
        case(
            "sin on [0,pi]",
            2.0,
            Box::new(|tol| integrate_adaptive(f64::sin, 0.0, PI, tol)),
        ),
        case(
            "exp on [0,1]",
            e - 1.0,
            Box::new(|tol| integrate_adaptive(f64::exp, 0.0, 1.0, tol)),
        ),
        case(
            "1/(1+x^2) on [0,1]",
            PI / 4.0,
            Box::new(|tol| integrate_adaptive(|x| 1.0 / (1.0 + x * x), 0.0, 1.0, tol)),
        ),
        case(
            "ln(1+x) on [0,1]",
            2.0 * 2f64.ln() - 1.0,
            Box::new(|tol| integrate_adaptive(|x: f64| x.ln_1p(), 0.0, 1.0, tol)),
        ),
        case(
            "sqrt(1-x^2) on [-1,1]",
            PI / 2.0,
            Box::new(|tol| integrate_adaptive(|x: f64| (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0, tol)),
        ),
        case(
            "ln x on [0,1]",
            -1.0,
            Box::new(|tol| integrate_adaptive(|x: f64| if x > 0.0 { x.ln() } else { 0.0 }, 0.0, 1.0, tol)),
        ),
        case(
            "sin^2 on [0,20]",
            10.0 - (40f64).sin() / 4.0,
            Box::new(|tol| integrate_adaptive(|x: f64| x.sin().powi(2), 0.0, 20.0, tol)),
        ),
        case(
            "x^-1/2 on [0,1]",
            2.0,
            Box::new(|tol| integrate_power_endpoint(|x: f64| x.powf(-0.5), 0.0, 1.0, Endpoint::Lower, -0.5, tol)),
        ),
        case(
            "s^(1/1.2-1) on [0,1]",
            1.2,
            Box::new(move |tol| {
                integrate_power_endpoint(
                    |s: f64| s.powf(1.0 / 1.2 - 1.0),
                    0.0,
                    1.0,
                    Endpoint::Lower,
                    power_lower(1.2),
                    tol,
                )
            }),
        ),
        case(
            "s^(1/1.5-1) on [0,1]",
            1.5,
            Box::new(move |tol| {
                integrate_power_endpoint(
                    |s: f64| s.powf(1.0 / 1.5 - 1.0),
                    0.0,
                    1.0,
                    Endpoint::Lower,
                    power_lower(1.5),
                    tol,
                )
            }),
        ),
        case(
            "s^(1/1.8-1) on [0,4]",
            1.8 * 4f64.powf(1.0 / 1.8),
            Box::new(move |tol| {
                integrate_power_endpoint(
                    |s: f64| s.powf(1.0 / 1.8 - 1.0),
                    0.0,
                    4.0,
                    Endpoint::Lower,
                    power_lower(1.8),
                    tol,
                )
            }),
        ),
        case(
            "(1-x)^-1/2 on [0,1]",
            2.0,
            Box::new(|tol| {
                integrate_power_endpoint(|x: f64| (1.0 - x).powf(-0.5), 0.0, 1.0, Endpoint::Upper, -0.5, tol)
            }),
        ),
        case(
            "x^-1/2 (1+x) on [0,1]",
            8.0 / 3.0,
            Box::new(|tol| {
                integrate_power_endpoint(|x: f64| (1.0 + x) / x.sqrt(), 0.0, 1.0, Endpoint::Lower, -0.5, tol)
            }),
        ),
        case(
            "(2-s)^(1/1.3-1) s^2 on [0,2]",
            4.0 * 2f64.powf(ex13 + 1.0) / (ex13 + 1.0) - 4.0 * 2f64.powf(ex13 + 2.0) / (ex13 + 2.0)
                + 2f64.powf(ex13 + 3.0) / (ex13 + 3.0),
            Box::new(move |tol| {
                integrate_power_endpoint(
                    move |s: f64| (2.0 - s).powf(ex13) * s * s,
                    0.0,
                    2.0,
                    Endpoint::Upper,
                    ex13,
                    tol,
                )
            }),
        ),
        case(
            "exp(-x) on [0,inf)",
            1.0,
            Box::new(|tol| {
                integrate_upper_tail(
                    |x: f64| (-x).exp(),
                    0.0,
                    &ExponentialTail { scale: 1.0, rate: 1.0 },
                    tol,
                )
            }),
        ),
        case(
            "x exp(-x) on [0,inf)",
            1.0,
            Box::new(|tol| {
                integrate_upper_tail(
                    |x: f64| x * (-x).exp(),
                    0.0,
                    &ExponentialTail {
                        scale: 2.0 / std::f64::consts::E,
                        rate: 0.5,
                    },
                    tol,
                )
            }),
        ),
        case(
            "x^-3 on [1,inf)",
            0.5,
            Box::new(|tol| {
                integrate_upper_tail(
                    |x: f64| x.powi(-3),
                    1.0,
                    &PowerTail {
                        scale: 1.0,
                        exponent: 3.0,
                    },
                    tol,
                )
            }),
        ),
        case(
            "exp(-x^2) on [0,inf)",
            PI.sqrt() / 2.0,
            Box::new(|tol| {
                integrate_upper_tail(
                    |x: f64| (-x * x).exp(),
                    0.0,
                    &StretchedExponentialTail {
                        scale: 1.0,
                        rate: 1.0,
                        power: 2.0,
                    },
                    tol,
                )
            }),
        ),
        case(
            "exp(-x^1.5) on [0,inf)",
            libm::tgamma(1.0 + 1.0 / 1.5),
            Box::new(|tol| {
                integrate_upper_tail(
                    |x: f64| (-x.powf(1.5)).exp(),
                    0.0,
                    &StretchedExponentialTail {
                        scale: 1.0,
                        rate: 1.0,
                        power: 1.5,
                    },
                    tol,
                )
            }),
        ),
    ]
}
