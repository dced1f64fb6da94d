mod common;

use std::f64::consts::PI;

use levysup::quadrature::{try_integrate_panels, QuadOptions};
use levysup::stable_dist::{
    mean_positive_part, positivity, sample, std_cdf, std_density, std_sf, StableLaw, StableParams,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn params(alpha: f64, beta: f64) -> StableParams {
    StableParams::new(alpha, beta, 1.0).unwrap()
}

#[test]
fn gaussian_density_at_zero() {
    let d = std_density(0.0, &params(2.0, -1.0)).unwrap();
    assert!((d - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
    assert!((d - 0.282_094_8).abs() < 1e-7);
}

#[test]
fn symmetric_density_at_zero_matches_fourier_oracle() {
    let oracle = fourier_density(0.0, 1.5, 0.0);
    // for β = 0 the value is also Γ(1 + 1/α) / π
    assert!((oracle - libm::tgamma(1.0 + 1.0 / 1.5) / PI).abs() < 1e-10);
    let d = std_density(0.0, &params(1.5, 0.0)).unwrap();
    assert!((d - oracle).abs() < 1e-10, "{d} vs {oracle}");
}

#[test]
fn skewed_density_matches_fourier_oracle() {
    let oracle = fourier_density(5.0, 1.5, -1.0);
    let d = std_density(5.0, &params(1.5, -1.0)).unwrap();
    assert!(d > 0.0 && d < 1e-3);
    assert!((d - oracle).abs() < 1e-8, "{d} vs {oracle}");
}

#[test]
fn cdf_matches_fourier_oracle() {
    let probes = [
        (1.3, -1.0, -3.0),
        (1.3, 1.0, 2.5),
        (1.8, -1.0, 0.4),
        (1.8, 1.0, -0.7),
        (1.5, 0.5, 1.7),
    ];
    for (a, b, x) in probes {
        let oracle = fourier_cdf(x, a, b);
        let c = std_cdf(x, &params(a, b)).unwrap();
        assert!((c - oracle).abs() < 1e-9, "α={a} β={b} x={x}: {c} vs {oracle}");
    }
}

#[test]
fn cdf_examples() {
    for b in [-1.0, 0.0, 0.7] {
        assert_eq!(std_cdf(0.0, &params(2.0, b)).unwrap(), 0.5);
    }
    assert!((std_cdf(0.0, &params(1.5, -1.0)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    let phi = 0.760_249_938_906_523_3; // Φ(1/√2)
    assert!((std_cdf(1.0, &params(2.0, 0.0)).unwrap() - phi).abs() < 1e-15);
}

#[test]
fn positivity_examples() {
    assert_eq!(positivity(&params(1.5, -1.0)).unwrap(), 1.0 / 1.5);
    assert_eq!(positivity(&params(2.0, -1.0)).unwrap(), 0.5);
    assert!((positivity(&params(1.5, 1.0)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(positivity(&params(1.7, 0.0)).unwrap(), 0.5);
}

#[test]
fn positivity_equals_one_minus_cdf_at_zero() {
    for a in [1.1, 1.3, 1.5, 1.8, 2.0] {
        for b in [-1.0, 0.0, 1.0] {
            let p = params(a, b);
            let diff = positivity(&p).unwrap() - (1.0 - std_cdf(0.0, &p).unwrap());
            assert!(diff.abs() < 1e-8, "α={a} β={b}: {diff}");
        }
    }
}

/// Leading power-law coefficient: P(X > x) ~ c (1 + β)/2 x^{-α}.
fn tail_constant(alpha: f64) -> f64 {
    (1.0 - alpha) / (libm::tgamma(2.0 - alpha) * (0.5 * PI * alpha).cos())
}

#[test]
fn density_integrates_to_one() {
    for (a, b) in [(1.5, -1.0), (1.5, 0.0), (1.3, 1.0), (1.8, -1.0)] {
        let p = params(a, b);
        let big = 1e6;
        let mut breaks = vec![0.0];
        let mut x = 0.25;
        while x < big {
            breaks.push(x);
            x *= 2.0;
        }
        breaks.push(big);
        let mut all: Vec<f64> = breaks.iter().rev().map(|x| -x).collect();
        all.extend_from_slice(&breaks[1..]);
        let body = try_integrate_panels(|x| std_density(x, &p), &all, &QuadOptions::absolute(1e-10))
            .unwrap()
            .value;
        let c = tail_constant(a);
        let tails = c * (1.0 + b) / 2.0 * big.powf(-a) + c * (1.0 - b) / 2.0 * big.powf(-a);
        assert!((body + tails - 1.0).abs() < 1e-7, "α={a} β={b}: {}", body + tails - 1.0);
    }
}

#[test]
fn cdf_derivative_matches_density() {
    let h = 1e-4;
    let mut count = 0;
    for (a, b) in [(1.2, -1.0), (1.5, 0.0), (1.5, 1.0), (1.8, -1.0), (1.95, 0.5)] {
        let p = params(a, b);
        for k in 0..10 {
            let x = -4.0 + 0.9 * k as f64;
            let num = (std_cdf(x + h, &p).unwrap() - std_cdf(x - h, &p).unwrap()) / (2.0 * h);
            let d = std_density(x, &p).unwrap();
            assert!((num - d).abs() < 1e-5, "α={a} β={b} x={x}: {num} vs {d}");
            count += 1;
        }
    }
    assert_eq!(count, 50);
}

#[test]
fn gaussian_reduction() {
    for sigma in [0.3, 1.0, 2.5] {
        let p = StableParams::new(2.0, 0.4, sigma).unwrap();
        for x in [-5.0, -1.0, 0.0, 0.3, 2.0, 7.0] {
            let d = std_density(x, &p).unwrap();
            let c = std_cdf(x, &p).unwrap();
            assert!((d - gaussian_var2_density(x, sigma)).abs() < 1e-9);
            assert!((c - (1.0 - gaussian_var2_tail(x, sigma))).abs() < 1e-9);
            assert!((std_sf(x, &p).unwrap() - gaussian_var2_tail(x, sigma)).abs() < 1e-9);
        }
    }
}

#[test]
fn scale_enters_by_rescaling_the_argument() {
    for (a, b) in [(1.4, -1.0), (1.7, 0.3)] {
        let p = StableParams::new(a, b, 2.7).unwrap();
        for x in [-3.0, 0.5, 4.0] {
            assert_eq!(std_cdf(x, &p).unwrap(), std_cdf(x / 2.7, &params(a, b)).unwrap());
        }
    }
}

#[test]
fn gaussian_sample_variance() {
    let p = params(2.0, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 1_000_000;
    let xs: Vec<f64> = (0..n).map(|_| sample(&p, &mut rng).unwrap()).collect();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
    assert!((var - 2.0).abs() < 0.02, "variance {var}");
}

fn positive_fraction(alpha: f64, seed: u64, n: usize) -> f64 {
    let p = params(alpha, -1.0);
    let sampler = StableLaw::new(p).unwrap().sampler();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).filter(|_| sampler.sample(&mut rng) > 0.0).count() as f64 / n as f64
}

#[test]
fn sampler_positive_fraction() {
    let n = 1_000_000;
    for (alpha, seed) in [(1.5, 5u64), (1.2, 6)] {
        let p = 1.0 / alpha;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let frac = positive_fraction(alpha, seed, n);
        // ECDF(0) = 1 - frac is checked against 1 - 1/α at the same tolerance
        assert!((frac - p).abs() < 3.0 * se, "α={alpha}: {frac} vs {p} (se {se})");
    }
}

#[test]
fn mean_positive_part_closed_forms() {
    let m = mean_positive_part(&params(2.0, -1.0)).unwrap();
    assert!((m - 1.0 / PI.sqrt()).abs() < 1e-9);
    for (a, b, s) in [(1.5, -1.0, 1.0), (1.5, 1.0, 1.0), (1.2, 0.0, 2.0), (1.8, 0.5, 0.5)] {
        let m = mean_positive_part(&StableParams::new(a, b, s).unwrap()).unwrap();
        let c = closed_mean_positive_part(a, b, s);
        assert!((m - c).abs() < 1e-9, "α={a} β={b}: {m} vs {c}");
    }
}

#[test]
fn mean_positive_part_matches_monte_carlo() {
    let p = params(1.5, -1.0);
    let sampler = StableLaw::new(p).unwrap().sampler();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 10_000_000;
    let (mut s1, mut s2) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let x = sampler.sample(&mut rng).max(0.0);
        s1 += x;
        s2 += x * x;
    }
    let mean = s1 / n as f64;
    let se = ((s2 / n as f64 - mean * mean) / n as f64).sqrt();
    let m = mean_positive_part(&p).unwrap();
    assert!((m - mean).abs() < 3.0 * se, "{m} vs {mean} (se {se})");
}

#[test]
fn symmetric_means_agree() {
    for a in [1.3, 1.6, 1.9] {
        let p = params(a, 0.0);
        let diff = mean_positive_part(&p).unwrap() - mean_positive_part(&p.negated()).unwrap();
        assert!(diff.abs() < 1e-12);
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(StableParams::new(1.0, 0.0, 1.0).is_err());
    assert!(StableParams::new(2.1, 0.0, 1.0).is_err());
    assert!(StableParams::new(1.5, -1.1, 1.0).is_err());
    assert!(StableParams::new(1.5, 0.0, 0.0).is_err());
    let bad = StableParams {
        alpha: 0.8,
        beta: 0.0,
        sigma: 1.0,
    };
    assert!(std_density(0.0, &bad).is_err());
    assert!(std_cdf(0.0, &bad).is_err());
    assert!(positivity(&bad).is_err());
}

fn stable_params() -> impl Strategy<Value = StableParams> {
    (1.1f64..=2.0, -1.0f64..=1.0, 0.2f64..5.0).prop_map(|(a, b, s)| StableParams::new(a, b, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cdf_is_a_monotone_probability(p in stable_params(), x in -30.0f64..30.0, dx in 0.0f64..5.0) {
        let lo = std_cdf(x, &p).unwrap();
        let hi = std_cdf(x + dx, &p).unwrap();
        prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        prop_assert!(hi >= lo - 1e-12);
        prop_assert!(std_density(x, &p).unwrap() >= 0.0);
    }

    #[test]
    fn negation_reflects_the_law(p in stable_params(), x in -20.0f64..20.0) {
        let f = std_cdf(x, &p).unwrap();
        let g = std_sf(-x, &p.negated()).unwrap();
        prop_assert!((f - g).abs() < 1e-12, "{} vs {}", f, g);
        let d1 = std_density(x, &p).unwrap();
        let d2 = std_density(-x, &p.negated()).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-12);
    }

    #[test]
    fn cdf_and_sf_are_complementary(p in stable_params(), x in -20.0f64..20.0) {
        let total = std_cdf(x, &p).unwrap() + std_sf(x, &p).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_is_scale_free(a in 1.05f64..=2.0, b in -1.0f64..=1.0, s in 0.1f64..10.0) {
        let p1 = StableParams::new(a, b, 1.0).unwrap();
        let ps = StableParams::new(a, b, s).unwrap();
        let pos = positivity(&p1).unwrap();
        prop_assert_eq!(pos, positivity(&ps).unwrap());
        prop_assert!(pos > 0.0 && pos < 1.0);
    }
}
