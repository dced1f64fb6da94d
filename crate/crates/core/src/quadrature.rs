//! Globally adaptive Gauss–Kronrod quadrature.
//!
//! Every routine uses the 21-point Kronrod rule with its embedded 10-point
//! Gauss rule. The local error estimate is the raw difference `|K21 - G10|`,
//! floored at a round-off level, which overstates the true error of the
//! Kronrod value on smooth panels. The interval with the largest estimate
//! is bisected until the summed estimate meets the target or the evaluation
//! budget runs out.
//!
//! On top of the plain integrator sit two helpers: one removes an algebraic
//! endpoint singularity by a power substitution, the other truncates a
//! semi-infinite integral where a caller-supplied tail bound says the
//! remainder is negligible.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Evaluation budget shared by all integrators unless overridden.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_252_881,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd-indexed Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Value, error estimate and cost of one numerical integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Stopping rule: converged once `error <= max(abs_tol, rel_tol * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evaluations: usize,
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        QuadOptions {
            abs_tol: tol,
            rel_tol: 0.0,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn mixed(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            rel_tol,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }

    pub fn with_max_evaluations(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }

    fn validate(&self) -> Result<()> {
        let ok = self.abs_tol >= 0.0
            && self.rel_tol >= 0.0
            && (self.abs_tol > 0.0 || self.rel_tol > 0.0)
            && self.abs_tol.is_finite()
            && self.rel_tol.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "tolerance must be positive and finite (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )))
        }
    }
}

/// Which end of the interval carries the algebraic singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn eval<F>(f: &mut F, x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let y = f(x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::domain(format!("integrand is not finite at x = {x:e} ({y})")))
    }
}

fn gauss_kronrod_21<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs_sum = WGK[10] * fc.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let roundoff = 50.0 * f64::EPSILON * abs_value;
    let error = ((kronrod - gauss) * half).abs().max(roundoff);
    Ok(Panel { a, b, value, error })
}

/// Global adaptive integration over the panels delimited by `breaks`.
fn adaptive_core<F>(f: &mut F, breaks: &[f64], opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    opts.validate()?;
    if breaks.len() < 2 {
        return Err(Error::domain("need at least one integration panel"));
    }
    for w in breaks.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::domain(format!(
                "integration limits must be finite and increasing ({}, {})",
                w[0], w[1]
            )));
        }
    }

    let mut heap = BinaryHeap::with_capacity(64);
    let mut evaluations = 0usize;
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        let p = gauss_kronrod_21(f, w[0], w[1])?;
        evaluations += 21;
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    let mut iterations = 0usize;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * total.abs());
        if total_err <= target {
            break;
        }
        if evaluations + 42 > opts.max_evaluations {
            return Err(Error::Convergence {
                what: "evaluation budget exhausted".into(),
                value: total,
                error: total_err,
                target,
                evaluations,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            return Err(Error::Convergence {
                what: format!("panel [{:e}, {:e}] cannot be subdivided further", worst.a, worst.b),
                value: total,
                error: total_err,
                target,
                evaluations,
            });
        }
        let left = gauss_kronrod_21(f, worst.a, mid)?;
        let right = gauss_kronrod_21(f, mid, worst.b)?;
        evaluations += 42;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        iterations += 1;
        if iterations.is_multiple_of(64) {
            // Resum to keep cancellation drift out of the running totals.
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(QuadratureResult {
        value: panels.iter().map(|p| p.value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        evaluations,
    })
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive_with(f, a, b, &QuadOptions::absolute(tol))
}

pub fn integrate_adaptive_with<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    adaptive_core(&mut |x| Ok(f(x)), &[a, b], opts)
}

/// Fallible integrand over a sequence of breakpoints. Errors raised by the
/// integrand abort the integration and are returned unchanged.
pub fn try_integrate_panels<F>(f: F, breaks: &[f64], opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f = f;
    adaptive_core(&mut f, breaks, opts)
}

/// Integrate `f` over `[a, b]` when `f` behaves like `d^exponent` near the
/// chosen endpoint, `d` being the distance to it and `-1 < exponent < 0`.
///
/// For a lower endpoint the substitution `x = a + w^(1/(1+exponent))` turns
/// the integrand into a bounded function of `w`; the upper endpoint is
/// mirrored.
pub fn integrate_power_endpoint<F>(
    f: F,
    a: f64,
    b: f64,
    endpoint: Endpoint,
    exponent: f64,
    tol: f64,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    try_integrate_power_endpoint(|x| Ok(f(x)), a, b, endpoint, exponent, &QuadOptions::absolute(tol))
}

pub fn try_integrate_power_endpoint<F>(
    f: F,
    a: f64,
    b: f64,
    endpoint: Endpoint,
    exponent: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(exponent > -1.0 && exponent < 0.0) {
        return Err(Error::domain(format!("endpoint exponent {exponent} outside (-1, 0)")));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    let width = b - a;
    let at = |d: f64| match endpoint {
        Endpoint::Lower => a + d,
        Endpoint::Upper => b - d,
    };

    // Empirical check that f * d^(-exponent) stays bounded approaching the endpoint.
    let mut scaled = [0.0f64; 8];
    for (k, s) in scaled.iter_mut().enumerate() {
        let d = width * 8f64.powi(-(k as i32) - 1);
        let y = f(at(d))?;
        *s = y.abs() * d.powf(-exponent);
        if !s.is_finite() {
            return Err(Error::domain(format!(
                "integrand is not finite at distance {d:e} from the endpoint"
            )));
        }
    }
    let outer = scaled[..4].iter().cloned().fold(0.0, f64::max);
    if scaled[7] > 100.0 * outer + f64::MIN_POSITIVE {
        return Err(Error::domain(format!(
            "integrand grows faster than distance^{exponent} at the endpoint"
        )));
    }

    let power = 1.0 / (1.0 + exponent);
    let w_max = width.powf(1.0 + exponent);
    let mut g = |w: f64| -> Result<f64> {
        let d = w.powf(power);
        if d <= 0.0 {
            return Ok(0.0);
        }
        let y = f(at(d.min(width)))?;
        Ok(y * power * w.powf(power - 1.0))
    };
    adaptive_core(&mut g, &[0.0, w_max], opts)
}

/// Upper bound `g` for a nonnegative integrand beyond some point, together
/// with the analytic remainder `∫_x^∞ g`.
pub trait TailBound {
    fn bound(&self, x: f64) -> f64;
    fn remainder(&self, x: f64) -> f64;
}

/// `scale * exp(-rate * x)`.
#[derive(Debug, Clone, Copy)]
pub struct ExponentialTail {
    pub scale: f64,
    pub rate: f64,
}

impl TailBound for ExponentialTail {
    fn bound(&self, x: f64) -> f64 {
        self.scale * (-self.rate * x).exp()
    }
    fn remainder(&self, x: f64) -> f64 {
        self.scale * (-self.rate * x).exp() / self.rate
    }
}

/// `scale * x^(-exponent)` with `exponent > 1`, for `x > 0`.
#[derive(Debug, Clone, Copy)]
pub struct PowerTail {
    pub scale: f64,
    pub exponent: f64,
}

impl TailBound for PowerTail {
    fn bound(&self, x: f64) -> f64 {
        self.scale * x.powf(-self.exponent)
    }
    fn remainder(&self, x: f64) -> f64 {
        if self.exponent <= 1.0 {
            return f64::INFINITY;
        }
        self.scale * x.powf(1.0 - self.exponent) / (self.exponent - 1.0)
    }
}

/// `scale * exp(-rate * x^power)` with `power >= 1`, for `x > 0`.
///
/// The remainder uses `x^p >= c^p + p c^(p-1) (x - c)`, so it is itself an
/// upper bound on the exact tail integral of the bound.
#[derive(Debug, Clone, Copy)]
pub struct StretchedExponentialTail {
    pub scale: f64,
    pub rate: f64,
    pub power: f64,
}

impl TailBound for StretchedExponentialTail {
    fn bound(&self, x: f64) -> f64 {
        self.scale * (-self.rate * x.powf(self.power)).exp()
    }
    fn remainder(&self, x: f64) -> f64 {
        let slope = self.rate * self.power * x.powf(self.power - 1.0);
        self.bound(x) / slope
    }
}

/// Integrate a nonnegative `f` over `[a, ∞)`.
///
/// The range is cut where `tail.remainder` drops below `tol / 2`, and the
/// finite part is integrated to `tol / 2` on panels whose widths double
/// away from `a`. The reported error adds the discarded remainder.
pub fn integrate_upper_tail<F, T>(f: F, a: f64, tail: &T, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
    T: TailBound + ?Sized,
{
    try_integrate_upper_tail(|x| Ok(f(x)), a, tail, 1.0, &QuadOptions::absolute(tol))
}

/// Fallible version of [`integrate_upper_tail`]. `length_scale` sets the
/// width of the first panel.
pub fn try_integrate_upper_tail<F, T>(
    f: F,
    a: f64,
    tail: &T,
    length_scale: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
    T: TailBound + ?Sized,
{
    opts.validate()?;
    if !a.is_finite() || !(length_scale > 0.0) {
        return Err(Error::domain(format!(
            "invalid tail integral start {a} / scale {length_scale}"
        )));
    }
    let half = 0.5 * opts.abs_tol;
    let mut breaks = vec![a];
    let mut step = length_scale;
    let cutoff = loop {
        let c = a + step;
        breaks.push(c);
        let r = tail.remainder(c);
        if r.is_finite() && r < half {
            break c;
        }
        step *= 2.0;
        if !step.is_finite() || breaks.len() > 2100 {
            return Err(Error::TailBound(format!(
                "tail remainder stays above {half:e}; last value {r:e} at x = {c:e}"
            )));
        }
    };
    let fc = f(cutoff)?;
    let bc = tail.bound(cutoff);
    if fc > bc * (1.0 + 1e-6) + f64::MIN_POSITIVE {
        return Err(Error::TailBound(format!(
            "integrand {fc:e} exceeds its tail bound {bc:e} at x = {cutoff:e}"
        )));
    }
    let inner = QuadOptions { abs_tol: half, ..*opts };
    let mut g = f;
    let res = adaptive_core(&mut g, &breaks, &inner)?;
    Ok(QuadratureResult {
        value: res.value,
        error_estimate: res.error_estimate + tail.remainder(cutoff),
        evaluations: res.evaluations + 1,
    })
}
