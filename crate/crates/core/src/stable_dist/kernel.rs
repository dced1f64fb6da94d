//! Zolotarev single-integral representation of the right half-line.
//!
//! For `y > 0` and a standardized strictly stable law with `1 < alpha < 2`,
//!
//! ```text
//! P(X > y) = (1/π) ∫_0^U exp(-y^p V(φ)) dφ
//! f(y)     = α / (π (α-1) y) ∫_0^U y^p V(φ) exp(-y^p V(φ)) dφ
//! ```
//!
//! with `p = α/(α-1)`, `U = π/2 + θ0` and `V` strictly decreasing from `+∞`
//! at `φ = 0`. `V` is evaluated through `δ = U - φ`, which keeps every factor
//! a sine of a small argument where the representation has a removable
//! `0/0` (at `δ = 0` when `β = -1`).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::Result;
use crate::quadrature::{try_integrate_panels, QuadOptions};

const KERNEL_REL_TOL: f64 = 1e-12;
const KERNEL_ABS_TOL: f64 = 1e-18;
// exp(-e^g) and e^g exp(-e^g) vanish below f64 resolution past this.
const G_CUTOFF: f64 = 700.0;

/// `α θ0 = arctan(β tan(πα/2))`, exact at `β = ±1`.
pub(crate) fn alpha_theta0(alpha: f64, beta: f64) -> f64 {
    let half_gap = 0.5 * PI * (2.0 - alpha);
    if beta == -1.0 {
        half_gap
    } else if beta == 1.0 {
        -half_gap
    } else {
        -(beta * half_gap.tan()).atan()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    alpha: f64,
    p: f64,
    q: f64,
    /// `π - αU`; zero exactly when the right tail is light (`β = -1`).
    b: f64,
    upper: f64,
    ln_c: f64,
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Cdf,
    Density,
}

impl Kernel {
    pub(crate) fn new(alpha: f64, beta: f64) -> Self {
        let at0 = alpha_theta0(alpha, beta);
        let upper = FRAC_PI_2 + at0 / alpha;
        let half_gap = 0.5 * PI * (2.0 - alpha);
        Kernel {
            alpha,
            p: alpha / (alpha - 1.0),
            q: 1.0 / (alpha - 1.0),
            b: (half_gap - at0).max(0.0),
            upper,
            ln_c: at0.cos().ln() / (alpha - 1.0),
        }
    }

    pub(crate) fn upper(&self) -> f64 {
        self.upper
    }

    pub(crate) fn has_light_tail(&self) -> bool {
        self.b == 0.0
    }

    /// `ln V(φ)` for `φ ∈ [0, U]`.
    pub(crate) fn ln_v(&self, phi: f64) -> f64 {
        let a = self.alpha;
        if phi <= 0.0 {
            return f64::INFINITY;
        }
        let delta = self.upper - phi;
        if delta <= 0.0 {
            return self.ln_v_at_upper();
        }
        let s1 = delta.sin();
        let s2 = (self.b + (a - 1.0) * delta).sin();
        let s3 = if a * phi <= FRAC_PI_2 {
            (a * phi).sin()
        } else {
            (self.b + a * delta).sin()
        };
        self.ln_c + self.q * s1.ln() + s2.ln() - self.p * s3.ln()
    }

    /// Limit of `ln V` at `φ = U`: finite only on the light side.
    pub(crate) fn ln_v_at_upper(&self) -> f64 {
        if self.has_light_tail() {
            let a = self.alpha;
            self.ln_c + (a - 1.0).ln() - self.p * a.ln()
        } else {
            f64::NEG_INFINITY
        }
    }

    /// Smallest value of `V` on `[0, U]`, reached at `U`.
    pub(crate) fn v_min(&self) -> f64 {
        self.ln_v_at_upper().exp()
    }

    fn g(&self, phi: f64, ln_y: f64) -> f64 {
        self.p * ln_y + self.ln_v(phi)
    }

    /// Solve `g(φ) = target` on `[lo, hi]`, `g` decreasing.
    fn solve(&self, ln_y: f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if !(lo < mid && mid < hi) {
                break;
            }
            if self.g(mid, ln_y) > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Breakpoints graded geometrically away from the region where the
    /// integrand changes, so that no panel hides a narrow feature.
    fn breakpoints(&self, ln_y: f64) -> Vec<f64> {
        let u = self.upper;
        let g_upper = self.g(u, ln_y);
        let mut pts = vec![0.0, u];
        if g_upper < 0.0 {
            let peak = self.solve(ln_y, 0.0, 0.0, u);
            let left = self.solve(ln_y, 1.0, 0.0, peak);
            let wl = (peak - left).max(peak * 1e-15);
            let right = if g_upper < -1.0 {
                self.solve(ln_y, -1.0, peak, u)
            } else {
                u
            };
            let wr = (right - peak).max((u - peak) * 1e-15);
            pts.push(peak);
            let mut d = wl;
            while d < peak && pts.len() < 200 {
                pts.push(peak - d);
                d *= 4.0;
            }
            let mut d = wr;
            while peak + d < u && pts.len() < 400 {
                pts.push(peak + d);
                d *= 4.0;
            }
        } else {
            // Mass sits at φ = U, where V is smallest.
            let target = (g_upper.exp() + 1.0).ln();
            let edge = self.solve(ln_y, target, 0.0, u);
            let w = (u - edge).max(u * 1e-15);
            let mut d = w;
            while d < u && pts.len() < 200 {
                pts.push(u - d);
                d *= 4.0;
            }
        }
        pts.retain(|x| x.is_finite() && *x >= 0.0 && *x <= u);
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() <= 4.0 * f64::EPSILON * u);
        pts
    }

    fn integral(&self, y: f64, shape: Shape) -> Result<f64> {
        let ln_y = y.ln();
        let pts = self.breakpoints(ln_y);
        let integrand = |phi: f64| -> Result<f64> {
            let g = self.g(phi, ln_y);
            if g > G_CUTOFF {
                return Ok(0.0);
            }
            let e = g.exp();
            Ok(match shape {
                Shape::Cdf => (-e).exp(),
                Shape::Density => (g - e).exp(),
            })
        };
        let opts = QuadOptions::mixed(KERNEL_ABS_TOL, KERNEL_REL_TOL);
        Ok(try_integrate_panels(integrand, &pts, &opts)?.value)
    }

    /// `P(X > y)` for `y > 0`.
    pub(crate) fn sf(&self, y: f64) -> Result<f64> {
        Ok((self.integral(y, Shape::Cdf)? / PI).clamp(0.0, 1.0))
    }

    /// Density at `y > 0`.
    pub(crate) fn density(&self, y: f64) -> Result<f64> {
        let i = self.integral(y, Shape::Density)?;
        Ok((self.alpha / (PI * (self.alpha - 1.0) * y) * i).max(0.0))
    }
}
