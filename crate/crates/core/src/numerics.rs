//! Numerical kernels: complete elliptic integrals, adaptive quadrature and
//! bracketed root finding.
//!
//! The elliptic integrals take the *modulus* `s` (not the parameter
//! `m = s²`):
//!
//! ```text
//!          π/2                               π/2
//!  K(s) =  ∫  dθ / √(1 − s² sin²θ)    E(s) =  ∫  √(1 − s² sin²θ) dθ
//!          0                                 0
//! ```
//!
//! Both are evaluated with the arithmetic-geometric mean. The quadrature
//! routine is kept independent of that path so it can serve as an oracle.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};

/// Convergence controls for iterative routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    /// Recursion depth for [`integrate`], iteration count for [`find_crossing`].
    pub max_iterations: u32,
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64, max_iterations: u32) -> Result<Self> {
        if !(absolute >= 0.0 && relative >= 0.0) {
            return Err(domain("tolerances must be non-negative"));
        }
        if absolute == 0.0 && relative == 0.0 {
            return Err(domain(
                "at least one of absolute/relative tolerance must be positive",
            ));
        }
        if max_iterations == 0 {
            return Err(domain("max_iterations must be at least 1"));
        }
        Ok(Self {
            absolute,
            relative,
            max_iterations,
        })
    }

    fn bound(&self, scale: f64) -> f64 {
        self.absolute.max(self.relative * scale.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            absolute: 1e-12,
            relative: 1e-10,
            max_iterations: 60,
        }
    }
}

/// Complete elliptic integral of the first kind, modulus `s ∈ [0, 1)`.
pub fn elliptic_k(s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(domain(format!("K(s) requires 0 <= s < 1, got {s}")));
    }
    let (a, _) = agm(1.0, complementary(s), |_, _, _| {});
    Ok(FRAC_PI_2 / a)
}

/// Complete elliptic integral of the second kind, modulus `s ∈ [0, 1]`.
pub fn elliptic_e(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(domain(format!("E(s) requires 0 <= s <= 1, got {s}")));
    }
    if s == 1.0 {
        return Ok(1.0);
    }
    // E = K (1 − Σ 2^(n−1) c_n²), c_0 = s, c_{n+1} = c_n² / (4 a_{n+1})
    let mut sum = 0.5 * s * s;
    let mut c = s;
    let mut weight = 0.5;
    let (a, _) = agm(1.0, complementary(s), |_, a_next, _| {
        c = c * c / (4.0 * a_next);
        weight *= 2.0;
        sum += weight * c * c;
    });
    Ok(FRAC_PI_2 / a * (1.0 - sum))
}

fn complementary(s: f64) -> f64 {
    ((1.0 - s) * (1.0 + s)).sqrt()
}

/// Runs the AGM iteration, calling `step(a_n, a_{n+1}, b_{n+1})` after
/// each update. Returns the converged pair.
fn agm(mut a: f64, mut b: f64, mut step: impl FnMut(f64, f64, f64)) -> (f64, f64) {
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        step(a, a_next, b_next);
        a = a_next;
        b = b_next;
    }
    (a, b)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// The acceptance threshold is `max(tol.absolute, tol.relative·|I|)`, with
/// `|I|` estimated from a 32-panel composite rule. Intervals are bisected
/// until the Richardson error estimate falls below their share of the
/// threshold or `tol.max_iterations` levels deep.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(domain(format!(
            "integration bounds must satisfy a <= b, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }

    let mut integrator = Simpson {
        f: &f,
        tol,
        hit_depth_limit: false,
        non_finite: false,
    };

    // coarse magnitude estimate for the relative criterion
    let panels = 32;
    let h = (b - a) / panels as f64;
    let mut coarse = 0.0;
    let mut pieces = Vec::with_capacity(panels);
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = if i + 1 == panels { b } else { lo + h };
        let piece = integrator.panel(lo, hi);
        coarse += piece.whole;
        pieces.push(piece);
    }
    let eps = tol.bound(coarse) / panels as f64;

    let total: f64 = pieces
        .into_iter()
        .map(|p| integrator.refine(p, eps, 0))
        .sum();

    if integrator.non_finite {
        return Err(Error::Numerical {
            message: "integrand is not finite on the interval".into(),
            best_estimate: total,
        });
    }
    if integrator.hit_depth_limit {
        return Err(Error::Numerical {
            message: format!("adaptive quadrature exceeded depth {}", tol.max_iterations),
            best_estimate: total,
        });
    }
    Ok(total)
}

#[derive(Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    whole: f64,
}

struct Simpson<'a, F> {
    f: &'a F,
    tol: Tolerance,
    hit_depth_limit: bool,
    non_finite: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    fn eval(&mut self, x: f64) -> f64 {
        let y = (self.f)(x);
        if !y.is_finite() {
            self.non_finite = true;
        }
        y
    }

    fn panel(&mut self, lo: f64, hi: f64) -> Panel {
        let (f_lo, f_hi) = (self.eval(lo), self.eval(hi));
        self.panel_with(lo, hi, f_lo, f_hi)
    }

    fn panel_with(&mut self, lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Panel {
        let f_mid = self.eval(0.5 * (lo + hi));
        let whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
        Panel {
            lo,
            hi,
            f_lo,
            f_mid,
            f_hi,
            whole,
        }
    }

    fn refine(&mut self, p: Panel, eps: f64, depth: u32) -> f64 {
        let mid = 0.5 * (p.lo + p.hi);
        let left = self.panel_with(p.lo, mid, p.f_lo, p.f_mid);
        let right = self.panel_with(mid, p.hi, p.f_mid, p.f_hi);
        let split = left.whole + right.whole;
        let delta = split - p.whole;
        if delta.abs() <= 15.0 * eps || self.non_finite {
            return split + delta / 15.0;
        }
        if depth + 1 >= self.tol.max_iterations {
            self.hit_depth_limit = true;
            return split + delta / 15.0;
        }
        self.refine(left, 0.5 * eps, depth + 1) + self.refine(right, 0.5 * eps, depth + 1)
    }
}

/// Bisection root finder on a sign-changing bracket `[lo, hi]`.
///
/// Stops when `f(x) == 0` or the bracket is narrower than
/// `max(tol.absolute, tol.relative·|x|)`. The midpoint of the final bracket
/// is returned.
pub fn find_crossing<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(domain(format!("invalid bracket [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracketing { lo, hi });
    }
    let lo_negative = f_lo < 0.0;

    for _ in 0..tol.max_iterations {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol.bound(mid) {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if hi - lo <= tol.bound(mid) {
        Ok(mid)
    } else {
        Err(Error::Numerical {
            message: format!(
                "bisection did not converge in {} iterations",
                tol.max_iterations
            ),
            best_estimate: mid,
        })
    }
}
