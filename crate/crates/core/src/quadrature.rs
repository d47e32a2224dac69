//! Double-exponential (tanh-sinh) quadrature and the reference integrals
//! every closed form is checked against.
//!
//! The substitution `x = tanh(pi/2 sinh u)` clusters nodes doubly
//! exponentially at both endpoints, so integrands with logarithmic endpoint
//! singularities converge at the same rate as smooth ones. The transformed
//! axis is truncated at `|u| <= 3.7` and the step is halved from `h = 1`
//! each level. Node positions are stored as distances from the nearer
//! endpoint, which keeps samples next to a singular endpoint accurate.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::{factorial, to_f64, Angle, Rational};

pub const MAX_LEVELS: u32 = 12;
pub const DEFAULT_TOL: f64 = 1e-10;
const MIN_TOL: f64 = 1e-13;
const U_MAX: f64 = 3.7;
/// Levels computed before the stopping test is trusted.
const MIN_LEVELS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute; the gap between the last two level estimates.
    pub error_estimate: f64,
    pub levels_used: u32,
    pub converged: bool,
}

/// One node on the half-axis `u >= 0`: fractional distance from the nearer
/// endpoint and the transformed weight (without the step factor).
#[derive(Debug, Clone, Copy)]
struct Node {
    offset: f64,
    weight: f64,
}

fn node(u: f64) -> Node {
    let s = FRAC_PI_2 * u.sinh();
    Node {
        // (1 - tanh s) / 2
        offset: 1.0 / ((2.0 * s).exp() + 1.0),
        weight: FRAC_PI_2 * u.cosh() / s.cosh().powi(2),
    }
}

/// Level 0 holds `u = 0, 1, 2, 3`; level `j >= 1` holds the odd multiples
/// of `2^-j` up to `U_MAX`.
fn node_table() -> &'static [Vec<Node>] {
    static TABLE: OnceLock<Vec<Vec<Node>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..MAX_LEVELS)
            .map(|level| {
                if level == 0 {
                    (0..=U_MAX as u32).map(|k| node(k as f64)).collect()
                } else {
                    let h = 0.5f64.powi(level as i32);
                    (0..)
                        .map(|i| (2 * i + 1) as f64 * h)
                        .take_while(|&u| u <= U_MAX)
                        .map(node)
                        .collect()
                }
            })
            .collect()
    })
}

/// Integrates `f` over `(a, b)`.
///
/// Stops when two successive levels agree to within `tol` (absolute) or
/// after [`MAX_LEVELS`] levels; an unconverged result is returned with
/// `converged == false` and the last gap as its error estimate. A
/// non-finite sample is an error. Nodes that round onto an endpoint are
/// skipped, so `f` is never evaluated exactly at `a` or `b`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return domain(format!("integration needs finite a < b, got ({a}, {b})"));
    }
    let tol = tol.max(MIN_TOL);
    let len = b - a;
    let half = 0.5 * len;
    let sample = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteSample(x))
        }
    };
    let pair = |n: &Node| -> Result<f64> {
        let d = len * n.offset;
        let mut s = 0.0;
        let left = a + d;
        if left > a && left < b {
            s += sample(left)?;
        }
        let right = b - d;
        if right < b && right > a {
            s += sample(right)?;
        }
        Ok(n.weight * s)
    };

    let table = node_table();
    let mut raw = 0.0;
    let mut previous = f64::NAN;
    let mut gap = f64::INFINITY;
    for (level, nodes) in table.iter().enumerate() {
        let mut level_sum = 0.0;
        for (i, n) in nodes.iter().enumerate() {
            if level == 0 && i == 0 {
                // u = 0 is the midpoint, counted once
                level_sum += n.weight * sample(a + half)?;
            } else {
                level_sum += pair(n)?;
            }
        }
        raw += level_sum;
        let h = 0.5f64.powi(level as i32);
        let estimate = half * h * raw;
        let used = level as u32 + 1;
        if level > 0 {
            gap = (estimate - previous).abs();
            if used >= MIN_LEVELS && gap < tol {
                return Ok(QuadratureResult {
                    value: estimate,
                    error_estimate: gap,
                    levels_used: used,
                    converged: true,
                });
            }
        }
        previous = estimate;
    }
    Ok(QuadratureResult {
        value: previous,
        error_estimate: gap,
        levels_used: MAX_LEVELS,
        converged: false,
    })
}

fn check_upper(x: &Angle, max: f64, what: &str) -> Result<f64> {
    let v = x.value();
    // RationalPi(1) rounds to fl(pi), so allow rounding slack above `max`.
    if !(v > 0.0) || v > max * (1.0 + 4.0 * f64::EPSILON) {
        return domain(format!("{what} upper limit {x} outside (0, {max}]"));
    }
    Ok(v)
}

/// `int_0^x t^M log|sin t| dt` by quadrature, for `x` in `(0, pi]`.
pub fn oracle_logsine_moment(moment: u32, x: &Angle) -> Result<QuadratureResult> {
    let x = check_upper(x, PI, "log|sin| moment")?;
    integrate(
        |t| t.powi(moment as i32) * t.sin().abs().ln(),
        0.0,
        x,
        DEFAULT_TOL,
    )
}

/// `int_0^z t^q log(2 sin(t/2)) dt` by quadrature, for `z` in `(0, 2 pi)`.
pub fn oracle_ls(q: u32, z: &Angle) -> Result<QuadratureResult> {
    let z = z.value();
    if !(z > 0.0 && z < 2.0 * PI) {
        return domain(format!("log(2 sin) upper limit {z} outside (0, 2pi)"));
    }
    integrate(
        |t| t.powi(q as i32) * (2.0 * (0.5 * t).sin()).ln(),
        0.0,
        z,
        DEFAULT_TOL,
    )
}

/// `Y^n(x) = -1/(n-2)! int_0^x (x-y)^(n-2) log|sin y| dy` by quadrature.
pub fn oracle_upsilon(n: u32, x: &Angle) -> Result<QuadratureResult> {
    if n < 2 {
        return domain("the integral form of Y^n needs n >= 2");
    }
    let xv = check_upper(x, PI, "Y^n")?;
    let scale = 1.0 / to_f64(&Rational::from_integer(factorial(n - 2)));
    let k = (n - 2) as i32;
    let r = integrate(
        |y| -(xv - y).powi(k) * y.sin().abs().ln(),
        0.0,
        xv,
        DEFAULT_TOL,
    )?;
    Ok(QuadratureResult {
        value: r.value * scale,
        error_estimate: r.error_estimate * scale,
        ..r
    })
}
