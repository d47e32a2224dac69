//! Newman's repeated integrals of `-log|sin x|`.
//!
//! `Y^1(x) = -log|sin x|` and `Y^n(x) = int_0^x Y^(n-1)(t) dt`, so `Y^2` is
//! Newman's original function `-int_0^x log|sin t| dt`. In closed form
//!
//! ```text
//! Y^n(x) = x^(n-1) log 2 / (n-1)!
//!        + sum_{k = 3, 5, ..., <= n} (-1)^((k+1)/2) x^(n-k) zeta(k) / ((n-k)! 2^(k-1))
//!        - (-1)^(n + floor(n/2)) Cl_n(2x) / 2^(n-1)
//! ```
//!
//! Besides the closed form this module carries three numerical routes:
//! marching the recursion itself ([`upsilon_recursive_oracle`]), the single
//! integral with kernel `(x-y)^(n-2)` ([`upsilon_nested`]), and the
//! expansion of that kernel into moments `I(m, x)` ([`upsilon_from_moments`]).

use std::f64::consts::{LN_2, PI};

use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::exact::{
    binomial, factorial, integer, inv_factorial, pow2, sign_pow, to_f64, Angle, ConstantAtom,
    Rational, SymbolicExpr,
};
use crate::logsine;
use crate::quadrature::{self, integrate};
use crate::special;
use crate::EvalResult;

/// Sign of the `zeta(k)` term: `(-1)^((k+1)/2)`, i.e. `+zeta(3)`,
/// `-zeta(5)`, `+zeta(7)`, ...
pub fn zeta_sign(k: u32) -> i64 {
    sign_pow((k as i64 + 1) / 2)
}

/// Sign in front of `Cl_n(2x) / 2^(n-1)`: `-(-1)^(n + floor(n/2))`.
fn clausen_sign(n: u32) -> i64 {
    -sign_pow(n as i64 + n as i64 / 2)
}

pub(crate) fn rpow(r: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

fn factorial_f64(n: u32) -> f64 {
    to_f64(&Rational::from_integer(factorial(n)))
}

/// `Y^n(x)` from the closed form, for any real `x`.
pub fn upsilon(n: u32, x: &Angle) -> Result<EvalResult> {
    upsilon_with_zeta_signs(n, x, zeta_sign)
}

/// The closed form with a caller-supplied sign for each `zeta(k)` term.
///
/// Used to derive the sign pattern against the recursion oracle; ordinary
/// callers want [`upsilon`].
pub fn upsilon_with_zeta_signs<S>(n: u32, x: &Angle, sign: S) -> Result<EvalResult>
where
    S: Fn(u32) -> i64,
{
    if n == 0 {
        return domain("Y^n needs n >= 1");
    }
    let xv = x.value();
    if n == 1 {
        let singular = match x.pi_coefficient() {
            Some(c) => c.is_integer(),
            None => xv.sin().abs() <= 1e-15,
        };
        if singular {
            return Err(Error::Singularity(format!(
                "Y^1 = -log|sin x| is singular at x = {x}"
            )));
        }
        let v = -xv.sin().abs().ln();
        return Ok(EvalResult::new(v, 4.0 * f64::EPSILON * v.abs().max(1.0)));
    }

    let mut parts = Vec::with_capacity(n as usize);
    let mut err = 0.0;
    parts.push(xv.powi(n as i32 - 1) * LN_2 / factorial_f64(n - 1));
    for k in (3..=n).step_by(2) {
        let z = special::zeta_int(k as i64)?;
        let c = sign(k) as f64 * xv.powi((n - k) as i32)
            / (factorial_f64(n - k) * 2f64.powi(k as i32 - 1));
        parts.push(c * z.value);
        err += c.abs() * z.error_estimate;
    }
    let cl = special::clausen(n, &x.scale(&integer(2)))?;
    let scale = clausen_sign(n) as f64 / 2f64.powi(n as i32 - 1);
    parts.push(scale * cl.value);
    err += scale.abs() * cl.error_estimate;

    let value: f64 = parts.iter().sum();
    let magnitude: f64 = parts.iter().map(|p| p.abs()).sum();
    Ok(EvalResult::new(value, err + 4.0 * f64::EPSILON * magnitude))
}

/// `Y^n(x)` as an exact expression, for `n >= 2` and `x` a rational
/// multiple of pi. `Cl_n(2x)` collapses to zeta values where `2x` reduces
/// to `0`, `pi` (all orders) or `pi/2`, `3pi/2` (odd orders).
pub fn upsilon_symbolic(n: u32, x: &Angle) -> Result<SymbolicExpr> {
    if n < 2 {
        return domain("symbolic Y^n needs n >= 2");
    }
    let r = x.require_pi_coefficient()?;
    let mut expr = SymbolicExpr::term(
        rpow(r, n - 1) * inv_factorial(n as i64 - 1),
        n - 1,
        ConstantAtom::LogTwo,
    );
    for k in (3..=n).step_by(2) {
        let c = integer(zeta_sign(k)) * rpow(r, n - k) * inv_factorial((n - k) as i64)
            / pow2(k as i32 - 1);
        expr = expr.add(&SymbolicExpr::term(c, n - k, ConstantAtom::ZetaOdd(k)));
    }
    let cl = special::clausen_symbolic(n, &x.scale(&integer(2)))?;
    let c = integer(clausen_sign(n)) / pow2(n as i32 - 1);
    Ok(expr.add(&cl.scale(&c)))
}

fn check_oracle_domain(x: &Angle) -> Result<f64> {
    let v = x.value();
    if !(v > 0.0) || v > PI * (1.0 + 4.0 * f64::EPSILON) {
        return domain(format!("oracle evaluation needs x in (0, pi], got {x}"));
    }
    Ok(v)
}

/// Chebyshev points per panel for the recursion march, and the coarser
/// count whose disagreement provides the error estimate.
const PANEL_POINTS: usize = 24;
const PANEL_POINTS_COARSE: usize = 16;
/// Smallest panel width relative to `x`.
const GRADING_FLOOR: f64 = 1e-15;
const INNER_TOL: f64 = 1e-12;

/// `Y^n(x)` by repeated integration: `Y^2` from quadrature of `-log|sin|`,
/// then `Y^3, ..., Y^n` by integrating each order from the one below.
pub fn upsilon_recursive_oracle(n: u32, x: &Angle) -> Result<EvalResult> {
    let table = upsilon_recursive_table(n, x)?;
    Ok(table[table.len() - 1])
}

/// `[Y^2(x), ..., Y^max_n(x)]` from one run of the recursion.
///
/// `Y^2` is evaluated by the quadrature oracle at Chebyshev points of a set
/// of panels graded geometrically toward `0` (and toward `x` when `x` is
/// near the singularity at `pi`). On each panel the running order is
/// interpolated and integrated spectrally, and the values at the panel's
/// right end seed the next panel, which is the recursion
/// `Y^k(b) = Y^k(a) + int_a^b Y^(k-1)` applied order by order.
pub fn upsilon_recursive_table(max_n: u32, x: &Angle) -> Result<Vec<EvalResult>> {
    if max_n < 2 {
        return domain("the recursion starts at Y^2");
    }
    let xv = check_oracle_domain(x)?;
    let panels = graded_panels(xv);
    let (fine, fine_err) = march(max_n, &panels, PANEL_POINTS)?;
    let (coarse, coarse_err) = march(max_n, &panels, PANEL_POINTS_COARSE)?;
    let inner = fine_err.max(coarse_err);
    Ok(fine
        .iter()
        .zip(&coarse)
        .enumerate()
        .map(|(i, (f, c))| {
            // an error eps in Y^2 moves Y^n by at most eps x^(n-2) / (n-2)!
            let order = i as u32;
            let propagated = inner * xv.powi(order as i32) / factorial_f64(order);
            EvalResult::new(*f, (f - c).abs() + propagated)
        })
        .collect())
}

fn graded_panels(x: f64) -> Vec<(f64, f64)> {
    let floor = GRADING_FLOOR * x;
    let mut cuts = vec![0.0];
    let mut left = Vec::new();
    let mut w = 0.5 * x;
    while w > floor {
        left.push(w);
        w *= 0.5;
    }
    cuts.extend(left.into_iter().rev());
    let distance_to_pi = (PI - x).max(0.0);
    let mut w = 0.25 * x;
    while w > distance_to_pi.max(floor) {
        cuts.push(x - w);
        w *= 0.5;
    }
    cuts.push(x);
    cuts.windows(2).map(|c| (c[0], c[1])).collect()
}

fn upsilon2_by_quadrature(t: f64) -> Result<(f64, f64)> {
    if t <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let r = integrate(|y| -y.sin().abs().ln(), 0.0, t, INNER_TOL)?;
    Ok((r.value, r.error_estimate))
}

/// Runs the panel march with `m` Chebyshev intervals per panel. Returns the
/// values of `Y^2..=Y^max_n` at the right end and the largest quadrature
/// error estimate seen for `Y^2`.
fn march(max_n: u32, panels: &[(f64, f64)], m: usize) -> Result<(Vec<f64>, f64)> {
    let orders = (max_n - 1) as usize;
    let integrator = ChebyshevIntegrator::new(m);
    let mut at_left = vec![0.0; orders];
    let mut worst = 0.0f64;
    for &(a, b) in panels {
        let mut current = Vec::with_capacity(m + 1);
        for &s in &integrator.points {
            let t = a + 0.5 * (b - a) * (s + 1.0);
            let (v, e) = upsilon2_by_quadrature(t)?;
            worst = worst.max(e);
            current.push(v);
        }
        // points run from s = 1 (t = b) down to s = -1 (t = a)
        at_left[0] = current[0];
        for slot in at_left.iter_mut().skip(1) {
            let integral = integrator.cumulative(&current, b - a);
            current = integral.iter().map(|v| v + *slot).collect();
            *slot = current[0];
        }
    }
    Ok((at_left, worst))
}

/// Spectral indefinite integration at Chebyshev points of the second kind
/// `s_j = cos(j pi / m)`, `j = 0..=m`.
struct ChebyshevIntegrator {
    m: usize,
    points: Vec<f64>,
    /// `cos(k j pi / m)` for `k = 0..=m+1`, row-major in `k`.
    cosines: Vec<f64>,
}

impl ChebyshevIntegrator {
    fn new(m: usize) -> Self {
        let points = (0..=m).map(|j| (j as f64 * PI / m as f64).cos()).collect();
        let mut cosines = Vec::with_capacity((m + 2) * (m + 1));
        for k in 0..=m + 1 {
            for j in 0..=m {
                cosines.push(((k * j) as f64 * PI / m as f64).cos());
            }
        }
        ChebyshevIntegrator { m, points, cosines }
    }

    fn cos(&self, k: usize, j: usize) -> f64 {
        self.cosines[k * (self.m + 1) + j]
    }

    /// Values of `int_a^t f` at the points, given `f` at the points on a
    /// panel of length `len`.
    fn cumulative(&self, f: &[f64], len: f64) -> Vec<f64> {
        let m = self.m;
        let mut a = vec![0.0; m + 3];
        for (k, ak) in a.iter_mut().enumerate().take(m + 1) {
            let mut s = 0.0;
            for (j, fj) in f.iter().enumerate() {
                let w = if j == 0 || j == m { 0.5 } else { 1.0 };
                s += w * fj * self.cos(k, j);
            }
            *ak = 2.0 * s / m as f64;
        }
        a[0] *= 0.5;
        a[m] *= 0.5;
        // coefficients of the antiderivative, T_1 .. T_(m+1)
        let mut b = vec![0.0; m + 2];
        b[1] = a[0] - 0.5 * a[2];
        for k in 2..=m + 1 {
            b[k] = (a[k - 1] - a[k + 1]) / (2 * k) as f64;
        }
        let at_minus_one: f64 = (1..=m + 1)
            .map(|k| if k % 2 == 0 { b[k] } else { -b[k] })
            .sum();
        (0..=m)
            .map(|j| {
                let v: f64 = (1..=m + 1).map(|k| b[k] * self.cos(k, j)).sum();
                0.5 * len * (v - at_minus_one)
            })
            .collect()
    }
}

/// `Y^n(x) = -1/(n-2)! int_0^x (x-y)^(n-2) log|sin y| dy`, one quadrature.
pub fn upsilon_nested(n: u32, x: &Angle) -> Result<EvalResult> {
    check_oracle_domain(x)?;
    Ok(quadrature::oracle_upsilon(n, x)?.into())
}

/// `Y^n(x)` from the moments `I(j, x)` of `log|sin|`:
/// `-1/(n-2)! sum_j C(n-2, j) (-1)^j x^(n-2-j) I(j, x)`.
pub fn upsilon_from_moments(n: u32, x: &Angle) -> Result<EvalResult> {
    if n < 2 {
        return domain("the moment expansion of Y^n needs n >= 2");
    }
    let xv = x.value();
    let d = n - 2;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for j in 0..=d {
        let moment = logsine::logsine_moment(j, x)?;
        let c = to_f64(&Rational::from_integer(binomial(d, j)))
            * sign_pow(j as i64) as f64
            * xv.powi((d - j) as i32);
        value += c * moment.value;
        err += c.abs() * moment.error_estimate;
        magnitude += (c * moment.value).abs();
    }
    let scale = -1.0 / factorial_f64(d);
    Ok(EvalResult::new(
        scale * value,
        scale.abs() * (err + 4.0 * f64::EPSILON * magnitude),
    ))
}

/// Evaluation point for the sign derivation, away from all special angles.
fn sign_probe() -> Angle {
    Angle::pi_fraction(2, 7)
}

/// Derives the sign of each `zeta(k)` term, `k = 3, 5, ... <= max_order`,
/// by testing both choices against the recursion oracle at order `k`,
/// where `zeta(k)` first appears as the constant term.
pub fn derive_zeta_signs(max_order: u32) -> Result<Vec<(u32, i64)>> {
    let x = sign_probe();
    let oracle = upsilon_recursive_table(max_order.max(2), &x)?;
    let mut derived: Vec<(u32, i64)> = Vec::new();
    for k in (3..=max_order).step_by(2) {
        let reference = oracle[(k - 2) as usize];
        let tol = 1e-7f64.max(reference.error_estimate);
        let mut matches = Vec::new();
        for trial in [1i64, -1] {
            let v = upsilon_with_zeta_signs(k, &x, |j| {
                if j == k {
                    trial
                } else {
                    derived
                        .iter()
                        .find(|(kk, _)| *kk == j)
                        .map(|(_, s)| *s)
                        .unwrap_or(0)
                }
            })?;
            if (v.value - reference.value).abs() <= tol {
                matches.push(trial);
            }
        }
        match matches.as_slice() {
            [s] => derived.push((k, *s)),
            _ => {
                return Err(Error::Domain(format!(
                    "could not fix the sign of the zeta({k}) term: candidates {matches:?}"
                )))
            }
        }
    }
    Ok(derived)
}

/// Checks [`zeta_sign`] against [`derive_zeta_signs`] and fails on any
/// mismatch.
pub fn verify_zeta_signs(max_order: u32) -> Result<()> {
    for (k, s) in derive_zeta_signs(max_order)? {
        if s != zeta_sign(k) {
            return Err(Error::Domain(format!(
                "zeta({k}) sign: closed form uses {}, recursion requires {s}",
                zeta_sign(k)
            )));
        }
    }
    Ok(())
}

/// Coefficient of `zeta(k)` (with `pi^0`) in an expression, as a helper for
/// reporting.
pub fn zeta_coefficient(expr: &SymbolicExpr, k: u32, pi_power: u32) -> Rational {
    expr.coefficient(&ConstantAtom::ZetaOdd(k), pi_power)
}
