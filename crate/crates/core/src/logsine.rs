//! Log-sine integrals.
//!
//! Two kernels appear and are kept apart:
//!
//! - `I(M, x) = int_0^x t^M log|sin t| dt`, assembled from Newman's
//!   repeated integrals by integration by parts,
//! - `int_0^z t^q log(2 sin(t/2)) dt`, which has a closed form in Clausen
//!   values at `z` (and `zeta(q+2)` for odd `q`).
//!
//! The only bridge between the two is [`ls_via_substitution`] (`t = 2s`).

use std::f64::consts::{LN_2, PI};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::{
    factorial, integer, inv_factorial, pow2, rational, sign_pow, to_f64, Angle, ConstantAtom,
    Rational, SymbolicExpr,
};
use crate::newman::{self, rpow, zeta_sign};
use crate::quadrature::{self, integrate, QuadratureResult};
use crate::special;
use crate::EvalResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `log|sin t|`
    LogAbsSin,
    /// `log(2 sin(t/2))`
    LogTwoSinHalf,
}

/// One target integral `int_0^upper t^moment kernel(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralSpec {
    pub kernel: Kernel,
    pub moment: u32,
    pub upper: Angle,
}

impl IntegralSpec {
    pub fn new(kernel: Kernel, moment: u32, upper: Angle) -> Result<Self> {
        let spec = IntegralSpec {
            kernel,
            moment,
            upper,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.upper.value();
        match self.kernel {
            Kernel::LogAbsSin if !(v > 0.0 && v <= PI * (1.0 + 4.0 * f64::EPSILON)) => domain(
                format!("log|sin| upper limit {} outside (0, pi]", self.upper),
            ),
            Kernel::LogTwoSinHalf if !(v > 0.0 && v < 2.0 * PI) => domain(format!(
                "log(2 sin(t/2)) upper limit {} outside (0, 2pi)",
                self.upper
            )),
            _ => Ok(()),
        }
    }

    /// Numeric value of the closed form.
    pub fn closed_form(&self) -> Result<EvalResult> {
        self.validate()?;
        match self.kernel {
            Kernel::LogAbsSin => logsine_moment(self.moment, &self.upper),
            Kernel::LogTwoSinHalf => Ok(ls_closed(self.moment, &self.upper)?.value),
        }
    }

    /// Exact closed form; needs a rational multiple of pi as upper limit.
    pub fn symbolic(&self) -> Result<SymbolicExpr> {
        self.validate()?;
        match self.kernel {
            Kernel::LogAbsSin => logsine_moment_symbolic(self.moment, &self.upper),
            Kernel::LogTwoSinHalf => ls_closed_symbolic(self.moment, &self.upper),
        }
    }

    pub fn oracle(&self) -> Result<QuadratureResult> {
        self.validate()?;
        match self.kernel {
            Kernel::LogAbsSin => quadrature::oracle_logsine_moment(self.moment, &self.upper),
            Kernel::LogTwoSinHalf => quadrature::oracle_ls(self.moment, &self.upper),
        }
    }
}

/// Numeric and, for exact upper limits, symbolic value of a closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub value: EvalResult,
    pub symbolic: Option<SymbolicExpr>,
}

fn falling_factorial(m: u32, i: u32) -> f64 {
    // M! / (M-i)!
    ((m - i + 1)..=m).map(|k| k as f64).product()
}

/// `I(M, x) = sum_{i=0}^{M} (-1)^(i+1) M!/(M-i)! x^(M-i) Y^(i+2)(x)`.
pub fn logsine_moment(m: u32, x: &Angle) -> Result<EvalResult> {
    let xv = x.value();
    let mut value = 0.0;
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for i in 0..=m {
        let y = newman::upsilon(i + 2, x)?;
        let c = sign_pow(i as i64 + 1) as f64 * falling_factorial(m, i) * xv.powi((m - i) as i32);
        value += c * y.value;
        err += c.abs() * y.error_estimate;
        magnitude += (c * y.value).abs();
    }
    Ok(EvalResult::new(value, err + 4.0 * f64::EPSILON * magnitude))
}

/// `I(M, x)` as an exact expression.
pub fn logsine_moment_symbolic(m: u32, x: &Angle) -> Result<SymbolicExpr> {
    let r = x.require_pi_coefficient()?;
    let mut out = SymbolicExpr::zero();
    for i in 0..=m {
        let y = newman::upsilon_symbolic(i + 2, x)?;
        let c = integer(sign_pow(i as i64 + 1))
            * Rational::from_integer(factorial(m))
            * inv_factorial((m - i) as i64)
            * rpow(r, m - i);
        out = out.add(&y.scale_monomial(&c, m - i));
    }
    Ok(out)
}

/// `(-1)^(i + floor((i+1)/2))`
fn clausen_term_sign(i: u32) -> i64 {
    sign_pow(i as i64 + (i as i64 + 1) / 2)
}

/// `int_0^z t^q log(2 sin(t/2)) dt` from Clausen values at `z`:
///
/// ```text
/// -q! sum_{i=0}^{q} (-1)^(i + floor((i+1)/2)) z^(q-i) Cl_(i+2)(z) / (q-i)!
///   + [q odd] (-1)^((q+1)/2 + 1) q! zeta(q+2)
/// ```
pub fn ls_closed(q: u32, z: &Angle) -> Result<ClosedForm> {
    let zv = z.value();
    if !(zv > 0.0 && zv < 2.0 * PI) {
        return domain(format!("log(2 sin(t/2)) upper limit {z} outside (0, 2pi)"));
    }
    let qf = to_f64(&Rational::from_integer(factorial(q)));
    let mut value = 0.0;
    let mut err = 0.0;
    let mut magnitude = 0.0;
    for i in 0..=q {
        let cl = special::clausen(i + 2, z)?;
        let c = -qf * clausen_term_sign(i) as f64 * zv.powi((q - i) as i32)
            / to_f64(&Rational::from_integer(factorial(q - i)));
        value += c * cl.value;
        err += c.abs() * cl.error_estimate;
        magnitude += (c * cl.value).abs();
    }
    if q % 2 == 1 {
        let zeta = special::zeta_int(q as i64 + 2)?;
        let c = odd_zeta_constant_sign(q) as f64 * qf;
        value += c * zeta.value;
        err += c.abs() * zeta.error_estimate;
        magnitude += (c * zeta.value).abs();
    }
    let symbolic = if z.is_exact() {
        Some(ls_closed_symbolic(q, z)?)
    } else {
        None
    };
    Ok(ClosedForm {
        value: EvalResult::new(value, err + 4.0 * f64::EPSILON * magnitude),
        symbolic,
    })
}

/// `(-1)^(p+1)` for `q = 2p - 1`.
fn odd_zeta_constant_sign(q: u32) -> i64 {
    sign_pow((q as i64 + 1) / 2 + 1)
}

pub fn ls_closed_symbolic(q: u32, z: &Angle) -> Result<SymbolicExpr> {
    let r = z.require_pi_coefficient()?;
    let qfact = Rational::from_integer(factorial(q));
    let mut out = SymbolicExpr::zero();
    for i in 0..=q {
        let cl = special::clausen_symbolic(i + 2, z)?;
        let c = -&qfact
            * integer(clausen_term_sign(i))
            * inv_factorial((q - i) as i64)
            * rpow(r, q - i);
        out = out.add(&cl.scale_monomial(&c, q - i));
    }
    if q % 2 == 1 {
        out = out.add(&SymbolicExpr::term(
            integer(odd_zeta_constant_sign(q)) * qfact,
            0,
            ConstantAtom::ZetaOdd(q + 2),
        ));
    }
    Ok(out)
}

/// `int_0^z t^(2p) log(2 sin(t/2)) dt`, `z` in `(0, 2 pi)`.
pub fn ls_closed_even(p: u32, z: &Angle) -> Result<ClosedForm> {
    if p == 0 {
        return domain("ls_closed_even needs p >= 1");
    }
    ls_closed(2 * p, z)
}

/// `int_0^z t^(2p-1) log(2 sin(t/2)) dt`, `z` in `(0, 2 pi)`.
pub fn ls_closed_odd(p: u32, z: &Angle) -> Result<ClosedForm> {
    if p == 0 {
        return domain("ls_closed_odd needs p >= 1");
    }
    ls_closed(2 * p - 1, z)
}

/// `int_0^z t^q log(2 sin(t/2)) dt = 2^(q+1) [ (z/2)^(q+1) log 2 / (q+1) + I(q, z/2) ]`.
pub fn ls_via_substitution(q: u32, z: &Angle) -> Result<EvalResult> {
    let half = z.scale(&rational(1, 2));
    let hv = half.value();
    if !(hv > 0.0 && hv <= PI * (1.0 + 4.0 * f64::EPSILON)) {
        return domain(format!("substitution needs z/2 in (0, pi], got z = {z}"));
    }
    let moment = logsine_moment(q, &half)?;
    let scale = 2f64.powi(q as i32 + 1);
    let log_part = hv.powi(q as i32 + 1) * LN_2 / (q + 1) as f64;
    Ok(EvalResult::new(
        scale * (log_part + moment.value),
        scale * (moment.error_estimate + 4.0 * f64::EPSILON * log_part.abs()),
    ))
}

/// Symbolic form of [`ls_via_substitution`].
pub fn ls_via_substitution_symbolic(q: u32, z: &Angle) -> Result<SymbolicExpr> {
    let r = z.require_pi_coefficient()?;
    let half_r = r * rational(1, 2);
    let half = Angle::RationalPi(half_r.clone());
    let log_part = SymbolicExpr::term(
        rpow(&half_r, q + 1) / integer(q as i64 + 1),
        q + 1,
        ConstantAtom::LogTwo,
    );
    let moment = logsine_moment_symbolic(q, &half)?;
    Ok(log_part.add(&moment).scale(&pow2(q as i32 + 1)))
}

/// `sum_{i=0}^{M} (-1)^i / ((M-i)! (i+2-k)!)` with `1/m! = 0` for `m < 0`.
///
/// Zero for odd `k < M + 2` and `-1` at `k = M + 2`.
pub fn collapse_sum(m: u32, k: u32) -> Result<Rational> {
    if k.is_multiple_of(2) || k < 3 || k > m + 2 {
        return domain(format!(
            "collapse sum needs odd k with 3 <= k <= M+2, got M = {m}, k = {k}"
        ));
    }
    let mut acc = Rational::zero();
    for i in 0..=m {
        let term = integer(sign_pow(i as i64))
            * inv_factorial((m - i) as i64)
            * inv_factorial(i as i64 + 2 - k as i64);
        acc += term;
    }
    Ok(acc)
}

/// The zeta part of `I(M, x)`:
/// `M! sum_k (-1)^((k+1)/2) x^(M-k+2) zeta(k) / 2^(k-1) * (-collapse_sum(M, k))`.
pub fn zeta_contribution_symbolic(m: u32, x: &Angle) -> Result<SymbolicExpr> {
    let r = x.require_pi_coefficient()?;
    let mfact = Rational::from_integer(factorial(m));
    let mut out = SymbolicExpr::zero();
    for k in (3..=m + 2).step_by(2) {
        let inner = -collapse_sum(m, k)?;
        if inner.is_zero() {
            continue;
        }
        let power = m + 2 - k;
        let c = &mfact * integer(zeta_sign(k)) * rpow(r, power) / pow2(k as i32 - 1) * inner;
        out = out.add(&SymbolicExpr::term(c, power, ConstantAtom::ZetaOdd(k)));
    }
    Ok(out)
}

/// Numeric zeta part of `I(M, x)`; exactly `0.0` for even `M`.
pub fn zeta_contribution(m: u32, x: &Angle) -> Result<EvalResult> {
    let xv = x.value();
    let mfact = to_f64(&Rational::from_integer(factorial(m)));
    let mut value = 0.0;
    let mut err = 0.0;
    for k in (3..=m + 2).step_by(2) {
        let inner = -collapse_sum(m, k)?;
        if inner.is_zero() {
            continue;
        }
        let zeta = special::zeta_int(k as i64)?;
        let c = mfact * zeta_sign(k) as f64 * xv.powi((m + 2 - k) as i32) / 2f64.powi(k as i32 - 1)
            * to_f64(&inner);
        value += c * zeta.value;
        err += c.abs() * zeta.error_estimate;
    }
    Ok(EvalResult::new(
        value,
        err + 4.0 * f64::EPSILON * value.abs(),
    ))
}

fn check_cot_upper(x: f64) -> Result<()> {
    if !(x > 0.0 && x < PI) {
        return domain(format!("cot moment upper limit {x} outside (0, pi)"));
    }
    if x < 1e-9 || PI - x < 1e-9 {
        return Err(Error::Singularity(format!(
            "cot moment upper limit {x} within 1e-9 of a zero of sin"
        )));
    }
    Ok(())
}

/// `int_0^X t^(M+1) cot t dt = X^(M+1) log|sin X| - (M+1) I(M, X)`.
pub fn cot_moment(m: u32, x: &Angle) -> Result<EvalResult> {
    let xv = x.value();
    check_cot_upper(xv)?;
    let boundary = xv.powi(m as i32 + 1) * xv.sin().abs().ln();
    let moment = logsine_moment(m, x)?;
    let k = (m + 1) as f64;
    Ok(EvalResult::new(
        boundary - k * moment.value,
        k * moment.error_estimate + 4.0 * f64::EPSILON * boundary.abs(),
    ))
}

/// `int_0^X t^(M+1) cot t dt` by quadrature.
pub fn cot_moment_oracle(m: u32, x: &Angle) -> Result<QuadratureResult> {
    let xv = x.value();
    check_cot_upper(xv)?;
    let p = m as i32 + 1;
    integrate(
        |t| t.powi(p) * t.cos() / t.sin(),
        0.0,
        xv,
        quadrature::DEFAULT_TOL,
    )
}

fn check_multiple_sine(r: u32, z: f64) -> Result<()> {
    if r < 2 {
        return Err(Error::Unsupported(format!(
            "log S_{r} needs regularization; only r >= 2 is supported"
        )));
    }
    if !(z > 0.0 && z < 1.0) {
        return domain(format!("multiple sine argument {z} outside (0, 1)"));
    }
    Ok(())
}

/// `log S_r(z) = int_0^z y^(r-1) pi cot(pi y) dy` through the log-sine
/// moments: `pi^(1-r) [ (pi z)^(r-1) log|sin(pi z)| - (r-1) I(r-2, pi z) ]`.
pub fn log_multiple_sine(r: u32, z: f64) -> Result<EvalResult> {
    check_multiple_sine(r, z)?;
    let upper = Angle::real(PI * z);
    let inner = cot_moment(r - 2, &upper)?;
    let scale = PI.powi(1 - r as i32);
    Ok(EvalResult::new(
        scale * inner.value,
        scale * inner.error_estimate,
    ))
}

/// [`log_multiple_sine`] with an exact argument, so that `pi z` stays a
/// rational multiple of pi.
pub fn log_multiple_sine_exact(r: u32, z: &Rational) -> Result<EvalResult> {
    check_multiple_sine(r, to_f64(z))?;
    let upper = Angle::RationalPi(z.clone());
    let inner = cot_moment(r - 2, &upper)?;
    let scale = PI.powi(1 - r as i32);
    Ok(EvalResult::new(
        scale * inner.value,
        scale * inner.error_estimate,
    ))
}

/// `log S_r(z)` by direct quadrature of its defining integral.
pub fn log_multiple_sine_quadrature(r: u32, z: f64) -> Result<QuadratureResult> {
    check_multiple_sine(r, z)?;
    let p = r as i32 - 1;
    integrate(
        |y| y.powi(p) * PI / (PI * y).tan(),
        0.0,
        z,
        quadrature::DEFAULT_TOL,
    )
}

/// Coefficient of `zeta(k) pi^0` in `I(M, x)`.
pub fn moment_zeta_coefficient(m: u32, x: &Angle, k: u32) -> Result<Rational> {
    Ok(logsine_moment_symbolic(m, x)?.coefficient(&ConstantAtom::ZetaOdd(k), 0))
}
