//! Bernoulli numbers, Riemann zeta at integer arguments, and Clausen
//! functions.
//!
//! Clausen functions follow the usual parity split:
//!
//! - `Cl_n(theta) = sum_k sin(k theta) / k^n` for even `n`,
//! - `Cl_n(theta) = sum_k cos(k theta) / k^n` for odd `n`,
//! - `Cl_1(theta) = -log|2 sin(theta/2)|`.

use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::exact::{
    self, factorial, integer, pow2, rational, to_f64, Angle, ConstantAtom, Rational, SymbolicExpr,
};
use crate::EvalResult;

/// Tail bound targeted by the direct Clausen series for `n >= 3`.
pub const CLAUSEN_TAIL_BOUND: f64 = 1e-13;

/// Number of explicit terms in the odd zeta sum.
pub const ZETA_TERMS: u64 = 1_000_000;

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Computed from `sum_{j=0}^{n} C(n+1, j) B_j = 0`, with results cached.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().expect("bernoulli cache").get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().expect("bernoulli cache");
    while table.len() <= n {
        let m = table.len();
        let next = if m == 0 {
            Rational::one()
        } else if m > 1 && m % 2 == 1 {
            Rational::zero()
        } else {
            let mut acc = Rational::zero();
            let mut binom = BigInt::one();
            for (j, b) in table.iter().enumerate() {
                acc += Rational::from_integer(binom.clone()) * b;
                // C(m+1, j+1) from C(m+1, j)
                binom = binom * (m + 1 - j) / (j + 1);
            }
            -acc / integer(m as i64 + 1)
        };
        table.push(next);
    }
    table[n].clone()
}

/// `zeta(2m) / pi^(2m)` as an exact rational.
pub fn even_zeta_over_pi_power(n: u32) -> Rational {
    debug_assert!(n >= 2 && n.is_multiple_of(2));
    let b = bernoulli(n as usize);
    let sign = exact::sign_pow(n as i64 / 2 + 1);
    integer(sign) * b * pow2(n as i32) / Rational::from_integer(factorial(n) * 2)
}

/// `zeta(n)` symbolically: a rational multiple of `pi^n` for even `n`, the
/// atom `zeta(n)` for odd `n`.
pub fn zeta_int_symbolic(n: i64) -> Result<SymbolicExpr> {
    if n <= 1 {
        return domain(format!(
            "zeta({n}) is not defined by the series (n must be >= 2)"
        ));
    }
    let n = n as u32;
    if n.is_multiple_of(2) {
        Ok(SymbolicExpr::rational_pi(even_zeta_over_pi_power(n), n))
    } else {
        Ok(SymbolicExpr::term(
            Rational::one(),
            0,
            ConstantAtom::ZetaOdd(n),
        ))
    }
}

const ZETA_CACHE: usize = 128;
static ODD_ZETA: [OnceLock<f64>; ZETA_CACHE] = [const { OnceLock::new() }; ZETA_CACHE];

/// `zeta(n)` for integer `n >= 2`.
///
/// Even arguments come from the Bernoulli closed form. Odd arguments are
/// summed directly up to `N = 10^6` terms (fewer once the terms drop below
/// the double-precision floor) and corrected by the Euler-Maclaurin tail
/// `N^(1-n)/(n-1) - N^(-n)/2 + n N^(-n-1)/12`.
pub fn zeta_int(n: i64) -> Result<EvalResult> {
    if n <= 1 {
        return domain(format!("zeta({n}) diverges (n must be >= 2)"));
    }
    if n % 2 == 0 {
        let v = to_f64(&even_zeta_over_pi_power(n as u32)) * PI.powi(n as i32);
        return Ok(EvalResult::new(v, 4.0 * f64::EPSILON * v));
    }
    let v = match ODD_ZETA.get(n as usize) {
        Some(cell) => *cell.get_or_init(|| odd_zeta_series(n as i32)),
        None => odd_zeta_series(n as i32),
    };
    Ok(EvalResult::new(v, 1e-15))
}

fn odd_zeta_series(n: i32) -> f64 {
    // Stop early once k^(-n) is far below the rounding floor.
    let cutoff = (1e-18f64).powf(-1.0 / n as f64).ceil() as u64;
    let terms = ZETA_TERMS.min(cutoff.max(16));
    let mut sum = 0.0;
    for k in (1..=terms).rev() {
        sum += (k as f64).powi(-n);
    }
    let nn = terms as f64;
    let tail =
        nn.powi(1 - n) / (n - 1) as f64 - 0.5 * nn.powi(-n) + n as f64 * nn.powi(-n - 1) / 12.0;
    sum + tail
}

/// Reduced form of `theta` used by the Clausen evaluators: the image in
/// `[0, pi]` together with the parity sign.
#[derive(Debug, Clone, Copy)]
struct Reduced {
    theta: f64,
    sign: f64,
    /// `theta` is exactly `0` (mod `2 pi`)
    at_zero: bool,
    /// `theta` is exactly `pi` (mod `2 pi`)
    at_pi: bool,
}

fn reduce(n: u32, theta: &Angle) -> Reduced {
    let odd = n % 2 == 1;
    match theta {
        Angle::RationalPi(c) => {
            let mut r = exact::reduce_mod_two(c);
            let mut sign = 1.0;
            if r > Rational::one() {
                r = integer(2) - r;
                if !odd {
                    sign = -1.0;
                }
            }
            Reduced {
                theta: to_f64(&r) * PI,
                sign,
                at_zero: r.is_zero(),
                at_pi: r.is_one(),
            }
        }
        Angle::GenericReal(v) => {
            let two_pi = 2.0 * PI;
            let mut t = v.rem_euclid(two_pi);
            if t >= two_pi {
                t = 0.0;
            }
            let mut sign = 1.0;
            if t > PI {
                t = two_pi - t;
                if !odd {
                    sign = -1.0;
                }
            }
            Reduced {
                theta: t,
                sign,
                at_zero: t == 0.0,
                at_pi: false,
            }
        }
    }
}

/// `Cl_n(theta)` with absolute error at most about `1e-12`.
pub fn clausen(n: u32, theta: &Angle) -> Result<EvalResult> {
    if n == 0 {
        return domain("Clausen order must be >= 1");
    }
    let r = reduce(n, theta);
    match n {
        1 => {
            if r.at_zero {
                return Err(Error::Singularity(format!(
                    "Cl_1 has a logarithmic singularity at {theta}"
                )));
            }
            let v = -(2.0 * (0.5 * r.theta).sin()).ln();
            if !v.is_finite() {
                return Err(Error::Singularity(format!(
                    "Cl_1 has a logarithmic singularity at {theta}"
                )));
            }
            Ok(EvalResult::new(v, 4.0 * f64::EPSILON * v.abs().max(1.0)))
        }
        2 => {
            if r.at_zero || r.at_pi {
                return Ok(EvalResult::exact(0.0));
            }
            let v = clausen2_reduced(r.theta);
            Ok(EvalResult::new(r.sign * v, 8.0 * f64::EPSILON))
        }
        _ => {
            if n.is_multiple_of(2) && (r.at_zero || r.at_pi) {
                return Ok(EvalResult::exact(0.0));
            }
            if n % 2 == 1 && r.at_zero {
                return zeta_int(n as i64);
            }
            let (v, err) = clausen_series(n, r.theta);
            Ok(EvalResult::new(r.sign * v, err))
        }
    }
}

fn clausen2_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        // zeta(2k) / (k (2k+1) (2 pi)^(2k)) = |B_2k| / (2 (2k)! k (2k+1))
        (1..=40u32)
            .map(|k| {
                let b = bernoulli(2 * k as usize).abs();
                let den = factorial(2 * k) * 2 * k * (2 * k + 1);
                to_f64(&(b / Rational::from_integer(den)))
            })
            .collect()
    })
}

/// `Cl_2` on `(0, pi]` from
/// `theta - theta log(theta) + sum_k zeta(2k) theta^(2k+1) / (k (2k+1) (2pi)^(2k))`.
///
/// The series ratio is `(theta / 2pi)^2 <= 1/4` on this range.
fn clausen2_reduced(theta: f64) -> f64 {
    let t2 = theta * theta;
    let mut power = theta * t2;
    let mut series = 0.0;
    for &c in clausen2_coefficients() {
        let term = c * power;
        series += term;
        if term.abs() < 1e-18 * series.abs() {
            break;
        }
        power *= t2;
    }
    theta - theta * theta.ln() + series
}

/// Direct Fourier series for `n >= 3`, truncated where the tail bound
/// `N^(1-n)/(n-1)` falls below [`CLAUSEN_TAIL_BOUND`].
fn clausen_series(n: u32, theta: f64) -> (f64, f64) {
    let nf = n as f64;
    let terms = (CLAUSEN_TAIL_BOUND * (nf - 1.0))
        .powf(-1.0 / (nf - 1.0))
        .ceil() as u64;
    let odd = n % 2 == 1;
    let (s1, c1) = theta.sin_cos();
    let (mut s, mut c) = (0.0f64, 1.0f64);
    // Neumaier-compensated sum
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..=terms {
        if k % 64 == 1 {
            let (sk, ck) = (k as f64 * theta).sin_cos();
            s = sk;
            c = ck;
        } else {
            let ns = s * c1 + c * s1;
            c = c * c1 - s * s1;
            s = ns;
        }
        let trig = if odd { c } else { s };
        let term = trig / (k as f64).powi(n as i32);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    let tail = (terms as f64).powf(1.0 - nf) / (nf - 1.0);
    (sum + comp, tail + 4.0 * f64::EPSILON)
}

/// `Cl_n(theta)` in the symbolic basis.
///
/// Closed forms are produced at `theta = 0, pi` (any order) and at
/// `pi/2, 3pi/2` (odd orders); everything else stays as a `Cl_n` atom whose
/// argument is reduced into `(0, pi)` with the parity sign pulled out.
pub fn clausen_symbolic(n: u32, theta: &Angle) -> Result<SymbolicExpr> {
    if n == 0 {
        return domain("Clausen order must be >= 1");
    }
    let c = theta.require_pi_coefficient()?;
    let r = exact::reduce_mod_two(c);
    let odd = n % 2 == 1;
    let zeta = |coeff: Rational| SymbolicExpr::term(coeff, 0, ConstantAtom::ZetaOdd(n));
    // eta(n) / zeta(n) = 1 - 2^(1-n)
    let eta_factor = Rational::one() - pow2(1 - n as i32);

    if r.is_zero() {
        return match n {
            1 => Err(Error::Singularity("Cl_1 is singular at 0".into())),
            _ if odd => Ok(zeta(Rational::one())),
            _ => Ok(SymbolicExpr::zero()),
        };
    }
    if r.is_one() {
        return match n {
            // Cl_1(pi) = -log 2
            1 => Ok(SymbolicExpr::term(
                -Rational::one(),
                0,
                ConstantAtom::LogTwo,
            )),
            _ if odd => Ok(zeta(-eta_factor)),
            _ => Ok(SymbolicExpr::zero()),
        };
    }
    let quarter = r == rational(1, 2) || r == rational(3, 2);
    if quarter && odd {
        return match n {
            // Cl_1(pi/2) = -log(sqrt 2)
            1 => Ok(SymbolicExpr::term(rational(-1, 2), 0, ConstantAtom::LogTwo)),
            _ => Ok(zeta(-eta_factor * pow2(-(n as i32)))),
        };
    }
    let (arg, sign) = if r > Rational::one() {
        (integer(2) - r, if odd { 1 } else { -1 })
    } else {
        (r, 1)
    };
    Ok(SymbolicExpr::term(
        integer(sign),
        0,
        ConstantAtom::ClausenVal {
            order: n,
            arg: Angle::RationalPi(arg),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), integer(1));
        assert_eq!(bernoulli(1), rational(-1, 2));
        assert_eq!(bernoulli(2), rational(1, 6));
        assert_eq!(bernoulli(3), integer(0));
        assert_eq!(bernoulli(12), rational(-691, 2730));
        assert_eq!(bernoulli(20), rational(-174611, 330));
    }

    // Independent recomputation through the Akiyama-Tanigawa algorithm,
    // which yields the B_1 = +1/2 convention.
    #[test]
    fn bernoulli_matches_akiyama_tanigawa() {
        let n = 24;
        let mut a: Vec<Rational> = Vec::new();
        let mut out = Vec::new();
        for m in 0..=n {
            a.push(rational(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = integer(j as i64) * (&a[j - 1] - &a[j]);
            }
            out.push(a[0].clone());
        }
        for (m, b) in out.into_iter().enumerate() {
            let expected = if m == 1 { -b } else { b };
            assert_eq!(bernoulli(m), expected, "B_{m}");
        }
    }

    #[test]
    fn zeta_values() {
        let z2 = zeta_int(2).unwrap();
        assert_abs_diff_eq!(z2.value, 1.644_934_066_848_226_4, epsilon = 1e-15);
        assert_eq!(
            zeta_int_symbolic(2).unwrap(),
            SymbolicExpr::rational_pi(rational(1, 6), 2)
        );
        assert_eq!(
            zeta_int_symbolic(4).unwrap(),
            SymbolicExpr::rational_pi(rational(1, 90), 4)
        );
        assert_abs_diff_eq!(
            zeta_int(3).unwrap().value,
            1.202_056_903_159_594_3,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            zeta_int(5).unwrap().value,
            1.036_927_755_143_37,
            epsilon = 1e-14
        );
        assert!(zeta_int(1).is_err());
        assert!(zeta_int_symbolic(0).is_err());
    }

    // Independent summation with twice as many terms and no tail
    // correction beyond the integral bound.
    #[test]
    fn odd_zeta_against_doubled_sum() {
        let n = 3;
        let terms = 2 * ZETA_TERMS;
        let mut sum = 0.0;
        for k in (1..=terms).rev() {
            sum += (k as f64).powi(-n);
        }
        let nn = terms as f64;
        sum += 1.0 / (2.0 * nn * nn) - 0.5 / nn.powi(3);
        assert_abs_diff_eq!(zeta_int(3).unwrap().value, sum, epsilon = 1e-14);
    }

    #[test]
    fn clausen_special_points() {
        assert_eq!(clausen(2, &Angle::pi_fraction(0, 1)).unwrap().value, 0.0);
        assert_abs_diff_eq!(
            clausen(3, &Angle::pi_fraction(0, 1)).unwrap().value,
            zeta_int(3).unwrap().value,
            epsilon = 1e-15
        );
        // Catalan's constant
        assert_abs_diff_eq!(
            clausen(2, &Angle::pi_fraction(1, 2)).unwrap().value,
            0.915_965_594_177_219,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            clausen(3, &Angle::pi_fraction(1, 1)).unwrap().value,
            -0.75 * zeta_int(3).unwrap().value,
            epsilon = 1e-12
        );
        assert!(matches!(
            clausen(1, &Angle::pi_fraction(2, 1)),
            Err(Error::Singularity(_))
        ));
        assert!(clausen(1, &Angle::real(0.0)).is_err());
    }

    #[test]
    fn clausen_one_closed_form() {
        let v = clausen(1, &Angle::pi_fraction(1, 3)).unwrap().value;
        // 2 sin(pi/6) = 1
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-15);
        let v = clausen(1, &Angle::pi_fraction(1, 1)).unwrap().value;
        assert_abs_diff_eq!(v, -LN_2, epsilon = 1e-15);
    }

    // Catalan via the alternating series sum (-1)^k/(2k+1)^2, accelerated by
    // averaging consecutive partial sums.
    #[test]
    fn catalan_against_alternating_series() {
        let mut partial = 0.0;
        let mut prev = 0.0;
        for k in 0..200_000u64 {
            prev = partial;
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            partial += s / ((2 * k + 1) as f64).powi(2);
        }
        let catalan = 0.5 * (partial + prev);
        let cl = clausen(2, &Angle::pi_fraction(1, 2)).unwrap().value;
        assert_abs_diff_eq!(cl, catalan, epsilon = 1e-11);
    }

    #[test]
    fn clausen_symbolic_cases() {
        assert!(clausen_symbolic(4, &Angle::pi_fraction(1, 1))
            .unwrap()
            .is_empty());
        assert_eq!(
            clausen_symbolic(5, &Angle::pi_fraction(1, 1)).unwrap(),
            SymbolicExpr::term(rational(-15, 16), 0, ConstantAtom::ZetaOdd(5))
        );
        assert_eq!(
            clausen_symbolic(2, &Angle::pi_fraction(1, 3)).unwrap(),
            SymbolicExpr::term(
                integer(1),
                0,
                ConstantAtom::ClausenVal {
                    order: 2,
                    arg: Angle::pi_fraction(1, 3)
                }
            )
        );
        // Cl_2(5pi/3) = -Cl_2(pi/3); Cl_3(5pi/3) = Cl_3(pi/3)
        let e = clausen_symbolic(2, &Angle::pi_fraction(5, 3)).unwrap();
        assert_eq!(e.terms().next().unwrap().coeff, integer(-1));
        let o = clausen_symbolic(3, &Angle::pi_fraction(-1, 3)).unwrap();
        assert_eq!(o.terms().next().unwrap().coeff, integer(1));
        assert_eq!(
            clausen_symbolic(3, &Angle::pi_fraction(2, 1)).unwrap(),
            SymbolicExpr::term(integer(1), 0, ConstantAtom::ZetaOdd(3))
        );
        assert!(clausen_symbolic(3, &Angle::real(1.0)).is_err());
    }

    #[test]
    fn clausen_symbolic_agrees_with_numerics() {
        for n in 1..=8u32 {
            for (p, q) in [(0, 1), (1, 2), (1, 1), (3, 2), (1, 3), (3, 4), (7, 5)] {
                if n == 1 && p == 0 {
                    continue;
                }
                let a = Angle::pi_fraction(p, q);
                let sym = clausen_symbolic(n, &a).unwrap().numeric_value().unwrap();
                let num = clausen(n, &Angle::real(a.value())).unwrap().value;
                assert_abs_diff_eq!(sym, num, epsilon = 1e-12);
            }
        }
    }
}
