//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use logsine::cli::{familiar_value, familiar_value_attribution};
use logsine::exact::{
    factorial, integer, rational, to_f64, Angle, ConstantAtom, Rational, SymbolicExpr,
};
use logsine::logsine::{
    collapse_sum, log_multiple_sine, log_multiple_sine_quadrature, logsine_moment,
    logsine_moment_symbolic, ls_closed_even, ls_closed_odd, moment_zeta_coefficient,
};
use logsine::newman::{
    derive_zeta_signs, upsilon, upsilon_nested, upsilon_recursive_oracle, upsilon_symbolic,
    verify_zeta_signs,
};
use logsine::quadrature::{integrate, oracle_logsine_moment, oracle_ls, oracle_upsilon};
use logsine::special::{clausen, clausen_symbolic, zeta_int_symbolic};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn sign_pow(e: i64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn fact(n: u32) -> f64 {
    to_f64(&Rational::from_integer(factorial(n)))
}

fn within(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn log_two(c: Rational, k: u32) -> SymbolicExpr {
    SymbolicExpr::term(c, k, ConstantAtom::LogTwo)
}

fn zeta(c: Rational, k: u32, n: u32) -> SymbolicExpr {
    SymbolicExpr::term(c, k, ConstantAtom::ZetaOdd(n))
}

fn newman_table() -> Check {
    let start = Instant::now();
    let x = Angle::pi_fraction(1, 2);
    let expected = [
        log_two(rational(1, 2), 1),
        log_two(rational(1, 8), 2).add(&zeta(rational(7, 16), 0, 3)),
        log_two(rational(1, 48), 3).add(&zeta(rational(1, 8), 1, 3)),
        zeta(rational(-31, 256), 0, 5)
            .add(&zeta(rational(1, 32), 2, 3))
            .add(&log_two(rational(1, 384), 4)),
    ];
    let mut worst: f64 = 0.0;
    for (n, want) in (2..=5).zip(expected.iter()) {
        let got = e(upsilon_symbolic(n, &x))?;
        ensure(&got == want, || {
            format!("Y^{n}(pi/2) = {got}, expected {want}")
        })?;
        let v = e(got.numeric_value())?;
        let o = e(oracle_upsilon(n, &x))?;
        let d = (v - o.value).abs();
        ensure(d <= 1e-8f64.max(o.error_estimate), || {
            format!("Y^{n}(pi/2): {v} vs oracle {}", o.value)
        })?;
        worst = worst.max(d);
    }
    // the competing pi/4 coefficient for zeta(3) in Y^4 is rejected by the oracle
    let alt = log_two(rational(1, 48), 3).add(&zeta(rational(1, 4), 1, 3));
    let o4 = e(oracle_upsilon(4, &x))?;
    let alt_diff = (e(alt.numeric_value())? - o4.value).abs();
    ensure(alt_diff > 1e-3, || {
        "pi/4 alternative for Y^4 not rejected".into()
    })?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!(
        "4 exact matches, max |diff| {worst:.1e}; Y^4 zeta(3) coefficient pi/8 (pi/4 off by {alt_diff:.2}); {:.2}s",
        t.as_secs_f64()
    ))
}

fn familiar() -> Check {
    let x = Angle::pi_fraction(1, 2);
    let value = familiar_value();
    let sym = e(logsine_moment_symbolic(2, &x))?;
    ensure(sym == value, || format!("I(2, pi/2) = {sym}"))?;
    let o2 = e(oracle_logsine_moment(2, &x))?;
    let v2 = e(value.numeric_value())?;
    ensure(within(v2, o2.value, 1e-9f64.max(o2.error_estimate)), || {
        format!("value {v2} vs oracle I(2) {}", o2.value)
    })?;
    let c1 = e(logsine_moment(1, &x))?;
    let o1 = e(oracle_logsine_moment(1, &x))?;
    ensure(
        within(c1.value, o1.value, 1e-9f64.max(o1.error_estimate)),
        || format!("I(1, pi/2) {} vs oracle {}", c1.value, o1.value),
    )?;
    let hits = e(familiar_value_attribution())?;
    ensure(hits == [2], || format!("attribution {hits:?}"))?;
    Ok(format!(
        "value = I(2, pi/2) (oracle diff {:.1e}); quoted label I(1, pi/2) does not match, I(1, pi/2) = {:.12}",
        (v2 - o2.value).abs(),
        c1.value
    ))
}

/// Odd-power closed form with the sum taken to `i = 2p` and the sign
/// pattern kept as is, for comparison with the form that matches quadrature.
fn odd_form_long_sum(p: u32, z: f64) -> Result<f64, String> {
    let q = 2 * p - 1;
    let mut s = 0.0;
    for i in 0..=2 * p {
        let sign = sign_pow(i as i64 + (i as i64 + 1) / 2) as f64;
        let cl = e(clausen(i + 2, &Angle::real(z)))?.value;
        s += sign / fact(2 * p - i) * cl * z.powi((2 * p - i) as i32);
    }
    let zeta = e(logsine::special::zeta_int(q as i64 + 2))?.value;
    Ok(sign_pow(p as i64 + 1) as f64 * fact(q) * zeta + fact(q) * s)
}

fn ls_closed_forms() -> Check {
    let start = Instant::now();
    let zs = [
        Angle::pi_fraction(1, 3),
        Angle::pi_fraction(1, 2),
        Angle::pi_fraction(1, 1),
        Angle::pi_fraction(3, 2),
    ];
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    let mut long_sum_failures = 0;
    for z in &zs {
        for p in 1..=3 {
            for (q, closed) in [
                (2 * p, e(ls_closed_even(p, z))?),
                (2 * p - 1, e(ls_closed_odd(p, z))?),
            ] {
                let o = e(oracle_ls(q, z))?;
                let d = (closed.value.value - o.value).abs();
                ensure(d <= 1e-7f64.max(o.error_estimate), || {
                    format!("q={q} z={z}: {} vs oracle {}", closed.value.value, o.value)
                })?;
                worst = worst.max(d);
                cases += 1;
            }
            let o = e(oracle_ls(2 * p - 1, z))?;
            if (odd_form_long_sum(p, z.value())? - o.value).abs() > 1e-7 {
                long_sum_failures += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(cases == 24, || format!("{cases} cases"))?;
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "{cases}/24 within 1e-7 (max {worst:.1e}); odd form summed to i = 2p fails {long_sum_failures}/12; {:.2}s",
        t.as_secs_f64()
    ))
}

fn recursion_agreement() -> Check {
    let grid = [
        Angle::pi_fraction(1, 6),
        Angle::pi_fraction(1, 4),
        Angle::pi_fraction(1, 3),
        Angle::pi_fraction(1, 2),
        Angle::pi_fraction(2, 3),
        Angle::real(PI - 0.1),
    ];
    let mut worst: f64 = 0.0;
    for x in &grid {
        for n in 2..=8 {
            let c = e(upsilon(n, x))?;
            for (label, o) in [
                ("recursion", e(upsilon_recursive_oracle(n, x))?),
                ("nested", e(upsilon_nested(n, x))?),
            ] {
                let d = (c.value - o.value).abs();
                ensure(d <= 1e-7f64.max(o.error_estimate), || {
                    format!("{label} n={n} x={x}: {} vs {}", c.value, o.value)
                })?;
                worst = worst.max(d);
            }
        }
    }
    e(verify_zeta_signs(8))?;
    let signs = e(derive_zeta_signs(8))?;
    ensure(signs == [(3, 1), (5, -1), (7, 1)], || {
        format!("signs {signs:?}")
    })?;
    Ok(format!(
        "84 comparisons, max |diff| {worst:.1e}; zeta signs +,-,+ for k = 3,5,7"
    ))
}

fn collapse() -> Check {
    let mut zeros = 0;
    let mut ones = 0;
    for m in 0..=12u32 {
        for k in (3..m + 2).step_by(2) {
            let s = e(collapse_sum(m, k))?;
            ensure(s == integer(0), || format!("S({m},{k}) = {s}"))?;
            zeros += 1;
        }
        if m % 2 == 1 {
            let s = e(collapse_sum(m, m + 2))?;
            ensure(s == integer(-1), || format!("S({m},{}) = {s}", m + 2))?;
            ones += 1;
        }
    }
    let xs = [
        Angle::pi_fraction(1, 3),
        Angle::pi_fraction(1, 5),
        Angle::pi_fraction(2, 7),
    ];
    for p in 1..=2u32 {
        let m = 2 * p - 1;
        let cs = xs
            .iter()
            .map(|x| e(moment_zeta_coefficient(m, x, 2 * p + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        ensure(cs.iter().all(|c| *c == cs[0]), || format!("p={p}: {cs:?}"))?;
        // t = 2s maps the log|sin| moment onto the log(2 sin(t/2)) kernel
        let converted = &cs[0] * integer(1 << (2 * p));
        let expected = integer(sign_pow(p as i64 + 1)) * Rational::from_integer(factorial(m));
        ensure(converted == expected, || {
            format!("p={p}: 2^(2p) c = {converted}, expected {expected}")
        })?;
    }
    Ok(format!(
        "{zeros} zero sums, {ones} sums equal to -1; zeta(3), zeta(5) coefficients x-independent and equal to 1, -6 after conversion"
    ))
}

fn multiple_sine() -> Check {
    let mut worst: f64 = 0.0;
    for r in 2..=4 {
        for z in [0.25, 0.5, 0.75] {
            let c = e(log_multiple_sine(r, z))?;
            let q = e(log_multiple_sine_quadrature(r, z))?;
            let d = (c.value - q.value).abs();
            ensure(d <= 1e-7f64.max(q.error_estimate), || {
                format!("r={r} z={z}: {} vs {}", c.value, q.value)
            })?;
            worst = worst.max(d);
        }
    }
    Ok(format!("9 cases, max |diff| {worst:.1e}"))
}

fn special_functions() -> Check {
    let thetas: Vec<f64> = (1..40).map(|i| i as f64 * PI / 40.0 + 0.013).collect();
    let cl = |n: u32, t: f64| clausen(n, &Angle::real(t)).map(|r| r.value);
    let mut checks = 0;
    for n in 2..=7 {
        for &t in &thetas {
            let a = e(cl(n, t))?;
            let b = e(cl(n, t + 2.0 * PI))?;
            ensure(within(a, b, 1e-12), || format!("periodicity n={n} t={t}"))?;
            let m = e(cl(n, -t))?;
            let want = if n % 2 == 0 { -a } else { a };
            ensure(within(m, want, 1e-12), || format!("parity n={n} t={t}"))?;
            checks += 2;
        }
    }
    for &t in thetas.iter().filter(|&&t| t < PI) {
        let lhs = e(cl(2, 2.0 * t))?;
        let rhs = 2.0 * e(cl(2, t))? - 2.0 * e(cl(2, PI - t))?;
        ensure(within(lhs, rhs, 1e-11), || format!("duplication t={t}"))?;
        checks += 1;
    }
    for n in 1..=8u32 {
        for k in [0i64, 1, 2, 3] {
            let a = Angle::pi_fraction(k, 2);
            if n == 1 && k == 0 {
                continue;
            }
            let s = e(clausen_symbolic(n, &a))?;
            if s.has_clausen_atoms() {
                continue;
            }
            let v = e(clausen(n, &a))?.value;
            ensure(within(e(s.numeric_value())?, v, 1e-12), || {
                format!("symbolic Cl_{n}({a})")
            })?;
            checks += 1;
        }
    }
    for n in (2..=20).step_by(2) {
        let exact = e(e(zeta_int_symbolic(n))?.numeric_value())?;
        let nf = n as f64;
        let big: f64 = 2000.0;
        let series: f64 = (1..2000).rev().map(|k| (k as f64).powf(-nf)).sum::<f64>()
            + big.powf(1.0 - nf) / (nf - 1.0)
            + 0.5 * big.powf(-nf)
            + nf * big.powf(-nf - 1.0) / 12.0;
        ensure(within(exact, series, 1e-13), || format!("zeta({n})"))?;
        checks += 1;
    }
    let r = e(integrate(f64::ln, 0.0, 1.0, 1e-12))?;
    ensure(within(r.value, -1.0, 1e-10), || {
        format!("int log = {}", r.value)
    })?;
    checks += 1;
    Ok(format!("{checks} checks"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("1 Newman table at pi/2", newman_table),
        ("2 familiar value", familiar),
        ("3 log(2 sin) closed forms", ls_closed_forms),
        ("4 closed form vs recursion", recursion_agreement),
        ("5 collapse identity", collapse),
        ("6 multiple sine", multiple_sine),
        ("7 special functions", special_functions),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of 7 criteria passed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
