//! Command model and report generation behind the `logsine` binary.
//!
//! Machine output is a single JSON object with the keys `command`,
//! `inputs`, `value`, `error_estimate`, `status` and, when an exact form
//! exists, `symbolic_latex`. The verification and table commands print
//! plain-text reports.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{integer, rational, Angle, ConstantAtom, Rational, SymbolicExpr};
use crate::logsine::{self, IntegralSpec, Kernel};
use crate::newman;
use crate::quadrature;
use crate::EvalResult;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance used by the built-in tables.
pub const TABLE_TOL: f64 = 1e-8;

fn parse_err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

fn parse_int(text: &str, offset: usize) -> Result<i64> {
    if text.is_empty() {
        return parse_err(offset, "expected an integer");
    }
    if let Some(i) = text.find(|c: char| !c.is_ascii_digit()) {
        return parse_err(
            offset + i,
            format!("unexpected character in integer {text:?}"),
        );
    }
    text.parse()
        .or_else(|_| parse_err(offset, format!("integer {text:?} out of range")))
}

/// Parses `pi/2`, `2pi/3`, `3/4pi`, `pi`, `-pi/6` (exact multiples of pi)
/// or plain numbers such as `0.75`, `3`, `1/3` (generic reals).
pub fn parse_angle(text: &str) -> Result<Angle> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return parse_err(0, "empty angle");
    }
    let (negative, rest, offset) = match body.as_bytes()[0] {
        b'-' => (true, &body[1..], lead + 1),
        b'+' => (false, &body[1..], lead + 1),
        _ => (false, body, lead),
    };
    let sign = if negative { -1 } else { 1 };

    let pi_at = rest
        .find("pi")
        .map(|i| (i, 2))
        .or_else(|| rest.find('π').map(|i| (i, 'π'.len_utf8())));
    if let Some((at, width)) = pi_at {
        let before = rest[..at].trim_end_matches('*');
        let after = &rest[at + width..];
        let mut coeff = match before {
            "" => integer(1),
            b => match b.split_once('/') {
                Some((n, d)) => {
                    let n = parse_int(n, offset)?;
                    let d = parse_int(d, offset + n.to_string().len() + 1)?;
                    if d == 0 {
                        return parse_err(offset, "zero denominator");
                    }
                    rational(n, d)
                }
                None => integer(parse_int(b, offset)?),
            },
        };
        if !after.is_empty() {
            let pos = offset + at + width;
            let Some(d) = after.strip_prefix('/') else {
                return parse_err(pos, format!("unexpected {after:?} after pi"));
            };
            let d = parse_int(d, pos + 1)?;
            if d == 0 {
                return parse_err(pos + 1, "zero denominator");
            }
            coeff /= integer(d);
        }
        return Ok(Angle::RationalPi(coeff * integer(sign)));
    }

    if let Some((n, d)) = rest.split_once('/') {
        let num = parse_int(n, offset)?;
        let den = parse_int(d, offset + n.len() + 1)?;
        if den == 0 {
            return parse_err(offset + n.len() + 1, "zero denominator");
        }
        return Ok(Angle::GenericReal(sign as f64 * num as f64 / den as f64));
    }
    match rest.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Angle::GenericReal(sign as f64 * v)),
        _ => {
            let pos = rest
                .find(|c: char| {
                    !(c.is_ascii_digit()
                        || c == '.'
                        || c == 'e'
                        || c == 'E'
                        || c == '-'
                        || c == '+')
                })
                .unwrap_or(0);
            parse_err(offset + pos, format!("cannot read {rest:?} as an angle"))
        }
    }
}

/// [`parse_angle`] restricted to strictly positive values.
pub fn parse_positive_angle(text: &str) -> Result<Angle> {
    let a = parse_angle(text)?;
    if a.value() > 0.0 {
        Ok(a)
    } else {
        Err(Error::Domain(format!("angle {text:?} must be positive")))
    }
}

/// Comma-separated list of positive angles.
pub fn parse_grid(text: &str) -> Result<Vec<Angle>> {
    text.split(',')
        .map(|s| parse_positive_angle(s.trim()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableName {
    Newman,
    Familiar,
    Identities,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpsilonMode {
    Closed,
    Oracle,
    Nested,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval(IntegralSpec),
    Closed(IntegralSpec, OutputFormat),
    Verify {
        max_moment: u32,
        grid: Vec<Angle>,
        tol: f64,
    },
    Table(TableName),
    Upsilon {
        n: u32,
        x: Angle,
        mode: UpsilonMode,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

#[derive(Serialize)]
struct Record {
    command: &'static str,
    inputs: serde_json::Value,
    value: f64,
    error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbolic_latex: Option<String>,
    status: &'static str,
}

impl Record {
    fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

fn kernel_name(k: Kernel) -> &'static str {
    match k {
        Kernel::LogAbsSin => "logsin",
        Kernel::LogTwoSinHalf => "ls",
    }
}

fn spec_inputs(spec: &IntegralSpec) -> serde_json::Value {
    json!({
        "kernel": kernel_name(spec.kernel),
        "moment": spec.moment,
        "upper": spec.upper.to_string(),
    })
}

pub fn run(command: &Command) -> Outcome {
    match execute(command) {
        Ok(o) => o,
        Err(e) => Outcome {
            exit_code: EXIT_USAGE,
            output: format!("error: {e}"),
        },
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Eval(spec) => {
            let v = spec.closed_form()?;
            Ok(ok(Record {
                command: "eval",
                inputs: spec_inputs(spec),
                value: v.value,
                error_estimate: v.error_estimate,
                symbolic_latex: None,
                status: "ok",
            }
            .render()))
        }
        Command::Closed(spec, format) => {
            let v = spec.closed_form()?;
            let output = match format {
                OutputFormat::Latex => {
                    format!("{}\n% = {:.17e}", spec.symbolic()?.render_latex(), v.value)
                }
                OutputFormat::Json => Record {
                    command: "closed",
                    inputs: spec_inputs(spec),
                    value: v.value,
                    error_estimate: v.error_estimate,
                    // generic real limits have a numeric closed form only
                    symbolic_latex: match spec.symbolic() {
                        Ok(sym) => Some(sym.render_latex()),
                        Err(Error::NotRationalPi(_)) => None,
                        Err(e) => return Err(e),
                    },
                    status: "ok",
                }
                .render(),
            };
            Ok(ok(output))
        }
        Command::Verify {
            max_moment,
            grid,
            tol,
        } => verify(*max_moment, grid, *tol),
        Command::Table(TableName::Newman) => table_newman(),
        Command::Table(TableName::Familiar) => table_familiar(),
        Command::Table(TableName::Identities) => table_identities(),
        Command::Upsilon { n, x, mode } => {
            let (v, latex): (EvalResult, Option<String>) = match mode {
                UpsilonMode::Closed => {
                    let latex = if x.is_exact() && *n >= 2 {
                        Some(newman::upsilon_symbolic(*n, x)?.render_latex())
                    } else {
                        None
                    };
                    (newman::upsilon(*n, x)?, latex)
                }
                UpsilonMode::Oracle => (newman::upsilon_recursive_oracle(*n, x)?, None),
                UpsilonMode::Nested => (newman::upsilon_nested(*n, x)?, None),
            };
            let mode_name = match mode {
                UpsilonMode::Closed => "closed",
                UpsilonMode::Oracle => "oracle",
                UpsilonMode::Nested => "nested",
            };
            Ok(ok(Record {
                command: "upsilon",
                inputs: json!({ "n": n, "x": x.to_string(), "mode": mode_name }),
                value: v.value,
                error_estimate: v.error_estimate,
                symbolic_latex: latex,
                status: "ok",
            }
            .render()))
        }
    }
}

fn ok(output: String) -> Outcome {
    Outcome {
        exit_code: EXIT_OK,
        output,
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Compares `I(M, x)` from the closed form with the quadrature oracle for
/// every `M <= max_moment` and every grid point.
fn verify(max_moment: u32, grid: &[Angle], tol: f64) -> Result<Outcome> {
    for x in grid {
        let v = x.value();
        if !(v > 0.0 && v <= PI * (1.0 + 4.0 * f64::EPSILON)) {
            return Err(Error::Domain(format!("grid point {x} outside (0, pi]")));
        }
    }
    let mut out = String::new();
    writeln!(
        out,
        "{:>3}  {:>10}  {:>24}  {:>24}  {:>10}  result",
        "M", "x", "closed form", "oracle", "|diff|"
    )
    .unwrap();
    let mut failures = 0;
    for m in 0..=max_moment {
        for x in grid {
            let closed = logsine::logsine_moment(m, x)?;
            let oracle = quadrature::oracle_logsine_moment(m, x)?;
            let diff = (closed.value - oracle.value).abs();
            let pass = diff <= tol.max(oracle.error_estimate);
            if !pass {
                failures += 1;
            }
            writeln!(
                out,
                "{m:>3}  {:>10}  {:>24.16e}  {:>24.16e}  {diff:>10.2e}  {}",
                x.to_string(),
                closed.value,
                oracle.value,
                verdict(pass)
            )
            .unwrap();
        }
    }
    let total = (max_moment as usize + 1) * grid.len();
    writeln!(
        out,
        "{} of {total} cases passed (tol {tol:e})",
        total - failures
    )
    .unwrap();
    Ok(Outcome {
        exit_code: if failures == 0 {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        output: out,
    })
}

fn table_newman() -> Result<Outcome> {
    let x = Angle::pi_fraction(1, 2);
    let mut out = String::new();
    writeln!(out, "Y^n(pi/2), n = 2..5").unwrap();
    let mut all = true;
    for n in 2..=5 {
        let sym = newman::upsilon_symbolic(n, &x)?;
        let closed = newman::upsilon(n, &x)?;
        let oracle = quadrature::oracle_upsilon(n, &x)?;
        let diff = (closed.value - oracle.value).abs();
        let pass = diff <= TABLE_TOL.max(oracle.error_estimate);
        all &= pass;
        writeln!(out, "n = {n}: {}", sym.render_latex()).unwrap();
        writeln!(
            out,
            "       closed {:.16e}  oracle {:.16e}  |diff| {diff:.2e}  {}",
            closed.value,
            oracle.value,
            verdict(pass)
        )
        .unwrap();
    }
    Ok(Outcome {
        exit_code: if all { EXIT_OK } else { EXIT_VERIFY_FAILED },
        output: out,
    })
}

/// `-pi^3 log 2 / 24 + 3 pi zeta(3) / 16`
pub fn familiar_value() -> SymbolicExpr {
    SymbolicExpr::term(rational(-1, 24), 3, ConstantAtom::LogTwo).add(&SymbolicExpr::term(
        rational(3, 16),
        1,
        ConstantAtom::ZetaOdd(3),
    ))
}

/// Which moments `I(M, pi/2)` the familiar value matches according to the
/// quadrature oracle, for `M = 0..=4`.
pub fn familiar_value_attribution() -> Result<Vec<u32>> {
    let x = Angle::pi_fraction(1, 2);
    let target = familiar_value().numeric_value()?;
    let mut hits = Vec::new();
    for m in 0..=4 {
        let o = quadrature::oracle_logsine_moment(m, &x)?;
        if (o.value - target).abs() <= 1e-9f64.max(o.error_estimate) {
            hits.push(m);
        }
    }
    Ok(hits)
}

fn table_familiar() -> Result<Outcome> {
    let x = Angle::pi_fraction(1, 2);
    let expr = familiar_value();
    let target = expr.numeric_value()?;
    let mut out = String::new();
    writeln!(out, "value: {}", expr.render_latex()).unwrap();
    writeln!(out, "numeric: {target:.16e}").unwrap();
    let mut consistent = true;
    for m in [1u32, 2] {
        let sym = logsine::logsine_moment_symbolic(m, &x)?;
        let closed = logsine::logsine_moment(m, &x)?;
        let oracle = quadrature::oracle_logsine_moment(m, &x)?;
        let diff = (closed.value - oracle.value).abs();
        consistent &= diff <= 1e-9f64.max(oracle.error_estimate);
        writeln!(
            out,
            "I({m}, pi/2) = {}\n    closed {:.16e}  oracle {:.16e}  |diff| {diff:.2e}  matches value: {}",
            sym.render_latex(),
            closed.value,
            oracle.value,
            if sym == expr { "yes" } else { "no" }
        )
        .unwrap();
    }
    let hits = familiar_value_attribution()?;
    writeln!(out, "quoted label:       I(1, pi/2)").unwrap();
    match hits.as_slice() {
        [m] => writeln!(out, "oracle attribution: I({m}, pi/2)").unwrap(),
        _ => writeln!(out, "oracle attribution: ambiguous {hits:?}").unwrap(),
    }
    if hits != [1] {
        writeln!(
            out,
            "note: the quoted label disagrees with the oracle; I(1, pi/2) = 7 zeta(3)/16 - pi^2 log 2/8"
        )
        .unwrap();
    }
    Ok(Outcome {
        exit_code: if consistent {
            EXIT_OK
        } else {
            EXIT_VERIFY_FAILED
        },
        output: out,
    })
}

fn table_identities() -> Result<Outcome> {
    let mut out = String::new();
    writeln!(
        out,
        "collapse sum S(M, k) = sum_i (-1)^i / ((M-i)! (i+2-k)!), odd 3 <= k <= M+2"
    )
    .unwrap();
    let mut all = true;
    for m in 0..=12u32 {
        let mut row = Vec::new();
        let mut row_ok = true;
        for k in (3..=m + 2).step_by(2) {
            let s = logsine::collapse_sum(m, k)?;
            let expected: Rational = if k == m + 2 { integer(-1) } else { integer(0) };
            row_ok &= s == expected;
            row.push(format!("k={k}: {s}"));
        }
        all &= row_ok;
        let body = if row.is_empty() {
            "(no odd k)".to_string()
        } else {
            row.join(", ")
        };
        writeln!(out, "M = {m:>2}: {body}  {}", verdict(row_ok)).unwrap();
    }
    Ok(Outcome {
        exit_code: if all { EXIT_OK } else { EXIT_VERIFY_FAILED },
        output: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn angles() {
        assert_eq!(parse_angle("pi/2").unwrap(), Angle::pi_fraction(1, 2));
        assert_eq!(parse_angle("2pi/3").unwrap(), Angle::pi_fraction(2, 3));
        assert_eq!(parse_angle("3/4pi").unwrap(), Angle::pi_fraction(3, 4));
        assert_eq!(parse_angle("-pi").unwrap(), Angle::pi_fraction(-1, 1));
        assert_eq!(parse_angle("2*pi/3").unwrap(), Angle::pi_fraction(2, 3));
        assert_eq!(parse_angle("π/6").unwrap(), Angle::pi_fraction(1, 6));
        assert_eq!(parse_angle("1.5708").unwrap(), Angle::real(1.5708));
        assert_eq!(parse_angle("3").unwrap(), Angle::real(3.0));
        assert_eq!(parse_angle("1/4").unwrap(), Angle::real(0.25));
    }

    #[test]
    fn angle_errors() {
        assert!(matches!(parse_angle(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_angle("pi/x"),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(matches!(parse_angle("pi/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_angle("2pq"), Err(Error::Parse { .. })));
        assert!(matches!(parse_angle("abc"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_positive_angle("-pi/2"),
            Err(Error::Domain(_))
        ));
        assert!(parse_positive_angle("0").is_err());
    }

    #[test]
    fn grid() {
        let g = parse_grid("pi/3, pi/2,1").unwrap();
        assert_eq!(g.len(), 3);
        assert!(parse_grid("pi/3,,pi").is_err());
    }

    #[test]
    fn eval_json_keys() {
        let spec = IntegralSpec::new(Kernel::LogAbsSin, 0, Angle::pi_fraction(1, 2)).unwrap();
        let o = run(&Command::Eval(spec));
        assert_eq!(o.exit_code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&o.output).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["command", "error_estimate", "inputs", "status", "value"]
        );
    }

    #[test]
    fn domain_errors_exit_two() {
        let o = run(&Command::Upsilon {
            n: 1,
            x: Angle::pi_fraction(1, 1),
            mode: UpsilonMode::Closed,
        });
        assert_eq!(o.exit_code, EXIT_USAGE);
        let o = run(&Command::Verify {
            max_moment: 1,
            grid: vec![Angle::pi_fraction(3, 2)],
            tol: 1e-7,
        });
        assert_eq!(o.exit_code, EXIT_USAGE);
    }

    #[test]
    fn verify_single_case() {
        let o = run(&Command::Verify {
            max_moment: 0,
            grid: vec![Angle::pi_fraction(1, 2)],
            tol: 1e-7,
        });
        assert_eq!(o.exit_code, EXIT_OK);
        assert!(o.output.contains("1 of 1 cases passed"));
    }
}
