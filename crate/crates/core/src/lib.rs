//! Log-sine integrals and Newman's repeated integrals of `log|sin x|`.
//!
//! Every quantity is available three ways: as a binary64 number from a
//! closed form, as an exact [`SymbolicExpr`] over the basis
//! `{1, log 2, zeta(odd), Cl_n(angle)}` with rational coefficients times
//! powers of pi, and as an independent double-exponential quadrature that
//! serves as the oracle for the other two.
//!
//! Module map:
//!
//! - [`exact`]: rationals, angles and canonical symbolic expressions.
//! - [`special`]: Bernoulli numbers, integer zeta values, Clausen functions.
//! - [`quadrature`]: tanh-sinh integration and the reference integrals.
//! - [`newman`]: the repeated integrals `Y^n(x)` in closed form and by
//!   three independent numerical routes.
//! - [`logsine`]: moments `I(M, x)`, the `log(2 sin(x/2))` closed forms,
//!   the zeta-collapse identity and the multiple sine function.
//! - [`cli`]: argument parsing and report generation for the `logsine` binary.

pub mod cli;
pub mod error;
pub mod exact;
pub mod logsine;
pub mod newman;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
pub use exact::{Angle, ConstantAtom, Rational, SymbolicExpr, Term};
pub use quadrature::QuadratureResult;

use serde::Serialize;

/// A binary64 value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
}

impl EvalResult {
    pub fn new(value: f64, error_estimate: f64) -> Self {
        EvalResult {
            value,
            error_estimate,
        }
    }

    pub fn exact(value: f64) -> Self {
        EvalResult::new(value, 0.0)
    }
}

impl From<QuadratureResult> for EvalResult {
    fn from(q: QuadratureResult) -> Self {
        EvalResult::new(q.value, q.error_estimate)
    }
}
