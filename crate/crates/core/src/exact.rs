//! Exact arithmetic: rationals, angles, and finite linear combinations of
//! transcendental constants.
//!
//! A [`SymbolicExpr`] is a sum of terms `c * pi^a * atom` with `c` rational
//! and `atom` one of `1`, `log 2`, `zeta(n)` for odd `n >= 3`, or
//! `Cl_n(theta)`. Terms are kept in a canonical order with like terms merged
//! and zero coefficients dropped, so two expressions are equal exactly when
//! their representations are equal. Products of atoms are not representable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::special;

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `1/m!`, taken to be zero for negative `m`.
pub fn inv_factorial(m: i64) -> Rational {
    if m < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial(m as u32))
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

pub(crate) fn pow2(e: i32) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

pub(crate) fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A point on the real line, stored exactly when it is a rational multiple
/// of pi.
#[derive(Debug, Clone)]
pub enum Angle {
    /// `coeff * pi`
    RationalPi(Rational),
    GenericReal(f64),
}

impl Angle {
    /// `numer/denom * pi`
    pub fn pi_fraction(numer: i64, denom: i64) -> Angle {
        Angle::RationalPi(rational(numer, denom))
    }

    pub fn pi_multiple(coeff: Rational) -> Angle {
        Angle::RationalPi(coeff)
    }

    pub fn real(value: f64) -> Angle {
        Angle::GenericReal(value)
    }

    pub fn value(&self) -> f64 {
        match self {
            Angle::RationalPi(c) => to_f64(c) * PI,
            Angle::GenericReal(v) => *v,
        }
    }

    pub fn pi_coefficient(&self) -> Option<&Rational> {
        match self {
            Angle::RationalPi(c) => Some(c),
            Angle::GenericReal(_) => None,
        }
    }

    /// The pi coefficient, or [`Error::NotRationalPi`] for a generic real.
    pub fn require_pi_coefficient(&self) -> Result<&Rational> {
        self.pi_coefficient()
            .ok_or_else(|| Error::NotRationalPi(self.value()))
    }

    pub fn scale(&self, factor: &Rational) -> Angle {
        match self {
            Angle::RationalPi(c) => Angle::RationalPi(c * factor),
            Angle::GenericReal(v) => Angle::GenericReal(v * to_f64(factor)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::RationalPi(_))
    }

    pub fn latex(&self) -> String {
        match self {
            Angle::GenericReal(v) => format!("{v}"),
            Angle::RationalPi(c) => {
                if c.is_zero() {
                    return "0".to_string();
                }
                let sign = if c.is_negative() { "-" } else { "" };
                let num = c.numer().abs();
                let den = c.denom();
                let top = if num.is_one() {
                    "\\pi".to_string()
                } else {
                    format!("{num}\\pi")
                };
                if den.is_one() {
                    format!("{sign}{top}")
                } else {
                    format!("{sign}\\frac{{{top}}}{{{den}}}")
                }
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::GenericReal(v) => write!(f, "{v}"),
            Angle::RationalPi(c) => {
                if c.is_zero() {
                    return write!(f, "0");
                }
                if c.is_negative() {
                    write!(f, "-")?;
                }
                let num = c.numer().abs();
                if !num.is_one() {
                    write!(f, "{num}")?;
                }
                write!(f, "pi")?;
                if !c.denom().is_one() {
                    write!(f, "/{}", c.denom())?;
                }
                Ok(())
            }
        }
    }
}

// Exact angles sort before generic reals; generic reals use the IEEE total
// order so that the atom ordering is total.
impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Angle::RationalPi(a), Angle::RationalPi(b)) => a.cmp(b),
            (Angle::RationalPi(_), Angle::GenericReal(_)) => Ordering::Less,
            (Angle::GenericReal(_), Angle::RationalPi(_)) => Ordering::Greater,
            (Angle::GenericReal(a), Angle::GenericReal(b)) => a.total_cmp(b),
        }
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Angle {}

impl Hash for Angle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Angle::RationalPi(c) => {
                0u8.hash(state);
                c.hash(state);
            }
            Angle::GenericReal(v) => {
                1u8.hash(state);
                v.to_bits().hash(state);
            }
        }
    }
}

/// One basis constant. The derived ordering is the canonical term order:
/// `One < LogTwo < ZetaOdd(n) < ClausenVal(order, arg)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstantAtom {
    One,
    LogTwo,
    /// `zeta(n)`, odd `n >= 3`
    ZetaOdd(u32),
    /// `Cl_order(arg)`, `order >= 1`
    ClausenVal {
        order: u32,
        arg: Angle,
    },
}

impl ConstantAtom {
    pub fn zeta(n: u32) -> Result<ConstantAtom> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "zeta atom needs an odd argument >= 3, got {n}"
            )));
        }
        Ok(ConstantAtom::ZetaOdd(n))
    }

    pub fn clausen(order: u32, arg: Angle) -> Result<ConstantAtom> {
        if order == 0 {
            return Err(Error::Domain("Clausen order must be >= 1".into()));
        }
        Ok(ConstantAtom::ClausenVal { order, arg })
    }

    pub fn value(&self) -> Result<f64> {
        match self {
            ConstantAtom::One => Ok(1.0),
            ConstantAtom::LogTwo => Ok(std::f64::consts::LN_2),
            ConstantAtom::ZetaOdd(n) => Ok(special::zeta_int(*n as i64)?.value),
            ConstantAtom::ClausenVal { order, arg } => Ok(special::clausen(*order, arg)?.value),
        }
    }

    fn latex(&self) -> Option<String> {
        match self {
            ConstantAtom::One => None,
            ConstantAtom::LogTwo => Some("\\log 2".into()),
            ConstantAtom::ZetaOdd(n) => Some(format!("\\zeta({n})")),
            ConstantAtom::ClausenVal { order, arg } => Some(format!(
                "\\mathrm{{Cl}}_{{{order}}}\\!\\left({}\\right)",
                arg.latex()
            )),
        }
    }

    fn plain(&self) -> Option<String> {
        match self {
            ConstantAtom::One => None,
            ConstantAtom::LogTwo => Some("log(2)".into()),
            ConstantAtom::ZetaOdd(n) => Some(format!("zeta({n})")),
            ConstantAtom::ClausenVal { order, arg } => Some(format!("Cl{order}({arg})")),
        }
    }
}

impl fmt::Display for ConstantAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.plain().as_deref().unwrap_or("1"))
    }
}

impl Serialize for ConstantAtom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            ConstantAtom::One => m.serialize_entry("kind", "one")?,
            ConstantAtom::LogTwo => m.serialize_entry("kind", "log2")?,
            ConstantAtom::ZetaOdd(n) => {
                m.serialize_entry("kind", "zeta")?;
                m.serialize_entry("n", n)?;
            }
            ConstantAtom::ClausenVal { order, arg } => {
                m.serialize_entry("kind", "clausen")?;
                m.serialize_entry("order", order)?;
                m.serialize_entry("arg", &arg.to_string())?;
            }
        }
        m.end()
    }
}

/// `coeff * pi^pi_power * atom`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub pi_power: u32,
    pub atom: ConstantAtom,
}

impl Term {
    pub fn new(coeff: Rational, pi_power: u32, atom: ConstantAtom) -> Term {
        Term {
            coeff,
            pi_power,
            atom,
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("coeff", &self.coeff.to_string())?;
        m.serialize_entry("pi_power", &self.pi_power)?;
        m.serialize_entry("atom", &self.atom)?;
        m.end()
    }
}

/// Canonical linear combination of [`Term`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicExpr {
    terms: BTreeMap<(ConstantAtom, u32), Rational>,
}

impl SymbolicExpr {
    pub fn zero() -> SymbolicExpr {
        SymbolicExpr::default()
    }

    pub fn term(coeff: Rational, pi_power: u32, atom: ConstantAtom) -> SymbolicExpr {
        SymbolicExpr::from_terms([Term::new(coeff, pi_power, atom)])
    }

    /// `coeff * pi^pi_power`
    pub fn rational_pi(coeff: Rational, pi_power: u32) -> SymbolicExpr {
        SymbolicExpr::term(coeff, pi_power, ConstantAtom::One)
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms<I: IntoIterator<Item = Term>>(terms: I) -> SymbolicExpr {
        let mut out = SymbolicExpr::zero();
        for t in terms {
            out.push(t.coeff, t.pi_power, t.atom);
        }
        out
    }

    fn push(&mut self, coeff: Rational, pi_power: u32, atom: ConstantAtom) {
        if coeff.is_zero() {
            return;
        }
        let key = (atom, pi_power);
        let merged = match self.terms.remove(&key) {
            Some(c) => c + coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms
            .iter()
            .map(|((atom, p), c)| Term::new(c.clone(), *p, atom.clone()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `pi^pi_power * atom` (zero when absent).
    pub fn coefficient(&self, atom: &ConstantAtom, pi_power: u32) -> Rational {
        self.terms
            .get(&(atom.clone(), pi_power))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &SymbolicExpr) -> SymbolicExpr {
        let mut out = self.clone();
        for ((atom, p), c) in &other.terms {
            out.push(c.clone(), *p, atom.clone());
        }
        out
    }

    pub fn neg(&self) -> SymbolicExpr {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &SymbolicExpr) -> SymbolicExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> SymbolicExpr {
        self.scale_monomial(c, 0)
    }

    /// Multiplies by `c * pi^k`.
    pub fn scale_monomial(&self, c: &Rational, k: u32) -> SymbolicExpr {
        if c.is_zero() {
            return SymbolicExpr::zero();
        }
        SymbolicExpr {
            terms: self
                .terms
                .iter()
                .map(|((atom, p), coeff)| ((atom.clone(), p + k), coeff * c))
                .collect(),
        }
    }

    /// Terms whose atom is `zeta(n)` for some `n`.
    pub fn zeta_part(&self) -> SymbolicExpr {
        SymbolicExpr::from_terms(
            self.terms()
                .filter(|t| matches!(t.atom, ConstantAtom::ZetaOdd(_))),
        )
    }

    pub fn has_clausen_atoms(&self) -> bool {
        self.terms
            .keys()
            .any(|(a, _)| matches!(a, ConstantAtom::ClausenVal { .. }))
    }

    pub fn numeric_value(&self) -> Result<f64> {
        let mut sum = 0.0;
        for ((atom, p), c) in &self.terms {
            sum += to_f64(c) * PI.powi(*p as i32) * atom.value()?;
        }
        Ok(sum)
    }

    pub fn render_latex(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((atom, p), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&latex_term(&c.abs(), *p, atom));
        }
        out
    }
}

fn latex_term(c: &Rational, pi_power: u32, atom: &ConstantAtom) -> String {
    let pi = match pi_power {
        0 => None,
        1 => Some("\\pi".to_string()),
        p => Some(format!("\\pi^{{{p}}}")),
    };
    let num = c.numer();
    let top = match (&pi, num.is_one()) {
        (None, _) => num.to_string(),
        (Some(pi), true) => pi.clone(),
        (Some(pi), false) => format!("{num}{pi}"),
    };
    let unit = pi.is_none() && num.is_one() && c.denom().is_one();
    let coeff = if c.denom().is_one() {
        top
    } else {
        format!("\\frac{{{top}}}{{{}}}", c.denom())
    };
    match atom.latex() {
        None => coeff,
        Some(a) if unit => a,
        Some(a) => format!("{coeff}{a}"),
    }
}

impl fmt::Display for SymbolicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((atom, p), c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            let a = c.abs();
            if !a.is_one() || (*p == 0 && atom.plain().is_none()) {
                factors.push(a.to_string());
            }
            match p {
                0 => {}
                1 => factors.push("pi".into()),
                p => factors.push(format!("pi^{p}")),
            }
            factors.extend(atom.plain());
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for SymbolicExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for t in self.terms() {
            seq.serialize_element(&t)?;
        }
        seq.end()
    }
}

impl std::ops::Add for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn add(self, rhs: &SymbolicExpr) -> SymbolicExpr {
        SymbolicExpr::add(self, rhs)
    }
}

impl std::ops::Sub for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn sub(self, rhs: &SymbolicExpr) -> SymbolicExpr {
        SymbolicExpr::sub(self, rhs)
    }
}

impl std::ops::Neg for &SymbolicExpr {
    type Output = SymbolicExpr;
    fn neg(self) -> SymbolicExpr {
        SymbolicExpr::neg(self)
    }
}

/// Reduces `c` into `[0, 2)`.
pub(crate) fn reduce_mod_two(c: &Rational) -> Rational {
    let two = integer(2);
    let q = (c / &two).floor();
    c - q * two
}

/// Numerator and denominator as machine integers, when they fit.
pub fn numer_denom_i64(r: &Rational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}
