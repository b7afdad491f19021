//! Exact rational functions over a [`Chart`].
//!
//! A [`Scalar`] is a fraction of two polynomials with rational coefficients,
//! kept in canonical form: numerator and denominator reduced modulo the
//! chart relation (if any), divided by their gcd, and scaled so the
//! denominator is monic in graded-lex order.

mod chart;
mod parse;
pub mod poly;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use chart::{Backend, Chart};
pub(crate) use chart::is_identifier;
use poly::Poly;
pub use poly::{Monomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown identifier `{name}` at offset {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("division by zero at offset {position}")]
    ZeroDenominator { position: usize },
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("no value given for coordinate `{0}`")]
    MissingCoordinate(String),
    #[error("pole at the evaluation point")]
    Pole,
    #[error("evaluation point does not satisfy the chart relation")]
    OffRelation,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
}

/// Arithmetic operation selector for [`Scalar::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug)]
pub struct Scalar {
    chart: Chart,
    num: Poly,
    den: Poly,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    fn from_parts(chart: &Chart, num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        let (num, den) = match chart.relation() {
            Some(rel) => (rel.reduce(&num), rel.reduce(&den)),
            None => (num, den),
        };
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = chart.nvars();
        if num.is_zero() {
            return Ok(Scalar { chart: chart.clone(), num, den: Poly::one(n) });
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.lead_coeff().recip();
        Ok(Scalar { chart: chart.clone(), num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub(crate) fn from_poly(chart: &Chart, p: Poly) -> Scalar {
        let n = chart.nvars();
        Scalar::from_parts(chart, p, Poly::one(n)).expect("unit denominator")
    }

    pub fn zero(chart: &Chart) -> Scalar {
        let n = chart.nvars();
        Scalar { chart: chart.clone(), num: Poly::zero(n), den: Poly::one(n) }
    }

    pub fn one(chart: &Chart) -> Scalar {
        Scalar::constant(chart, Rational::one())
    }

    pub fn constant(chart: &Chart, c: Rational) -> Scalar {
        let n = chart.nvars();
        Scalar { chart: chart.clone(), num: Poly::constant(n, c), den: Poly::one(n) }
    }

    pub fn integer(chart: &Chart, c: i64) -> Scalar {
        Scalar::constant(chart, Rational::from_integer(BigInt::from(c)))
    }

    pub fn ratio(chart: &Chart, n: i64, d: i64) -> Scalar {
        Scalar::constant(chart, rational(n, d))
    }

    /// The coordinate function named `name`.
    pub fn coordinate(chart: &Chart, name: &str) -> Result<Scalar, ScalarError> {
        let v = chart
            .coord_index(name)
            .ok_or_else(|| ScalarError::UnknownCoordinate(String::from(name)))?;
        Ok(Scalar::from_poly(chart, Poly::var(chart.nvars(), v)))
    }

    /// Parses infix text: `+ - * / ^`, rational literals, coordinate names
    /// and parentheses, with `^` binding tighter than unary minus, which binds
    /// tighter than `* /`, which bind tighter than `+ -`.
    pub fn parse(text: &str, chart: &Chart) -> Result<Scalar, ScalarError> {
        parse::parse(text, chart)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Re-applies canonicalization; idempotent on values built by this module.
    pub fn normalize(&self) -> Scalar {
        Scalar::from_parts(&self.chart, self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if !self.chart.same(&other.chart) {
            return Err(ScalarError::ChartMismatch);
        }
        match op {
            ArithOp::Add => Ok(self.add_same(other, false)),
            ArithOp::Sub => Ok(self.add_same(other, true)),
            ArithOp::Mul => Ok(self.mul_same(other)),
            ArithOp::Div => {
                if other.is_zero() {
                    return Err(ScalarError::DivisionByZero);
                }
                Ok(self.mul_same(&other.recip_unchecked()))
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Add)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Sub)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Mul)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.arith(other, ArithOp::Div)
    }

    fn add_same(&self, other: &Scalar, negate: bool) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let rhs = if negate { other.num.neg() } else { other.num.clone() };
        if self.den == other.den {
            return Scalar::from_parts(&self.chart, self.num.add(&rhs), self.den.clone())
                .expect("nonzero denominator");
        }
        let num = self.num.mul(&other.den).add(&rhs.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::from_parts(&self.chart, num, den).expect("nonzero denominator")
    }

    fn mul_same(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero(&self.chart);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        Scalar::from_parts(&self.chart, self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(&self.chart);
        }
        Scalar { chart: self.chart.clone(), num: self.num.scale(c), den: self.den.clone() }
    }

    fn recip_unchecked(&self) -> Scalar {
        Scalar::from_parts(&self.chart, self.den.clone(), self.num.clone()).expect("nonzero numerator")
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar::from_parts(&self.chart, self.num.pow(e), self.den.pow(e)).expect("nonzero denominator")
    }

    /// Partial derivative along the coordinate `coord`.
    pub fn differentiate(&self, coord: &str) -> Result<Scalar, ScalarError> {
        let v = self
            .chart
            .coord_index(coord)
            .ok_or_else(|| ScalarError::UnknownCoordinate(String::from(coord)))?;
        Ok(self.partial(v))
    }

    /// Partial derivative along coordinate index `v`.
    pub fn partial(&self, v: usize) -> Scalar {
        if self.is_constant() {
            return Scalar::zero(&self.chart);
        }
        let dn = self.num.derivative(v);
        if self.den.is_constant() {
            return Scalar::from_parts(&self.chart, dn, self.den.clone()).expect("nonzero denominator");
        }
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Scalar::from_parts(&self.chart, num, den).expect("nonzero denominator")
    }

    /// Exact value at a point given in coordinate order.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ScalarError> {
        let coords = self.chart.coords();
        if point.len() != coords.len() {
            let missing = coords.get(point.len()).cloned().unwrap_or_default();
            return Err(ScalarError::MissingCoordinate(missing));
        }
        if let Some(r) = self.chart.relation_poly() {
            if !r.evaluate(point).is_zero() {
                return Err(ScalarError::OffRelation);
            }
        }
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(ScalarError::Pole);
        }
        Ok(self.num.evaluate(point) / d)
    }

    /// Exact value at a point given by coordinate name.
    pub fn evaluate_named(&self, point: &[(&str, Rational)]) -> Result<Rational, ScalarError> {
        for (name, _) in point {
            if self.chart.coord_index(name).is_none() {
                return Err(ScalarError::UnknownCoordinate(String::from(*name)));
            }
        }
        let values: Vec<Rational> = self
            .chart
            .coords()
            .iter()
            .map(|c| {
                point
                    .iter()
                    .find(|(n, _)| n == c)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| ScalarError::MissingCoordinate(c.clone()))
            })
            .collect::<Result<_, _>>()?;
        self.evaluate(&values)
    }

    /// Canonical text in the parser grammar; parsing it back yields `self`.
    pub fn to_expr(&self) -> String {
        let names = self.chart.coords();
        let num = self.num.to_expr(names);
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.terms().len() > 1 { alloc::format!("({num})") } else { num };
        alloc::format!("{num}/({})", self.den.to_expr(names))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if !self.chart.same(&other.chart) {
            return false;
        }
        if self.num == other.num && self.den == other.den {
            return true;
        }
        if self.chart.relation().is_none() {
            return false;
        }
        self.add_same(other, true).is_zero()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.arith(rhs, $op).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);
binop!(Div, div, ArithOp::Div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { chart: self.chart.clone(), num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Chart {
        Chart::coordinates(["x", "y", "z"]).unwrap()
    }

    fn s3() -> Chart {
        Chart::embedded(["x1", "x2", "x3", "x4"], "x1^2 + x2^2 + x3^2 + x4^2 - 1").unwrap()
    }

    fn p(text: &str, c: &Chart) -> Scalar {
        Scalar::parse(text, c).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let c = r3();
        let a = p("x + y", &c);
        let b = p("x - y", &c);
        assert_eq!(a.arith(&b, ArithOp::Add).unwrap(), p("2*x", &c));
        let q = p("x/y", &c) * p("y/x", &c);
        assert!(q.is_one());
    }

    #[test]
    fn sphere_quotient_reduces_to_one() {
        let c = s3();
        let s = p("x1^2 + x2^2 + x3^2 + x4^2", &c);
        assert!(s.is_one());
        assert!(p("x1^2 + x2^2 + x3^2 + x4^2 - 1", &c).is_zero());
        assert!(!p("x1^2 - 1", &c).is_zero());
    }

    #[test]
    fn derivative_examples() {
        let c = r3();
        assert_eq!(p("x^2*y", &c).differentiate("x").unwrap(), p("2*x*y", &c));
        assert!(p("7/3", &c).differentiate("z").unwrap().is_zero());
        assert_eq!(p("y/x", &c).differentiate("x").unwrap(), p("-y/x^2", &c));
        assert_eq!(
            p("x", &c).differentiate("w"),
            Err(ScalarError::UnknownCoordinate(String::from("w")))
        );
    }

    #[test]
    fn evaluation_examples() {
        let c = r3();
        let v = p("x + y", &c)
            .evaluate_named(&[("x", rational(1, 2)), ("y", rational(1, 2)), ("z", rational(0, 1))])
            .unwrap();
        assert_eq!(v, rational(1, 1));
        let e = p("1/x", &c).evaluate(&[rational(0, 1), rational(1, 1), rational(1, 1)]);
        assert_eq!(e, Err(ScalarError::Pole));
        let s = s3();
        let eta_xi = p("x3*x3 + x4*x4 + x1*x1 + x2*x2", &s);
        let one = rational(1, 1);
        let zero = rational(0, 1);
        assert_eq!(eta_xi.evaluate(&[one.clone(), zero.clone(), zero.clone(), zero.clone()]).unwrap(), one);
        assert_eq!(
            eta_xi.evaluate(&[one.clone(), one.clone(), zero.clone(), zero]),
            Err(ScalarError::OffRelation)
        );
    }

    #[test]
    fn chart_mismatch_and_zero_division() {
        let a = p("x", &r3());
        let b = p("x1", &s3());
        assert_eq!(a.checked_add(&b), Err(ScalarError::ChartMismatch));
        assert_eq!(a.checked_div(&Scalar::zero(a.chart())), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn canonical_form_has_monic_denominator() {
        let c = r3();
        let s = p("(2*x + 2)/(4*y - 4*x)", &c);
        assert_eq!(s.to_expr(), "(-1/2*x - 1/2)/(x - y)");
        assert_eq!(p(&s.to_expr(), &c), s);
    }
}
