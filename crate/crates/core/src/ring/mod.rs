//! Exact arithmetic over `Q[x1..xn]`.
//!
//! Coefficients are [`Rational`] (arbitrary precision, always reduced), monomials are
//! dense exponent vectors, and polynomials are sparse maps from monomials to coefficients.
//! Every term order lives in [`RingCtx`], so printing and Gröbner computations are
//! reproducible for a fixed context.

mod map;
mod matrix;
mod monomial;
pub mod parse;
mod poly;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

pub use map::RingMap;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{print_poly, Poly};

/// Exact rational numbers. `num-rational` keeps them in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a small integer numerator and denominator.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an integral rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("invalid ring: {0}")]
    InvalidContext(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

/// Term orders on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    GrLex,
}

impl MonomialOrder {
    /// Compares two monomials; `Greater` means `a` is the larger term.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::GrLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.exponents().cmp(b.exponents())),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // the last variable where the exponents differ decides, reversed
                for (ea, eb) in a.exponents().iter().zip(b.exponents()).rev() {
                    match ea.cmp(eb) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::GrLex),
            other => Err(RingError::InvalidContext(format!(
                "unknown monomial order `{other}`"
            ))),
        }
    }
}

/// The polynomial ring: an ordered list of variable names and a term order.
///
/// The relative dimension of the ring is the number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingCtx {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl RingCtx {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Self, RingError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(RingError::InvalidContext(format!(
                    "invalid variable name `{v}`"
                )));
            }
            if vars[..i].contains(v) {
                return Err(RingError::InvalidContext(format!(
                    "duplicate variable `{v}`"
                )));
            }
        }
        Ok(RingCtx { vars, order })
    }

    /// A ring with the default degrevlex order.
    pub fn with_vars<S: AsRef<str>>(vars: &[S]) -> Result<Self, RingError> {
        Self::new(vars, MonomialOrder::default())
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var(&self, name: &str) -> Option<Poly> {
        self.var_index(name).map(|i| Poly::var(i, self.nvars()))
    }

    /// Shorthand for `parse_poly(text, self)`.
    pub fn parse(&self, text: &str) -> Result<Poly, RingError> {
        parse_poly(text, self)
    }

    pub fn print(&self, p: &Poly) -> String {
        print_poly(p, self)
    }
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}] ({})", self.vars.join(","), self.order.name())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
