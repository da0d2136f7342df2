//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' nat)?
//! base   := identifier | integer ('/' integer)? | '(' expr ')'
//! ```
//!
//! The parser is generic over an [`ExprBuilder`], so the same grammar produces
//! polynomials and differential forms (where `^` between two non-numeric operands
//! is the wedge product).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Poly, Rational, RingCtx, RingError};

/// Semantic actions for the expression grammar.
pub trait ExprBuilder {
    type Value;

    fn constant(&self, c: Rational) -> Self::Value;
    fn identifier(&self, name: &str, position: usize) -> Result<Self::Value, RingError>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(
        &self,
        a: Self::Value,
        b: Self::Value,
        position: usize,
    ) -> Result<Self::Value, RingError>;
    fn pow(&self, a: Self::Value, e: u32, position: usize) -> Result<Self::Value, RingError>;

    /// `a ^ b` where `b` is not a natural number literal.
    fn caret(
        &self,
        _a: Self::Value,
        _b: Self::Value,
        position: usize,
    ) -> Result<Self::Value, RingError> {
        Err(RingError::Syntax {
            position,
            message: "expected a natural number exponent".into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, RingError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(RingError::Syntax {
                    position: start,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push((tok, start));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser<'a, B: ExprBuilder> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    builder: &'a B,
}

impl<B: ExprBuilder> Parser<'_, B> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<B::Value, RingError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.builder.add(acc, rhs);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.builder.add(acc, self.builder.neg(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<B::Value, RingError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            let at = self.position();
            self.bump();
            let rhs = self.factor()?;
            acc = self.builder.mul(acc, rhs, at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<B::Value, RingError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            let inner = self.factor()?;
            return Ok(self.builder.neg(inner));
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            let at = self.position();
            self.bump();
            match self.peek() {
                Some(Tok::Int(_)) => {
                    let exp_at = self.position();
                    let Some(Tok::Int(n)) = self.bump() else {
                        unreachable!()
                    };
                    let e = n.to_u32().ok_or_else(|| RingError::Syntax {
                        position: exp_at,
                        message: "exponent too large".into(),
                    })?;
                    return self.builder.pow(base, e, at);
                }
                Some(Tok::Minus) => {
                    return Err(RingError::NegativeExponent {
                        position: self.position(),
                    })
                }
                _ => {
                    let rhs = self.factor()?;
                    return self.builder.caret(base, rhs, at);
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<B::Value, RingError> {
        let at = self.position();
        match self.bump() {
            Some(Tok::Ident(name)) => self.builder.identifier(&name, at),
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let den_at = self.position();
                    match self.bump() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            Ok(self.builder.constant(Rational::new(n, d)))
                        }
                        Some(Tok::Int(_)) => Err(RingError::Syntax {
                            position: den_at,
                            message: "zero denominator".into(),
                        }),
                        _ => Err(RingError::Syntax {
                            position: den_at,
                            message: "expected an integer denominator".into(),
                        }),
                    }
                } else {
                    Ok(self.builder.constant(Rational::from_integer(n)))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(RingError::Syntax {
                        position: self.position(),
                        message: "expected `)`".into(),
                    }),
                }
            }
            Some(t) => Err(RingError::Syntax {
                position: at,
                message: format!("unexpected token {t:?}"),
            }),
            None => Err(RingError::Syntax {
                position: at,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `text` with the given semantic actions.
pub fn parse_with<B: ExprBuilder>(text: &str, builder: &B) -> Result<B::Value, RingError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        builder,
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(RingError::Syntax {
            position: p.position(),
            message: "trailing input".into(),
        });
    }
    Ok(v)
}

struct PolyBuilder<'a>(&'a RingCtx);

impl ExprBuilder for PolyBuilder<'_> {
    type Value = Poly;

    fn constant(&self, c: Rational) -> Poly {
        Poly::constant(c, self.0.nvars())
    }

    fn identifier(&self, name: &str, position: usize) -> Result<Poly, RingError> {
        self.0.var(name).ok_or_else(|| RingError::UnknownVariable {
            name: name.to_string(),
            position,
        })
    }

    fn add(&self, a: Poly, b: Poly) -> Poly {
        a + b
    }

    fn neg(&self, a: Poly) -> Poly {
        -a
    }

    fn mul(&self, a: Poly, b: Poly, _: usize) -> Result<Poly, RingError> {
        Ok(a * b)
    }

    fn pow(&self, a: Poly, e: u32, _: usize) -> Result<Poly, RingError> {
        Ok(a.pow(e))
    }
}

/// Parses a polynomial over the variables of `ctx`. The result does not depend on the
/// context's monomial order.
pub fn parse_poly(text: &str, ctx: &RingCtx) -> Result<Poly, RingError> {
    parse_with(text, &PolyBuilder(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;

    fn ctx() -> RingCtx {
        RingCtx::with_vars(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parses_potential_of_three_variables() {
        let p = parse_poly("x*y + y*z + z*x", &ctx()).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert!(p.terms().all(|(m, _)| m.degree() == 2));
    }

    #[test]
    fn zero_parses_to_empty_map() {
        assert!(parse_poly("0", &ctx()).unwrap().is_zero());
        assert!(parse_poly("x - x", &ctx()).unwrap().is_zero());
    }

    #[test]
    fn expansion_cancels() {
        let r = ctx();
        assert_eq!(
            parse_poly("(x+y)^2 - x^2 - 2*x*y", &r).unwrap(),
            parse_poly("y^2", &r).unwrap()
        );
    }

    #[test]
    fn rationals_and_unary_minus() {
        let r = ctx();
        let p = parse_poly("-1/2*x + -(3/6)", &r).unwrap();
        assert_eq!(
            p.coefficient(&crate::ring::Monomial::var(0, 3)),
            rational(-1, 2)
        );
        assert_eq!(p.constant_term(), rational(-1, 2));
        assert_eq!(
            parse_poly("-x^2", &r).unwrap(),
            -parse_poly("x^2", &r).unwrap()
        );
    }

    #[test]
    fn errors_are_located() {
        let r = ctx();
        assert!(matches!(
            parse_poly("x + w", &r),
            Err(RingError::UnknownVariable { ref name, position: 4 }) if name == "w"
        ));
        assert!(matches!(
            parse_poly("x^-1", &r),
            Err(RingError::NegativeExponent { .. })
        ));
        assert!(matches!(
            parse_poly("x +", &r),
            Err(RingError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("(x", &r),
            Err(RingError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("2x", &r),
            Err(RingError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x^y", &r),
            Err(RingError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("1/0", &r),
            Err(RingError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x $ y", &r),
            Err(RingError::Syntax { position: 2, .. })
        ));
    }
}
