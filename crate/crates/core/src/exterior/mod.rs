//! The exterior algebra of Kähler differentials over `Q[x1..xn]`.
//!
//! Forms are stored in the basis `{dx_I : I strictly increasing}` so equality is
//! representation equality. [`FormMatrix`] holds matrices of forms (form-valued
//! endomorphisms of free modules) with a product that wedges entries.

mod form;
mod matrix;

use thiserror::Error;

use crate::ring::parse::{parse_with, ExprBuilder};
use crate::ring::{print_poly, Rational, RingCtx, RingError};

pub use form::{blades_of_degree, Blade, Form};
pub use matrix::FormMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("index tuple {0:?} is not strictly increasing within range")]
    BadIndices(Vec<usize>),
    #[error("form matrix shape mismatch: {0}")]
    Shape(String),
    #[error("expected a homogeneous form of degree {expected}")]
    NotHomogeneous { expected: usize },
}

/// Wedge product; errors when the forms come from different rings.
pub fn wedge(a: &Form, b: &Form) -> Result<Form, ExteriorError> {
    a.try_wedge(b)
}

pub fn exterior_derivative(a: &Form) -> Form {
    a.exterior_derivative()
}

struct FormBuilder<'a>(&'a RingCtx);

impl FormBuilder<'_> {
    fn differential(&self, name: &str) -> Option<Form> {
        let var = name.strip_prefix('d')?;
        self.0.var_index(var).map(|i| Form::dx(i, self.0.nvars()))
    }
}

impl ExprBuilder for FormBuilder<'_> {
    type Value = Form;

    fn constant(&self, c: Rational) -> Form {
        Form::constant(c, self.0.nvars())
    }

    fn identifier(&self, name: &str, position: usize) -> Result<Form, RingError> {
        if let Some(p) = self.0.var(name) {
            return Ok(Form::from_poly(p));
        }
        self.differential(name)
            .ok_or_else(|| RingError::UnknownVariable {
                name: name.to_string(),
                position,
            })
    }

    fn add(&self, a: Form, b: Form) -> Form {
        a + b
    }

    fn neg(&self, a: Form) -> Form {
        -a
    }

    fn mul(&self, a: Form, b: Form, _: usize) -> Result<Form, RingError> {
        Ok(a.wedge(&b))
    }

    fn pow(&self, a: Form, e: u32, position: usize) -> Result<Form, RingError> {
        if !a.is_homogeneous_of(0) {
            return Err(RingError::Syntax {
                position,
                message: "only 0-forms can be raised to a power".into(),
            });
        }
        Ok(Form::from_poly(a.scalar_part().pow(e)))
    }

    fn caret(&self, a: Form, b: Form, _: usize) -> Result<Form, RingError> {
        Ok(a.wedge(&b))
    }
}

/// Parses the form literal syntax, e.g. `(x+1)*dx^dy + 3*dz`. `d<var>` is the
/// differential of a ring variable and `^` between two forms is the wedge product.
pub fn parse_form(text: &str, ctx: &RingCtx) -> Result<Form, RingError> {
    parse_with(text, &FormBuilder(ctx))
}

/// Deterministic printing: index tuples in lexicographic order, coefficients in
/// parentheses when they have more than one term. Round-trips through [`parse_form`].
pub fn print_form(w: &Form, ctx: &RingCtx) -> String {
    if w.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (idx, p)) in w.sorted_terms().into_iter().enumerate() {
        let blade: Vec<String> = idx.iter().map(|&i| format!("d{}", ctx.vars()[i])).collect();
        let blade = blade.join("^");
        let (negative, body) = if idx.is_empty() {
            let s = print_poly(p, ctx);
            (false, s)
        } else if p.num_terms() == 1 {
            let s = print_poly(p, ctx);
            let (neg, abs) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if abs == "1" {
                (neg, blade)
            } else {
                (neg, format!("{abs}*{blade}"))
            }
        } else {
            (false, format!("({})*{blade}", print_poly(p, ctx)))
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}
