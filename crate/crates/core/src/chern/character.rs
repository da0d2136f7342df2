use std::fmt;

use crate::exterior::{print_form, Form, FormMatrix};
use crate::ideals::form_normal_form;
use crate::mf::MatFac;
use crate::ring::{Poly, PolyMatrix, Rational, RingCtx};

use super::connection::{atiyah, factorial, supertrace, Connection};
use super::ChernError;

/// An element of the even homology of `(Ω•, df∧)`: `components[i]` is the normal
/// form of the degree-`2i` part, for `0 <= 2i <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    ctx: RingCtx,
    f: Poly,
    components: Vec<Form>,
}

impl HomologyClass {
    pub fn zero(ctx: RingCtx, f: Poly) -> Self {
        let n = ctx.nvars();
        HomologyClass {
            components: vec![Form::zero(n); n / 2 + 1],
            ctx,
            f,
        }
    }

    /// The class of the given even-degree cycles; each is reduced to its normal form.
    /// Components past `n` are dropped and missing ones are zero.
    pub fn from_components(ctx: RingCtx, f: Poly, forms: Vec<Form>) -> Result<Self, ChernError> {
        let mut out = Self::zero(ctx, f);
        for (i, w) in forms.into_iter().enumerate().take(out.components.len()) {
            let w = w.component(2 * i);
            if !w.wedge(&Form::differential(&out.f)).is_zero() {
                return Err(ChernError::CycleFailure { i: 2 * i });
            }
            out.components[i] = form_normal_form(&w, &out.f, out.ctx.order())?;
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn potential(&self) -> &Poly {
        &self.f
    }

    pub fn components(&self) -> &[Form] {
        &self.components
    }

    /// The degree-`deg` component; zero for odd or out-of-range degrees.
    pub fn degree(&self, deg: usize) -> Form {
        if deg % 2 == 1 {
            return Form::zero(self.ctx.nvars());
        }
        self.components
            .get(deg / 2)
            .cloned()
            .unwrap_or_else(|| Form::zero(self.ctx.nvars()))
    }

    /// The sum of all components as one inhomogeneous form.
    pub fn total(&self) -> Form {
        self.components
            .iter()
            .fold(Form::zero(self.ctx.nvars()), |acc, w| &acc + w)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Form::is_zero)
    }

    fn check_same(&self, other: &HomologyClass) -> Result<(), ChernError> {
        if self.ctx != other.ctx {
            return Err(crate::mf::MfError::RingMismatch(
                self.ctx.to_string(),
                other.ctx.to_string(),
            )
            .into());
        }
        if self.f != other.f {
            return Err(crate::mf::MfError::PotentialMismatch(
                self.ctx.print(&self.f),
                other.ctx.print(&other.f),
            )
            .into());
        }
        Ok(())
    }

    // normal forms are linear, so sums of representatives stay reduced
    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass, ChernError> {
        self.check_same(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomologyClass {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            components,
        })
    }

    pub fn neg(&self) -> HomologyClass {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn sub(&self, other: &HomologyClass) -> Result<HomologyClass, ChernError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> HomologyClass {
        HomologyClass {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            components: self.components.iter().map(|w| w.scale(c)).collect(),
        }
    }

    /// The product class over `f + g`: representatives are wedged degree by degree
    /// and reduced modulo `d(f+g)∧`; anything above degree `n` vanishes.
    pub fn wedge(&self, other: &HomologyClass) -> Result<HomologyClass, ChernError> {
        if self.ctx != other.ctx {
            return Err(crate::mf::MfError::RingMismatch(
                self.ctx.to_string(),
                other.ctx.to_string(),
            )
            .into());
        }
        let n = self.ctx.nvars();
        let mut forms = vec![Form::zero(n); self.components.len()];
        for (i, a) in self.components.iter().enumerate() {
            for (j, b) in other.components.iter().enumerate() {
                if i + j < forms.len() {
                    forms[i + j] += &a.wedge(b);
                }
            }
        }
        Self::from_components(self.ctx.clone(), &self.f + &other.f, forms)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "deg {}: {}", 2 * i, print_form(w, &self.ctx))?;
        }
        Ok(())
    }
}

/// `ch(E) = Σ_i str(At^{2i}) / (2i)!`, each component in normal form.
///
/// Before reducing, every `str(At^i)` (`i <= n`) is checked to be a `df`-cycle and
/// to vanish for odd `i`; a failure means an internal inconsistency.
pub fn chern_character(m: &MatFac, conn: &Connection) -> Result<HomologyClass, ChernError> {
    let n = m.nvars();
    let at = atiyah(m, conn)?;
    let df = Form::differential(m.potential());
    let mut even = Vec::new();
    let mut power = at.power(0);
    for i in 0..=n {
        let s = supertrace(&power)?;
        if i % 2 == 1 && !s.is_zero() {
            return Err(ChernError::OddSupertrace { i });
        }
        if !df.wedge(&s).is_zero() {
            return Err(ChernError::CycleFailure { i });
        }
        if i % 2 == 0 {
            even.push(s.scale(&factorial(i).recip()));
        }
        power = power.mul(at.matrix());
    }
    HomologyClass::from_components(m.ctx().clone(), m.potential().clone(), even)
}

/// `str(At^n) / n!`, the top-degree form, unreduced. For odd `n` it does not appear
/// in [`chern_character`].
pub fn top_degree_supertrace(m: &MatFac, conn: &Connection) -> Result<Form, ChernError> {
    let n = m.nvars();
    let at = atiyah(m, conn)?;
    Ok(supertrace(&at.power(n))?.scale(&factorial(n).recip()))
}

/// The Chern character of the projective module `Im(e)` with its Levi-Civita
/// connection: `tr(e) + Σ_{k>=1} tr(e (de de)^k) / k!`, truncated at degree `n`.
pub fn classical_chern(e: &PolyMatrix) -> Result<Form, ChernError> {
    if e.rows() != e.cols() {
        return Err(ChernError::Shape(format!(
            "idempotent must be square, got {}x{}",
            e.rows(),
            e.cols()
        )));
    }
    if let Some((row, col)) = e.mul(e).first_difference(e) {
        return Err(ChernError::NotIdempotent { row, col });
    }
    let n = e.nvars();
    let ef = FormMatrix::from_poly_matrix(e);
    let de = ef.exterior_derivative();
    let dede = de.mul(&de);
    let mut total = ef.trace();
    let mut p = ef.clone();
    for k in 1..=n / 2 {
        p = p.mul(&dede);
        total += &p.trace().scale(&factorial(k).recip());
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_form;
    use crate::ring::integer;

    fn ring(vars: &[&str]) -> RingCtx {
        RingCtx::with_vars(vars).unwrap()
    }

    #[test]
    fn ch_of_x_y() {
        let r = ring(&["x", "y"]);
        let m = MatFac::parse(r.clone(), "x*y", &[vec!["x"]], &[vec!["y"]]).unwrap();
        let ch = chern_character(&m, &Connection::trivial(&m)).unwrap();
        assert_eq!(ch.degree(0), Form::zero(2));
        assert_eq!(ch.degree(2), parse_form("dx^dy", &r).unwrap());
        assert_eq!(ch.to_string(), "deg 0: 0 ; deg 2: dx^dy");
        assert_eq!(
            top_degree_supertrace(&m, &Connection::trivial(&m)).unwrap(),
            parse_form("dx^dy", &r).unwrap()
        );
    }

    #[test]
    fn contractible_and_shifted_sums_vanish() {
        let r = ring(&["x", "y"]);
        let c = MatFac::parse(r.clone(), "x*y", &[vec!["1"]], &[vec!["x*y"]]).unwrap();
        assert!(chern_character(&c, &Connection::trivial(&c))
            .unwrap()
            .is_zero());
        let e = MatFac::parse(r, "x*y", &[vec!["x"]], &[vec!["y"]]).unwrap();
        let es = e.direct_sum(&e.shift()).unwrap();
        assert!(chern_character(&es, &Connection::trivial(&es))
            .unwrap()
            .is_zero());
        let ch = chern_character(&e.shift(), &Connection::trivial(&e)).unwrap();
        assert_eq!(
            ch,
            chern_character(&e, &Connection::trivial(&e)).unwrap().neg()
        );
    }

    #[test]
    fn connection_changes_representative_not_class() {
        let r = ring(&["x", "y"]);
        let m = MatFac::parse(r.clone(), "x*y", &[vec!["x"]], &[vec!["y"]]).unwrap();
        let g = |s: &str| FormMatrix::from_rows(vec![vec![parse_form(s, &r).unwrap()]], 2).unwrap();
        let conn = Connection::new(&m, g("y*dx"), g("(x+2)*dy")).unwrap();
        let raw = supertrace(&atiyah(&m, &conn).unwrap().power(2))
            .unwrap()
            .scale(&rational_half());
        assert_ne!(raw, parse_form("dx^dy", &r).unwrap());
        assert_eq!(
            chern_character(&m, &conn).unwrap(),
            chern_character(&m, &Connection::trivial(&m)).unwrap()
        );
    }

    fn rational_half() -> Rational {
        crate::ring::rational(1, 2)
    }

    #[test]
    fn one_variable_classes_only_see_degree_zero() {
        let r = ring(&["x"]);
        let m = MatFac::parse(r.clone(), "x^4", &[vec!["x"]], &[vec!["x^3"]]).unwrap();
        let ch = chern_character(&m, &Connection::trivial(&m)).unwrap();
        assert_eq!(ch.components().len(), 1);
        assert!(ch.is_zero());
        assert_eq!(
            top_degree_supertrace(&m, &Connection::trivial(&m)).unwrap(),
            Form::zero(1)
        );
    }

    #[test]
    fn classical_examples() {
        let r = ring(&["x", "y"]);
        let id = PolyMatrix::identity(3, 2);
        assert_eq!(classical_chern(&id).unwrap(), Form::constant(integer(3), 2));
        let e = PolyMatrix::parse(&[vec!["1", "x^2*y + 3"], vec!["0", "0"]], &r).unwrap();
        assert_eq!(classical_chern(&e).unwrap(), Form::one(2));
        let bad = PolyMatrix::parse(&[vec!["1", "1"], vec!["1", "0"]], &r).unwrap();
        assert!(matches!(
            classical_chern(&bad),
            Err(ChernError::NotIdempotent { .. })
        ));
    }

    #[test]
    fn class_arithmetic() {
        let r = ring(&["x", "y"]);
        let f = r.parse("x*y").unwrap();
        let w = parse_form("dx^dy", &r).unwrap();
        let a =
            HomologyClass::from_components(r.clone(), f.clone(), vec![Form::zero(2), w.clone()])
                .unwrap();
        let z = HomologyClass::zero(r.clone(), f.clone());
        assert_eq!(a.add(&z).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
        let r3 = ring(&["x", "y", "z"]);
        let dxdy = vec![Form::zero(3), parse_form("dx^dy", &r3).unwrap()];
        let err =
            HomologyClass::from_components(r3.clone(), r3.parse("z").unwrap(), dxdy).unwrap_err();
        assert_eq!(err, ChernError::CycleFailure { i: 2 });
        let g = r.parse("x").unwrap();
        let other = HomologyClass::zero(r, g);
        assert!(a.add(&other).is_err());
        assert_eq!(a.total(), w);
        assert!(matches!(
            HomologyClass::from_components(r3.clone(), r3.parse("z").unwrap(), vec![Form::one(3)]),
            Err(ChernError::CycleFailure { i: 0 })
        ));
    }
}
