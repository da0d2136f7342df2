//! Matrix factorizations `E1 --A--> E0 --B--> E1` of a potential `f` over free
//! modules with ordered bases, strict morphisms, homotopies and the basic
//! constructions: shift, direct sum, cone, tensor product and folding.

mod complex;

use thiserror::Error;

use crate::ring::{Poly, PolyMatrix, RingCtx, RingError};

pub use complex::{fold_complex, folding_compatibility_defect, tensor_complexes, Complex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MfError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(
        "{product} differs from f*I at entry ({row}, {col}): expected {expected}, found {found}"
    )]
    NotFactorization {
        product: &'static str,
        row: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("potentials differ: {0} vs {1}")]
    PotentialMismatch(String, String),
    #[error("objects live in different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("not a strict morphism: {0}")]
    NotStrict(Mismatch),
    #[error("not a complex: d^{index} * d^{prev} is nonzero at entry ({row}, {col})", prev = index - 1)]
    NotComplex { index: i64, row: usize, col: usize },
}

/// The first entry at which a claimed matrix identity fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub identity: String,
    pub row: usize,
    pub col: usize,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} fails at entry ({}, {})",
            self.identity, self.row, self.col
        )
    }
}

fn compare(identity: &str, lhs: &PolyMatrix, rhs: &PolyMatrix) -> Option<Mismatch> {
    lhs.first_difference(rhs).map(|(row, col)| Mismatch {
        identity: identity.to_string(),
        row,
        col,
    })
}

fn check_shape(what: &str, m: &PolyMatrix, rows: usize, cols: usize) -> Result<(), MfError> {
    if (m.rows(), m.cols()) != (rows, cols) {
        return Err(MfError::Shape(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// A matrix factorization of `f`: `A: E1 -> E0` (`r0 x r1`) and `B: E0 -> E1`
/// (`r1 x r0`) with `AB = f I` and `BA = f I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatFac {
    ctx: RingCtx,
    f: Poly,
    a: PolyMatrix,
    b: PolyMatrix,
}

impl MatFac {
    /// Validates both products, reporting the first offending entry.
    pub fn new(ctx: RingCtx, f: Poly, a: PolyMatrix, b: PolyMatrix) -> Result<Self, MfError> {
        let n = ctx.nvars();
        for (what, nv) in [("f", f.nvars()), ("A", a.nvars()), ("B", b.nvars())] {
            if nv != n {
                return Err(MfError::Shape(format!(
                    "{what} lives in a ring with {nv} variables, expected {n}"
                )));
            }
        }
        let (r0, r1) = (a.rows(), a.cols());
        check_shape("B", &b, r1, r0)?;
        for (product, lhs, r) in [("A*B", a.mul(&b), r0), ("B*A", b.mul(&a), r1)] {
            let expect = PolyMatrix::scalar(r, &f);
            if let Some((row, col)) = lhs.first_difference(&expect) {
                return Err(MfError::NotFactorization {
                    product,
                    row,
                    col,
                    expected: ctx.print(expect.get(row, col)),
                    found: ctx.print(lhs.get(row, col)),
                });
            }
        }
        Ok(MatFac { ctx, f, a, b })
    }

    /// Parses the potential and both blocks from strings in `ctx`.
    pub fn parse<S: AsRef<str>>(
        ctx: RingCtx,
        f: &str,
        a: &[Vec<S>],
        b: &[Vec<S>],
    ) -> Result<Self, MfError> {
        let fp = ctx.parse(f)?;
        let mut am = PolyMatrix::parse(a, &ctx)?;
        let mut bm = PolyMatrix::parse(b, &ctx)?;
        // an empty grid carries no column count; recover it from the other block
        if a.is_empty() {
            am = PolyMatrix::zeros(0, bm.rows(), ctx.nvars());
        }
        if b.is_empty() {
            bm = PolyMatrix::zeros(0, am.rows(), ctx.nvars());
        }
        Self::new(ctx, fp, am, bm)
    }

    /// The rank-zero factorization of `f`.
    pub fn zero(ctx: RingCtx, f: Poly) -> Self {
        let n = ctx.nvars();
        MatFac {
            ctx,
            f,
            a: PolyMatrix::zeros(0, 0, n),
            b: PolyMatrix::zeros(0, 0, n),
        }
    }

    /// The tensor unit `(0 ⇄ Q)` over the potential 0.
    pub fn unit(ctx: RingCtx) -> Self {
        let n = ctx.nvars();
        MatFac {
            ctx,
            f: Poly::zero(n),
            a: PolyMatrix::zeros(1, 0, n),
            b: PolyMatrix::zeros(0, 1, n),
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn potential(&self) -> &Poly {
        &self.f
    }

    pub fn r0(&self) -> usize {
        self.a.rows()
    }

    pub fn r1(&self) -> usize {
        self.a.cols()
    }

    /// `A = d1: E1 -> E0`.
    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    /// `B = d0: E0 -> E1`.
    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    fn revalidate(self) -> Self {
        debug_assert!(
            MatFac::new(
                self.ctx.clone(),
                self.f.clone(),
                self.a.clone(),
                self.b.clone()
            )
            .is_ok(),
            "construction produced an invalid factorization"
        );
        self
    }

    /// `M[1]`: the summands swap and `(A, B) -> (-B, -A)`.
    pub fn shift(&self) -> MatFac {
        MatFac {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            a: self.b.neg(),
            b: self.a.neg(),
        }
        .revalidate()
    }

    fn same_ring(&self, other: &MatFac) -> Result<(), MfError> {
        if self.ctx != other.ctx {
            return Err(MfError::RingMismatch(
                self.ctx.to_string(),
                other.ctx.to_string(),
            ));
        }
        Ok(())
    }

    fn same_potential(&self, other: &MatFac) -> Result<(), MfError> {
        self.same_ring(other)?;
        if self.f != other.f {
            return Err(MfError::PotentialMismatch(
                self.ctx.print(&self.f),
                other.ctx.print(&other.f),
            ));
        }
        Ok(())
    }

    /// Block-diagonal sum, `self` first in both degrees.
    pub fn direct_sum(&self, other: &MatFac) -> Result<MatFac, MfError> {
        self.same_potential(other)?;
        Ok(MatFac {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            a: self.a.direct_sum(&other.a),
            b: self.b.direct_sum(&other.b),
        }
        .revalidate())
    }

    /// The tensor product over `f + g`, with degree-1 part `(M1⊗N0) ⊕ (M0⊗N1)` and
    /// degree-0 part `(M0⊗N0) ⊕ (M1⊗N1)`; each `Mi⊗Nj` has the left factor major.
    pub fn tensor(&self, other: &MatFac) -> Result<MatFac, MfError> {
        self.same_ring(other)?;
        let n = self.nvars();
        let (m0, m1, n0, n1) = (self.r0(), self.r1(), other.r0(), other.r1());
        let i = |k| PolyMatrix::identity(k, n);
        let (am_n0, i_an) = (self.a.kron(&i(n0)), i(m0).kron(&other.a));
        let (i_bn, bm_n1) = (i(m1).kron(&other.b), self.b.kron(&i(n1)));
        let a = PolyMatrix::blocks(&[vec![&am_n0, &i_an], vec![&i_bn.neg(), &bm_n1]]);
        let (bm_n0, i_an1) = (self.b.kron(&i(n0)), i(m1).kron(&other.a));
        let (i_bn0, am_n1) = (i(m0).kron(&other.b), self.a.kron(&i(n1)));
        let b = PolyMatrix::blocks(&[vec![&bm_n0, &i_an1.neg()], vec![&i_bn0, &am_n1]]);
        Ok(MatFac {
            ctx: self.ctx.clone(),
            f: &self.f + &other.f,
            a,
            b,
        }
        .revalidate())
    }

    /// Entrywise base change of the blocks along a ring map.
    pub fn map_ring(&self, phi: &crate::ring::RingMap) -> Result<MatFac, MfError> {
        if phi.source() != &self.ctx {
            return Err(MfError::RingMismatch(
                self.ctx.to_string(),
                phi.source().to_string(),
            ));
        }
        let m = MatFac {
            ctx: phi.target().clone(),
            f: phi.apply(&self.f)?,
            a: phi.apply_matrix(&self.a)?,
            b: phi.apply_matrix(&self.b)?,
        };
        Ok(m.revalidate())
    }

    pub fn identity_morphism(&self) -> StrictMorphism {
        let n = self.nvars();
        StrictMorphism {
            source: self.clone(),
            target: self.clone(),
            alpha0: PolyMatrix::identity(self.r0(), n),
            alpha1: PolyMatrix::identity(self.r1(), n),
        }
    }

    pub fn zero_morphism(&self, target: &MatFac) -> Result<StrictMorphism, MfError> {
        let n = self.nvars();
        StrictMorphism::new(
            self.clone(),
            target.clone(),
            PolyMatrix::zeros(target.r0(), self.r0(), n),
            PolyMatrix::zeros(target.r1(), self.r1(), n),
        )
    }
}

/// The first failing square of `α: M -> N`, if any. Shapes and potentials are
/// checked first and reported as errors.
pub fn strict_morphism_defect(
    alpha0: &PolyMatrix,
    alpha1: &PolyMatrix,
    m: &MatFac,
    n: &MatFac,
) -> Result<Option<Mismatch>, MfError> {
    m.same_potential(n)?;
    check_shape("alpha0", alpha0, n.r0(), m.r0())?;
    check_shape("alpha1", alpha1, n.r1(), m.r1())?;
    if let Some(e) = compare(
        "alpha1*B_M = B_N*alpha0",
        &alpha1.mul(&m.b),
        &n.b.mul(alpha0),
    ) {
        return Ok(Some(e));
    }
    Ok(compare(
        "alpha0*A_M = A_N*alpha1",
        &alpha0.mul(&m.a),
        &n.a.mul(alpha1),
    ))
}

/// True iff `(α0, α1)` commutes with both differentials exactly.
pub fn is_strict_morphism(
    alpha0: &PolyMatrix,
    alpha1: &PolyMatrix,
    m: &MatFac,
    n: &MatFac,
) -> Result<bool, MfError> {
    Ok(strict_morphism_defect(alpha0, alpha1, m, n)?.is_none())
}

/// A validated strict morphism `M -> N`: `α0: M0 -> N0`, `α1: M1 -> N1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictMorphism {
    source: MatFac,
    target: MatFac,
    alpha0: PolyMatrix,
    alpha1: PolyMatrix,
}

/// `cone(α)` with its canonical maps `N -> cone(α) -> M[1]`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub object: MatFac,
    pub inclusion: StrictMorphism,
    pub projection: StrictMorphism,
}

impl StrictMorphism {
    pub fn new(
        source: MatFac,
        target: MatFac,
        alpha0: PolyMatrix,
        alpha1: PolyMatrix,
    ) -> Result<Self, MfError> {
        if let Some(e) = strict_morphism_defect(&alpha0, &alpha1, &source, &target)? {
            return Err(MfError::NotStrict(e));
        }
        Ok(StrictMorphism {
            source,
            target,
            alpha0,
            alpha1,
        })
    }

    pub fn source(&self) -> &MatFac {
        &self.source
    }

    pub fn target(&self) -> &MatFac {
        &self.target
    }

    pub fn alpha0(&self) -> &PolyMatrix {
        &self.alpha0
    }

    pub fn alpha1(&self) -> &PolyMatrix {
        &self.alpha1
    }

    /// The cone `(N1⊕M0 ⇄ N0⊕M1)` with `A = [[A_N, α0], [0, -B_M]]` and
    /// `B = [[B_N, α1], [0, -A_M]]`.
    pub fn cone(&self) -> Cone {
        let (m, n) = (&self.source, &self.target);
        let nv = m.nvars();
        let z = |r, c| PolyMatrix::zeros(r, c, nv);
        let i = |k| PolyMatrix::identity(k, nv);
        let a = PolyMatrix::blocks(&[
            vec![&n.a, &self.alpha0],
            vec![&z(m.r1(), n.r1()), &m.b.neg()],
        ]);
        let b = PolyMatrix::blocks(&[
            vec![&n.b, &self.alpha1],
            vec![&z(m.r0(), n.r0()), &m.a.neg()],
        ]);
        let object = MatFac {
            ctx: m.ctx.clone(),
            f: m.f.clone(),
            a,
            b,
        }
        .revalidate();
        let inclusion = StrictMorphism::new(
            n.clone(),
            object.clone(),
            PolyMatrix::blocks(&[vec![&i(n.r0())], vec![&z(m.r1(), n.r0())]]),
            PolyMatrix::blocks(&[vec![&i(n.r1())], vec![&z(m.r0(), n.r1())]]),
        )
        .expect("canonical inclusion is strict");
        let projection = StrictMorphism::new(
            object.clone(),
            m.shift(),
            PolyMatrix::blocks(&[vec![&z(m.r1(), n.r0()), &i(m.r1())]]),
            PolyMatrix::blocks(&[vec![&z(m.r0(), n.r1()), &i(m.r0())]]),
        )
        .expect("canonical projection is strict");
        Cone {
            object,
            inclusion,
            projection,
        }
    }
}

/// An odd map `h0: M0 -> N1`, `h1: M1 -> N0`; only ever verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    pub h0: PolyMatrix,
    pub h1: PolyMatrix,
}

impl Homotopy {
    /// The contraction of `cone(id_M)`: both components are `[[0, 0], [I, 0]]`.
    pub fn identity_cone_contraction(m: &MatFac) -> Homotopy {
        let nv = m.nvars();
        let z = |r, c| PolyMatrix::zeros(r, c, nv);
        let i = |k| PolyMatrix::identity(k, nv);
        let (r0, r1) = (m.r0(), m.r1());
        Homotopy {
            h0: PolyMatrix::blocks(&[vec![&z(r1, r0), &z(r1, r1)], vec![&i(r0), &z(r0, r1)]]),
            h1: PolyMatrix::blocks(&[vec![&z(r0, r1), &z(r0, r0)], vec![&i(r1), &z(r1, r0)]]),
        }
    }
}

/// The first failing component of `d^N h + h d^M = α - β`, if any.
pub fn homotopy_defect(
    h: &Homotopy,
    alpha: &StrictMorphism,
    beta: &StrictMorphism,
) -> Result<Option<Mismatch>, MfError> {
    let (m, n) = (&alpha.source, &alpha.target);
    if beta.source != *m || beta.target != *n {
        return Err(MfError::Shape(
            "homotopic maps must share source and target".into(),
        ));
    }
    check_shape("h0", &h.h0, n.r1(), m.r0())?;
    check_shape("h1", &h.h1, n.r0(), m.r1())?;
    let lhs0 = n.a.mul(&h.h0).add(&h.h1.mul(&m.b));
    if let Some(e) = compare(
        "A_N*h0 + h1*B_M = alpha0 - beta0",
        &lhs0,
        &alpha.alpha0.sub(&beta.alpha0),
    ) {
        return Ok(Some(e));
    }
    let lhs1 = n.b.mul(&h.h1).add(&h.h0.mul(&m.a));
    Ok(compare(
        "B_N*h1 + h0*A_M = alpha1 - beta1",
        &lhs1,
        &alpha.alpha1.sub(&beta.alpha1),
    ))
}

pub fn is_homotopy(
    h: &Homotopy,
    alpha: &StrictMorphism,
    beta: &StrictMorphism,
) -> Result<bool, MfError> {
    Ok(homotopy_defect(h, alpha, beta)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str]) -> RingCtx {
        RingCtx::with_vars(vars).unwrap()
    }

    fn mf(r: &RingCtx, f: &str, a: &[&[&str]], b: &[&[&str]]) -> Result<MatFac, MfError> {
        let g = |m: &[&[&str]]| {
            m.iter()
                .map(|row| row.iter().map(|s| s.to_string()).collect())
                .collect::<Vec<Vec<String>>>()
        };
        MatFac::parse(r.clone(), f, &g(a), &g(b))
    }

    fn power_pair(n: u32, i: u32) -> MatFac {
        let r = ring(&["x"]);
        mf(
            &r,
            &format!("x^{n}"),
            &[&[&format!("x^{i}")]],
            &[&[&format!("x^{}", n - i)]],
        )
        .unwrap()
    }

    fn ex23() -> MatFac {
        let r = ring(&["x", "y", "z"]);
        mf(
            &r,
            "x*y + y*z + z*x",
            &[&["z", "y"], &["x", "-x-y"]],
            &[&["x+y", "y"], &["x", "-z"]],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        for n in 1..=6 {
            for i in 0..=n {
                let m = power_pair(n, i);
                assert_eq!((m.r0(), m.r1()), (1, 1));
            }
        }
        ex23();
        let r = ring(&["x"]);
        match mf(&r, "x", &[&["x"]], &[&["x"]]) {
            Err(MfError::NotFactorization {
                product: "A*B",
                row: 0,
                col: 0,
                found,
                ..
            }) => assert_eq!(found, "x^2"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            mf(&r, "x", &[&["x", "1"]], &[&["1"]]),
            Err(MfError::Shape(_))
        ));
        let zero = mf(&r, "0", &[], &[]).unwrap();
        assert_eq!((zero.r0(), zero.r1()), (0, 0));
    }

    #[test]
    fn shift_swaps_and_negates() {
        let m = power_pair(5, 2);
        let s = m.shift();
        assert_eq!(s.a(), &m.b().neg());
        assert_eq!(s.b(), &m.a().neg());
        assert_eq!(s.shift(), m);
        let e = ex23();
        assert_eq!(e.shift().shift(), e);
    }

    #[test]
    fn direct_sum_ranks_add() {
        let e = ex23();
        let z = MatFac::zero(e.ctx().clone(), e.potential().clone());
        assert_eq!(e.direct_sum(&z).unwrap(), e);
        let s = e.direct_sum(&e.shift()).unwrap();
        assert_eq!((s.r0(), s.r1()), (4, 4));
        assert!(matches!(
            e.direct_sum(&MatFac::unit(e.ctx().clone())),
            Err(MfError::PotentialMismatch(..))
        ));
    }

    #[test]
    fn strict_morphisms_between_power_pairs() {
        // (x^{i+1} | x^{n-i-1}) -> (x^i | x^{n-i}) by (α0, α1) = (1, x), and back by (x, 1)
        let r = ring(&["x"]);
        let (n, i) = (5, 2);
        let m = power_pair(n, i + 1);
        let t = power_pair(n, i);
        let one = PolyMatrix::parse(&[vec!["1"]], &r).unwrap();
        let x = PolyMatrix::parse(&[vec!["x"]], &r).unwrap();
        assert!(is_strict_morphism(&one, &x, &m, &t).unwrap());
        assert!(is_strict_morphism(&x, &one, &t, &m).unwrap());
        assert!(!is_strict_morphism(&one, &x, &t, &m).unwrap());
        assert!(is_strict_morphism(&one, &one, &t, &t).unwrap());
        let z = PolyMatrix::zeros(1, 1, 1);
        assert!(is_strict_morphism(&z, &z, &t, &m).unwrap());
        assert!(is_strict_morphism(&z, &z, &t, &power_pair(4, 1)).is_err());
    }

    #[test]
    fn cone_of_zero_is_sum_with_shift() {
        let e = ex23();
        let zero = e.zero_morphism(&e).unwrap();
        let c = zero.cone();
        assert_eq!(c.object, e.direct_sum(&e.shift()).unwrap());
    }

    #[test]
    fn identity_cone_is_contractible() {
        for e in [ex23(), power_pair(4, 1)] {
            let c = e.identity_morphism().cone();
            let id = c.object.identity_morphism();
            let zero = c.object.zero_morphism(&c.object).unwrap();
            let h = Homotopy::identity_cone_contraction(&e);
            assert!(is_homotopy(&h, &id, &zero).unwrap());
            let none = Homotopy {
                h0: PolyMatrix::zeros(h.h0.rows(), h.h0.cols(), e.nvars()),
                h1: PolyMatrix::zeros(h.h1.rows(), h.h1.cols(), e.nvars()),
            };
            assert!(is_homotopy(&none, &id, &id).unwrap());
            assert!(!is_homotopy(&none, &id, &zero).unwrap());
        }
    }

    #[test]
    fn wrong_homotopy_on_ex23_is_rejected() {
        let e = ex23();
        let r = e.ctx().clone();
        let id = e.identity_morphism();
        let zero = e.zero_morphism(&e).unwrap();
        let h = Homotopy {
            h0: PolyMatrix::parse(&[vec!["1", "x"], vec!["0", "y"]], &r).unwrap(),
            h1: PolyMatrix::parse(&[vec!["z", "0"], vec!["1", "1"]], &r).unwrap(),
        };
        assert!(!is_homotopy(&h, &id, &zero).unwrap());
    }

    #[test]
    fn knoerrer_tensor_and_unit() {
        let r = ring(&["x", "y", "u", "v"]);
        let e = mf(&r, "x*y", &[&["x"]], &[&["y"]]).unwrap();
        let f = mf(&r, "u*v", &[&["u"]], &[&["v"]]).unwrap();
        let t = e.tensor(&f).unwrap();
        assert_eq!((t.r0(), t.r1()), (2, 2));
        assert_eq!(t.potential(), &r.parse("x*y + u*v").unwrap());
        assert_eq!(
            t.a(),
            &PolyMatrix::parse(&[vec!["x", "u"], vec!["-v", "y"]], &r).unwrap()
        );
        assert_eq!(
            t.b(),
            &PolyMatrix::parse(&[vec!["y", "-u"], vec!["v", "x"]], &r).unwrap()
        );
        let one = MatFac::unit(r.clone());
        assert_eq!(e.tensor(&one).unwrap(), e);
        assert_eq!(one.tensor(&e).unwrap(), e);
        let other = mf(&ring(&["x"]), "x", &[&["x"]], &[&["1"]]).unwrap();
        assert!(matches!(e.tensor(&other), Err(MfError::RingMismatch(..))));
    }

    #[test]
    fn cone_maps_are_strict() {
        let r = ring(&["x"]);
        let m = power_pair(4, 2);
        let t = power_pair(4, 1);
        let alpha = StrictMorphism::new(
            m.clone(),
            t.clone(),
            PolyMatrix::parse(&[vec!["1"]], &r).unwrap(),
            PolyMatrix::parse(&[vec!["x"]], &r).unwrap(),
        )
        .unwrap();
        let c = alpha.cone();
        assert_eq!((c.object.r0(), c.object.r1()), (2, 2));
        assert_eq!(c.inclusion.source(), &t);
        assert_eq!(c.projection.target(), &m.shift());
    }
}
