use num_bigint::BigInt;

use crate::exterior::{Form, FormMatrix};
use crate::mf::MatFac;
use crate::ring::Rational;

use super::ChernError;

/// `∇_i = d + Γ_i` on the free summands `E_i`; `Γ_i` is a square matrix of 1-forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma0: FormMatrix,
    gamma1: FormMatrix,
}

impl Connection {
    pub fn new(m: &MatFac, gamma0: FormMatrix, gamma1: FormMatrix) -> Result<Self, ChernError> {
        for (name, g, r) in [("gamma0", &gamma0, m.r0()), ("gamma1", &gamma1, m.r1())] {
            if (g.rows(), g.cols()) != (r, r) {
                return Err(ChernError::Shape(format!(
                    "{name} is {}x{}, expected {r}x{r}",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.nvars() != m.nvars() {
                return Err(ChernError::Shape(format!(
                    "{name} lives in a ring with {} variables",
                    g.nvars()
                )));
            }
            if !g.is_homogeneous_of(1) {
                return Err(ChernError::NotOneForms(name));
            }
        }
        Ok(Connection { gamma0, gamma1 })
    }

    /// The exterior derivative itself: `Γ0 = Γ1 = 0`.
    pub fn trivial(m: &MatFac) -> Self {
        Connection {
            gamma0: FormMatrix::zeros(m.r0(), m.r0(), m.nvars()),
            gamma1: FormMatrix::zeros(m.r1(), m.r1(), m.nvars()),
        }
    }

    pub fn gamma0(&self) -> &FormMatrix {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &FormMatrix {
        &self.gamma1
    }

    pub fn is_trivial(&self) -> bool {
        self.gamma0.is_zero() && self.gamma1.is_zero()
    }

    /// `diag(∇_a, ∇_b)` summand by summand.
    pub fn direct_sum(&self, other: &Connection) -> Connection {
        Connection {
            gamma0: self.gamma0.direct_sum(&other.gamma0),
            gamma1: self.gamma1.direct_sum(&other.gamma1),
        }
    }

    fn check_base(&self, m: &MatFac) -> Result<(), ChernError> {
        if self.gamma0.rows() != m.r0()
            || self.gamma1.rows() != m.r1()
            || self.gamma0.nvars() != m.nvars()
        {
            return Err(ChernError::Shape(
                "connection does not match the factorization".into(),
            ));
        }
        Ok(())
    }
}

/// The Atiyah class as an odd endomorphism of `E0 ⊕ E1` (`E0` first): off-diagonal
/// blocks `At01 = dA + Γ0 A - A Γ1` and `At10 = dB + Γ1 B - B Γ0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtiyahClass {
    at: FormMatrix,
    r0: usize,
}

impl AtiyahClass {
    /// Assembles the class from its two off-diagonal blocks.
    pub fn from_blocks(at01: &FormMatrix, at10: &FormMatrix) -> Self {
        let (r0, r1) = (at01.rows(), at01.cols());
        let nv = at01.nvars();
        let at = FormMatrix::blocks(&[
            vec![&FormMatrix::zeros(r0, r0, nv), at01],
            vec![at10, &FormMatrix::zeros(r1, r1, nv)],
        ])
        .with_split(r0);
        AtiyahClass { at, r0 }
    }

    pub fn matrix(&self) -> &FormMatrix {
        &self.at
    }

    pub fn r0(&self) -> usize {
        self.r0
    }

    pub fn r1(&self) -> usize {
        self.at.rows() - self.r0
    }

    pub fn nvars(&self) -> usize {
        self.at.nvars()
    }

    /// The `E1 -> Ω¹⊗E0` block.
    pub fn at01(&self) -> FormMatrix {
        self.at.submatrix((0, self.r0), (self.r0, self.at.cols()))
    }

    /// The `E0 -> Ω¹⊗E1` block.
    pub fn at10(&self) -> FormMatrix {
        self.at.submatrix((self.r0, self.at.rows()), (0, self.r0))
    }

    /// `At^i` as an `i`-fold wedge-matrix power, for any `i` (zero past the ring dimension).
    pub fn power(&self, i: usize) -> FormMatrix {
        let mut p = FormMatrix::identity(self.at.rows(), self.nvars()).with_split(self.r0);
        for _ in 0..i {
            p = p.mul(&self.at);
        }
        p
    }
}

pub fn atiyah(m: &MatFac, conn: &Connection) -> Result<AtiyahClass, ChernError> {
    conn.check_base(m)?;
    let a = FormMatrix::from_poly_matrix(m.a());
    let b = FormMatrix::from_poly_matrix(m.b());
    let at01 = a
        .exterior_derivative()
        .add(&conn.gamma0.mul(&a))
        .sub(&a.mul(&conn.gamma1));
    let at10 = b
        .exterior_derivative()
        .add(&conn.gamma1.mul(&b))
        .sub(&b.mul(&conn.gamma0));
    Ok(AtiyahClass::from_blocks(&at01, &at10))
}

/// `At^i` for `0 <= i <= n`.
pub fn atiyah_power(at: &AtiyahClass, i: usize) -> Result<FormMatrix, ChernError> {
    let n = at.nvars();
    if i > n {
        return Err(ChernError::PowerOutOfRange { i, n });
    }
    Ok(at.power(i))
}

/// `str(T) = tr(T00) - tr(T11)` for the declared `(E0, E1)` split.
pub fn supertrace(t: &FormMatrix) -> Result<Form, ChernError> {
    let r0 = t.split().ok_or(ChernError::UndeclaredSplit)?;
    let n = t.rows();
    let mut s = Form::zero(t.nvars());
    for i in 0..r0 {
        s += t.get(i, i);
    }
    for i in r0..n {
        s -= t.get(i, i);
    }
    Ok(s)
}

pub fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).map(BigInt::from).product())
}

/// `Σ_{i=0}^{m} At^i / i!`.
pub fn phi_tilde(at: &AtiyahClass, m: usize) -> FormMatrix {
    let mut sum =
        FormMatrix::zeros(at.matrix().rows(), at.matrix().cols(), at.nvars()).with_split(at.r0());
    let mut p = at.power(0);
    for i in 0..=m {
        sum = sum.add(&p.scale(&factorial(i).recip()));
        p = p.mul(at.matrix());
    }
    sum
}

/// `φ̃^n = Σ_{i=0}^{n} At^i / i!` with `n` the number of variables.
pub fn phi_tilde_n(m: &MatFac, conn: &Connection) -> Result<FormMatrix, ChernError> {
    Ok(phi_tilde(&atiyah(m, conn)?, m.nvars()))
}
