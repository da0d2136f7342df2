//! The uncollapsed tower `E -> E^(1) -> ... -> E^(n)`, kept as a test oracle for the
//! closed form `Σ At^i / i!`, and the strictness check of `φ = [1; At]`.

use std::collections::BTreeMap;

use crate::exterior::{Form, FormMatrix};
use crate::mf::MatFac;
use crate::ring::{Poly, Rational};

use super::connection::{atiyah, factorial, AtiyahClass, Connection};
use super::{ChernError, Verdict};

/// The oracle builds modules of rank `2^n · n^n · r`; beyond this it is pointless.
pub const MAX_TOWER_VARS: usize = 3;

/// A basis vector of `E^(i) = (Q -> Ω¹)^{⊗i} ⊗ E`: which tensor factors sit in the
/// `Ω¹` slot, the `dx_j` chosen there (in factor order), and a basis index of `E`.
type Label = (Vec<bool>, Vec<usize>, usize);

type Vector = BTreeMap<Label, Poly>;

/// Output of [`phi_tower_oracle`].
#[derive(Debug, Clone)]
pub struct Tower {
    /// The collapsed composite before rescaling; equals `Σ binom(n, i) At^i`.
    pub collapsed: FormMatrix,
    /// After dividing degree `i` by `n!/(n-i)!`; equals `Σ At^i / i!`.
    pub rescaled: FormMatrix,
}

/// One stage `1^{⊗(i-1)} ⊗ φ` applied to a vector, where `φ(e) = e + At(e)`.
/// Moving the odd `At` past the `Ω¹` factors already present costs a sign each.
fn stage(v: &Vector, coeffs: &[Vec<BTreeMap<usize, Poly>>]) -> Vector {
    let mut out = Vector::new();
    let mut push = |label: Label, p: Poly| {
        let e = out.entry(label).or_insert_with(|| Poly::zero(p.nvars()));
        *e += &p;
    };
    for ((s, j, b), p) in v {
        let mut s0 = s.clone();
        s0.push(false);
        push((s0, j.clone(), *b), p.clone());
        let odd = s.iter().filter(|&&x| x).count() % 2 == 1;
        for (c, row) in coeffs.iter().enumerate() {
            for (&var, q) in &row[*b] {
                let mut s1 = s.clone();
                s1.push(true);
                let mut j1 = j.clone();
                j1.push(var);
                let term = p * q;
                push((s1, j1, c), if odd { -term } else { term });
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Builds the tower for `n = nvars` stages, composes it on each basis vector of `E`
/// and collapses `dx_{j1} ⊗ ... ⊗ dx_{jm}` to `dx_{j1} ∧ ... ∧ dx_{jm}`.
pub fn phi_tower_oracle(m: &MatFac, conn: &Connection) -> Result<Tower, ChernError> {
    let n = m.nvars();
    if n > MAX_TOWER_VARS {
        return Err(ChernError::TowerTooLarge {
            n,
            max: MAX_TOWER_VARS,
        });
    }
    let at = atiyah(m, conn)?;
    let r = m.r0() + m.r1();
    // coeffs[c][b][j] = coefficient of dx_j in At_{c,b}
    let coeffs: Vec<Vec<BTreeMap<usize, Poly>>> = (0..r)
        .map(|c| {
            (0..r)
                .map(|b| {
                    at.matrix()
                        .get(c, b)
                        .terms()
                        .map(|(blade, p)| (blade.indices()[0], p.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut collapsed = FormMatrix::zeros(r, r, n).with_split(m.r0());
    for b0 in 0..r {
        let mut v = Vector::new();
        v.insert((Vec::new(), Vec::new(), b0), Poly::one(n));
        for _ in 0..n {
            v = stage(&v, &coeffs);
        }
        for ((_, js, b), p) in v {
            let mut w = Form::from_poly(p);
            for j in js {
                w = w.wedge(&Form::dx(j, n));
            }
            let sum = collapsed.get(b, b0) + &w;
            collapsed.set(b, b0, sum);
        }
    }
    let rescaled = collapsed.map(|w| {
        let mut out = Form::zero(n);
        for i in 0..=n {
            let c: Rational = factorial(n - i) / factorial(n);
            out += &w.component(i).scale(&c);
        }
        out
    });
    Ok(Tower {
        collapsed,
        rescaled,
    })
}

/// Verifies that `φ = [1; At]: E -> E^(1)` is a strict morphism, where `E^(1)` has
/// `A' = [[A, 0], [df, -B]]` from `E1 ⊕ Ω¹⊗E0` to `E0 ⊕ Ω¹⊗E1` and
/// `B' = [[B, 0], [df, -A]]` back. Returns the first failing entry.
pub fn strictness_defect(m: &MatFac, at: &AtiyahClass) -> Result<Option<String>, ChernError> {
    if (at.r0(), at.r1(), at.nvars()) != (m.r0(), m.r1(), m.nvars()) {
        return Err(ChernError::Shape(
            "Atiyah class does not match the factorization".into(),
        ));
    }
    let n = m.nvars();
    let (r0, r1) = (m.r0(), m.r1());
    let a = FormMatrix::from_poly_matrix(m.a());
    let b = FormMatrix::from_poly_matrix(m.b());
    let df = Form::differential(m.potential());
    let df_i = |k: usize| FormMatrix::identity(k, n).map(|w| w.wedge(&df));
    let z = |r: usize, c: usize| FormMatrix::zeros(r, c, n);
    let a1 = FormMatrix::blocks(&[vec![&a, &z(r0, r0)], vec![&df_i(r1), &b.neg()]]);
    let b1 = FormMatrix::blocks(&[vec![&b, &z(r1, r1)], vec![&df_i(r0), &a.neg()]]);
    let phi1 = FormMatrix::blocks(&[vec![&FormMatrix::identity(r1, n)], vec![&at.at01()]]);
    let phi0 = FormMatrix::blocks(&[vec![&FormMatrix::identity(r0, n)], vec![&at.at10()]]);

    let checks = [
        (
            "A'B' = f",
            a1.mul(&b1),
            FormMatrix::identity(r0 + r1, n).mul_poly(m.potential()),
        ),
        (
            "B'A' = f",
            b1.mul(&a1),
            FormMatrix::identity(r1 + r0, n).mul_poly(m.potential()),
        ),
        ("A' phi1 = phi0 A", a1.mul(&phi1), phi0.mul(&a)),
        ("B' phi0 = phi1 B", b1.mul(&phi0), phi1.mul(&b)),
    ];
    for (name, lhs, rhs) in checks {
        if let Some((row, col)) = lhs.first_difference(&rhs) {
            return Ok(Some(format!("{name} fails at entry ({row}, {col})")));
        }
    }
    Ok(None)
}

pub fn phi_strictness_check(m: &MatFac, conn: &Connection) -> Result<Verdict, ChernError> {
    let at = atiyah(m, conn)?;
    Ok(Verdict::from_mismatch(strictness_defect(m, &at)?))
}
