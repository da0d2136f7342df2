//! Seeded generators of random instances for property tests and the `check` suites.
//!
//! Everything is small on purpose: low degrees and coefficients keep the Gröbner
//! computations behind normal forms fast.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chern::Connection;
use crate::exterior::{Form, FormMatrix};
use crate::mf::{Complex, MatFac, StrictMorphism};
use crate::ring::{integer, Monomial, Poly, PolyMatrix, RingCtx, RingMap};

/// A polynomial with up to `terms` terms of total degree `<= max_degree` and
/// integer coefficients in `-3..=3`.
pub fn poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            if nvars > 0 {
                exps[rng.gen_range(0..nvars)] += 1;
            }
        }
        p.add_term(Monomial::new(exps), integer(rng.gen_range(-3..=3)));
    }
    p
}

/// Like [`poly`] but never zero.
pub fn nonzero_poly<R: Rng>(rng: &mut R, nvars: usize, max_degree: u32, terms: usize) -> Poly {
    loop {
        let p = poly(rng, nvars, max_degree, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A nonconstant polynomial without constant term, so it vanishes at the origin.
fn vanishing_poly<R: Rng>(rng: &mut R, nvars: usize) -> Poly {
    loop {
        let p = poly(rng, nvars, 2, 2);
        if !p.is_zero() && p.constant_term() == integer(0) {
            return p;
        }
    }
}

/// An `rows x cols` matrix of 1-forms with small polynomial coefficients.
pub fn one_forms<R: Rng>(rng: &mut R, nvars: usize, rows: usize, cols: usize) -> FormMatrix {
    let mut m = FormMatrix::zeros(rows, cols, nvars);
    for i in 0..rows {
        for j in 0..cols {
            let mut w = Form::zero(nvars);
            for k in 0..nvars {
                if rng.gen_bool(0.5) {
                    w += &Form::dx(k, nvars).mul_poly(&poly(rng, nvars, 1, 2));
                }
            }
            m.set(i, j, w);
        }
    }
    m
}

pub fn connection<R: Rng>(rng: &mut R, m: &MatFac) -> Connection {
    let (g0, g1) = (
        one_forms(rng, m.nvars(), m.r0(), m.r0()),
        one_forms(rng, m.nvars(), m.r1(), m.r1()),
    );
    Connection::new(m, g0, g1).expect("random 1-forms of the right shape")
}

/// A unimodular matrix `U` and its inverse, as a product of elementary matrices.
pub fn unimodular<R: Rng>(rng: &mut R, nvars: usize, size: usize) -> (PolyMatrix, PolyMatrix) {
    let mut u = PolyMatrix::identity(size, nvars);
    let mut inv = PolyMatrix::identity(size, nvars);
    if size < 2 {
        return (u, inv);
    }
    for _ in 0..size {
        let i = rng.gen_range(0..size);
        let j = (i + rng.gen_range(1..size)) % size;
        let p = poly(rng, nvars, 1, 2);
        let mut e = PolyMatrix::identity(size, nvars);
        e.set(i, j, p.clone());
        let mut e_inv = PolyMatrix::identity(size, nvars);
        e_inv.set(i, j, -p);
        u = u.mul(&e);
        inv = e_inv.mul(&inv);
    }
    (u, inv)
}

/// A rank-one factorization `(a | b)` of `f = ab`, with `a, b` vanishing at 0.
pub fn rank_one_matfac<R: Rng>(rng: &mut R, ctx: &RingCtx) -> MatFac {
    let n = ctx.nvars();
    let (a, b) = (vanishing_poly(rng, n), vanishing_poly(rng, n));
    let f = &a * &b;
    MatFac::new(
        ctx.clone(),
        f,
        PolyMatrix::scalar(1, &a),
        PolyMatrix::scalar(1, &b),
    )
    .expect("ab = ba")
}

/// A rank-two factorization of `f = pt + qs`: the Koszul-type pair
/// `A = [[p, q], [-s, t]]`, `B = [[t, -q], [s, p]]`, conjugated by random
/// unimodular matrices.
pub fn rank_two_matfac<R: Rng>(rng: &mut R, ctx: &RingCtx) -> MatFac {
    let n = ctx.nvars();
    let [p, q, s, t]: [Poly; 4] = std::array::from_fn(|_| vanishing_poly(rng, n));
    let f = &(&p * &t) + &(&q * &s);
    let a0 = PolyMatrix::from_rows(
        vec![vec![p.clone(), q.clone()], vec![-s.clone(), t.clone()]],
        n,
    )
    .expect("2x2");
    let b0 = PolyMatrix::from_rows(vec![vec![t, -q], vec![s, p]], n).expect("2x2");
    let (u, u_inv) = unimodular(rng, n, 2);
    let (v, v_inv) = unimodular(rng, n, 2);
    let a = u.mul(&a0).mul(&v);
    let b = v_inv.mul(&b0).mul(&u_inv);
    MatFac::new(ctx.clone(), f, a, b).expect("conjugate of a factorization")
}

/// One of [`rank_one_matfac`] or [`rank_two_matfac`].
pub fn matfac<R: Rng>(rng: &mut R, ctx: &RingCtx) -> MatFac {
    if rng.gen_bool(0.5) {
        rank_one_matfac(rng, ctx)
    } else {
        rank_two_matfac(rng, ctx)
    }
}

/// A strict morphism out of a random rank-one `(a | bc)` into `(ab | c)`, or the
/// reverse direction; both are the multiplication maps between the divisor pairs.
pub fn strict_morphism<R: Rng>(rng: &mut R, ctx: &RingCtx) -> StrictMorphism {
    let n = ctx.nvars();
    let [a, b, c]: [Poly; 3] = std::array::from_fn(|_| vanishing_poly(rng, n));
    let f = &(&a * &b) * &c;
    let make = |x: &Poly, y: &Poly| {
        MatFac::new(
            ctx.clone(),
            f.clone(),
            PolyMatrix::scalar(1, x),
            PolyMatrix::scalar(1, y),
        )
        .expect("xy = f")
    };
    let small = make(&a, &(&b * &c));
    let big = make(&(&a * &b), &c);
    let one = PolyMatrix::identity(1, n);
    let bm = PolyMatrix::scalar(1, &b);
    if rng.gen_bool(0.5) {
        // (a | bc) -> (ab | c): α0 = b, α1 = 1
        StrictMorphism::new(small, big, bm, one).expect("strict")
    } else {
        StrictMorphism::new(big, small, one, bm).expect("strict")
    }
}

/// An idempotent `U diag(1, .., 1, 0, .., 0) U^{-1}` of the given size.
pub fn idempotent<R: Rng>(rng: &mut R, nvars: usize, size: usize) -> PolyMatrix {
    let rank = rng.gen_range(0..=size);
    let mut d = PolyMatrix::zeros(size, size, nvars);
    for i in 0..rank {
        d.set(i, i, Poly::one(nvars));
    }
    let (u, u_inv) = unimodular(rng, nvars, size);
    u.mul(&d).mul(&u_inv)
}

/// A linear automorphism `x ↦ Lx`, `L` a permutation followed by integer shears.
pub fn linear_automorphism<R: Rng>(rng: &mut R, ctx: &RingCtx) -> RingMap {
    let n = ctx.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(i, n)).collect();
    images.shuffle(rng);
    for _ in 0..n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = integer(rng.gen_range(-2..=2));
        let add = images[j].scale(&c);
        images[i] += &add;
    }
    RingMap::new(ctx.clone(), ctx.clone(), images).expect("images live in the ring")
}

/// A random two-term complex `Q^a -> Q^b` (`a, b <= 2`) starting in degree `-1..=1`.
pub fn two_term_complex<R: Rng>(rng: &mut R, ctx: &RingCtx) -> Complex {
    let n = ctx.nvars();
    let lowest = rng.gen_range(-1..=1);
    let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let mut d = PolyMatrix::zeros(b, a, n);
    for i in 0..b {
        for j in 0..a {
            d.set(i, j, poly(rng, n, 1, 2));
        }
    }
    Complex::new(ctx.clone(), lowest, vec![a, b], vec![d]).expect("two-term complex")
}

/// A short complex: either [`two_term_complex`] or a Koszul complex
/// `Q -> Q^2 -> Q` on two random polynomials.
pub fn complex<R: Rng>(rng: &mut R, ctx: &RingCtx) -> Complex {
    if rng.gen_bool(0.5) {
        return two_term_complex(rng, ctx);
    }
    let n = ctx.nvars();
    let lowest = rng.gen_range(-1..=1);
    let (p, q) = (poly(rng, n, 1, 2), poly(rng, n, 1, 2));
    let d0 = PolyMatrix::from_rows(vec![vec![p.clone()], vec![q.clone()]], n).expect("2x1");
    let d1 = PolyMatrix::from_rows(vec![vec![q, -p]], n).expect("1x2");
    Complex::new(ctx.clone(), lowest, vec![1, 2, 1], vec![d0, d1]).expect("Koszul complex")
}
