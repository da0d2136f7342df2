//! Shared corpus and independent oracles for the integration tests.
#![allow(dead_code)]

use mfchern::exterior::{blades_of_degree, Form};
use mfchern::mf::MatFac;
use mfchern::ring::{integer, Monomial, Poly, Rational, RingCtx};
use num_traits::Zero;
use rand::Rng;

pub fn ring(vars: &[&str]) -> RingCtx {
    RingCtx::with_vars(vars).unwrap()
}

pub fn mf(r: &RingCtx, f: &str, a: &[&[&str]], b: &[&[&str]]) -> MatFac {
    let conv = |g: &[&[&str]]| {
        g.iter()
            .map(|row| row.iter().map(|s| s.to_string()).collect())
            .collect::<Vec<Vec<String>>>()
    };
    MatFac::parse(r.clone(), f, &conv(a), &conv(b)).unwrap()
}

/// `(x^i | x^(n-i))` over `x^n`.
pub fn power_pair(n: u32, i: u32) -> MatFac {
    let r = ring(&["x"]);
    mf(
        &r,
        &format!("x^{n}"),
        &[&[&format!("x^{i}")]],
        &[&[&format!("x^{}", n - i)]],
    )
}

pub fn three_variable_pair() -> MatFac {
    let r = ring(&["x", "y", "z"]);
    mf(
        &r,
        "x*y + y*z + z*x",
        &[&["z", "y"], &["x", "-x-y"]],
        &[&["x+y", "y"], &["x", "-z"]],
    )
}

pub fn xy_pair() -> MatFac {
    mf(&ring(&["x", "y"]), "x*y", &[&["x"]], &[&["y"]])
}

/// Named objects the corpus-wide criteria run over.
pub fn corpus() -> Vec<(String, MatFac)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for i in 0..=n {
            out.push((format!("x^{i} | x^{}", n - i), power_pair(n, i)));
        }
    }
    out.push(("three-variable 2x2".into(), three_variable_pair()));
    out.push(("x | y".into(), xy_pair()));
    let r = ring(&["x", "y"]);
    out.push((
        "x^2 | y^3".into(),
        mf(&r, "x^2*y^3", &[&["x^2"]], &[&["y^3"]]),
    ));
    out.push(("1 | xy".into(), mf(&r, "x*y", &[&["1"]], &[&["x*y"]])));
    let r4 = ring(&["x", "y", "u", "v"]);
    let e = mf(&r4, "x*y", &[&["x"]], &[&["y"]]);
    let f = mf(&r4, "u*v", &[&["u"]], &[&["v"]]);
    out.push(("(x|y) (u|v)".into(), e.tensor(&f).unwrap()));
    out
}

/// Row reduction over ℚ: whether `a x = b` has a solution.
pub fn solvable(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let k = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, p) in a[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &k * p;
                }
                let t = &k * &b[r];
                b[i] -= t;
            }
        }
        r += 1;
    }
    (r..rows).all(|i| b[i].is_zero())
}

/// All monomials of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    go(nvars, d, &mut Vec::new(), &mut out);
    out
}

pub fn homogeneous_degree(p: &Poly) -> Option<u32> {
    let mut degs = p.terms().map(|(m, _)| m.degree());
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

/// Brute-force vector membership: is `target` (a vector of homogeneous polynomials
/// of degree `deg`, componentwise) a combination `Σ h_i g_i` with homogeneous
/// cofactors? For homogeneous generators this decides membership exactly.
pub fn member_by_linear_algebra(
    gens: &[(Vec<Poly>, u32)],
    target: &[Poly],
    deg: u32,
    nvars: usize,
) -> bool {
    // unknowns: (generator, cofactor monomial)
    let mut columns: Vec<Vec<Poly>> = Vec::new();
    for (g, gdeg) in gens {
        if *gdeg > deg {
            continue;
        }
        for m in monomials_of_degree(nvars, deg - gdeg) {
            columns.push(g.iter().map(|p| p.mul_term(&m, &integer(1))).collect());
        }
    }
    let rows: Vec<(usize, Monomial)> = (0..target.len())
        .flat_map(|pos| {
            monomials_of_degree(nvars, deg)
                .into_iter()
                .map(move |m| (pos, m))
        })
        .collect();
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(pos, m)| columns.iter().map(|col| col[*pos].coefficient(m)).collect())
        .collect();
    let b: Vec<Rational> = rows
        .iter()
        .map(|(pos, m)| target[*pos].coefficient(m))
        .collect();
    solvable(a, b)
}

pub fn random_homogeneous<R: Rng>(rng: &mut R, nvars: usize, d: u32, terms: usize) -> Poly {
    let monos = monomials_of_degree(nvars, d);
    let mut p = Poly::zero(nvars);
    for _ in 0..terms {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, integer(rng.gen_range(-3..=3)));
    }
    p
}

/// `w` as a coefficient vector over the degree-`k` blades, in lexicographic order.
pub fn form_vector(w: &Form, k: usize) -> Vec<Poly> {
    blades_of_degree(w.nvars(), k)
        .into_iter()
        .map(|b| w.coefficient(b))
        .collect()
}
