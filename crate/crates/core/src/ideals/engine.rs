//! Buchberger's algorithm on vectors of polynomials.
//!
//! The term order on `Q^rank` is position-over-term with position 0 the largest:
//! the leading term of a vector is the leading monomial of its first nonzero
//! component. An ideal is the rank-one case.

use std::cmp::Ordering;

use crate::ring::{Monomial, MonomialOrder, Poly, Rational};

pub(crate) type Vector = Vec<Poly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Lead {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: Rational,
}

pub(crate) fn lead(v: &[Poly], order: MonomialOrder) -> Option<Lead> {
    v.iter()
        .enumerate()
        .find(|(_, p)| !p.is_zero())
        .map(|(pos, p)| {
            let (m, c) = p.leading_term(order).expect("nonzero");
            Lead {
                pos,
                mono: m.clone(),
                coeff: c.clone(),
            }
        })
}

/// Compares module terms; `Greater` means the left term is larger.
pub(crate) fn cmp_terms(
    order: MonomialOrder,
    a: (usize, &Monomial),
    b: (usize, &Monomial),
) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

pub(crate) fn is_zero(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

fn axpy(v: &mut [Poly], m: &Monomial, c: &Rational, g: &[Poly]) {
    for (vi, gi) in v.iter_mut().zip(g) {
        if !gi.is_zero() {
            *vi += &gi.mul_term(m, c);
        }
    }
}

/// Full reduction of `v` against `basis`: no term of the result is divisible by a
/// leading term of the basis.
pub(crate) fn reduce(v: &[Poly], basis: &[Vector], leads: &[Lead], order: MonomialOrder) -> Vector {
    let mut work = v.to_vec();
    let mut rem: Vector = v.iter().map(|p| Poly::zero(p.nvars())).collect();
    while let Some(lt) = lead(&work, order) {
        let divisor = leads
            .iter()
            .position(|l| l.pos == lt.pos && l.mono.divides(&lt.mono));
        match divisor {
            Some(k) => {
                let q = lt.mono.div(&leads[k].mono).expect("divides");
                let c = -(&lt.coeff / &leads[k].coeff);
                axpy(&mut work, &q, &c, &basis[k]);
            }
            None => {
                work[lt.pos].remove_term(&lt.mono);
                rem[lt.pos].add_term(lt.mono, lt.coeff);
            }
        }
    }
    rem
}

/// The S-vector of two elements whose leading terms sit in the same position.
pub(crate) fn s_vector(a: &[Poly], la: &Lead, b: &[Poly], lb: &Lead) -> Vector {
    let l = la.mono.lcm(&lb.mono);
    let mut out: Vector = a
        .iter()
        .map(|p| p.mul_term(&l.div(&la.mono).expect("lcm"), &la.coeff.recip()))
        .collect();
    axpy(
        &mut out,
        &l.div(&lb.mono).expect("lcm"),
        &-lb.coeff.recip(),
        b,
    );
    out
}

fn monic(v: &[Poly], order: MonomialOrder) -> Vector {
    match lead(v, order) {
        None => v.to_vec(),
        Some(l) => {
            let c = l.coeff.recip();
            v.iter().map(|p| p.scale(&c)).collect()
        }
    }
}

struct Pair {
    pos: usize,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// A reduced Gröbner basis of the submodule generated by `gens`, made monic and
/// sorted by decreasing leading term.
pub(crate) fn groebner(gens: &[Vector], order: MonomialOrder) -> Vec<Vector> {
    let use_product_criterion = gens.first().is_some_and(|g| g.len() == 1);
    let mut basis: Vec<Vector> = Vec::new();
    let mut leads: Vec<Lead> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |v: Vector, basis: &mut Vec<Vector>, leads: &mut Vec<Lead>, pairs: &mut Vec<Pair>| {
        let v = monic(&v, order);
        let l = lead(&v, order).expect("nonzero");
        let j = basis.len();
        for (i, li) in leads.iter().enumerate() {
            if li.pos == l.pos {
                if use_product_criterion && li.mono.is_coprime(&l.mono) {
                    continue;
                }
                pairs.push(Pair {
                    pos: l.pos,
                    lcm: li.mono.lcm(&l.mono),
                    i,
                    j,
                });
            }
        }
        basis.push(v);
        leads.push(l);
    };

    for g in gens {
        let r = reduce(g, &basis, &leads, order);
        if !is_zero(&r) {
            add(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    // normal strategy: the smallest lcm first, ties by generator indices
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                cmp_terms(order, (pa.pos, &pa.lcm), (pb.pos, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let p = pairs.swap_remove(best);
        let s = s_vector(&basis[p.i], &leads[p.i], &basis[p.j], &leads[p.j]);
        let r = reduce(&s, &basis, &leads, order);
        if !is_zero(&r) {
            add(r, &mut basis, &mut leads, &mut pairs);
        }
    }

    interreduce(basis, order)
}

fn interreduce(basis: Vec<Vector>, order: MonomialOrder) -> Vec<Vector> {
    let leads: Vec<Lead> = basis
        .iter()
        .map(|v| lead(v, order).expect("nonzero"))
        .collect();
    // drop elements whose leading term is divisible by another's (keep the first of equals)
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && leads[j].pos == leads[i].pos
                    && leads[j].mono.divides(&leads[i].mono)
                    && (leads[j].mono != leads[i].mono || j < i)
            })
        })
        .collect();
    let min: Vec<Vector> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leads: Vec<Lead> = keep.iter().map(|&i| leads[i].clone()).collect();
    let mut out: Vec<Vector> = (0..min.len())
        .map(|i| {
            let others: Vec<Vector> = (0..min.len())
                .filter(|&j| j != i)
                .map(|j| min[j].clone())
                .collect();
            let other_leads: Vec<Lead> = (0..min.len())
                .filter(|&j| j != i)
                .map(|j| min_leads[j].clone())
                .collect();
            // the leading term survives; only the tail is reduced
            monic(&reduce(&min[i], &others, &other_leads, order), order)
        })
        .collect();
    out.sort_by(|a, b| {
        let (la, lb) = (
            lead(a, order).expect("nonzero"),
            lead(b, order).expect("nonzero"),
        );
        cmp_terms(order, (lb.pos, &lb.mono), (la.pos, &la.mono))
    });
    out
}

/// Checks Buchberger's criterion: every S-vector reduces to zero.
pub(crate) fn satisfies_buchberger_criterion(basis: &[Vector], order: MonomialOrder) -> bool {
    let leads: Vec<Lead> = basis
        .iter()
        .map(|v| lead(v, order).expect("nonzero"))
        .collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if leads[i].pos != leads[j].pos {
                continue;
            }
            let s = s_vector(&basis[i], &leads[i], &basis[j], &leads[j]);
            if !is_zero(&reduce(&s, basis, &leads, order)) {
                return false;
            }
        }
    }
    true
}
