use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Zero;

use crate::ring::{Poly, Rational, RingError};

use super::ExteriorError;

/// A basis element `dx_I` of the exterior algebra, stored as a bit mask of the
/// strictly increasing index set `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u32);

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut mask = 0u32;
        for &i in indices {
            let bit = 1u32.checked_shl(i as u32)?;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(Blade(mask))
    }

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// `dx_a ∧ dx_b = sign * dx_{a∪b}`, or `None` when the index sets meet.
    pub fn wedge(self, other: Blade) -> Option<(Blade, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count inversions: pairs (i in a, j in b) with i > j
        let mut inversions = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            inversions += (self.0 >> j).count_ones();
            b &= b - 1;
        }
        Some((Blade(self.0 | other.0), inversions % 2 == 1))
    }
}

/// All index sets of size `k` drawn from `0..n`, in lexicographic order of their
/// increasing index tuples.
pub fn blades_of_degree(n: usize, k: usize) -> Vec<Blade> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Blade>) {
        if cur.len() == k {
            out.push(Blade::from_indices(cur).expect("distinct indices"));
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A differential form `Σ p_I dx_I` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    nvars: usize,
    terms: BTreeMap<Blade, Poly>,
}

impl Form {
    pub fn zero(nvars: usize) -> Self {
        Form {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    /// A 0-form.
    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        Self::term(p, Blade::ONE, nvars)
    }

    pub fn constant(c: Rational, nvars: usize) -> Self {
        Self::from_poly(Poly::constant(c, nvars))
    }

    /// `dx_i`.
    pub fn dx(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "differential index out of range");
        Self::term(Poly::one(nvars), Blade::single(i), nvars)
    }

    fn term(p: Poly, b: Blade, nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(b, p);
        }
        Form { nvars, terms }
    }

    /// `p dx_I`; `I` must be strictly increasing and within range.
    pub fn from_term(p: Poly, indices: &[usize]) -> Result<Self, ExteriorError> {
        let nvars = p.nvars();
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(ExteriorError::BadIndices(indices.to_vec()));
        }
        if indices.iter().any(|&i| i >= nvars) {
            return Err(ExteriorError::BadIndices(indices.to_vec()));
        }
        let b = Blade::from_indices(indices)
            .ok_or_else(|| ExteriorError::BadIndices(indices.to_vec()))?;
        Ok(Self::term(p, b, nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: Blade) -> Poly {
        self.terms
            .get(&b)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// The degree if all terms share one; `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// True when every term has degree `k` (vacuously for zero).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|b| b.degree() == k)
    }

    /// Largest degree present; `None` for zero.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|b| b.degree()).max()
    }

    /// The homogeneous part of degree `k`.
    pub fn component(&self, k: usize) -> Form {
        Form {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(b, p)| (*b, p.clone()))
                .collect(),
        }
    }

    /// The coefficient of the empty blade.
    pub fn scalar_part(&self) -> Poly {
        self.coefficient(Blade::ONE)
    }

    fn add_term(&mut self, b: Blade, p: Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(p);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &p;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.nvars);
        }
        Form {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(b, p)| (*b, p.scale(c))).collect(),
        }
    }

    pub fn mul_poly(&self, q: &Poly) -> Form {
        let mut out = Form::zero(self.nvars);
        for (b, p) in &self.terms {
            out.add_term(*b, p * q);
        }
        out
    }

    pub fn try_wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        if self.nvars != other.nvars {
            return Err(RingError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            }
            .into());
        }
        Ok(self.wedge(other))
    }

    /// Bilinear extension of `dx_I ∧ dx_J`. Panics when the forms live in different rings.
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(
            self.nvars, other.nvars,
            "wedge of forms from different rings"
        );
        let mut out = Form::zero(self.nvars);
        for (ba, pa) in &self.terms {
            for (bb, pb) in &other.terms {
                if let Some((b, negative)) = ba.wedge(*bb) {
                    let p = pa * pb;
                    out.add_term(b, if negative { -p } else { p });
                }
            }
        }
        out
    }

    /// The exterior derivative `d(p dx_I) = dp ∧ dx_I`.
    pub fn exterior_derivative(&self) -> Form {
        let mut out = Form::zero(self.nvars);
        for (b, p) in &self.terms {
            for i in 0..self.nvars {
                if b.contains(i) {
                    continue;
                }
                let dp = p.partial_derivative(i).expect("index in range");
                if dp.is_zero() {
                    continue;
                }
                let (nb, negative) = Blade::single(i).wedge(*b).expect("disjoint");
                out.add_term(nb, if negative { -dp } else { dp });
            }
        }
        out
    }

    /// `Σ_i (∂p/∂x_i) dx_i`.
    pub fn differential(p: &Poly) -> Form {
        Form::from_poly(p.clone()).exterior_derivative()
    }

    /// Applies a ring map to coefficients and sends `dx_i` to `d(images[i])`.
    pub fn substitute(&self, images: &[Poly], target_nvars: usize) -> Result<Form, RingError> {
        let diffs: Vec<Form> = images.iter().map(Form::differential).collect();
        let mut out = Form::zero(target_nvars);
        for (b, p) in &self.terms {
            let mut t = Form::from_poly(p.substitute(images, target_nvars)?);
            for i in b.indices() {
                t = t.wedge(&diffs[i]);
            }
            out += &t;
        }
        Ok(out)
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, &Poly)> {
        let mut ts: Vec<_> = self.terms.iter().map(|(b, p)| (b.indices(), p)).collect();
        ts.sort_by(|a, b| a.0.cmp(&b.0));
        ts
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, p)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p:?})")?;
            for i in idx {
                write!(f, "*dx{i}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        assert_eq!(self.nvars, rhs.nvars, "adding forms from different rings");
        for (b, p) in &rhs.terms {
            self.add_term(*b, p.clone());
        }
    }
}

impl SubAssign<&Form> for Form {
    fn sub_assign(&mut self, rhs: &Form) {
        assert_eq!(
            self.nvars, rhs.nvars,
            "subtracting forms from different rings"
        );
        for (b, p) in &rhs.terms {
            self.add_term(*b, -p);
        }
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(b, p)| (*b, -p)).collect(),
        }
    }
}

impl Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        self += &rhs;
        self
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(mut self, rhs: Form) -> Form {
        self -= &rhs;
        self
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl From<Poly> for Form {
    fn from(p: Poly) -> Self {
        Form::from_poly(p)
    }
}
