use std::fmt;

use crate::ring::{Poly, PolyMatrix, Rational};

use super::{ExteriorError, Form};

/// A dense matrix of forms; the product wedges entries.
///
/// `split` is optional parity metadata: `Some(r0)` says the first `r0` rows and
/// columns span the even summand `E0`, the rest `E1`. It is only consulted by the
/// supertrace and by the Atiyah-class constructors, and is ignored by equality.
#[derive(Clone)]
pub struct FormMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Form>,
    split: Option<usize>,
}

impl FormMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        FormMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Form::zero(nvars); rows * cols],
            split: None,
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, Form::one(nvars));
        }
        m
    }

    pub fn from_poly_matrix(p: &PolyMatrix) -> Self {
        let mut m = Self::zeros(p.rows(), p.cols(), p.nvars());
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                m.set(i, j, Form::from_poly(p.get(i, j).clone()));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Form>>, nvars: usize) -> Result<Self, ExteriorError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(ExteriorError::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for w in row {
                if w.nvars() != nvars {
                    return Err(crate::ring::RingError::VariableCountMismatch {
                        left: nvars,
                        right: w.nvars(),
                    }
                    .into());
                }
                entries.push(w);
            }
        }
        Ok(FormMatrix {
            rows: nrows,
            cols: ncols,
            nvars,
            entries,
            split: None,
        })
    }

    /// Declares the `(E0, E1)` block structure of a square matrix.
    pub fn with_split(mut self, r0: usize) -> Self {
        assert!(
            self.rows == self.cols && r0 <= self.rows,
            "split needs a square matrix"
        );
        self.split = Some(r0);
        self
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: Form) {
        debug_assert_eq!(w.nvars(), self.nvars);
        self.entries[i * self.cols + j] = w;
    }

    pub fn entries(&self) -> &[Form] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// True when every entry is homogeneous of form degree `k`.
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.entries.iter().all(|w| w.is_homogeneous_of(k))
    }

    pub fn try_mul(&self, other: &FormMatrix) -> Result<FormMatrix, ExteriorError> {
        if self.cols != other.rows {
            return Err(ExteriorError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(crate::ring::RingError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            }
            .into());
        }
        let mut out = FormMatrix::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &a.wedge(b);
                    }
                }
            }
        }
        if self.split.is_some() && self.split == other.split {
            out.split = self.split;
        }
        Ok(out)
    }

    /// `(ST)_ij = Σ_k S_ik ∧ T_kj`; panics on a shape mismatch.
    pub fn mul(&self, other: &FormMatrix) -> FormMatrix {
        self.try_mul(other).expect("form matrix product shape")
    }

    fn zip_with(&self, other: &FormMatrix, f: impl Fn(&Form, &Form) -> Form) -> FormMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "form matrix shapes differ"
        );
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            split: if self.split == other.split {
                self.split
            } else {
                None
            },
        }
    }

    pub fn add(&self, other: &FormMatrix) -> FormMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &FormMatrix) -> FormMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> FormMatrix {
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
            split: self.split,
        }
    }

    pub fn neg(&self) -> FormMatrix {
        self.map(|w| -w)
    }

    pub fn scale(&self, c: &Rational) -> FormMatrix {
        self.map(|w| w.scale(c))
    }

    pub fn mul_poly(&self, p: &Poly) -> FormMatrix {
        self.map(|w| w.mul_poly(p))
    }

    /// Entrywise `d`.
    pub fn exterior_derivative(&self) -> FormMatrix {
        self.map(Form::exterior_derivative)
    }

    pub fn try_trace(&self) -> Result<Form, ExteriorError> {
        if self.rows != self.cols {
            return Err(ExteriorError::Shape(format!(
                "trace of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut t = Form::zero(self.nvars);
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        Ok(t)
    }

    /// `Σ_i T_ii`; panics on a non-square matrix.
    pub fn trace(&self) -> Form {
        self.try_trace().expect("trace shape")
    }

    /// The submatrix with rows `r.0..r.1` and columns `c.0..c.1`.
    pub fn submatrix(&self, r: (usize, usize), c: (usize, usize)) -> FormMatrix {
        let mut out = FormMatrix::zeros(r.1 - r.0, c.1 - c.0, self.nvars);
        for i in r.0..r.1 {
            for j in c.0..c.1 {
                out.set(i - r.0, j - c.0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Assembles a block matrix; block sizes must line up along rows and columns.
    pub fn blocks(grid: &[Vec<&FormMatrix>]) -> FormMatrix {
        let nvars = grid[0][0].nvars;
        let row_sizes: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let col_sizes: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut out = FormMatrix::zeros(row_sizes.iter().sum(), col_sizes.iter().sum(), nvars);
        let mut r0 = 0;
        for (bi, brow) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, block) in brow.iter().enumerate() {
                assert_eq!(block.rows, row_sizes[bi], "block row sizes differ");
                assert_eq!(block.cols, col_sizes[bj], "block column sizes differ");
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        out.set(r0 + i, c0 + j, block.get(i, j).clone());
                    }
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FormMatrix) -> FormMatrix {
        let z01 = FormMatrix::zeros(self.rows, other.cols, self.nvars);
        let z10 = FormMatrix::zeros(other.rows, self.cols, self.nvars);
        Self::blocks(&[vec![self, &z01], vec![&z10, other]])
    }

    /// Kronecker product, `self` major, with entrywise wedge.
    pub fn kron(&self, other: &FormMatrix) -> FormMatrix {
        let mut out = FormMatrix::zeros(self.rows * other.rows, self.cols * other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a.wedge(other.get(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Reorders rows and columns: `out[i, j] = self[row_perm[i], col_perm[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> FormMatrix {
        let mut out = FormMatrix::zeros(row_perm.len(), col_perm.len(), self.nvars);
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                out.set(i, j, self.get(ri, cj).clone());
            }
        }
        out
    }

    /// Applies a ring map entrywise (see [`Form::substitute`]).
    pub fn substitute(
        &self,
        images: &[Poly],
        target_nvars: usize,
    ) -> Result<FormMatrix, ExteriorError> {
        let entries = self
            .entries
            .iter()
            .map(|w| w.substitute(images, target_nvars))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FormMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: target_nvars,
            entries,
            split: self.split,
        })
    }

    /// First entry where `self` and `other` differ (same shape assumed).
    pub fn first_difference(&self, other: &FormMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl PartialEq for FormMatrix {
    fn eq(&self, other: &Self) -> bool {
        (self.rows, self.cols, self.nvars) == (other.rows, other.cols, other.nvars)
            && self.entries == other.entries
    }
}

impl Eq for FormMatrix {}

impl std::hash::Hash for FormMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.rows, self.cols, self.nvars, &self.entries).hash(state);
    }
}

impl fmt::Debug for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
