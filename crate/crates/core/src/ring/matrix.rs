use std::fmt;

use super::{Poly, RingCtx, RingError};

/// A dense matrix of polynomials. Empty shapes (zero rows or columns) are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::scalar(n, &Poly::one(nvars))
    }

    /// `p` times the `n x n` identity.
    pub fn scalar(n: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(n, n, p.nvars());
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>, nvars: usize) -> Result<Self, RingError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(RingError::Shape(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(RingError::VariableCountMismatch {
                        left: nvars,
                        right: p.nvars(),
                    });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols: ncols,
            nvars,
            entries,
        })
    }

    /// Parses a row-major grid of polynomial strings.
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>], ctx: &RingCtx) -> Result<Self, RingError> {
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| ctx.parse(s.as_ref()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(parsed, ctx.nvars())
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Row-major grid of printed entries.
    pub fn to_strings(&self, ctx: &RingCtx) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| ctx.print(self.get(i, j))).collect())
            .collect()
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, RingError> {
        if self.cols != other.rows {
            return Err(RingError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(RingError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.try_mul(other).expect("matrix product shape")
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> PolyMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes differ"
        );
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        self.map(|q| q * p)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Applies `f` to every entry, producing a matrix over a ring with `nvars` variables.
    pub fn try_map_into<E>(
        &self,
        nvars: usize,
        f: impl Fn(&Poly) -> Result<Poly, E>,
    ) -> Result<PolyMatrix, E> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        })
    }

    /// Kronecker product, `self` major: entry `(i*r + k, j*c + l)` is `self[i,j] * other[k,l]`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.rows * other.rows, self.cols * other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Assembles a block matrix. Every block in a block-row must have the same row count,
    /// every block in a block-column the same column count.
    pub fn blocks(grid: &[Vec<&PolyMatrix>]) -> PolyMatrix {
        let nvars = grid[0][0].nvars;
        let row_sizes: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let col_sizes: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut out = PolyMatrix::zeros(row_sizes.iter().sum(), col_sizes.iter().sum(), nvars);
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

    pub fn direct_sum(&self, other: &PolyMatrix) -> PolyMatrix {
        let z01 = PolyMatrix::zeros(self.rows, other.cols, self.nvars);
        let z10 = PolyMatrix::zeros(other.rows, self.cols, self.nvars);
        Self::blocks(&[vec![self, &z01], vec![&z10, other]])
    }

    /// The submatrix with rows `r.0..r.1` and columns `c.0..c.1`.
    pub fn submatrix(&self, r: (usize, usize), c: (usize, usize)) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(r.1 - r.0, c.1 - c.0, self.nvars);
        for i in r.0..r.1 {
            for j in c.0..c.1 {
                out.set(i - r.0, j - c.0, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reorders rows and columns: `out[i, j] = self[row_perm[i], col_perm[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(row_perm.len(), col_perm.len(), self.nvars);
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                out.set(i, j, self.get(ri, cj).clone());
            }
        }
        out
    }

    /// First entry where `self` and `other` differ (same shape assumed).
    pub fn first_difference(&self, other: &PolyMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl fmt::Debug for PolyMatrix {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ex23_blocks_multiply_to_the_potential() {
        let r = RingCtx::with_vars(&["x", "y", "z"]).unwrap();
        let a = PolyMatrix::parse(&[vec!["z", "y"], vec!["x", "-x-y"]], &r).unwrap();
        let b = PolyMatrix::parse(&[vec!["x+y", "y"], vec!["x", "-z"]], &r).unwrap();
        let f = r.parse("x*y + y*z + z*x").unwrap();
        assert_eq!(a.mul(&b), PolyMatrix::scalar(2, &f));
        assert_eq!(b.mul(&a), PolyMatrix::scalar(2, &f));
    }

    #[test]
    fn kron_and_blocks() {
        let r = RingCtx::with_vars(&["x"]).unwrap();
        let a = PolyMatrix::parse(&[vec!["1", "x"]], &r).unwrap();
        let i2 = PolyMatrix::identity(2, 1);
        let k = a.kron(&i2);
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k.get(1, 3), &r.parse("x").unwrap());
        assert!(k.get(0, 3).is_zero());
        let e = PolyMatrix::zeros(0, 3, 1);
        assert_eq!(e.direct_sum(&a).rows(), 1);
        assert_eq!(e.direct_sum(&a).cols(), 5);
        assert!(a.try_mul(&a).is_err());
    }
}
