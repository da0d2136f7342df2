use crate::ring::{Poly, PolyMatrix, RingCtx};

use super::{compare, MatFac, MfError, Mismatch};

/// A bounded complex `C^lo -> C^{lo+1} -> ...` of free modules; `differentials[k]`
/// maps `C^{lo+k}` to `C^{lo+k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    ctx: RingCtx,
    lowest: i64,
    ranks: Vec<usize>,
    differentials: Vec<PolyMatrix>,
}

fn is_even(i: i64) -> bool {
    i.rem_euclid(2) == 0
}

impl Complex {
    pub fn new(
        ctx: RingCtx,
        lowest: i64,
        ranks: Vec<usize>,
        differentials: Vec<PolyMatrix>,
    ) -> Result<Self, MfError> {
        if differentials.len() + 1 != ranks.len().max(1) {
            return Err(MfError::Shape(format!(
                "{} modules need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            super::check_shape(
                &format!("d^{}", lowest + k as i64),
                d,
                ranks[k + 1],
                ranks[k],
            )?;
        }
        for k in 1..differentials.len() {
            let dd = differentials[k].mul(&differentials[k - 1]);
            if let Some((row, col)) =
                dd.first_difference(&PolyMatrix::zeros(dd.rows(), dd.cols(), ctx.nvars()))
            {
                return Err(MfError::NotComplex {
                    index: lowest + k as i64,
                    row,
                    col,
                });
            }
        }
        Ok(Complex {
            ctx,
            lowest,
            ranks,
            differentials,
        })
    }

    /// `Q` concentrated in degree 0.
    pub fn ground(ctx: RingCtx) -> Self {
        Complex {
            ctx,
            lowest: 0,
            ranks: vec![1],
            differentials: Vec::new(),
        }
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.ranks.len() as i64).map(move |k| self.lowest + k)
    }

    fn rank(&self, i: i64) -> usize {
        let k = i - self.lowest;
        if k < 0 {
            return 0;
        }
        self.ranks.get(k as usize).copied().unwrap_or(0)
    }

    fn differential(&self, i: i64) -> Option<&PolyMatrix> {
        let k = i - self.lowest;
        if k < 0 {
            return None;
        }
        self.differentials.get(k as usize)
    }

    /// Basis labels `(i, a)` of the folded degree (`even` or odd), in folding order.
    fn folded_labels(&self, even: bool) -> Vec<(i64, usize)> {
        self.degrees()
            .filter(|&i| is_even(i) == even)
            .flat_map(|i| (0..self.rank(i)).map(move |a| (i, a)))
            .collect()
    }
}

/// The tensor product of complexes: `(X⊗Y)^k = ⊕_{i+j=k} X^i⊗Y^j` with summands in
/// increasing `i`, and `d = d_X⊗1 + (-1)^i 1⊗d_Y`.
pub fn tensor_complexes(x: &Complex, y: &Complex) -> Result<Complex, MfError> {
    if x.ctx != y.ctx {
        return Err(MfError::RingMismatch(x.ctx.to_string(), y.ctx.to_string()));
    }
    let nv = x.ctx.nvars();
    let lowest = x.lowest + y.lowest;
    let len = x.ranks.len() + y.ranks.len() - 1;
    let summands = |k: i64| -> Vec<(i64, i64)> {
        let ys = y.lowest..y.lowest + y.ranks.len() as i64;
        x.degrees()
            .filter(|&i| ys.contains(&(k - i)))
            .map(|i| (i, k - i))
            .collect()
    };
    let offsets = |k: i64| -> Vec<((i64, i64), usize)> {
        let mut off = 0;
        summands(k)
            .into_iter()
            .map(|s| {
                let o = off;
                off += x.rank(s.0) * y.rank(s.1);
                (s, o)
            })
            .collect()
    };
    let total = |k: i64| {
        summands(k)
            .iter()
            .map(|&(i, j)| x.rank(i) * y.rank(j))
            .sum::<usize>()
    };
    let ranks: Vec<usize> = (0..len as i64).map(|k| total(lowest + k)).collect();
    let mut differentials = Vec::new();
    for k in lowest..lowest + len as i64 - 1 {
        let mut d = PolyMatrix::zeros(total(k + 1), total(k), nv);
        let target = offsets(k + 1);
        let at = |s: (i64, i64)| target.iter().find(|(t, _)| *t == s).map(|(_, o)| *o);
        for ((i, j), col0) in offsets(k) {
            let mut place = |block: PolyMatrix, row0: usize| {
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        d.set(row0 + r, col0 + c, block.get(r, c).clone());
                    }
                }
            };
            if let (Some(dx), Some(row0)) = (x.differential(i), at((i + 1, j))) {
                place(dx.kron(&PolyMatrix::identity(y.rank(j), nv)), row0);
            }
            if let (Some(dy), Some(row0)) = (y.differential(j), at((i, j + 1))) {
                let block = PolyMatrix::identity(x.rank(i), nv).kron(dy);
                place(if is_even(i) { block } else { block.neg() }, row0);
            }
        }
        differentials.push(d);
    }
    Complex::new(x.ctx.clone(), lowest, ranks, differentials)
}

/// The ℤ/2-folding: a factorization of 0 with `E0 = ⊕_{i even} C^i` and
/// `E1 = ⊕_{i odd} C^i`, summands in increasing `i`.
pub fn fold_complex(c: &Complex) -> MatFac {
    let nv = c.ctx.nvars();
    let place_all = |src_even: bool| -> PolyMatrix {
        let (src, dst) = (c.folded_labels(src_even), c.folded_labels(!src_even));
        let mut m = PolyMatrix::zeros(dst.len(), src.len(), nv);
        for i in c.degrees().filter(|&i| is_even(i) == src_even) {
            let Some(d) = c.differential(i) else { continue };
            let col0 = src.iter().position(|&(k, _)| k == i);
            let row0 = dst.iter().position(|&(k, _)| k == i + 1);
            if let (Some(col0), Some(row0)) = (col0, row0) {
                for r in 0..d.rows() {
                    for s in 0..d.cols() {
                        m.set(row0 + r, col0 + s, d.get(r, s).clone());
                    }
                }
            }
        }
        m
    };
    let a = place_all(false);
    let b = place_all(true);
    MatFac::new(c.ctx.clone(), Poly::zero(nv), a, b)
        .expect("folding of a complex is a factorization of 0")
}

/// Compares `fold(X⊗Y)` with `fold(X)⊗fold(Y)` after matching bases by their
/// labels `(i, a, j, b)`; returns the first differing entry, if any.
pub fn folding_compatibility_defect(x: &Complex, y: &Complex) -> Result<Option<Mismatch>, MfError> {
    let folded = fold_complex(&tensor_complexes(x, y)?);
    let tensored = fold_complex(x).tensor(&fold_complex(y))?;

    // labels of fold(X⊗Y) in degree 0 / 1
    let xy = tensor_complexes(x, y)?;
    let complex_labels = |even: bool| -> Vec<(i64, usize, i64, usize)> {
        let mut out = Vec::new();
        for k in xy.degrees().filter(|&k| is_even(k) == even) {
            for i in x.degrees() {
                let j = k - i;
                for a in 0..x.rank(i) {
                    for b in 0..y.rank(j) {
                        out.push((i, a, j, b));
                    }
                }
            }
        }
        out
    };
    // labels of fold(X)⊗fold(Y): degree 0 is (X0⊗Y0)⊕(X1⊗Y1), degree 1 is (X1⊗Y0)⊕(X0⊗Y1)
    let tensor_labels = |even: bool| -> Vec<(i64, usize, i64, usize)> {
        let parts = if even {
            [(true, true), (false, false)]
        } else {
            [(false, true), (true, false)]
        };
        let mut out = Vec::new();
        for (px, py) in parts {
            for &(i, a) in &x.folded_labels(px) {
                for &(j, b) in &y.folded_labels(py) {
                    out.push((i, a, j, b));
                }
            }
        }
        out
    };
    let perm = |even: bool| -> Vec<usize> {
        let src = complex_labels(even);
        tensor_labels(even)
            .iter()
            .map(|l| src.iter().position(|s| s == l).expect("same labels"))
            .collect()
    };
    let (p0, p1) = (perm(true), perm(false));
    if let Some(e) = compare(
        "fold(X⊗Y).A = (fold X ⊗ fold Y).A",
        &folded.a().permuted(&p0, &p1),
        tensored.a(),
    ) {
        return Ok(Some(e));
    }
    Ok(compare(
        "fold(X⊗Y).B = (fold X ⊗ fold Y).B",
        &folded.b().permuted(&p1, &p0),
        tensored.b(),
    ))
}
