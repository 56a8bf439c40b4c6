//! Exact dense Hermitian linear algebra over the Gaussian rationals.
//!
//! Everything here is fraction-free Bareiss elimination with symmetric
//! (diagonal) pivoting: intermediate entries are scaled minors, so sizes stay
//! polynomial and every division is exact. Positive definiteness falls out of
//! the pivot signs, so projections need no numerical eigensolver.

use crate::exact::{GaussianRational, Rational};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    /// Elimination hit a zero pivot after full symmetric pivoting.
    #[error("matrix is singular (zero pivot at elimination step {step})")]
    SingularMatrix { step: usize },
    /// A pivot came out non-positive while a positive definite matrix was required.
    #[error("matrix is not positive definite (pivot sign at step {step})")]
    NotPositiveDefinite { step: usize },
    #[error("dimension mismatch: matrix is {dim}x{dim}, vector has length {len}")]
    DimensionMismatch { dim: usize, len: usize },
    #[error("rows do not form a Hermitian matrix (entry ({i},{j}))")]
    NotHermitian { i: usize, j: usize },
}

/// Dense Hermitian matrix with exact Gaussian-rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl HermitianMatrix {
    /// Build from full rows, checking `entry(j,i) = conj(entry(i,j))`.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self, LinalgError> {
        let dim = rows.len();
        assert!(dim >= 1, "dimension must be at least 1");
        let mut entries = Vec::with_capacity(dim * dim);
        for row in &rows {
            assert_eq!(row.len(), dim, "rows must be square");
            entries.extend(row.iter().cloned());
        }
        let m = Self { dim, entries };
        for i in 0..dim {
            for j in i..dim {
                if *m.entry(j, i) != m.entry(i, j).conj() {
                    return Err(LinalgError::NotHermitian { i, j });
                }
            }
        }
        Ok(m)
    }

    /// Build from a generator for the upper triangle; the lower is mirrored.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        assert!(dim >= 1);
        let mut entries = vec![GaussianRational::zero(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[j * dim + i] = v.conj();
                entries[i * dim + j] = v;
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_upper_fn(dim, |i, j| {
            if i == j {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.dim + j]
    }

    /// Exact matrix-vector product.
    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch { dim: self.dim, len: v.len() });
        }
        Ok((0..self.dim)
            .map(|i| {
                let mut acc = GaussianRational::zero();
                for j in 0..self.dim {
                    if !self.entry(i, j).is_zero() && !v[j].is_zero() {
                        acc += &(self.entry(i, j) * &v[j]);
                    }
                }
                acc
            })
            .collect())
    }

    /// Exact matrix-matrix product (test and cross-check helper).
    pub fn mul_matrix(&self, other: &HermitianMatrix) -> Vec<Vec<GaussianRational>> {
        assert_eq!(self.dim, other.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let mut acc = GaussianRational::zero();
                        for k in 0..self.dim {
                            if !self.entry(i, k).is_zero() && !other.entry(k, j).is_zero() {
                                acc += &(self.entry(i, k) * other.entry(k, j));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

/// Exact `m x m` Hilbert matrix, entries `1/(i+j+1)`.
pub fn hilbert_matrix(m: usize) -> HermitianMatrix {
    assert!(m >= 1, "hilbert_matrix requires m >= 1");
    HermitianMatrix::from_upper_fn(m, |i, j| {
        GaussianRational::new(
            BigRational::new(BigInt::one(), BigInt::from(i + j + 1)),
            BigRational::zero(),
        )
    })
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact inverse of the `m x m` Hilbert matrix via the closed binomial formula.
///
/// `entry(i,j) = (-1)^{i+j} (i+j+1) C(m+i, m-j-1) C(m+j, m-i-1) C(i+j, i)^2`;
/// in particular `entry(0,0) = m^2`. Independent of the elimination path, so it
/// doubles as a cross-check for [`solve_hermitian`].
pub fn hilbert_inverse(m: usize) -> HermitianMatrix {
    assert!(m >= 1, "hilbert_inverse requires m >= 1");
    HermitianMatrix::from_upper_fn(m, |i, j| {
        let mut v = BigInt::from(i + j + 1)
            * binomial(m + i, m - j - 1)
            * binomial(m + j, m - i - 1)
            * binomial(i + j, i).pow(2);
        if (i + j) % 2 == 1 {
            v = -v;
        }
        GaussianRational::new(BigRational::from_integer(v), BigRational::zero())
    })
}

/// Outcome of the fraction-free elimination used by the solvers below.
struct Elimination {
    /// Augmented matrix after forward elimination (upper triangular in the G block).
    rows: Vec<Vec<GaussianRational>>,
    /// Column permutation applied to G (entry `k` = original index of pivot column `k`).
    perm: Vec<usize>,
}

/// Forward Bareiss elimination with full symmetric (diagonal) pivoting.
/// Pivots are scaled leading principal minors; every division by the previous
/// pivot is exact.
fn bareiss_forward(
    g: &HermitianMatrix,
    rhs: &[GaussianRational],
) -> Result<Elimination, LinalgError> {
    let n = g.dim;
    if rhs.len() != n {
        return Err(LinalgError::DimensionMismatch { dim: n, len: rhs.len() });
    }
    let mut rows: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<GaussianRational> =
                (0..n).map(|j| g.entry(i, j).clone()).collect();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut prev = GaussianRational::one();
    for k in 0..n {
        // Symmetric pivoting keeps the trailing block Hermitian, so candidate
        // pivots live on the (real) diagonal. First-of-equals wins, which
        // leaves already well-ordered matrices untouched.
        let mut best: Option<(usize, Rational)> = None;
        for j in k..n {
            if rows[j][j].is_zero() {
                continue;
            }
            let mag = rows[j][j].norm_sq();
            if best.as_ref().map_or(true, |(_, m)| mag > *m) {
                best = Some((j, mag));
            }
        }
        let Some((p, _)) = best else {
            return Err(LinalgError::SingularMatrix { step: k });
        };
        if p != k {
            rows.swap(k, p);
            for row in rows.iter_mut() {
                row.swap(k, p);
            }
            perm.swap(k, p);
        }
        let pivot_val = rows[k][k].clone();
        if pivot_val.is_zero() {
            return Err(LinalgError::SingularMatrix { step: k });
        }
        let prev_inv = prev.inverse().expect("prev pivot nonzero");
        for i in k + 1..n {
            if rows[i][k].is_zero() {
                // Untouched rows still rescale by pivot/prev (Bareiss invariant).
                for j in k + 1..=n {
                    if !rows[i][j].is_zero() {
                        let num = &rows[i][j] * &pivot_val;
                        rows[i][j] = &num * &prev_inv;
                    }
                }
                continue;
            }
            let factor = rows[i][k].clone();
            for j in k + 1..=n {
                if rows[i][j].is_zero() && rows[k][j].is_zero() {
                    continue;
                }
                let num = &(&rows[i][j] * &pivot_val) - &(&factor * &rows[k][j]);
                rows[i][j] = &num * &prev_inv;
            }
            rows[i][k] = GaussianRational::zero();
        }
        prev = pivot_val;
    }
    Ok(Elimination { rows, perm })
}

/// Exact solve of `G x = b` for Hermitian `G`.
///
/// Hermitian matrices whose symmetric elimination meets only zero diagonal
/// pivots are reported singular.
pub fn solve_hermitian(
    g: &HermitianMatrix,
    b: &[GaussianRational],
) -> Result<Vec<GaussianRational>, LinalgError> {
    let elim = bareiss_forward(g, b)?;
    back_substitute(g.dim, elim)
}

/// Exact solve of `G x = b` for Hermitian positive definite `G`, natural pivot
/// order with pivot-sign checks.
///
/// Row rescaling is deferred per row (the Bareiss multipliers telescope), so
/// banded systems like the circle-model Toeplitz Gram are eliminated in
/// `O(n * bandwidth^2)` heavy operations instead of `O(n^2)`.
pub fn solve_positive_definite(
    g: &HermitianMatrix,
    b: &[GaussianRational],
) -> Result<Vec<GaussianRational>, LinalgError> {
    let n = g.dim;
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch { dim: n, len: b.len() });
    }
    let mut rows: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<GaussianRational> = (0..n).map(|j| g.entry(i, j).clone()).collect();
            r.push(b[i].clone());
            r
        })
        .collect();
    // level[i] = elimination step whose Bareiss scale row i currently carries;
    // pivots[k] = materialized pivot of step k (the (k+1)-st leading minor).
    let mut level = vec![0usize; n];
    let mut pivots: Vec<GaussianRational> = Vec::with_capacity(n);
    let pivot_at = |pivots: &[GaussianRational], step: isize| -> GaussianRational {
        if step < 0 {
            GaussianRational::one()
        } else {
            pivots[step as usize].clone()
        }
    };
    for k in 0..n {
        let materialize = |rows: &mut Vec<Vec<GaussianRational>>,
                           level: &mut Vec<usize>,
                           pivots: &[GaussianRational],
                           i: usize,
                           k: usize| {
            if level[i] == k {
                return;
            }
            let num = pivot_at(pivots, k as isize - 1);
            let den = pivot_at(pivots, level[i] as isize - 1);
            let ratio = &num * &den.inverse().expect("pivots are nonzero");
            for j in k..=n {
                if !rows[i][j].is_zero() {
                    rows[i][j] = &rows[i][j] * &ratio;
                }
            }
            level[i] = k;
        };
        materialize(&mut rows, &mut level, &pivots, k, k);
        let d = rows[k][k].clone();
        if d.is_zero() {
            return Err(LinalgError::SingularMatrix { step: k });
        }
        debug_assert!(d.is_real());
        if d.re.is_negative() {
            return Err(LinalgError::NotPositiveDefinite { step: k });
        }
        let prev_inv = pivot_at(&pivots, k as isize - 1)
            .inverse()
            .expect("pivots are nonzero");
        for i in k + 1..n {
            if rows[i][k].is_zero() {
                continue; // stays at its stale scale, rescaled lazily later
            }
            materialize(&mut rows, &mut level, &pivots, i, k);
            let factor = rows[i][k].clone();
            for j in k + 1..=n {
                if rows[i][j].is_zero() && rows[k][j].is_zero() {
                    continue;
                }
                let num = &(&rows[i][j] * &d) - &(&factor * &rows[k][j]);
                rows[i][j] = &num * &prev_inv;
            }
            rows[i][k] = GaussianRational::zero();
            level[i] = k + 1;
        }
        pivots.push(d);
    }
    // Back substitution is scale invariant row by row.
    back_substitute(
        n,
        Elimination { rows, perm: (0..n).collect() },
    )
}

fn back_substitute(n: usize, elim: Elimination) -> Result<Vec<GaussianRational>, LinalgError> {
    let Elimination { rows, perm } = elim;
    let mut y = vec![GaussianRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rows[i][n].clone();
        for j in i + 1..n {
            if !rows[i][j].is_zero() && !y[j].is_zero() {
                acc -= &(&rows[i][j] * &y[j]);
            }
        }
        let inv = rows[i][i]
            .inverse()
            .ok_or(LinalgError::SingularMatrix { step: i })?;
        y[i] = &acc * &inv;
    }
    let mut x = vec![GaussianRational::zero(); n];
    for (k, &orig) in perm.iter().enumerate() {
        x[orig] = y[k].clone();
    }
    Ok(x)
}

/// Exact squared norm of the orthogonal projection with Gram matrix `G`:
/// `conj-transpose(b) . G^{-1} . b`.
///
/// Requires `G` positive definite; the check rides on the elimination pivots.
pub fn projection_norm_sq(
    g: &HermitianMatrix,
    b: &[GaussianRational],
) -> Result<Rational, LinalgError> {
    let x = solve_positive_definite(g, b)?;
    let mut acc = GaussianRational::zero();
    for (bi, xi) in b.iter().zip(&x) {
        acc += &(&bi.conj() * xi);
    }
    // b* G^{-1} b is real for Hermitian G; exact arithmetic makes that literal.
    assert!(acc.im.is_zero(), "projection norm must be exactly real");
    Ok(acc.re)
}
