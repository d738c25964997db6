//! Dense matrices over a division ring.
//!
//! Column vectors are a right module: scalars act on columns from the right,
//! and row operations during elimination multiply from the left. The same
//! elimination code serves quaternionic and complex matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

/// Relative pivot threshold: pivots below `DEFAULT_PIVOT_TOL × max|entry|`
/// count as zero.
pub const DEFAULT_PIVOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type QMatrix = Matrix<Quaternion>;
pub type CMatrix = Matrix<Complex64>;

impl<S: Scalar> Matrix<S> {
    /// Row-major constructor.
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows<R: AsRef<[S]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "from_rows",
                    left: (rows.len(), cols),
                    right: (1, r.len()),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Single-column matrix.
    pub fn column_vector(entries: &[S]) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    /// Single-row matrix.
    pub fn row_vector(entries: &[S]) -> Self {
        Self {
            rows: 1,
            cols: entries.len(),
            data: entries.to_vec(),
        }
    }

    /// Places the given columns side by side.
    pub fn from_columns(columns: &[Matrix<S>]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.rows);
        let mut out = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.cols != 1 || c.rows != rows {
                return Err(Error::DimensionMismatch {
                    op: "from_columns",
                    left: (rows, 1),
                    right: c.shape(),
                });
            }
            for i in 0..rows {
                out[(i, j)] = c[(i, 0)];
            }
        }
        Ok(out)
    }

    /// Stacks the given rows on top of each other.
    pub fn from_row_blocks(rows: &[Matrix<S>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.cols);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.rows != 1 || r.cols != cols {
                return Err(Error::DimensionMismatch {
                    op: "from_row_blocks",
                    left: (1, cols),
                    right: r.shape(),
                });
            }
            data.extend_from_slice(&r.data);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Self {
        Self::row_vector(&self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn column(&self, j: usize) -> Self {
        Self::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// `entry(i, j) = Σ_k self(i, k) · rhs(k, j)`, products in that order.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == S::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * rhs[(k, j)];
                    let e = &mut out[(i, j)];
                    *e = *e + prod;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, op: &'static str, f: impl Fn(S, S) -> S) -> Result<Self> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(S) -> S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    /// `s · self`, the scalar acting from the left on every entry.
    pub fn scale_left(&self, s: S) -> Self {
        self.map(|a| s * a)
    }

    /// `self · s`, the scalar acting from the right on every entry.
    pub fn scale_right(&self, s: S) -> Self {
        self.map(|a| a * s)
    }

    /// Entrywise transpose. Over the quaternions `(MN)ᵀ ≠ NᵀMᵀ` in general.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose `M*`; satisfies `(MN)* = N*M*`.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `self^k` for square matrices.
    pub fn pow(&self, k: usize) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Self::identity(n);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|a| a.modulus()).fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_norm())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|a| a.is_finite())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn pivot_row(&self, col: usize, from: usize) -> (usize, f64) {
        (from..self.rows)
            .map(|r| (r, self[(r, col)].modulus()))
            .fold((from, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    /// Rank with the default pivot threshold.
    pub fn rank(&self) -> usize {
        self.rank_with_tol(DEFAULT_PIVOT_TOL)
    }

    /// Rank by row echelon reduction with partial pivoting. Row operations
    /// are left multiplications, so the count equals the maximal number of
    /// right-independent columns.
    pub fn rank_with_tol(&self, pivot_tol: f64) -> usize {
        let scale = self.max_norm();
        if scale == 0.0 || !scale.is_finite() {
            return 0;
        }
        let threshold = pivot_tol * scale;
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let (p, mag) = a.pivot_row(col, rank);
            if mag <= threshold {
                continue;
            }
            a.swap_rows(rank, p);
            let pinv = a[(rank, col)].try_inv().expect("pivot above threshold");
            for j in col..a.cols {
                a[(rank, j)] = pinv * a[(rank, j)];
            }
            for i in rank + 1..a.rows {
                let l = a[(i, col)];
                if l == S::zero() {
                    continue;
                }
                for j in col..a.cols {
                    let t = l * a[(rank, j)];
                    a[(i, j)] = a[(i, j)] - t;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Solves `self · X = rhs` with the default pivot threshold.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.solve_with_tol(rhs, DEFAULT_PIVOT_TOL)
    }

    /// Gauss-Jordan elimination with partial pivoting by largest modulus.
    /// Each pivot row is left-divided by its pivot, so the unknowns in `X`
    /// act on the columns of `self` from the right.
    pub fn solve_with_tol(&self, rhs: &Self, pivot_tol: f64) -> Result<Self> {
        let n = self.require_square()?;
        if rhs.rows != n {
            return Err(Error::DimensionMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let scale = self.max_norm();
        let singular = || Error::Singular {
            rank: self.rank_with_tol(pivot_tol),
            size: n,
        };
        if n > 0 && (scale == 0.0 || !scale.is_finite()) {
            return Err(singular());
        }
        let threshold = pivot_tol * scale;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for p in 0..n {
            let (r, mag) = a.pivot_row(p, p);
            if mag <= threshold {
                return Err(singular());
            }
            a.swap_rows(p, r);
            b.swap_rows(p, r);
            let pinv = a[(p, p)].try_inv().ok_or_else(singular)?;
            for j in p..n {
                a[(p, j)] = pinv * a[(p, j)];
            }
            for j in 0..b.cols {
                b[(p, j)] = pinv * b[(p, j)];
            }
            for i in 0..n {
                if i == p {
                    continue;
                }
                let l = a[(i, p)];
                if l == S::zero() {
                    continue;
                }
                for j in p..n {
                    let t = l * a[(p, j)];
                    a[(i, j)] = a[(i, j)] - t;
                }
                for j in 0..b.cols {
                    let t = l * b[(p, j)];
                    b[(i, j)] = b[(i, j)] - t;
                }
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with_tol(DEFAULT_PIVOT_TOL)
    }

    pub fn inverse_with_tol(&self, pivot_tol: f64) -> Result<Self> {
        let n = self.require_square()?;
        self.solve_with_tol(&Self::identity(n), pivot_tol)
    }
}

impl QMatrix {
    /// Complex adjoint embedding `Φ`.
    ///
    /// Each entry `q = z₁ + z₂·j` (with `z₁ = w + x·i`, `z₂ = y + z·i`) becomes
    /// the block `[[z₁, z₂], [-conj(z₂), conj(z₁)]]`. `Φ` is a ring and
    /// `*`-homomorphism; right eigenvalue classes of `M` show up as conjugate
    /// pairs of eigenvalues of `Φ(M)`.
    pub fn complex_adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(2 * self.rows, 2 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let q = self[(i, j)];
                let z1 = Complex64::new(q.w, q.x);
                let z2 = Complex64::new(q.y, q.z);
                out[(2 * i, 2 * j)] = z1;
                out[(2 * i, 2 * j + 1)] = z2;
                out[(2 * i + 1, 2 * j)] = -z2.conj();
                out[(2 * i + 1, 2 * j + 1)] = z1.conj();
            }
        }
        out
    }

    /// Inverse of [`QMatrix::complex_adjoint`], reading the first row of each
    /// 2x2 block.
    pub fn from_complex_adjoint(z: &CMatrix) -> Result<Self> {
        if !z.rows.is_multiple_of(2) || !z.cols.is_multiple_of(2) {
            return Err(Error::InvalidArgument("complex adjoint must have even dimensions"));
        }
        Ok(Self::from_fn(z.rows / 2, z.cols / 2, |i, j| {
            let z1 = z[(2 * i, 2 * j)];
            let z2 = z[(2 * i, 2 * j + 1)];
            Quaternion::new(z1.re, z1.im, z2.re, z2.im)
        }))
    }

    /// Real diagonal matrix.
    pub fn real_identity_scaled(n: usize, s: f64) -> Self {
        Self::identity(n).map(|q| q * s)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use `matmul`/`try_add`/`try_sub`
// for fallible versions.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|a| -a)
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                let e = &self.data[i * self.cols + j];
                match f.precision() {
                    Some(p) => write!(f, "{:.*}", p, e)?,
                    None => write!(f, "{}", e)?,
                }
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
