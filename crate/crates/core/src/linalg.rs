//! Dense complex matrices sized for desk-scale representation theory.
//!
//! Everything here is deterministic: fixed loop orders, no pivoting
//! heuristics beyond partial pivoting by magnitude. Matrices stay small
//! (at most a few hundred rows), so the plain O(n^3) algorithms are fine
//! and keep the crate `no_std`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![C_ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C_ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = CMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// Real matrix entry helper used by the hand-written representations.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CMatrix::from_fn(rows, cols, |i, j| Complex64::new(entries[i * cols + j], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C_ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Kronecker product, row-major convention: `(A (x) B)[(i*p+k, j*q+l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (p, q) = (other.rows, other.cols);
        let mut out = CMatrix::zeros(self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == C_ZERO {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        out[(i * p + k, j * q + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        let mut t = C_ZERO;
        for i in 0..self.rows.min(self.cols) {
            t += self[(i, i)];
        }
        t
    }

    /// Frobenius inner product `tr(self^* other)`.
    pub fn frobenius_inner(&self, other: &CMatrix) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut s = C_ZERO;
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            s += a.conj() * b;
        }
        s
    }

    /// Largest entry magnitude (the residual norm used throughout).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn diff_norm(&self, other: &CMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.is_square() && self.diff_norm(&CMatrix::identity(self.rows)) <= tol
    }

    /// In-place addition of `s * other`.
    pub fn axpy(&mut self, s: Complex64, other: &CMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += s * *b;
        }
    }

    /// Solve `self * x = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &CMatrix) -> Result<CMatrix> {
        assert!(self.is_square());
        assert_eq!(self.rows, rhs.rows);
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in col + 1..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-13 {
                return Err(Error::Singular("linear solve: pivot below 1e-13".into()));
            }
            if piv != col {
                for j in 0..n {
                    self::swap_entries(&mut a, (piv, j), (col, j));
                }
                for j in 0..m {
                    self::swap_entries(&mut b, (piv, j), (col, j));
                }
            }
            let d = a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / d;
                if f == C_ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
                for j in 0..m {
                    let v = b[(col, j)];
                    b[(r, j)] -= f * v;
                }
            }
        }
        let mut x = CMatrix::zeros(n, m);
        for col in 0..m {
            for r in (0..n).rev() {
                let mut s = b[(r, col)];
                for j in r + 1..n {
                    s -= a[(r, j)] * x[(j, col)];
                }
                x[(r, col)] = s / a[(r, r)];
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        self.solve(&CMatrix::identity(self.rows))
    }

    /// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
    /// ascending order. Only the values are needed by the callers.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        // symmetrize defensively; inputs are Hermitian up to rounding
        for i in 0..n {
            for j in 0..n {
                let avg = (a[(i, j)] + a[(j, i)].conj()) * Complex64::new(0.5, 0.0);
                a[(i, j)] = avg;
                a[(j, i)] = avg.conj();
            }
        }
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off = off.max(a[(i, j)].norm());
                }
            }
            if off < 1e-14 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq.norm() < 1e-300 {
                        continue;
                    }
                    // unitary 2x2 rotation diag(1, phase) * Givens
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let abs = apq.norm();
                    let phase = apq / Complex64::new(abs, 0.0);
                    let theta = 0.5 * Float::atan2(2.0 * abs, app - aqq);
                    let c = Float::cos(theta);
                    let s = Float::sin(theta);
                    let sp = phase * Complex64::new(s, 0.0);
                    // A <- R^* A R with R = [[c, -sp],[conj(sp_bar)... ]] applied on (p,q)
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c + akq * sp.conj();
                        a[(k, q)] = -akp * sp + akq * c;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c + aqk * sp;
                        a[(q, k)] = -apk * sp.conj() + aqk * c;
                    }
                }
            }
        }
        let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
        vals
    }

    /// Singular values, ascending (square roots of the eigenvalues of `A^* A`).
    pub fn singular_values(&self) -> Vec<f64> {
        let gram = self.adjoint().mul(self);
        gram.hermitian_eigenvalues()
            .into_iter()
            .map(|l| Float::sqrt(l.max(0.0)))
            .collect()
    }

    /// Rank by singular value cutoff.
    pub fn rank(&self, cutoff: f64) -> usize {
        self.singular_values().into_iter().filter(|s| *s > cutoff).count()
    }

    pub fn smallest_singular_value(&self) -> f64 {
        self.singular_values().first().copied().unwrap_or(0.0)
    }
}

fn swap_entries(m: &mut CMatrix, a: (usize, usize), b: (usize, usize)) {
    let t = m[a];
    m[a] = m[b];
    m[b] = t;
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Gram-Schmidt over the Frobenius inner product. Returns the orthonormal
/// survivors; candidates whose residual norm falls below `cutoff` are
/// dropped as linearly dependent.
pub fn orthonormalize(candidates: &[CMatrix], cutoff: f64) -> Vec<CMatrix> {
    let mut basis: Vec<CMatrix> = Vec::new();
    for cand in candidates {
        let mut v = cand.clone();
        for b in &basis {
            let coeff = b.frobenius_inner(&v);
            v.axpy(-coeff, b);
        }
        let norm = Float::sqrt(v.frobenius_inner(&v).re.max(0.0));
        if norm > cutoff {
            basis.push(v.scale(Complex64::new(1.0 / norm, 0.0)));
        }
    }
    basis
}
