//! Small dense complex matrix helpers: just enough linear algebra for
//! MMSE filtering and Gram-matrix bookkeeping at link dimensions.

use crate::LinkError;
use num_complex::Complex64;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    /// Builds a matrix from row-major data; `data.len()` must be
    /// `rows·cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinkError> {
        if data.len() != rows * cols {
            return Err(LinkError::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Complex64 {
        &mut self.data[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self.at(r, c)).collect()
    }

    /// `A x` for a length-`cols` vector.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols, "vector length must match matrix columns");
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self.at(r, c) * x[c];
            }
            out[r] = acc;
        }
        out
    }

    /// Conjugate transpose `A^H`.
    pub fn hermitian_transpose(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).conj();
            }
        }
        out
    }

    /// Gram matrix `A^H A` (`cols × cols`, Hermitian).
    pub fn gram(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.cols);
        for i in 0..self.cols {
            for j in i..self.cols {
                let mut acc = Complex64::new(0.0, 0.0);
                for r in 0..self.rows {
                    acc += self.at(r, i).conj() * self.at(r, j);
                }
                *out.at_mut(i, j) = acc;
                *out.at_mut(j, i) = acc.conj();
            }
        }
        out
    }

    /// `A^H y` for a length-`rows` vector.
    pub fn herm_mul_vec(&self, y: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(y.len(), self.rows, "vector length must match matrix rows");
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for c in 0..self.cols {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..self.rows {
                acc += self.at(r, c).conj() * y[r];
            }
            out[c] = acc;
        }
        out
    }

    /// Returns `s·A` for a real scalar.
    pub fn scaled(&self, s: f64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }
}

/// Solves `A x = b` for Hermitian positive-definite `A` via a Cholesky
/// factorization `A = L L^H`. Fails with [`LinkError::SingularSystem`]
/// when a pivot is not strictly positive (the σ² = 0, rank-deficient case).
pub fn hermitian_solve(a: &CMat, b: &[Complex64]) -> Result<Vec<Complex64>, LinkError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinkError::DimensionMismatch { expected: n, got: a.cols() });
    }
    if b.len() != n {
        return Err(LinkError::DimensionMismatch { expected: n, got: b.len() });
    }
    // Pivot threshold relative to the matrix scale: a mathematically zero
    // pivot computed in floating point lands within a few ulps of zero,
    // not exactly on it.
    let scale = (0..n).map(|i| a.at(i, i).re.abs()).fold(0.0, f64::max);
    let tol = scale * n as f64 * f64::EPSILON;
    let mut l = CMat::zeros(n, n);
    for j in 0..n {
        let mut d = a.at(j, j).re;
        for k in 0..j {
            d -= l.at(j, k).norm_sqr();
        }
        if !(d > tol) || !d.is_finite() {
            return Err(LinkError::SingularSystem);
        }
        let ljj = d.sqrt();
        *l.at_mut(j, j) = Complex64::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut acc = a.at(i, j);
            for k in 0..j {
                acc -= l.at(i, k) * l.at(j, k).conj();
            }
            *l.at_mut(i, j) = acc / ljj;
        }
    }
    // Forward: L w = b.
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut acc = b[i];
        for k in 0..i {
            acc -= l.at(i, k) * w[k];
        }
        w[i] = acc / l.at(i, i);
    }
    // Backward: L^H x = w.
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = w[i];
        for k in (i + 1)..n {
            acc -= l.at(k, i).conj() * x[k];
        }
        x[i] = acc / l.at(i, i);
    }
    Ok(x)
}

/// `‖y − H x‖²`.
pub fn residual_norm_sq(y: &[Complex64], h: &CMat, x: &[Complex64]) -> f64 {
    let hx = h.mul_vec(x);
    y.iter().zip(hx.iter()).map(|(a, b)| (a - b).norm_sqr()).sum()
}
