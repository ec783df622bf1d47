//! Dense complex matrices: the numeric core of the verification oracle.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;

pub const TOL_EXACT: f64 = 1e-12;
pub const TOL_PHASE: f64 = 1e-10;
pub const TOL_UNITARY: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not unitary")]
    NotUnitary,
}

/// Row-major dense matrix. Rectangular shapes are allowed so isometries can
/// be represented; most operations expect square inputs.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{iθ}`
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[&[C64]]) -> Matrix {
        let r = rows.len();
        let cl = rows.first().map_or(0, |x| x.len());
        let mut m = Matrix::zeros(r, cl);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cl, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Matrix {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn scalar(v: C64) -> Matrix {
        Matrix::diag(&[v])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = *x;
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, k: C64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Matrix, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols) && self.max_diff(other) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.mul(&self.adjoint()).approx_eq(&Matrix::identity(self.rows), tol)
    }

    /// Block matrix `[I 0; 0 self]`.
    pub fn controlled(&self) -> Result<Matrix, MatrixError> {
        if !self.is_unitary(TOL_UNITARY) {
            return Err(MatrixError::NotUnitary);
        }
        let d = self.rows;
        let mut out = Matrix::identity(2 * d);
        for i in 0..d {
            for j in 0..d {
                out[(d + i, d + j)] = self[(i, j)];
            }
        }
        Ok(out)
    }

    /// Comma-separated dump, one row per line, for debugging.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{}{:+}i", self[(i, j)].re, self[(i, j)].im)).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let v = self[(i, j)];
                    format!("{:>7.3}{:+.3}i", v.re, v.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Scalar `c` with `b ≈ c·a`, taken from the largest-magnitude entry of `b`.
pub fn relative_phase(a: &Matrix, b: &Matrix) -> Option<C64> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return None;
    }
    let (mut best, mut idx) = (0.0, 0);
    for (i, v) in b.data.iter().enumerate() {
        if v.norm() > best {
            best = v.norm();
            idx = i;
        }
    }
    let av = a.data[idx];
    if av.norm() < 1e-12 {
        return None;
    }
    let ph = b.data[idx] / av;
    Some(ph / ph.norm())
}

/// Deviation of `a` from `b` after removing the best global phase, or
/// `None` when no unit scalar relates them.
pub fn phase_deviation(a: &Matrix, b: &Matrix) -> Option<f64> {
    let ph = relative_phase(a, b)?;
    Some(a.scale(ph).max_diff(b))
}

/// True iff some unit scalar `c` satisfies `max|a - c·b| ≤ tol`.
pub fn eq_upto_phase(a: &Matrix, b: &Matrix, tol: f64) -> bool {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return false;
    }
    if a.data.iter().all(|x| x.norm() <= tol) && b.data.iter().all(|x| x.norm() <= tol) {
        return true;
    }
    phase_deviation(a, b).is_some_and(|d| d <= tol)
}

/// Basis vector `|bits⟩` on `n` wires, wire 0 most significant.
pub fn basis(n: usize, index: usize) -> Vec<C64> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[index] = c(1.0, 0.0);
    v
}

/// Checks `full·(|b⟩⊗|start⟩) = (target·|b⟩)⊗|end⟩` for every basis state
/// `|b⟩`. Main wires are the most significant ones. Returns the largest
/// deviation after the best global phase (or exact, per `exact`).
pub fn ancilla_deviation(
    full: &Matrix,
    target: &Matrix,
    start: &[bool],
    end: &[bool],
    exact: bool,
) -> Result<f64, MatrixError> {
    let k = start.len();
    if end.len() != k {
        return Err(MatrixError::Dimension("ancilla start/end lengths differ".into()));
    }
    let n_dim = target.dim();
    if full.dim() != n_dim << k {
        return Err(MatrixError::Dimension(format!(
            "full is {}x{}, target {}x{} with {} ancillas",
            full.rows(),
            full.cols(),
            n_dim,
            n_dim,
            k
        )));
    }
    let bits = |a: &[bool]| a.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
    let (s, e) = (bits(start), bits(end));
    let mut induced = Matrix::zeros(n_dim, n_dim);
    let mut leak: f64 = 0.0;
    for col in 0..n_dim {
        let j = (col << k) | s;
        for row in 0..(n_dim << k) {
            let v = full[(row, j)];
            if row & ((1 << k) - 1) == e {
                induced[(row >> k, col)] = v;
            } else {
                leak = leak.max(v.norm());
            }
        }
    }
    let dev = if exact {
        induced.max_diff(target)
    } else {
        phase_deviation(&induced, target).unwrap_or(f64::INFINITY)
    };
    Ok(dev.max(leak))
}

pub fn ancilla_identity_check(
    full: &Matrix,
    target: &Matrix,
    start: &[bool],
    tol: f64,
) -> Result<bool, MatrixError> {
    Ok(ancilla_deviation(full, target, start, start, true)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Matrix {
        Matrix::from_rows(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]])
    }

    #[test]
    fn kron_with_identity() {
        let m = Matrix::identity(2).kron(&x());
        assert_eq!(m[(0, 1)], c(1., 0.));
        assert_eq!(m[(2, 3)], c(1., 0.));
        assert_eq!(m[(0, 2)], c(0., 0.));
    }

    #[test]
    fn controlled_x_truth_table() {
        let cx = x().controlled().unwrap();
        assert_eq!(cx.apply(&basis(2, 0b10)), basis(2, 0b11));
        assert_eq!(cx.apply(&basis(2, 0b11)), basis(2, 0b10));
        assert_eq!(Matrix::identity(2).controlled().unwrap(), Matrix::identity(4));
        let bad = Matrix::diag(&[c(2., 0.), c(1., 0.)]);
        assert_eq!(bad.controlled(), Err(MatrixError::NotUnitary));
    }

    #[test]
    fn phase_equality() {
        let w = Matrix::identity(2).scale(cis(std::f64::consts::FRAC_PI_4));
        assert!(eq_upto_phase(&w, &Matrix::identity(2), 1e-12));
        let z = Matrix::diag(&[c(1., 0.), c(-1., 0.)]);
        assert!(!eq_upto_phase(&x(), &z, 1e-6));
    }

    #[test]
    fn ancilla_check_trivial() {
        let full = x().kron(&Matrix::identity(2));
        assert!(ancilla_identity_check(&full, &x(), &[true], 1e-12).unwrap());
        assert!(ancilla_identity_check(&full, &x(), &[false], 1e-12).unwrap());
        let bad = x().kron(&x());
        assert!(!ancilla_identity_check(&bad, &x(), &[false], 1e-12).unwrap());
    }
}
