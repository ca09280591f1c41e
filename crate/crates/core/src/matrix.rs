//! Dense row-major complex matrices and the vector helpers built on them.
//!
//! [`ComplexMatrix`] is the operand type for everything in this crate. It
//! serializes to the shared JSON layout
//! `{"rows": n, "cols": m, "data": [[re, im], ...]}` (row-major) and parsing
//! rejects data of the wrong length or non-finite entries.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Wire form of a matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(value: MatrixJson) -> Result<Self> {
        let data = value.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(value.rows, value.cols, data)
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, checking length and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Parse(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse(format!("entry {pos} is not finite")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    /// Complex matrix from nested rows. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn from_diag(values: &[Complex64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn from_real_diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(values[i], 0.0) } else { ZERO })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Self {
        let c = columns.len();
        let r = columns.first().map_or(0, |col| col.len());
        Self::from_fn(r, c, |i, j| columns[j][i])
    }

    /// Nilpotent upper shift (ones on the superdiagonal).
    pub fn shift(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if j == i + 1 { ONE } else { ZERO })
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

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Side length, or `NonSquare`.
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_c(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    /// Frobenius norm of `H - Hᴴ`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(H + Hᴴ)/2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// `(H - Hᴴ)/(2i)`, so that `H = hermitian_part + i * skew_part`.
    pub fn skew_part(&self) -> Self {
        let n = self.rows;
        let half_over_i = Complex64::new(0.0, -0.5);
        Self::from_fn(n, n, |i, j| (self[(i, j)] - self[(j, i)].conj()) * half_over_i)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul shape mismatch: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// Integer power by repeated multiplication (`T⁰ = I`).
    pub fn powi(&self, k: u32) -> Self {
        let n = self.rows;
        let mut out = Self::identity(n);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨self·x, x⟩`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        inner(&self.mul_vec(x), x)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Assembles a grid of blocks. Panics if shapes do not line up.
    pub fn from_blocks(grid: &[Vec<ComplexMatrix>]) -> Self {
        let row_sizes: Vec<usize> = grid.iter().map(|row| row[0].rows).collect();
        let col_sizes: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let total_r: usize = row_sizes.iter().sum();
        let total_c: usize = col_sizes.iter().sum();
        let mut out = Self::zeros(total_r, total_c);
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, block) in row.iter().enumerate() {
                assert_eq!((block.rows, block.cols), (row_sizes[bi], col_sizes[bj]), "block shape mismatch");
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        out[(r0 + i, c0 + j)] = block[(i, j)];
                    }
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn zip_with(a: &ComplexMatrix, b: &ComplexMatrix, op: impl Fn(Complex64, Complex64) -> Complex64) -> ComplexMatrix {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols), "elementwise shape mismatch");
    ComplexMatrix {
        rows: a.rows,
        cols: a.cols,
        data: a.data.iter().zip(&b.data).map(|(&x, &y)| op(x, y)).collect(),
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// `⟨u, v⟩ = Σ uᵢ·conj(vᵢ)`, linear in the first slot.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    assert_eq!(u.len(), v.len(), "inner product length mismatch");
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalized(v: &[Complex64]) -> Vec<Complex64> {
    let n = vec_norm(v);
    v.iter().map(|z| z / n).collect()
}

pub fn basis_vector(n: usize, k: usize) -> Vec<Complex64> {
    (0..n).map(|i| if i == k { ONE } else { ZERO }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_rejects_bad_length() {
        let m = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(3.5, 0.0), Complex64::new(0.0, 0.0)],
        ]);
        let s = m.to_json();
        assert_eq!(s, r#"{"rows":2,"cols":2,"data":[[1.0,2.0],[0.0,-1.0],[3.5,0.0],[0.0,0.0]]}"#);
        assert_eq!(ComplexMatrix::from_json(&s).unwrap(), m);

        let bad = r#"{"rows":2,"cols":2,"data":[[1.0,0.0]]}"#;
        assert!(matches!(ComplexMatrix::from_json(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn blocks_assemble_in_order() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[2.0, 3.0]]);
        let c = ComplexMatrix::from_real_rows(&[&[4.0], &[5.0]]);
        let d = ComplexMatrix::from_real_rows(&[&[6.0, 7.0], &[8.0, 9.0]]);
        let full = ComplexMatrix::from_blocks(&[vec![a, b], vec![c, d.clone()]]);
        assert_eq!(full.rows(), 3);
        assert_eq!(full[(0, 2)].re, 3.0);
        assert_eq!(full[(2, 0)].re, 5.0);
        assert_eq!(full.submatrix(1, 1, 2, 2), d);
    }

    #[test]
    fn hermitian_and_skew_parts_recombine() {
        let t = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 1.0), Complex64::new(2.0, -3.0)],
            vec![Complex64::new(0.5, 0.0), Complex64::new(-1.0, 2.0)],
        ]);
        let i = Complex64::new(0.0, 1.0);
        let back = &t.hermitian_part() + &t.skew_part().scale_c(i);
        assert!((&back - &t).max_abs() < 1e-15);
        assert!(t.skew_part().hermitian_asymmetry() < 1e-15);
    }
}
