#![allow(dead_code)]

use num_complex::Complex64;
use numrad_core::random::SeededRng;
use numrad_core::{hermitian_eigen, ComplexMatrix};

pub fn dense(t: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..t.rows()).map(|i| (0..t.cols()).map(|j| t[(i, j)]).collect()).collect()
}

/// Eigenvectors of a random Hermitian matrix: a random unitary.
pub fn random_unitary(rng: &mut SeededRng, n: usize) -> ComplexMatrix {
    hermitian_eigen(&rng.ginibre(n, n).hermitian_part()).unwrap().vectors
}

/// `GᴴG` for a Ginibre `G`: positive semidefinite, generically definite.
pub fn random_positive(rng: &mut SeededRng, n: usize) -> ComplexMatrix {
    let g = rng.ginibre(n, n);
    g.adjoint().matmul(&g)
}

/// Real polynomial `c₀I + c₁P + c₂P² + c₃P³` in `P`.
pub fn real_polynomial(p: &ComplexMatrix, coeffs: &[f64]) -> ComplexMatrix {
    let n = p.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut power = ComplexMatrix::identity(n);
    for &c in coeffs {
        out = &out + &power.scale(c);
        power = power.matmul(p);
    }
    out
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
