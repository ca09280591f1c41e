//! Dense complex linear algebra for small matrices.
//!
//! Hermitian problems go through a cyclic complex Jacobi eigensolver; the
//! spectral functions (norms, `|T|`, real powers, polar factors, the Aluthge
//! transform) are built on top of it. General eigenvalues use a Householder
//! Hessenberg reduction followed by Wilkinson-shifted complex QR.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{inner, vec_norm, ComplexMatrix, ONE, ZERO};

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_TOL: f64 = 1e-13;
const HERMITIAN_TOL: f64 = 1e-10;
const QR_DEFLATION_TOL: f64 = 1e-13;
const QR_ITERS_PER_DIM: usize = 200;
/// Eigenvalues below `-NEGATIVE_FLOOR·(1+‖P‖)` make a matrix non-positive.
pub const NEGATIVE_FLOOR: f64 = 1e-8;

/// Eigendecomposition `H = V·diag(values)·Vᴴ` with `values` ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn max_value(&self) -> f64 {
        *self.values.last().unwrap_or(&0.0)
    }

    pub fn min_value(&self) -> f64 {
        *self.values.first().unwrap_or(&0.0)
    }

    /// Largest absolute eigenvalue, i.e. the operator norm of `H`.
    pub fn spectral_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `V·diag(φ(λ))·Vᴴ`, Hermitian by construction.
    pub fn apply(&self, phi: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&v| phi(v)).collect();
        reconstruct(&self.vectors, &mapped)
    }

    /// `⟨φ(H)x, x⟩` without forming `φ(H)`.
    pub fn quadratic_form(&self, x: &[Complex64], phi: impl Fn(f64) -> f64) -> f64 {
        let n = self.values.len();
        (0..n)
            .map(|k| {
                let coeff: Complex64 = (0..n).map(|i| self.vectors[(i, k)].conj() * x[i]).sum();
                phi(self.values[k]) * coeff.norm_sqr()
            })
            .sum()
    }
}

/// Unitary and positive factors of `T = U·|T|`.
#[derive(Debug, Clone)]
pub struct PolarParts {
    pub unitary: ComplexMatrix,
    pub modulus: ComplexMatrix,
}

/// `t ↦ t^exponent` on `[0, ∞)`, with `0⁰ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFunction {
    exponent: f64,
}

impl PowerFunction {
    pub fn new(exponent: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent >= 0.0) {
            return Err(Error::InvalidExponent(format!("power function exponent {exponent} must be >= 0")));
        }
        Ok(Self { exponent })
    }

    /// The pair `(t^α, t^{1-α})`, whose product is `t`.
    pub fn complementary_pair(alpha: f64) -> Result<(Self, Self)> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameters(format!("alpha {alpha} must lie in [0, 1]")));
        }
        Ok((Self::new(alpha)?, Self::new(1.0 - alpha)?))
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn eval(&self, t: f64) -> f64 {
        t.max(0.0).powf(self.exponent)
    }

    /// Raises the function to a real power: `(t^a)^k = t^{ak}`.
    pub fn pow(&self, k: f64) -> Self {
        Self { exponent: self.exponent * k }
    }
}

/// Checks that `f·g = t`, i.e. the exponents sum to one.
pub fn check_complementary(f: &PowerFunction, g: &PowerFunction) -> Result<()> {
    let sum = f.exponent() + g.exponent();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameters(format!("f and g exponents must sum to 1, got {sum}")));
    }
    Ok(())
}

fn reconstruct(vectors: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lam) in values.iter().enumerate() {
        if lam == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = vectors[(i, k)] * lam;
            for j in 0..n {
                out[(i, j)] += vik * vectors[(j, k)].conj();
            }
        }
    }
    out.hermitian_part()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Inputs whose Frobenius asymmetry is within `1e-10·(1+‖H‖_F)` are
/// symmetrized first; anything further from Hermitian is rejected.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = h.square_dim()?;
    let fro = h.frobenius_norm();
    let asym = h.hermitian_asymmetry();
    let limit = HERMITIAN_TOL * (1.0 + fro);
    if asym > limit {
        return Err(Error::NotHermitian { asymmetry: asym, limit });
    }
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let target = JACOBI_OFF_TOL * fro;

    let mut converged = n <= 1;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= target || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off > target {
            return Err(Error::NoConvergence { method: "jacobi", residual: off });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`: `A ← GᴴAG`, `V ← VG` with
/// `G = diag(1, ū)·[[c, s], [-s, c]]` and `u` the phase of `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let h = a[(p, q)];
    let habs = h.norm();
    if habs < f64::MIN_POSITIVE {
        return;
    }
    let n = a.rows();
    let u_bar = (h / habs).conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * habs);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let g00 = Complex64::new(c, 0.0);
    let g01 = Complex64::new(s, 0.0);
    let g10 = -u_bar * s;
    let g11 = u_bar * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g00 + akq * g10;
        a[(k, q)] = akp * g01 + akq * g11;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g00.conj() * apk + g10.conj() * aqk;
        a[(q, k)] = g01.conj() * apk + g11.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(app - t * habs, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * habs, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g00 + vkq * g10;
        v[(k, q)] = vkp * g01 + vkq * g11;
    }
}

/// Eigendecomposition of `TᴴT`.
fn gram_eigen(t: &ComplexMatrix) -> Result<HermitianEigen> {
    hermitian_eigen(&t.adjoint().matmul(t))
}

/// Largest singular value `‖T‖`.
pub fn operator_norm(t: &ComplexMatrix) -> Result<f64> {
    if t.rows() == 0 || t.cols() == 0 {
        return Ok(0.0);
    }
    // The smaller Gram matrix has the same nonzero spectrum.
    let gram = if t.rows() < t.cols() { t.matmul(&t.adjoint()) } else { t.adjoint().matmul(t) };
    Ok(hermitian_eigen(&gram)?.max_value().max(0.0).sqrt())
}

/// Smallest singular value `ℓ(T) = inf ‖Tx‖` over unit `x`.
///
/// Computed from `TᴴT`, so values near zero carry an absolute error of order
/// `sqrt(ε)·‖T‖`.
pub fn min_gauge(t: &ComplexMatrix) -> Result<f64> {
    t.square_dim()?;
    Ok(gram_eigen(t)?.min_value().max(0.0).sqrt())
}

/// Positivity check: Hermitian with no eigenvalue below the floor.
pub fn positive_eigen(p: &ComplexMatrix) -> Result<HermitianEigen> {
    let eig = hermitian_eigen(p).map_err(|e| match e {
        Error::NotHermitian { asymmetry, .. } => Error::NotPositive(format!("asymmetry {asymmetry:.3e}")),
        other => other,
    })?;
    let floor = -NEGATIVE_FLOOR * (1.0 + eig.spectral_norm());
    if eig.min_value() < floor {
        return Err(Error::NegativeEigenvalue { value: eig.min_value() });
    }
    Ok(eig)
}

pub fn is_positive(p: &ComplexMatrix) -> bool {
    positive_eigen(p).is_ok()
}

/// `f(P)` for positive `P` and `f(t) = t^a`; small negative eigenvalues are
/// clamped to zero.
pub fn positive_power(p: &ComplexMatrix, f: PowerFunction) -> Result<ComplexMatrix> {
    let eig = positive_eigen(p)?;
    Ok(eig.apply(|lam| f.eval(lam)))
}

/// `|T| = (TᴴT)^{1/2}`.
pub fn absolute_value(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    t.square_dim()?;
    Ok(gram_eigen(t)?.apply(|lam| lam.max(0.0).sqrt()))
}

/// `|T|^{2a}` computed as `(TᴴT)^a`, avoiding a second square root.
pub fn modulus_power(t: &ComplexMatrix, a: f64) -> Result<ComplexMatrix> {
    t.square_dim()?;
    let f = PowerFunction::new(a)?;
    Ok(gram_eigen(t)?.apply(|lam| f.eval(lam)))
}

struct PolarWork {
    parts: PolarParts,
    gram: HermitianEigen,
}

fn polar_work(t: &ComplexMatrix) -> Result<PolarWork> {
    let n = t.square_dim()?;
    let gram = gram_eigen(t)?;
    let lam_max = gram.max_value().max(0.0);
    // ‖T v_i‖ keeps tiny singular values accurate; √λ_i would carry an
    // error of order √ε·‖T‖.
    let sigma: Vec<f64> = (0..n).map(|i| vec_norm(&t.mul_vec(&gram.vectors.column(i)))).collect();
    let modulus = reconstruct(&gram.vectors, &sigma);

    // Range directions, largest singular value first.
    let mut range: Vec<usize> = (0..n).filter(|&i| lam_max > 0.0 && gram.values[i] > 1e-13 * lam_max).collect();
    range.reverse();
    let mut kernel: Vec<usize> = (0..n).filter(|i| !range.contains(i)).collect();

    let mut left: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(n);
    for &i in &range {
        let vi = gram.vectors.column(i);
        let ui: Vec<Complex64> = t.mul_vec(&vi).into_iter().map(|z| z / sigma[i]).collect();
        match orthonormalize_against(&ui, &left, 1e-8) {
            Some(u) => {
                pairs.push((left.len(), i));
                left.push(u);
            }
            None => kernel.push(i),
        }
    }
    kernel.sort_unstable();
    // Kernel of |T| maps onto ran(T)^⊥, both in index order. While m
    // directions are missing some e_k keeps a residual of at least √(m/n), so
    // the 1/√(2n) cut never starves and keeps Gram-Schmidt well conditioned.
    let cut = (0.5 / n as f64).sqrt();
    let mut completion = 0;
    for &i in &kernel {
        while completion < n {
            let e: Vec<Complex64> = (0..n).map(|k| if k == completion { ONE } else { ZERO }).collect();
            completion += 1;
            if let Some(u) = orthonormalize_against(&e, &left, cut) {
                pairs.push((left.len(), i));
                left.push(u);
                break;
            }
        }
    }
    debug_assert_eq!(pairs.len(), n);

    let mut unitary = ComplexMatrix::zeros(n, n);
    for &(li, vi) in &pairs {
        for r in 0..n {
            let ur = left[li][r];
            for c in 0..n {
                unitary[(r, c)] += ur * gram.vectors[(c, vi)].conj();
            }
        }
    }
    Ok(PolarWork { parts: PolarParts { unitary, modulus }, gram })
}

/// Two passes of modified Gram-Schmidt; `None` if less than `keep` of the
/// norm of `x` survives the projection.
fn orthonormalize_against(x: &[Complex64], basis: &[Vec<Complex64>], keep: f64) -> Option<Vec<Complex64>> {
    let start = vec_norm(x);
    if start == 0.0 {
        return None;
    }
    let mut w = x.to_vec();
    for _ in 0..2 {
        for b in basis {
            let proj = inner(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
    }
    let norm = vec_norm(&w);
    if norm <= keep * start {
        return None;
    }
    Some(w.into_iter().map(|z| z / norm).collect())
}

/// Polar decomposition `T = U·|T|`.
///
/// For singular `T` the unitary factor is completed by sending the kernel
/// eigenvectors of `|T|` (ascending eigenvalue order) to the orthonormal
/// complement of `ran(T)` obtained by Gram-Schmidt over the standard basis in
/// index order.
pub fn polar(t: &ComplexMatrix) -> Result<PolarParts> {
    Ok(polar_work(t)?.parts)
}

/// Aluthge transform `|T|^{1/2}·U·|T|^{1/2}`.
pub fn aluthge(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    let work = polar_work(t)?;
    let root = work.gram.apply(|lam| lam.max(0.0).powf(0.25));
    Ok(root.matmul(&work.parts.unitary).matmul(&root))
}

/// Eigenvalues of a general square matrix (Hessenberg reduction followed by
/// shifted QR). Order is the deflation order.
pub fn eigenvalues(t: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = t.square_dim()?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = t.clone();
    hessenberg_in_place(&mut h);
    hessenberg_qr(h)
}

/// `r(T) = max |λ|` over the spectrum.
pub fn spectral_radius(t: &ComplexMatrix) -> Result<f64> {
    Ok(eigenvalues(t)?.iter().fold(0.0, |m, z| m.max(z.norm())))
}

fn hessenberg_in_place(h: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        let tail = vec_norm(&x[1..]);
        if tail == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
        let alpha = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm = vec_norm(&v);
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // Left: rows k+1.. ← (I - 2vvᴴ)·rows
        for j in 0..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= v[i] * dot * 2.0;
            }
        }
        // Right: cols k+1.. ← cols·(I - 2vvᴴ)
        for i in 0..n {
            let dot: Complex64 = (0..v.len()).map(|j| h[(i, k + 1 + j)] * v[j]).sum();
            for j in 0..v.len() {
                h[(i, k + 1 + j)] -= dot * v[j].conj() * 2.0;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

fn hessenberg_qr(mut h: ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let scale = h.frobenius_norm();
    let mut eig = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter_since_deflation = 0usize;
    let mut total = 0usize;
    let cap = QR_ITERS_PER_DIM * n;

    loop {
        if hi == 0 {
            eig.push(h[(0, 0)]);
            break;
        }
        // Find the start of the active unreduced block.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= QR_DEFLATION_TOL * diag {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig.push(h[(hi, hi)]);
            hi -= 1;
            iter_since_deflation = 0;
            continue;
        }
        total += 1;
        iter_since_deflation += 1;
        if total > cap {
            let residual = (1..=hi).map(|i| h[(i, i - 1)].norm()).fold(0.0, f64::max);
            return Err(Error::NoConvergence { method: "hessenberg-qr", residual });
        }

        let shift = if iter_since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75, 0.4) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for i in lo..=hi {
            h[(i, i)] -= shift;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let g = if r == 0.0 {
                [ONE, ZERO, ZERO, ONE]
            } else {
                [x.conj() / r, y.conj() / r, -y / r, x / r]
            };
            for j in k..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = g[0] * a + g[1] * b;
                h[(k + 1, j)] = g[2] * a + g[3] * b;
            }
            rotations.push(g);
        }
        for (offset, g) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(hi) {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * g[0].conj() + b * g[1].conj();
                h[(i, k + 1)] = a * g[2].conj() + b * g[3].conj();
            }
        }
        for i in lo..=hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_eigen_is_sorted_permutation() {
        let h = ComplexMatrix::from_real_diag(&[3.0, -1.0]);
        let eig = hermitian_eigen(&h).unwrap();
        assert_eq!(eig.values, vec![-1.0, 3.0]);
        assert_eq!(eig.vectors[(1, 0)], ONE);
        assert_eq!(eig.vectors[(0, 1)], ONE);
    }

    #[test]
    fn pauli_x_spectrum() {
        let h = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let eig = hermitian_eigen(&h).unwrap();
        assert_abs_diff_eq!(eig.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let t = ComplexMatrix::shift(2);
        assert!(matches!(hermitian_eigen(&t), Err(Error::NotHermitian { .. })));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(hermitian_eigen(&r), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            vec![c(1.0, 1.0), c(-1.0, 0.0), c(0.3, 0.0)],
            vec![c(0.0, -0.5), c(0.3, 0.0), c(0.5, 0.0)],
        ]);
        let eig = hermitian_eigen(&h).unwrap();
        let back = eig.apply(|l| l);
        assert!((&back - &h).max_abs() < 1e-12);
        let vhv = eig.vectors.adjoint().matmul(&eig.vectors);
        assert!((&vhv - &ComplexMatrix::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn norms_of_shift() {
        let j = ComplexMatrix::shift(2);
        assert_abs_diff_eq!(operator_norm(&j).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(min_gauge(&j).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(operator_norm(&ComplexMatrix::identity(4)).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(min_gauge(&ComplexMatrix::from_real_diag(&[2.0, 5.0])).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(operator_norm(&ComplexMatrix::zeros(0, 0)).unwrap(), 0.0);
    }

    #[test]
    fn absolute_value_of_shift() {
        let m = absolute_value(&ComplexMatrix::shift(2)).unwrap();
        assert!((&m - &ComplexMatrix::from_real_diag(&[0.0, 1.0])).max_abs() < 1e-15);
    }

    #[test]
    fn positive_power_cases() {
        let p = ComplexMatrix::from_real_diag(&[4.0, 9.0]);
        let half = positive_power(&p, PowerFunction::new(0.5).unwrap()).unwrap();
        assert!((&half - &ComplexMatrix::from_real_diag(&[2.0, 3.0])).max_abs() < 1e-14);
        let zero = positive_power(&ComplexMatrix::from_real_diag(&[0.0, 2.0]), PowerFunction::new(0.0).unwrap()).unwrap();
        assert!((&zero - &ComplexMatrix::identity(2)).max_abs() < 1e-15);
        let neg = ComplexMatrix::from_real_diag(&[-1.0, 2.0]);
        assert!(matches!(
            positive_power(&neg, PowerFunction::new(0.5).unwrap()),
            Err(Error::NegativeEigenvalue { .. })
        ));
        assert!(PowerFunction::new(-0.1).is_err());
    }

    #[test]
    fn polar_of_shift_uses_index_order_completion() {
        let parts = polar(&ComplexMatrix::shift(2)).unwrap();
        assert!((&parts.modulus - &ComplexMatrix::from_real_diag(&[0.0, 1.0])).max_abs() < 1e-15);
        let swap = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!((&parts.unitary - &swap).max_abs() < 1e-15);
    }

    #[test]
    fn polar_scalar_and_unitary() {
        let parts = polar(&ComplexMatrix::from_real_rows(&[&[-2.0]])).unwrap();
        assert_abs_diff_eq!(parts.unitary[(0, 0)].re, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(parts.modulus[(0, 0)].re, 2.0, epsilon = 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u0 = ComplexMatrix::from_rows(&[vec![c(s, 0.0), c(0.0, s)], vec![c(0.0, s), c(s, 0.0)]]);
        let parts = polar(&u0).unwrap();
        assert!((&parts.unitary - &u0).max_abs() < 1e-14);
        assert!((&parts.modulus - &ComplexMatrix::identity(2)).max_abs() < 1e-14);
    }

    #[test]
    fn polar_of_zero_is_identity_completion() {
        let parts = polar(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert!((&parts.unitary - &ComplexMatrix::identity(3)).max_abs() < 1e-15);
        assert!(parts.modulus.is_zero());
    }

    #[test]
    fn aluthge_cases() {
        assert!(aluthge(&ComplexMatrix::shift(2)).unwrap().max_abs() < 1e-15);
        let d = ComplexMatrix::from_diag(&[c(0.0, 2.0), c(1.0, 0.0)]);
        assert!((&aluthge(&d).unwrap() - &d).max_abs() < 1e-12);
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, -3.0]]);
        assert!((&aluthge(&h).unwrap() - &h).max_abs() < 1e-12);
    }

    #[test]
    fn spectral_radius_cases() {
        for n in 1..8 {
            assert!(spectral_radius(&ComplexMatrix::shift(n)).unwrap() < 1e-8);
        }
        let d = ComplexMatrix::from_diag(&[c(1.0, 1.0), c(3.0, 0.0)]);
        assert_abs_diff_eq!(spectral_radius(&d).unwrap(), 3.0, epsilon = 1e-12);
        let companion = ComplexMatrix::from_real_rows(&[&[0.0, 0.0, 8.0], &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert_abs_diff_eq!(spectral_radius(&companion).unwrap(), 2.0, epsilon = 1e-8);
    }

    #[test]
    fn lower_shift_spectral_radius_is_small() {
        // Lower shifts are already Hessenberg with zero diagonal; exercises the
        // exceptional shift path. Defective spectra only resolve to ε^{1/n}.
        let lower = ComplexMatrix::shift(2).transpose();
        assert!(spectral_radius(&lower).unwrap() < 1e-7);
    }

    #[test]
    fn general_eigenvalues_of_rotation() {
        let r = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let mut ev = eigenvalues(&r).unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert_abs_diff_eq!(ev[0].im, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1].im, 1.0, epsilon = 1e-12);
    }
}
