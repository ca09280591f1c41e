//! Portable seeded randomness.
//!
//! Streams come from ChaCha8 keyed by a 64-bit seed, so the same seed yields
//! the same draws on every platform. Normals use Box-Muller rather than a
//! table-driven sampler so the transform is fixed and documented.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{normalized, ComplexMatrix};

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed), spare_normal: None }
    }

    /// Independent child stream, e.g. one per trial or per bound.
    pub fn derive(seed: u64, salt: u64) -> Self {
        Self::new(mix(seed, salt))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.index(items.len())]
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        self.spare_normal = Some(r * s);
        r * c
    }

    /// Complex standard normal, `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Complex64::new(self.normal() * h, self.normal() * h)
    }

    pub fn complex_vector(&mut self, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| self.complex_normal()).collect()
    }

    /// Uniformly distributed point on the complex unit sphere.
    pub fn unit_vector(&mut self, n: usize) -> Vec<Complex64> {
        loop {
            let v = self.complex_vector(n);
            if v.iter().any(|z| z.norm() > 0.0) {
                return normalized(&v);
            }
        }
    }

    /// Ginibre matrix with i.i.d. complex standard normal entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }
}

/// SplitMix64 finalizer over `seed ⊕ salt`.
pub fn mix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a, used to turn stable identifiers into stream salts.
pub fn hash_str(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01B3))
}
