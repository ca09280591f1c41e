//! Brute-force reference computations for tests.
//!
//! Nothing here shares code with `numrad-core`: matrices are plain
//! `Vec<Vec<Complex64>>`, eigenvalues come from characteristic polynomials,
//! and the numerical radius from a dense angular grid.

use std::f64::consts::TAU;

use num_complex::Complex64;

pub type Dense = Vec<Vec<Complex64>>;

fn dim(a: &Dense) -> usize {
    a.len()
}

fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = dim(a);
    let m = b[0].len();
    let k = b.len();
    let mut c = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for l in 0..k {
            let ail = a[i][l];
            for j in 0..m {
                c[i][j] += ail * b[l][j];
            }
        }
    }
    c
}

/// Coefficients `c_0..=c_n` (monic, `c_n = 1`) of `det(λI − A)` by
/// Faddeev–LeVerrier.
pub fn char_poly(a: &Dense) -> Vec<Complex64> {
    let n = dim(a);
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[n] = Complex64::new(1.0, 0.0);
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c[n - k + 1];
        }
        let am = matmul(a, &next);
        let tr: Complex64 = (0..n).map(|i| am[i][i]).sum();
        c[n - k] = -tr / k as f64;
        m = next;
    }
    c
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

fn poly_eval_with_derivative(c: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &ci in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + ci;
    }
    (p, dp)
}

/// Eigenvalues of a Hermitian matrix as sign-change brackets of its
/// characteristic polynomial on a fine grid, refined by bisection.
/// Repeated roots without a sign change are missed, so only use this on
/// generic (random) inputs.
pub fn hermitian_eigenvalues(h: &Dense) -> Vec<f64> {
    let coeffs: Vec<f64> = char_poly(h).iter().map(|z| z.re).collect();
    let radius = 1.0 + h.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let steps = 200_000;
    let mut roots = Vec::new();
    let mut x0 = -radius;
    let mut p0 = poly_eval(&coeffs, x0);
    for k in 1..=steps {
        let x1 = -radius + 2.0 * radius * k as f64 / steps as f64;
        let p1 = poly_eval(&coeffs, x1);
        if p0 == 0.0 {
            roots.push(x0);
        } else if p0 * p1 < 0.0 {
            let (mut lo, mut hi, mut plo) = (x0, x1, p0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let pm = poly_eval(&coeffs, mid);
                if pm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if plo * pm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    plo = pm;
                }
                if hi - lo <= f64::EPSILON * (1.0 + mid.abs()) {
                    break;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x0 = x1;
        p0 = p1;
    }
    roots
}

fn frobenius(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `max_θ λ_max(H(θ))` over `angles` equispaced angles.
///
/// The characteristic polynomial of `H(θ) = cos θ·Re T − sin θ·Im T` has
/// coefficients that are trigonometric polynomials of degree ≤ n in θ; they
/// are recovered exactly from 2n+1 samples by a discrete Fourier transform,
/// after which each grid angle costs one Newton solve for the top root,
/// warm-started from above using the ‖T‖-Lipschitz bound on λ_max.
pub fn dense_grid_radius(t: &Dense, angles: usize) -> f64 {
    let n = dim(t);
    if n == 0 {
        return 0.0;
    }
    let half = Complex64::new(0.5, 0.0);
    let i_half = Complex64::new(0.0, 0.5);
    // Re T = (T+Tᴴ)/2, Im T = (T−Tᴴ)/(2i)
    let re: Dense = (0..n).map(|i| (0..n).map(|j| half * (t[i][j] + t[j][i].conj())).collect()).collect();
    let im: Dense = (0..n).map(|i| (0..n).map(|j| -i_half * (t[i][j] - t[j][i].conj())).collect()).collect();
    let h_at = |theta: f64| -> Dense {
        let (s, c) = theta.sin_cos();
        (0..n).map(|i| (0..n).map(|j| re[i][j] * c - im[i][j] * s).collect()).collect()
    };

    let m = 2 * n + 1;
    let samples: Vec<Vec<f64>> =
        (0..m).map(|k| char_poly(&h_at(TAU * k as f64 / m as f64)).iter().map(|z| z.re).collect()).collect();
    // fourier[c][f] for coefficient index c, frequency f in 0..=n
    let fourier: Vec<Vec<Complex64>> = (0..=n)
        .map(|c| {
            (0..=n)
                .map(|f| {
                    let sum: Complex64 = (0..m)
                        .map(|k| samples[k][c] * Complex64::from_polar(1.0, -TAU * (f * k) as f64 / m as f64))
                        .sum();
                    sum / m as f64
                })
                .collect()
        })
        .collect();

    let lipschitz = frobenius(t);
    let scale = 1.0 + lipschitz;
    let step = TAU / angles as f64;
    let mut coeffs = vec![0.0; n + 1];
    let mut powers = vec![Complex64::new(1.0, 0.0); n + 1];
    let mut root = lipschitz;
    let mut best = f64::NEG_INFINITY;
    for k in 0..angles {
        let theta = step * k as f64;
        let z = Complex64::from_polar(1.0, theta);
        for f in 1..=n {
            powers[f] = powers[f - 1] * z;
        }
        for (c, coeff) in coeffs.iter_mut().enumerate() {
            let row = &fourier[c];
            let mut acc = row[0].re;
            for f in 1..=n {
                acc += 2.0 * (row[f] * powers[f]).re;
            }
            *coeff = acc;
        }
        coeffs[n] = 1.0;
        // Start above the top root: λ_max moves by at most ‖T‖·Δθ.
        let mut x = if k == 0 { lipschitz + 1e-12 } else { root + 1.5 * lipschitz * step + 1e-12 * scale };
        for _ in 0..100 {
            let (p, dp) = poly_eval_with_derivative(&coeffs, x);
            if dp <= 0.0 {
                break;
            }
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 * scale {
                break;
            }
        }
        root = x;
        best = best.max(x);
    }
    best
}

/// Largest `‖Tx‖` over `samples` pseudo-random unit vectors: a lower bound
/// on the operator norm.
pub fn monte_carlo_norm(t: &Dense, samples: usize, seed: u64) -> f64 {
    let n = dim(t);
    let mut rng = XorShift(seed.wrapping_mul(0x2545_F491_4F6C_DD1D) | 1);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let x: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.gaussian(), rng.gaussian())).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tx: f64 = (0..n).map(|i| (0..n).map(|j| t[i][j] * x[j]).sum::<Complex64>().norm_sqr()).sum::<f64>().sqrt();
        best = best.max(tx / norm);
    }
    best
}

/// xorshift64* — deliberately unrelated to the generator under test.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    fn uniform(&mut self) -> f64 {
        ((self.next() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    fn gaussian(&mut self) -> f64 {
        (-2.0 * self.uniform().ln()).sqrt() * (TAU * self.uniform()).cos()
    }
}
