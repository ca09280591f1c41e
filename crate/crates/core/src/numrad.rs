//! Certified numerical radius.
//!
//! For each angle θ the largest eigenvalue `f(θ)` of
//! `H(θ) = (e^{iθ}T + e^{-iθ}Tᴴ)/2` is the support function of the numerical
//! range `W(T)` in direction `e^{-iθ}`, and `w(T) = max_θ f(θ)`. Every sampled
//! angle yields two facts:
//!
//! * the Rayleigh quotient `z = ⟨Tv, v⟩` of the top eigenvector lies in
//!   `W(T)`, so `|z| ≤ w(T)`;
//! * `W(T)` lies in the half-plane `Re(e^{iθ}z) ≤ f(θ)`.
//!
//! Between two consecutive angles `θa < θb` (gap below π) any direction
//! `e^{iφ}`, `φ ∈ [θa, θb]`, is a nonnegative combination of `e^{iθa}` and
//! `e^{iθb}`, so `|z| ≤ fa·cos t + K·sin t` with `t = φ - θa` and
//! `K = (fb - fa·cos Δ)/sin Δ`. Maximizing that sinusoid over the sector gives
//! a rigorous upper bound on `w(T)` that tightens quadratically as sectors
//! shrink. Sectors whose bound exceeds the best attained `|z|` by more than the
//! tolerance are bisected until the gap closes.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, operator_norm};
use crate::matrix::ComplexMatrix;
use crate::random::SeededRng;

/// Initial uniform grid. Any gap below π gives a valid sector bound, so a
/// coarse start only costs a few extra bisection rounds.
const INITIAL_STEP: f64 = PI / 16.0;
const MAX_ROUNDS: usize = 80;
const MIN_SECTOR: f64 = 1e-13;

/// Numerical radius with a two-sided certificate:
/// `value - certified_error ≤ w(T) ≤ value + certified_error`.
///
/// `value` is the modulus of an attained point of `W(T)`, so in exact
/// arithmetic it never exceeds `w(T)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub value: f64,
    pub certified_error: f64,
    /// Angle in `[0, 2π)` of the sample attaining `value`.
    pub argmax_angle: f64,
    /// Refinement rounds after the initial grid.
    pub iterations: usize,
    /// Number of Hermitian eigenproblems solved.
    pub evaluations: usize,
}

impl RadiusEstimate {
    pub fn upper(&self) -> f64 {
        self.value + self.certified_error
    }
}

/// Tolerance used whenever a caller does not pick one: `1e-9·(1+‖T‖)`.
pub fn default_tolerance(norm: f64) -> f64 {
    1e-9 * (1.0 + norm)
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    theta: f64,
    support: f64,
    modulus: f64,
}

struct SupportOracle {
    real: ComplexMatrix,
    imag: ComplexMatrix,
    t: ComplexMatrix,
    evaluations: usize,
}

impl SupportOracle {
    fn new(t: &ComplexMatrix) -> Self {
        Self { real: t.hermitian_part(), imag: t.skew_part(), t: t.clone(), evaluations: 0 }
    }

    fn sample(&mut self, theta: f64) -> Result<Sample> {
        self.evaluations += 1;
        let (s, c) = theta.sin_cos();
        // H(θ) = cos θ·Re T - sin θ·Im T
        let h = &self.real.scale(c) - &self.imag.scale(s);
        let eig = hermitian_eigen(&h)?;
        let n = eig.values.len();
        let top = eig.vectors.column(n - 1);
        let z = self.t.quadratic_form(&top);
        Ok(Sample { theta, support: eig.max_value(), modulus: z.norm() })
    }
}

/// Upper bound on `|z|` over `W(T)` restricted to directions in `[a, b]`.
fn sector_bound(a: &Sample, b: &Sample, b_theta: f64) -> f64 {
    let delta = b_theta - a.theta;
    let (sd, cd) = delta.sin_cos();
    let k = (b.support - a.support * cd) / sd;
    let t_star = k.atan2(a.support);
    if (0.0..=delta).contains(&t_star) {
        a.support.hypot(k)
    } else {
        a.support.max(b.support)
    }
}

/// `w(T)` to within `tol`, certified by the supporting-line bound.
///
/// Below the rounding floor of the eigensolver (about `1e-15·‖T‖`) the
/// certificate cannot shrink further and `certified_error` may exceed `tol`.
pub fn numerical_radius(t: &ComplexMatrix, tol: f64) -> Result<RadiusEstimate> {
    let n = t.square_dim()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if n == 0 || t.is_zero() {
        return Ok(RadiusEstimate { value: 0.0, certified_error: 0.0, argmax_angle: 0.0, iterations: 0, evaluations: 0 });
    }
    let norm = operator_norm(t)?;
    let mut oracle = SupportOracle::new(t);

    let count = (TAU / INITIAL_STEP).round() as usize;
    let mut samples = Vec::with_capacity(2 * count);
    for k in 0..count {
        samples.push(oracle.sample(TAU * k as f64 / count as f64)?);
    }

    let mut rounds = 0;
    let (best, upper) = loop {
        let best = best_sample(&samples);
        let bounds = sector_bounds(&samples);
        let upper = bounds.iter().fold(best.modulus, |m, &b| m.max(b));
        if upper - best.modulus <= tol || rounds >= MAX_ROUNDS {
            break (best, upper);
        }
        let threshold = best.modulus + tol;
        let mut refined = Vec::with_capacity(samples.len() * 2);
        let mut split_any = false;
        for (i, s) in samples.iter().enumerate() {
            refined.push(*s);
            let next_theta = samples.get(i + 1).map_or(samples[0].theta + TAU, |x| x.theta);
            if bounds[i] > threshold && next_theta - s.theta > MIN_SECTOR {
                refined.push(oracle.sample(0.5 * (s.theta + next_theta))?);
                split_any = true;
            }
        }
        if !split_any {
            break (best, upper);
        }
        // A midpoint of the wrap-around sector may land past 2π.
        for s in refined.iter_mut() {
            if s.theta >= TAU {
                s.theta -= TAU;
            }
        }
        refined.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        samples = refined;
        rounds += 1;
    };

    // Keep the certificate from exceeding the trivial bound w ≤ ‖T‖.
    let upper = upper.min(norm.max(best.modulus));
    Ok(RadiusEstimate {
        value: best.modulus,
        certified_error: (upper - best.modulus).max(0.0),
        argmax_angle: argmax_support(&samples),
        iterations: rounds,
        evaluations: oracle.evaluations,
    })
}

/// `numerical_radius` at [`default_tolerance`].
pub fn numerical_radius_default(t: &ComplexMatrix) -> Result<RadiusEstimate> {
    let norm = operator_norm(t)?;
    numerical_radius(t, default_tolerance(norm))
}

fn best_sample(samples: &[Sample]) -> Sample {
    let mut best = samples[0];
    for s in &samples[1..] {
        if s.modulus > best.modulus || (s.modulus == best.modulus && s.theta < best.theta) {
            best = *s;
        }
    }
    best
}

/// The modulus can plateau across a range of angles (e.g. for normal
/// matrices); the support function peaks where the maximizing direction is.
fn argmax_support(samples: &[Sample]) -> f64 {
    let mut best = samples[0];
    for s in &samples[1..] {
        if s.support > best.support || (s.support == best.support && s.theta < best.theta) {
            best = *s;
        }
    }
    best.theta
}

fn sector_bounds(samples: &[Sample]) -> Vec<f64> {
    let m = samples.len();
    (0..m)
        .map(|i| {
            let (b, b_theta) = if i + 1 < m { (&samples[i + 1], samples[i + 1].theta) } else { (&samples[0], samples[0].theta + TAU) };
            sector_bound(&samples[i], b, b_theta)
        })
        .collect()
}

/// `k` Rayleigh quotients `⟨Tx, x⟩` at seeded random unit vectors.
pub fn rayleigh_samples(t: &ComplexMatrix, k: usize, seed: u64) -> Result<Vec<Complex64>> {
    let n = t.square_dim()?;
    let mut rng = SeededRng::new(seed);
    Ok((0..k).map(|_| t.quadratic_form(&rng.unit_vector(n))).collect())
}
