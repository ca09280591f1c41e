//! Lazily cached spectral quantities of one square operator.
//!
//! Several bounds share `w(T)`, `‖T‖`, `‖T²‖`, ...; a sweep evaluates a dozen
//! of them per matrix, so each quantity is computed at most once.

use std::cell::OnceCell;

use crate::error::Result;
use crate::linalg::{absolute_value, aluthge, operator_norm, spectral_radius};
use crate::matrix::ComplexMatrix;
use crate::numrad::{default_tolerance, numerical_radius, RadiusEstimate};

#[derive(Debug, Clone)]
pub struct Profile {
    t: ComplexMatrix,
    norm: OnceCell<f64>,
    radius: OnceCell<RadiusEstimate>,
    square: OnceCell<ComplexMatrix>,
    square_norm: OnceCell<f64>,
    square_radius: OnceCell<f64>,
    aluthge_radius: OnceCell<f64>,
    gram_sum_norm: OnceCell<f64>,
    spectral_radius: OnceCell<f64>,
    abs: OnceCell<ComplexMatrix>,
    abs_adjoint: OnceCell<ComplexMatrix>,
}

fn cached<T: Clone>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T>) -> Result<T> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = init()?;
    Ok(cell.get_or_init(|| v).clone())
}

fn cached_ref<T>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if cell.get().is_none() {
        let v = init()?;
        let _ = cell.set(v);
    }
    Ok(cell.get().expect("initialized above"))
}

/// `w(T)` at the default tolerance.
pub fn radius_of(t: &ComplexMatrix) -> Result<f64> {
    Ok(numerical_radius(t, default_tolerance(operator_norm(t)?))?.value)
}

impl Profile {
    pub fn new(t: &ComplexMatrix) -> Result<Self> {
        t.square_dim()?;
        Ok(Self {
            t: t.clone(),
            norm: OnceCell::new(),
            radius: OnceCell::new(),
            square: OnceCell::new(),
            square_norm: OnceCell::new(),
            square_radius: OnceCell::new(),
            aluthge_radius: OnceCell::new(),
            gram_sum_norm: OnceCell::new(),
            spectral_radius: OnceCell::new(),
            abs: OnceCell::new(),
            abs_adjoint: OnceCell::new(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.t
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn norm(&self) -> Result<f64> {
        cached(&self.norm, || operator_norm(&self.t))
    }

    /// Tolerance of the numerical-radius certificate, `1e-9·(1+‖T‖)`.
    pub fn tol(&self) -> Result<f64> {
        Ok(default_tolerance(self.norm()?))
    }

    pub fn radius_estimate(&self) -> Result<RadiusEstimate> {
        cached(&self.radius, || numerical_radius(&self.t, self.tol()?))
    }

    /// `w(T)`.
    pub fn radius(&self) -> Result<f64> {
        Ok(self.radius_estimate()?.value)
    }

    pub fn square(&self) -> Result<&ComplexMatrix> {
        cached_ref(&self.square, || Ok(self.t.matmul(&self.t)))
    }

    /// `‖T²‖`.
    pub fn square_norm(&self) -> Result<f64> {
        cached(&self.square_norm, || operator_norm(self.square()?))
    }

    /// `w(T²)`.
    pub fn square_radius(&self) -> Result<f64> {
        cached(&self.square_radius, || radius_of(self.square()?))
    }

    /// `w(T̃)` for the Aluthge transform `T̃`.
    pub fn aluthge_radius(&self) -> Result<f64> {
        cached(&self.aluthge_radius, || radius_of(&aluthge(&self.t)?))
    }

    /// `‖TᴴT + TTᴴ‖`.
    pub fn gram_sum_norm(&self) -> Result<f64> {
        cached(&self.gram_sum_norm, || {
            let th = self.t.adjoint();
            operator_norm(&(&th.matmul(&self.t) + &self.t.matmul(&th)))
        })
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        cached(&self.spectral_radius, || spectral_radius(&self.t))
    }

    /// `|T|`.
    pub fn abs(&self) -> Result<&ComplexMatrix> {
        cached_ref(&self.abs, || absolute_value(&self.t))
    }

    /// `|Tᴴ|`.
    pub fn abs_adjoint(&self) -> Result<&ComplexMatrix> {
        cached_ref(&self.abs_adjoint, || absolute_value(&self.t.adjoint()))
    }
}
