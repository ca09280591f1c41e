//! Classical single-operator numerical-radius bounds and the scalar/vector
//! lemmas they are built from.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_complementary, modulus_power, operator_norm, positive_eigen, positive_power, spectral_radius, PowerFunction};
use crate::matrix::{inner, normalized, vec_norm, ComplexMatrix};
use crate::numrad::default_tolerance;
use crate::product_bounds::intertwining_residual;
use crate::profile::Profile;
use crate::record::BoundRecord;

/// How to read the Dragomir bound `w²(T) ≤ (‖T‖^k + w(T²))/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DragomirVariant {
    /// `k = 1`, as typeset. Not homogeneous; fails e.g. for `T = 2I`.
    AsPrinted,
    /// `k = 2`, the homogeneous form.
    SquaredNorm,
}

impl DragomirVariant {
    pub fn bound_id(self) -> &'static str {
        match self {
            Self::AsPrinted => "eq1.5.as_printed",
            Self::SquaredNorm => "eq1.5.squared_norm",
        }
    }
}

/// `‖T‖/2 ≤ w(T) ≤ ‖T‖`.
pub fn eq11_sandwich(p: &Profile) -> Result<(BoundRecord, BoundRecord)> {
    let (w, norm) = (p.radius()?, p.norm()?);
    Ok((BoundRecord::new("eq1.1.lower", norm / 2.0, w), BoundRecord::new("eq1.1.upper", w, norm)))
}

/// `w(T) ≤ (‖T‖ + ‖T²‖^{1/2})/2`.
pub fn kittaneh2003(p: &Profile) -> Result<BoundRecord> {
    let norm = p.norm()?;
    let rhs = 0.5 * (norm + p.square_norm()?.sqrt());
    let record = BoundRecord::new("eq1.2", p.radius()?, rhs);
    Ok(if rhs > norm + default_tolerance(norm) { record.with_note("rhs exceeds ‖T‖") } else { record })
}

/// `‖TᴴT+TTᴴ‖/4 ≤ w²(T) ≤ ‖TᴴT+TTᴴ‖/2`.
pub fn kittaneh2005(p: &Profile) -> Result<(BoundRecord, BoundRecord)> {
    let w2 = p.radius()?.powi(2);
    let s = p.gram_sum_norm()?;
    Ok((BoundRecord::new("eq1.3.lower", s / 4.0, w2), BoundRecord::new("eq1.3.upper", w2, s / 2.0)))
}

/// `w(T) ≤ (‖T‖ + w(T̃))/2 ≤ (‖T‖ + ‖T²‖^{1/2})/2`.
pub fn yamazaki(p: &Profile) -> Result<(BoundRecord, BoundRecord)> {
    let norm = p.norm()?;
    let mid = 0.5 * (norm + p.aluthge_radius()?);
    let outer = 0.5 * (norm + p.square_norm()?.sqrt());
    Ok((BoundRecord::new("eq1.4.first", p.radius()?, mid), BoundRecord::new("eq1.4.second", mid, outer)))
}

pub fn dragomir(p: &Profile, variant: DragomirVariant) -> Result<BoundRecord> {
    let norm = p.norm()?;
    let lead = match variant {
        DragomirVariant::AsPrinted => norm,
        DragomirVariant::SquaredNorm => norm * norm,
    };
    let record = BoundRecord::new(variant.bound_id(), p.radius()?.powi(2), 0.5 * (lead + p.square_radius()?));
    Ok(match variant {
        DragomirVariant::AsPrinted => record.with_note("typeset form; expected to fail when ‖T‖ > 1 (suspected typo)"),
        DragomirVariant::SquaredNorm => record,
    })
}

fn check_len(what: &str, v: &[Complex64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("{what} has length {}, expected {n}", v.len())));
    }
    Ok(())
}

fn check_same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = a.square_dim()?;
    if b.square_dim()? != n {
        return Err(Error::DimensionMismatch(format!("{n}x{n} vs {}x{}", b.rows(), b.cols())));
    }
    Ok(n)
}

/// Mixed Schwarz: `|⟨Ax,y⟩|² ≤ ⟨|A|^{2α}x,x⟩·⟨|Aᴴ|^{2(1−α)}y,y⟩`.
pub fn mixed_schwarz_gap(a: &ComplexMatrix, x: &[Complex64], y: &[Complex64], alpha: f64) -> Result<BoundRecord> {
    let n = a.square_dim()?;
    check_len("x", x, n)?;
    check_len("y", y, n)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameters(format!("alpha {alpha} must lie in [0, 1]")));
    }
    let lhs = inner(&a.mul_vec(x), y).norm_sqr();
    let left = modulus_power(a, alpha)?.quadratic_form(x).re;
    let right = modulus_power(&a.adjoint(), 1.0 - alpha)?.quadratic_form(y).re;
    Ok(BoundRecord::new("eq2.4", lhs, left * right))
}

/// `|⟨ABx,y⟩| ≤ r(B)·‖f(|A|)x‖·‖g(|Aᴴ|)y‖` under `|A|B = Bᴴ|A|`.
///
/// When the intertwining relation fails the record is still produced but
/// flagged as informational.
pub fn kittaneh_fg_gap(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &[Complex64],
    y: &[Complex64],
    f: PowerFunction,
    g: PowerFunction,
) -> Result<BoundRecord> {
    let n = check_same_dim(a, b)?;
    check_len("x", x, n)?;
    check_len("y", y, n)?;
    check_complementary(&f, &g)?;
    let (residual, limit) = intertwining_residual(a, b)?;
    let lhs = inner(&a.matmul(b).mul_vec(x), y).norm();
    let fx = modulus_power(a, f.exponent() / 2.0)?.mul_vec(x);
    let gy = modulus_power(&a.adjoint(), g.exponent() / 2.0)?.mul_vec(y);
    let rhs = spectral_radius(b)? * vec_norm(&fx) * vec_norm(&gy);
    let record = BoundRecord::new("lem5", lhs, rhs);
    Ok(if residual <= limit {
        record
    } else {
        record.with_preconditions(false).with_note(format!("|A|B ≠ BᴴA: residual {residual:.3e}"))
    })
}

fn half_power(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    positive_power(p, PowerFunction::new(0.5)?)
}

fn require_positive(what: &str, p: &ComplexMatrix) -> Result<()> {
    positive_eigen(p).map(|_| ()).map_err(|e| Error::NotPositive(format!("{what}: {e}")))
}

/// `‖A+B‖ ≤ (‖A‖+‖B‖+√((‖A‖−‖B‖)² + 4‖A^{1/2}B^{1/2}‖²))/2` for positive A, B.
pub fn norm_sum_estimate(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<BoundRecord> {
    check_same_dim(a, b)?;
    require_positive("A", a)?;
    require_positive("B", b)?;
    let (na, nb) = (operator_norm(a)?, operator_norm(b)?);
    let cross = operator_norm(&half_power(a)?.matmul(&half_power(b)?))?;
    let rhs = 0.5 * (na + nb + ((na - nb).powi(2) + 4.0 * cross * cross).sqrt());
    let record = BoundRecord::new("fact1", operator_norm(&(a + b))?, rhs);
    Ok(if rhs > na + nb + default_tolerance(na + nb) { record.with_note("rhs exceeds the triangle bound") } else { record })
}

/// `‖A^{1/2}B^{1/2}‖ ≤ ‖AB‖^{1/2}` for positive A, B.
pub fn fact2_check(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<BoundRecord> {
    check_same_dim(a, b)?;
    require_positive("A", a)?;
    require_positive("B", b)?;
    let lhs = operator_norm(&half_power(a)?.matmul(&half_power(b)?))?;
    Ok(BoundRecord::new("fact2", lhs, operator_norm(&a.matmul(b))?.sqrt()))
}

/// `r(AB) ≤ (‖AB‖+‖BA‖+√((‖AB‖−‖BA‖)² + 4·m(A,B)))/4`.
pub fn spectral_radius_product_estimate(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<BoundRecord> {
    check_same_dim(a, b)?;
    let ab = a.matmul(b);
    let ba = b.matmul(a);
    let (nab, nba) = (operator_norm(&ab)?, operator_norm(&ba)?);
    let m = (operator_norm(a)? * operator_norm(&ba.matmul(b))?).min(operator_norm(b)? * operator_norm(&ab.matmul(a))?);
    let rhs = 0.25 * (nab + nba + ((nab - nba).powi(2) + 4.0 * m).sqrt());
    Ok(BoundRecord::new("fact3", spectral_radius(&ab)?, rhs))
}

/// Refined Cauchy–Schwarz for positive `A` and `p ≥ 2`:
/// `|⟨Ax,y⟩|^{2p} ≤ [⟨Aᵖx,x⟩ − ⟨|A−⟨Ax,x⟩|ᵖx,x⟩]·[same in y] ≤ ⟨Aᵖx,x⟩⟨Aᵖy,y⟩`.
///
/// Brackets are evaluated at `x/‖x‖`, `y/‖y‖`, then every side is rescaled
/// by `‖x‖^{2p}‖y‖^{2p}`.
pub fn refined_cauchy_schwarz(a: &ComplexMatrix, x: &[Complex64], y: &[Complex64], p: f64) -> Result<(BoundRecord, BoundRecord)> {
    let n = a.square_dim()?;
    check_len("x", x, n)?;
    check_len("y", y, n)?;
    if !(p >= 2.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(format!("p = {p} must be >= 2")));
    }
    let eig = positive_eigen(a).map_err(|e| Error::NotPositive(e.to_string()))?;
    let (nx, ny) = (vec_norm(x), vec_norm(y));
    if nx == 0.0 || ny == 0.0 {
        return Ok((BoundRecord::new("lem7.refined", 0.0, 0.0), BoundRecord::new("lem7.outer", 0.0, 0.0)));
    }
    let (ux, uy) = (normalized(x), normalized(y));
    let bracket = |u: &[Complex64]| -> (f64, f64) {
        let mean = eig.quadratic_form(u, |l| l.max(0.0));
        let moment = eig.quadratic_form(u, |l| l.max(0.0).powf(p));
        let spread = eig.quadratic_form(u, |l| (l.max(0.0) - mean).abs().powf(p));
        (moment - spread, moment)
    };
    let (rx, ox) = bracket(&ux);
    let (ry, oy) = bracket(&uy);
    let scale = (nx * ny).powf(2.0 * p);
    let lhs = inner(&a.mul_vec(&ux), &uy).norm().powf(2.0 * p) * scale;
    let refined = rx * ry * scale;
    Ok((BoundRecord::new("lem7.refined", lhs, refined), BoundRecord::new("lem7.outer", refined, ox * oy * scale)))
}

/// `|⟨x,e⟩⟨e,y⟩| ≤ (|⟨x,y⟩| + ‖x‖‖y‖)/2` for unit `e`.
pub fn buzano_key_check(x: &[Complex64], y: &[Complex64], e: &[Complex64]) -> Result<BoundRecord> {
    check_len("y", y, x.len())?;
    check_len("e", e, x.len())?;
    let ne = vec_norm(e);
    if (ne - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(ne));
    }
    let lhs = (inner(x, e) * inner(e, y)).norm();
    Ok(BoundRecord::new("buzano.key", lhs, 0.5 * (inner(x, y).norm() + vec_norm(x) * vec_norm(y))))
}

/// Power-mean and power-Young inequalities for scalars `a, b ≥ 0`.
///
/// `alpha, beta` are conjugate exponents (`1/α + 1/β = 1`); the power-mean
/// weight is `1/α ∈ (0, 1)`. Returns two `pmi` records followed by two
/// `young` records.
pub fn scalar_lemma_checks(a: f64, b: f64, alpha: f64, beta: f64, p: f64) -> Result<Vec<BoundRecord>> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameters(format!("a = {a}, b = {b} must be finite and >= 0")));
    }
    if !(alpha > 1.0 && beta > 1.0) || (1.0 / alpha + 1.0 / beta - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameters(format!("alpha = {alpha}, beta = {beta} are not conjugate exponents")));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameters(format!("p = {p} must be >= 1")));
    }
    Ok(power_mean_records(a, b, 1.0 / alpha, p)?.into_iter().chain(power_young_records(a, b, alpha, beta, p)).collect())
}

/// `a^w b^{1−w} ≤ wa + (1−w)b ≤ (wa^p + (1−w)b^p)^{1/p}` for `w ∈ [0,1]`.
pub fn power_mean_records(a: f64, b: f64, weight: f64, p: f64) -> Result<Vec<BoundRecord>> {
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::InvalidParameters(format!("weight {weight} must lie in [0, 1]")));
    }
    // 0⁰ = 1, consistent with the power functions.
    let geo = if weight == 0.0 { b } else if weight == 1.0 { a } else { a.powf(weight) * b.powf(1.0 - weight) };
    let arith = weight * a + (1.0 - weight) * b;
    let power = (weight * a.powf(p) + (1.0 - weight) * b.powf(p)).powf(1.0 / p);
    Ok(vec![BoundRecord::new("pmi", geo, arith), BoundRecord::new("pmi", arith, power)])
}

/// `ab ≤ a^α/α + b^β/β ≤ (a^{pα}/α + b^{pβ}/β)^{1/p}`.
pub fn power_young_records(a: f64, b: f64, alpha: f64, beta: f64, p: f64) -> Vec<BoundRecord> {
    let mid = a.powf(alpha) / alpha + b.powf(beta) / beta;
    let outer = (a.powf(p * alpha) / alpha + b.powf(p * beta) / beta).powf(1.0 / p);
    vec![BoundRecord::new("young", a * b, mid), BoundRecord::new("young", mid, outer)]
}

/// McCarty: `⟨Ax,x⟩ᵖ ≤ ⟨Aᵖx,x⟩` for positive `A`, unit `x`, `p ≥ 1`.
pub fn mccarty_check(a: &ComplexMatrix, x: &[Complex64], p: f64) -> Result<BoundRecord> {
    let n = a.square_dim()?;
    check_len("x", x, n)?;
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameters(format!("p = {p} must be >= 1")));
    }
    let nx = vec_norm(x);
    if (nx - 1.0).abs() > 1e-12 {
        return Err(Error::NotUnit(nx));
    }
    let eig = positive_eigen(a).map_err(|e| Error::NotPositive(e.to_string()))?;
    let lhs = eig.quadratic_form(x, |l| l.max(0.0)).powf(p);
    Ok(BoundRecord::new("mccarty", lhs, eig.quadratic_form(x, |l| l.max(0.0).powf(p))))
}
