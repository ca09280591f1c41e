//! Numerical-radius bounds for products `AB` under intertwining,
//! commutation, and contraction hypotheses.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_complementary, hermitian_eigen, modulus_power, operator_norm, positive_eigen, HermitianEigen, PowerFunction};
use crate::matrix::ComplexMatrix;
use crate::profile::Profile;
use crate::random::SeededRng;
use crate::record::BoundRecord;

/// Residual threshold for intertwining/commutation checks: `1e-8·(1+‖A‖‖B‖)`.
pub const RELATION_TOL: f64 = 1e-8;

/// Conjugate exponents `α ≥ β > 1`, `1/α + 1/β = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderPair {
    alpha: f64,
    beta: f64,
}

impl HolderPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(beta > 1.0 && alpha >= beta && alpha.is_finite()) || (1.0 / alpha + 1.0 / beta - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameters(format!("({alpha}, {beta}) is not a conjugate pair with alpha >= beta > 1")));
        }
        Ok(Self { alpha, beta })
    }

    /// The pair with the given larger exponent.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha / (alpha - 1.0))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `γ = max(1/α, 1/β) = 1/β`.
    pub fn gamma(&self) -> f64 {
        1.0 / self.beta
    }
}

/// Cached quantities of a pair `(A, B)` and of its product.
#[derive(Debug, Clone)]
pub struct Pair {
    pub a: Profile,
    pub b: Profile,
    pub ab: Profile,
    intertwining: OnceCell<(f64, f64)>,
}

impl Pair {
    pub fn new(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Self> {
        same_dim(a, b)?;
        Ok(Self { a: Profile::new(a)?, b: Profile::new(b)?, ab: Profile::new(&a.matmul(b))?, intertwining: OnceCell::new() })
    }

    /// `(‖|A|B − Bᴴ|A|‖, threshold)`.
    pub fn intertwining(&self) -> Result<(f64, f64)> {
        if let Some(v) = self.intertwining.get() {
            return Ok(*v);
        }
        let v = intertwining_residual(self.a.matrix(), self.b.matrix())?;
        Ok(*self.intertwining.get_or_init(|| v))
    }

    pub fn is_intertwined(&self) -> Result<bool> {
        let (r, limit) = self.intertwining()?;
        Ok(r <= limit)
    }

    /// `(‖B‖ + ‖B²‖^{1/2})/2`, the upper estimate of `r(B)`.
    fn b_radius_estimate(&self) -> Result<f64> {
        Ok(0.5 * (self.b.norm()? + self.b.square_norm()?.sqrt()))
    }
}

/// Inputs shared by the intertwining theorems.
#[derive(Debug, Clone, Copy)]
pub struct ProductBoundInput<'a> {
    pub pair: &'a Pair,
    pub f: PowerFunction,
    pub g: PowerFunction,
    pub p: f64,
    pub holder: Option<HolderPair>,
}

impl<'a> ProductBoundInput<'a> {
    pub fn new(pair: &'a Pair, f: PowerFunction, g: PowerFunction, p: f64, holder: Option<HolderPair>) -> Result<Self> {
        check_complementary(&f, &g)?;
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidExponent(format!("p = {p} must be >= 1")));
        }
        if let Some(h) = holder {
            if h.beta * p < 2.0 - 1e-12 {
                return Err(Error::InvalidExponent(format!("beta·p = {} must be >= 2", h.beta * p)));
            }
        }
        Ok(Self { pair, f, g, p, holder })
    }

    /// `f = g = t^{1/2}`, `p = 1`, no Hölder pair.
    pub fn square_root(pair: &'a Pair) -> Result<Self> {
        let (f, g) = PowerFunction::complementary_pair(0.5)?;
        Self::new(pair, f, g, 1.0, None)
    }

    fn holder(&self) -> Result<HolderPair> {
        self.holder.ok_or_else(|| Error::InvalidParameters("this bound needs a Hölder pair".into()))
    }
}

fn same_dim(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<usize> {
    let n = a.square_dim()?;
    if b.square_dim()? != n {
        return Err(Error::DimensionMismatch(format!("{n}x{n} vs {}x{}", b.rows(), b.cols())));
    }
    Ok(n)
}

/// `(‖|A|B − Bᴴ|A|‖, 1e-8·(1+‖A‖‖B‖))`.
pub fn intertwining_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(f64, f64)> {
    same_dim(a, b)?;
    let abs = modulus_power(a, 0.5)?;
    let residual = operator_norm(&(&abs.matmul(b) - &b.adjoint().matmul(&abs)))?;
    Ok((residual, RELATION_TOL * (1.0 + operator_norm(a)? * operator_norm(b)?)))
}

/// `|A|B = Bᴴ|A|` up to the relation tolerance.
pub fn check_intertwining(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    let (r, limit) = intertwining_residual(a, b)?;
    Ok(r <= limit)
}

/// `(‖AB − BA‖, 1e-8·(1+‖A‖‖B‖))`.
pub fn commutator_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(f64, f64)> {
    same_dim(a, b)?;
    let residual = operator_norm(&(&a.matmul(b) - &b.matmul(a)))?;
    Ok((residual, RELATION_TOL * (1.0 + operator_norm(a)? * operator_norm(b)?)))
}

fn flag(record: BoundRecord, pair: &Pair) -> Result<BoundRecord> {
    let (r, limit) = pair.intertwining()?;
    Ok(if r <= limit {
        record
    } else {
        record.with_preconditions(false).with_note(format!("|A|B ≠ Bᴴ|A|: residual {r:.3e}"))
    })
}

/// Largest eigenvalue of a positive matrix; equals both its numerical
/// radius and its norm.
fn top(p: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigen(p)?.max_value().max(0.0))
}

/// `‖X‖ + ‖Y‖ + √((‖X‖−‖Y‖)² + 4c)`, the bracket shared by the outer bounds.
fn fact1_bracket(nx: f64, ny: f64, c: f64) -> f64 {
    nx + ny + ((nx - ny).powi(2) + 4.0 * c).sqrt()
}

/// `w(AB) ≤ ½ r(B) w(f²(|A|) + g²(|Aᴴ|)) ≤ ⅛(‖B‖+‖B²‖^{1/2})·{…}`.
pub fn thm1_bounds(input: &ProductBoundInput) -> Result<(BoundRecord, BoundRecord)> {
    thm1_with_ids(input, "eq2.1.first", "eq2.1.second")
}

fn thm1_with_ids(input: &ProductBoundInput, first_id: &str, second_id: &str) -> Result<(BoundRecord, BoundRecord)> {
    let pair = input.pair;
    let a = pair.a.matrix();
    let f2 = modulus_power(a, input.f.exponent())?;
    let g2 = modulus_power(&a.adjoint(), input.g.exponent())?;
    let fg = modulus_power(a, input.f.exponent() / 2.0)?.matmul(&modulus_power(&a.adjoint(), input.g.exponent() / 2.0)?);
    let mid = 0.5 * pair.b.spectral_radius()? * top(&(&f2 + &g2))?;
    let cross = operator_norm(&fg)?;
    let outer = 0.25 * pair.b_radius_estimate()? * fact1_bracket(operator_norm(&f2)?, operator_norm(&g2)?, cross * cross);
    let first = flag(BoundRecord::new(first_id, pair.ab.radius()?, mid), pair)?;
    let second = flag(BoundRecord::new(second_id, mid, outer), pair)?;
    Ok((first, second))
}

/// The `f, g` product bound with `f = t^α`, `g = t^{1−α}`. The second record carries
/// `eq3.2.second`.
pub fn cor1_alpha_bounds(pair: &Pair, alpha: f64) -> Result<(BoundRecord, BoundRecord)> {
    let (f, g) = PowerFunction::complementary_pair(alpha)?;
    let input = ProductBoundInput::new(pair, f, g, 1.0, None)?;
    let (first, second) = thm1_with_ids(&input, "eq3.2", "eq3.2.second")?;
    let note = format!("alpha = {alpha}");
    Ok((first.with_note(&note), second.with_note(&note)))
}

/// `w(AB) ≤ ¼(‖B‖+‖B²‖^{1/2})(‖A‖+‖A²‖^{1/2})`.
pub fn cor2_bound(pair: &Pair) -> Result<BoundRecord> {
    let rhs = pair.b_radius_estimate()? * (pair.a.norm()? + pair.a.square_norm()?.sqrt()) / 2.0;
    flag(BoundRecord::new("eq3.3", pair.ab.radius()?, rhs), pair)
}

/// `(f^{αp}(|X|), g^{βp}(|Xᴴ|))` for the Hölder pair.
fn holder_powers(x: &ComplexMatrix, input: &ProductBoundInput, h: HolderPair) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let fp = modulus_power(x, input.f.exponent() * h.alpha * input.p / 2.0)?;
    let gp = modulus_power(&x.adjoint(), input.g.exponent() * h.beta * input.p / 2.0)?;
    Ok((fp, gp))
}

/// `‖X‖ + ‖Y‖ + Φ` with `Φ = √((‖X‖−‖Y‖)² + 4‖XY‖)`.
fn phi_bracket(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64> {
    Ok(fact1_bracket(operator_norm(x)?, operator_norm(y)?, operator_norm(&x.matmul(y))?))
}

/// Hölder-exponent generalization of the `f, g` product bound:
/// `w^p(AB) ≤ r^p(B)·w(f^{αp}(|A|)/α + g^{βp}(|Aᴴ|)/β) ≤ r^p(B)·‖…‖`, and
/// `w^p(AB) ≤ γ/2^{p+1}·(‖B‖+‖B²‖^{1/2})^p·{‖f^{αp}‖ + ‖g^{βp}‖ + Φ}`.
pub fn thm2_bounds(input: &ProductBoundInput) -> Result<(BoundRecord, BoundRecord, BoundRecord)> {
    let h = input.holder()?;
    let pair = input.pair;
    let p = input.p;
    let (fp, gp) = holder_powers(pair.a.matrix(), input, h)?;
    let combo = &fp.scale(1.0 / h.alpha) + &gp.scale(1.0 / h.beta);
    let rp = pair.b.spectral_radius()?.powf(p);
    let lhs = pair.ab.radius()?.powf(p);
    // The combination is positive, so its numerical radius and norm agree.
    let mid = rp * top(&combo)?;
    let outer = rp * operator_norm(&combo)?;
    let third = h.gamma() / 2f64.powf(p + 1.0) * (2.0 * pair.b_radius_estimate()?).powf(p) * phi_bracket(&fp, &gp)?;
    let note = format!("p = {p}, alpha = {}, beta = {}", h.alpha, h.beta);
    Ok((
        flag(BoundRecord::new("eq3.4.first", lhs, mid).with_note(&note), pair)?,
        flag(BoundRecord::new("eq3.4.second", mid, outer).with_note(&note), pair)?,
        flag(BoundRecord::new("eq3.5", lhs, third).with_note(&note), pair)?,
    ))
}

/// Commuting-pair bound
/// `w^{2p}(AB) ≤ ½‖AB‖^{2p} + γ/2^{p+2}·(‖B²‖+‖B⁴‖^{1/2})^p·{‖f^{αp}(|A²|)‖ + ‖g^{βp}(|(A²)ᴴ|)‖ + Φ(A²)}`.
///
/// The bracket is evaluated on `A²`, matching the substitution `A, B → A², B²`
/// that produces it.
pub fn thm3_bound(input: &ProductBoundInput) -> Result<BoundRecord> {
    let h = input.holder()?;
    let pair = input.pair;
    let (a, b) = (pair.a.matrix(), pair.b.matrix());
    let (comm, limit) = commutator_residual(a, b)?;
    if comm > limit {
        return Err(Error::PreconditionFailed(format!("AB ≠ BA: residual {comm:.3e}")));
    }
    let a2 = pair.a.square()?;
    let b2 = pair.b.square()?;
    let (r2, limit2) = intertwining_residual(a2, b2)?;
    if r2 > limit2 {
        return Err(Error::PreconditionFailed(format!("|A²|B² ≠ (B²)ᴴ|A²|: residual {r2:.3e}")));
    }
    let p = input.p;
    let (fp, gp) = holder_powers(a2, input, h)?;
    let b4_norm = operator_norm(&b2.matmul(b2))?;
    let head = 0.5 * pair.ab.norm()?.powf(2.0 * p);
    let tail = h.gamma() / 2f64.powf(p + 2.0) * (pair.b.square_norm()? + b4_norm.sqrt()).powf(p) * phi_bracket(&fp, &gp)?;
    Ok(BoundRecord::new("eq3.6", pair.ab.radius()?.powf(2.0 * p), head + tail).with_note(format!("p = {p}, alpha = {}, beta = {}", h.alpha, h.beta)))
}

/// Closed form of the commuting-pair bound at `p = 1`, `α = β = 2`,
/// `f = g = t^{1/2}`:
/// `w²(AB) ≤ ½‖AB‖² + ⅛(‖B²‖+‖B⁴‖^{1/2})(‖A²‖+‖A⁴‖^{1/2})`.
pub fn thm3_closed_form(pair: &Pair) -> Result<BoundRecord> {
    let b2 = pair.b.square()?;
    let a2 = pair.a.square()?;
    let b_part = pair.b.square_norm()? + operator_norm(&b2.matmul(b2))?.sqrt();
    let a_part = pair.a.square_norm()? + operator_norm(&a2.matmul(a2))?.sqrt();
    let rhs = 0.5 * pair.ab.norm()?.powi(2) + b_part * a_part / 8.0;
    Ok(BoundRecord::new("eq3.6", pair.ab.radius()?.powi(2), rhs).with_note("closed form p = 1, alpha = beta = 2"))
}

/// `‖Pᵖ‖ − λ_min(|P − ‖P‖·I|ᵖ)` for positive `P`.
fn positive_bracket(eig: &HermitianEigen, p: f64) -> f64 {
    let norm = eig.max_value().max(0.0);
    let spread = eig.values.iter().map(|&l| (norm - l.max(0.0)).abs().powf(p)).fold(f64::INFINITY, f64::min);
    norm.powf(p) - spread
}

fn require_exponent(p: f64) -> Result<()> {
    if !(p >= 2.0 && p.is_finite()) {
        return Err(Error::InvalidExponent(format!("p = {p} must be >= 2")));
    }
    Ok(())
}

/// For positive `A`, `B` with `‖AB‖ ≤ 1`:
/// `w^{2p}(AB) ≤ [‖Aᵖ‖ − λ_min(|A−‖A‖|ᵖ)]·[‖Bᵖ‖ − λ_min(|B−‖B‖|ᵖ)]`.
///
/// The `λ_min` term is the infimum of `⟨|A−‖A‖|ᵖx, x⟩` over unit `x`.
pub fn thm4_bound(a: &ComplexMatrix, b: &ComplexMatrix, p: f64) -> Result<BoundRecord> {
    same_dim(a, b)?;
    require_exponent(p)?;
    let ea = positive_eigen(a).map_err(|e| Error::NotPositive(format!("A: {e}")))?;
    let eb = positive_eigen(b).map_err(|e| Error::NotPositive(format!("B: {e}")))?;
    let ab = a.matmul(b);
    let norm_ab = operator_norm(&ab)?;
    if norm_ab > 1.0 + 1e-10 {
        return Err(Error::NotContraction(norm_ab));
    }
    let lhs = Profile::new(&ab)?.radius()?.powf(2.0 * p);
    Ok(BoundRecord::new("thm4", lhs, positive_bracket(&ea, p) * positive_bracket(&eb, p)).with_note(format!("p = {p}")))
}

/// Outcome of the block-positivity criterion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivityCheck {
    /// `[[A, Cᴴ], [C, B]] ≥ 0` (smallest eigenvalue ≥ −1e-10).
    pub positive: bool,
    /// `|⟨Cx,y⟩|² ≤ ⟨Ax,x⟩⟨By,y⟩ + 1e-10` for every sample.
    pub schwarz_all_samples: bool,
    /// Worst sample ratio `(|⟨Cx,y⟩|² − 1e-10)₊ / (⟨Ax,x⟩⟨By,y⟩)`; at most 1
    /// iff that sample passes.
    pub worst_ratio: f64,
    pub min_eigenvalue: f64,
}

pub const POSITIVITY_SAMPLES: usize = 1000;

/// Block-positivity criterion with `POSITIVITY_SAMPLES` seeded vector pairs.
pub fn block_positivity_check(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, seed: u64) -> Result<PositivityCheck> {
    let n = a.square_dim()?;
    let m = b.square_dim()?;
    if c.rows() != m || c.cols() != n {
        return Err(Error::DimensionMismatch(format!("C is {}x{}, expected {m}x{n}", c.rows(), c.cols())));
    }
    let block = ComplexMatrix::from_blocks(&[vec![a.clone(), c.adjoint()], vec![c.clone(), b.clone()]]);
    let min_eigenvalue = hermitian_eigen(&block)?.min_value();
    let mut rng = SeededRng::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..POSITIVITY_SAMPLES {
        let x = rng.unit_vector(n);
        let y = rng.unit_vector(m);
        let lhs = crate::matrix::inner(&c.mul_vec(&x), &y).norm_sqr();
        let rhs = a.quadratic_form(&x).re * b.quadratic_form(&y).re;
        let excess = (lhs - 1e-10).max(0.0);
        let ratio = if rhs > 0.0 {
            excess / rhs
        } else if excess > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        worst = worst.max(ratio);
    }
    Ok(PositivityCheck { positive: min_eigenvalue >= -1e-10, schwarz_all_samples: worst <= 1.0, worst_ratio: worst, min_eigenvalue })
}

/// The criterion as a record: `lhs` is the worst sample ratio and `rhs = 1`.
/// Preconditions are met when the block is positive, in which case every
/// sample must pass. A sampled violation on a positive block is a failure.
pub fn lem4_record(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, seed: u64) -> Result<BoundRecord> {
    let check = block_positivity_check(a, b, c, seed)?;
    Ok(BoundRecord::new("lem4.positivity", check.worst_ratio, 1.0)
        .with_preconditions(check.positive)
        .with_note(format!("positive = {}, schwarz_all_samples = {}, min eigenvalue {:.3e}", check.positive, check.schwarz_all_samples, check.min_eigenvalue)))
}

/// `w^{2p}(T) ≤ [‖|T|ᵖ‖ − λ_min(||T|−‖T‖|ᵖ)]·[‖|Tᴴ|ᵖ‖ − λ_min(||Tᴴ|−‖T‖|ᵖ)]`,
/// i.e. the positive-operator bound applied to the positive block
/// `[[|T|, Tᴴ], [T, |Tᴴ|]]`. For integer `p` the notes also carry the value
/// obtained by substituting `T` for `|T|` literally.
pub fn cor5_bound(t: &Profile, p: f64) -> Result<BoundRecord> {
    require_exponent(p)?;
    let ea = positive_eigen(t.abs()?)?;
    let eb = positive_eigen(t.abs_adjoint()?)?;
    let rhs = positive_bracket(&ea, p) * positive_bracket(&eb, p);
    let record = BoundRecord::new("cor5", t.radius()?.powf(2.0 * p), rhs).with_note(format!("p = {p}"));
    Ok(match literal_cor5(t, p)? {
        Some(v) => record.with_note(format!("literal T-form rhs = {v:.12e}")),
        None => record,
    })
}

/// `[‖Tᵖ‖ − ℓ(|T−‖T‖|ᵖ)]·[‖(Tᴴ)ᵖ‖ − ℓ(|Tᴴ−‖T‖|ᵖ)]` with `|X|ᵖ = (XᴴX)^{p/2}`;
/// only defined for integer `p`.
pub fn literal_cor5(t: &Profile, p: f64) -> Result<Option<f64>> {
    if p.fract() != 0.0 || p > 64.0 {
        return Ok(None);
    }
    let k = p as u32;
    let m = t.matrix();
    let norm = t.norm()?;
    let shift = ComplexMatrix::identity(t.dim()).scale(norm);
    let side = |x: &ComplexMatrix| -> Result<f64> {
        let shifted = x - &shift;
        let modulus = hermitian_eigen(&modulus_power(&shifted, p / 2.0)?)?.min_value().max(0.0);
        Ok(operator_norm(&x.powi(k))? - modulus)
    };
    Ok(Some(side(m)? * side(&m.adjoint())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pair(a: &ComplexMatrix, b: &ComplexMatrix) -> Pair {
        Pair::new(a, b).unwrap()
    }

    #[test]
    fn holder_pair_validation() {
        let h = HolderPair::new(3.0, 1.5).unwrap();
        assert_abs_diff_eq!(h.gamma(), 1.0 / 1.5);
        assert!(HolderPair::new(1.5, 3.0).is_err());
        assert!(HolderPair::new(2.0, 3.0).is_err());
        assert_abs_diff_eq!(HolderPair::from_alpha(4.0).unwrap().beta(), 4.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn intertwining_examples() {
        let i = ComplexMatrix::identity(2);
        let h = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, -1.0]]);
        assert!(check_intertwining(&i, &h).unwrap());
        assert!(!check_intertwining(&i, &ComplexMatrix::shift(2)).unwrap());
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 3.0], &[0.0, 2.0]]);
        let abs = crate::linalg::absolute_value(&a).unwrap();
        let b = &abs.matmul(&abs).scale(0.5) - &abs.scale(2.0);
        assert!(check_intertwining(&a, &b).unwrap());
    }

    #[test]
    fn identity_b_reduces_to_single_operator_bound() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 1.0]]);
        let pr = pair(&a, &ComplexMatrix::identity(2));
        let (first, second) = thm1_bounds(&ProductBoundInput::square_root(&pr).unwrap()).unwrap();
        let sum = &crate::linalg::absolute_value(&a).unwrap() + &crate::linalg::absolute_value(&a.adjoint()).unwrap();
        assert_abs_diff_eq!(first.rhs, 0.5 * top(&sum).unwrap(), epsilon = 1e-12);
        assert!(first.holds() && second.holds() && first.preconditions_met);
    }

    #[test]
    fn zero_a_gives_zero_sides() {
        let z = ComplexMatrix::zeros(3, 3);
        let pr = pair(&z, &ComplexMatrix::identity(3));
        let (first, second) = thm1_bounds(&ProductBoundInput::square_root(&pr).unwrap()).unwrap();
        assert_eq!((first.lhs, first.rhs, second.rhs), (0.0, 0.0, 0.0));
        let (f, g) = PowerFunction::complementary_pair(0.5).unwrap();
        let input = ProductBoundInput::new(&pr, f, g, 1.0, Some(HolderPair::new(2.0, 2.0).unwrap())).unwrap();
        let (a, b, c) = thm2_bounds(&input).unwrap();
        for r in [a, b, c] {
            assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
        }
        let r = thm3_bound(&input).unwrap();
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));
    }

    #[test]
    fn cor2_examples() {
        let s = ComplexMatrix::shift(2);
        let b = ComplexMatrix::from_real_diag(&[0.0, 1.0]);
        let r = cor2_bound(&pair(&s, &b)).unwrap();
        assert!(r.preconditions_met);
        assert_abs_diff_eq!(r.lhs, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(r.rhs, 0.5, epsilon = 1e-12);
        let i = ComplexMatrix::identity(2);
        let r = cor2_bound(&pair(&i, &i)).unwrap();
        assert_abs_diff_eq!(r.rhs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.tightness, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn cor1_endpoint_uses_identity_power() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let pr = pair(&a, &ComplexMatrix::identity(2));
        let (first, _) = cor1_alpha_bounds(&pr, 1.0).unwrap();
        // |A|² + |Aᴴ|⁰ = AᴴA + I
        let expect = 0.5 * top(&(&a.adjoint().matmul(&a) + &ComplexMatrix::identity(2))).unwrap();
        assert_abs_diff_eq!(first.rhs, expect, epsilon = 1e-12);
    }

    #[test]
    fn thm4_examples() {
        let d = ComplexMatrix::from_real_diag(&[1.0, 0.0]);
        let r = thm4_bound(&d, &d, 2.0).unwrap();
        assert_abs_diff_eq!(r.lhs, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.rhs, 1.0, epsilon = 1e-12);
        let h = ComplexMatrix::identity(2).scale(0.5);
        let r = thm4_bound(&h, &h, 2.0).unwrap();
        assert_abs_diff_eq!(r.lhs, 1.0 / 256.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.rhs, 1.0 / 16.0, epsilon = 1e-12);
        let big = ComplexMatrix::identity(2).scale(2.0);
        assert!(matches!(thm4_bound(&big, &big, 2.0), Err(Error::NotContraction(_))));
        assert!(matches!(thm4_bound(&h, &h, 1.5), Err(Error::InvalidExponent(_))));
        assert!(matches!(thm4_bound(&ComplexMatrix::from_real_diag(&[-1.0, 0.5]), &h, 2.0), Err(Error::NotPositive(_))));
    }

    #[test]
    fn positivity_examples() {
        let i = ComplexMatrix::identity(2);
        let z = ComplexMatrix::zeros(2, 2);
        let ok = block_positivity_check(&i, &i, &z, 1).unwrap();
        assert!(ok.positive && ok.schwarz_all_samples);
        let bad = block_positivity_check(&i, &i, &i.scale(2.0), 1).unwrap();
        assert!(!bad.positive && !bad.schwarz_all_samples);
    }

    #[test]
    fn cor5_examples() {
        let u = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = cor5_bound(&Profile::new(&u).unwrap(), 2.0).unwrap();
        assert_abs_diff_eq!(r.lhs, 1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(r.rhs, 1.0, epsilon = 1e-12);
        let r = cor5_bound(&Profile::new(&ComplexMatrix::shift(2)).unwrap(), 2.0).unwrap();
        assert_abs_diff_eq!(r.lhs, 0.0625, epsilon = 1e-9);
        assert_abs_diff_eq!(r.rhs, 1.0, epsilon = 1e-12);
        assert!(r.notes.contains("literal"));
    }
}
