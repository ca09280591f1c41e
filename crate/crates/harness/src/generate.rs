//! Seeded random instances, one family per hypothesis class.

use std::f64::consts::TAU;

use num_complex::Complex64;
use numrad_core::block_bounds::BlockPartition;
use numrad_core::linalg::{absolute_value, hermitian_eigen, is_positive, operator_norm, polar};
use numrad_core::product_bounds::{commutator_residual, intertwining_residual};
use numrad_core::random::SeededRng;
use numrad_core::ComplexMatrix;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{HarnessError, Result};

/// Attempts allowed when a generated object must pass a filter.
pub const MAX_ATTEMPTS: usize = 100;

/// Residual allowed on the relations a generator promises.
const CLASS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Ginibre,
    Hermitian,
    Positive,
    Unitary,
    Normal,
    NilpotentShift,
    CommutingPair,
    IntertwinedPair,
    ContractionPair,
    BlockPartition,
}

/// What a generator emits, and therefore which bounds can consume it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arity {
    Single,
    Pair,
    Partition,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 10] = [
        Self::Ginibre,
        Self::Hermitian,
        Self::Positive,
        Self::Unitary,
        Self::Normal,
        Self::NilpotentShift,
        Self::CommutingPair,
        Self::IntertwinedPair,
        Self::ContractionPair,
        Self::BlockPartition,
    ];

    pub fn arity(self) -> Arity {
        match self {
            Self::CommutingPair | Self::IntertwinedPair | Self::ContractionPair => Arity::Pair,
            Self::BlockPartition => Arity::Partition,
            _ => Arity::Single,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ginibre => "ginibre",
            Self::Hermitian => "hermitian",
            Self::Positive => "positive",
            Self::Unitary => "unitary",
            Self::Normal => "normal",
            Self::NilpotentShift => "nilpotent_shift",
            Self::CommutingPair => "commuting_pair",
            Self::IntertwinedPair => "intertwined_pair",
            Self::ContractionPair => "contraction_pair",
            Self::BlockPartition => "block_partition",
        }
    }
}

fn unit_scale() -> f64 {
    1.0
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// One random family.
///
/// For `block_partition`, `dim` is the number of blocks per side; fixed
/// `block_sizes` may be given, otherwise every draw picks palindromic sizes
/// in `1..=3` (the anti-diagonal schemes need square anti-diagonal blocks).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(default)]
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_sizes: Option<Vec<usize>>,
    pub seed: u64,
    #[serde(default = "unit_scale")]
    pub scale: f64,
    /// Zero the off-diagonal blocks of a partition.
    #[serde(default, skip_serializing_if = "is_false")]
    pub block_diagonal: bool,
    /// Per-generator trial count; falls back to the suite's `trials_per`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, dim: usize, seed: u64) -> Self {
        Self { kind, dim, block_sizes: None, seed, scale: 1.0, block_diagonal: false, trials: None }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn with_block_sizes(mut self, sizes: Vec<usize>) -> Self {
        self.dim = sizes.len();
        self.block_sizes = Some(sizes);
        self
    }

    pub fn block_diagonal(mut self) -> Self {
        self.block_diagonal = true;
        self
    }

    /// Same family, different seed.
    pub fn reseeded(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::InvalidGenerator(msg));
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return bad(format!("scale {} must be positive and finite", self.scale));
        }
        match &self.block_sizes {
            Some(sizes) if self.kind != GeneratorKind::BlockPartition => bad(format!("{} does not take block_sizes", self.kind.as_str())),
            Some(sizes) if sizes.is_empty() || sizes.contains(&0) => bad(format!("block sizes {sizes:?} must be positive")),
            Some(sizes) if sizes.len() != self.dim && self.dim != 0 => bad(format!("dim {} disagrees with block sizes {sizes:?}", self.dim)),
            None if self.dim == 0 => bad(format!("{} needs dim >= 1", self.kind.as_str())),
            _ if self.block_diagonal && self.kind != GeneratorKind::BlockPartition => bad("block_diagonal only applies to block_partition".into()),
            _ => Ok(()),
        }
    }
}

/// A generated input.
#[derive(Debug, Clone)]
pub enum Instance {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
    Partition(BlockPartition),
}

impl Instance {
    pub fn arity(&self) -> Arity {
        match self {
            Self::Single(_) => Arity::Single,
            Self::Pair(..) => Arity::Pair,
            Self::Partition(_) => Arity::Partition,
        }
    }

    /// Matrix JSON, `{"a", "b"}` pair JSON, or partition JSON.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::Single(t) => serde_json::to_value(t).expect("matrix JSON"),
            Self::Pair(a, b) => json!({ "a": a, "b": b }),
            Self::Partition(p) => serde_json::to_value(p).expect("partition JSON"),
        }
    }

    /// Inverse of [`Instance::to_json`]; the shape is detected from the keys.
    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let parse = |e: serde_json::Error| HarnessError::Input(e.to_string());
        let obj = value.as_object().ok_or_else(|| HarnessError::Input("expected a JSON object".into()))?;
        if obj.contains_key("a") && obj.contains_key("b") {
            let a = serde_json::from_value(obj["a"].clone()).map_err(parse)?;
            let b = serde_json::from_value(obj["b"].clone()).map_err(parse)?;
            Ok(Self::Pair(a, b))
        } else if obj.contains_key("block_sizes") {
            Ok(Self::Partition(serde_json::from_value(value).map_err(parse)?))
        } else {
            Ok(Self::Single(serde_json::from_value(value).map_err(parse)?))
        }
    }
}

/// Draw one instance. Equal specs give identical instances.
pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = SeededRng::new(spec.seed);
    let (n, s) = (spec.dim, spec.scale);
    let inst = match spec.kind {
        GeneratorKind::Ginibre => Instance::Single(rng.ginibre(n, n).scale(s)),
        GeneratorKind::Hermitian => Instance::Single(hermitian(&mut rng, n).scale(s)),
        GeneratorKind::Positive => Instance::Single(positive(&mut rng, n).scale(s)),
        GeneratorKind::Unitary => Instance::Single(unitary(&mut rng, n)?.scale(s)),
        GeneratorKind::Normal => Instance::Single(normal(&mut rng, n)?.scale(s)),
        GeneratorKind::NilpotentShift => Instance::Single(ComplexMatrix::shift(n).scale(s)),
        GeneratorKind::CommutingPair => commuting_pair(&mut rng, spec)?,
        GeneratorKind::IntertwinedPair => intertwined_pair(&mut rng, spec)?,
        GeneratorKind::ContractionPair => contraction_pair(&mut rng, spec)?,
        GeneratorKind::BlockPartition => Instance::Partition(block_partition(&mut rng, spec)?),
    };
    verify_class(spec, &inst)?;
    Ok(inst)
}

fn hermitian(rng: &mut SeededRng, n: usize) -> ComplexMatrix {
    rng.ginibre(n, n).hermitian_part()
}

fn positive(rng: &mut SeededRng, n: usize) -> ComplexMatrix {
    let g = rng.ginibre(n, n);
    g.adjoint().matmul(&g).scale(1.0 / n as f64).hermitian_part()
}

/// Haar unitary: the unitary polar factor of a Ginibre matrix.
fn unitary(rng: &mut SeededRng, n: usize) -> Result<ComplexMatrix> {
    Ok(polar(&rng.ginibre(n, n))?.unitary)
}

fn normal(rng: &mut SeededRng, n: usize) -> Result<ComplexMatrix> {
    let u = unitary(rng, n)?;
    let d = ComplexMatrix::from_diag(&rng.complex_vector(n));
    Ok(u.matmul(&d).matmul(&u.adjoint()))
}

/// Real coefficients of a polynomial of degree 1..=3 with a nonzero top
/// coefficient, so `h(X)` is not a multiple of `I` unless `X` is.
fn real_polynomial(rng: &mut SeededRng) -> Vec<f64> {
    let degree = 1 + rng.index(3);
    let mut coeffs: Vec<f64> = (0..=degree).map(|_| rng.normal()).collect();
    if coeffs[degree].abs() < 0.1 {
        coeffs[degree] = 0.1f64.copysign(coeffs[degree]);
    }
    coeffs
}

/// `h(H)` for Hermitian `H` via its eigendecomposition.
fn hermitian_poly(h: &ComplexMatrix, coeffs: &[f64]) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(h)?;
    Ok(eig.apply(|x| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)))
}

fn is_scalar_multiple_of_identity(b: &ComplexMatrix) -> bool {
    let n = b.rows();
    let c = b.trace() / n as f64;
    let residual = (b - &ComplexMatrix::identity(n).scale_c(c)).max_abs();
    residual <= 1e-9 * (1.0 + b.max_abs())
}

/// `A` Ginibre, `B = h(|A|/‖A‖)`: `|A|` commutes with the Hermitian `B`, so
/// `|A|B = Bᴴ|A|` by construction.
fn intertwined_pair(rng: &mut SeededRng, spec: &GeneratorSpec) -> Result<Instance> {
    let n = spec.dim;
    for _ in 0..MAX_ATTEMPTS {
        let a = rng.ginibre(n, n).scale(spec.scale);
        let norm = operator_norm(&a)?;
        let coeffs = real_polynomial(rng);
        let b = hermitian_poly(&absolute_value(&a)?.scale(1.0 / norm), &coeffs)?;
        if n > 1 && is_scalar_multiple_of_identity(&b) {
            continue;
        }
        return Ok(Instance::Pair(a, b));
    }
    Err(HarnessError::ResamplingExhausted { kind: spec.kind.as_str(), seed: spec.seed })
}

/// `A = e^{iφ}H` with `H` Hermitian and `B = q(H)` for a real polynomial `q`
/// (a polynomial in `A` with complex coefficients). Then `AB = BA` and
/// `|A²|B² = (B²)ᴴ|A²|`; both relations are checked and failures resampled.
fn commuting_pair(rng: &mut SeededRng, spec: &GeneratorSpec) -> Result<Instance> {
    let n = spec.dim;
    for _ in 0..MAX_ATTEMPTS {
        let h = hermitian(rng, n);
        let phase = Complex64::from_polar(1.0, TAU * rng.uniform());
        let a = h.scale_c(phase).scale(spec.scale);
        let coeffs = real_polynomial(rng);
        let norm = operator_norm(&h)?.max(f64::MIN_POSITIVE);
        let b = hermitian_poly(&h.scale(1.0 / norm), &coeffs)?;
        if n > 1 && is_scalar_multiple_of_identity(&b) {
            continue;
        }
        let (comm, _) = commutator_residual(&a, &b)?;
        let scale = 1.0 + operator_norm(&a)? * operator_norm(&b)?;
        let (a2, b2) = (a.matmul(&a), b.matmul(&b));
        let (second, _) = intertwining_residual(&a2, &b2)?;
        if comm <= CLASS_TOL * scale && second <= CLASS_TOL * (1.0 + operator_norm(&a2)? * operator_norm(&b2)?) {
            return Ok(Instance::Pair(a, b));
        }
    }
    Err(HarnessError::ResamplingExhausted { kind: spec.kind.as_str(), seed: spec.seed })
}

/// Random positive `A`, `B`, both rescaled so `‖AB‖ = min(0.9·scale, 1)`.
fn contraction_pair(rng: &mut SeededRng, spec: &GeneratorSpec) -> Result<Instance> {
    let n = spec.dim;
    for _ in 0..MAX_ATTEMPTS {
        let a = positive(rng, n);
        let b = positive(rng, n);
        let norm = operator_norm(&a.matmul(&b))?;
        if norm <= 1e-12 {
            continue;
        }
        let target = (0.9 * spec.scale).min(1.0);
        let k = (target / norm).sqrt();
        let (a, b) = (a.scale(k), b.scale(k));
        if operator_norm(&a.matmul(&b))? <= 1.0 {
            return Ok(Instance::Pair(a, b));
        }
    }
    Err(HarnessError::ResamplingExhausted { kind: spec.kind.as_str(), seed: spec.seed })
}

fn palindromic_sizes(rng: &mut SeededRng, blocks: usize) -> Vec<usize> {
    let mut sizes = vec![0; blocks];
    for i in 0..blocks.div_ceil(2) {
        let s = 1 + rng.index(3);
        sizes[i] = s;
        sizes[blocks - 1 - i] = s;
    }
    sizes
}

fn block_partition(rng: &mut SeededRng, spec: &GeneratorSpec) -> Result<BlockPartition> {
    let sizes = match &spec.block_sizes {
        Some(s) => s.clone(),
        None => palindromic_sizes(rng, spec.dim),
    };
    let blocks = (0..sizes.len())
        .map(|i| {
            (0..sizes.len())
                .map(|j| {
                    if spec.block_diagonal && i != j {
                        ComplexMatrix::zeros(sizes[i], sizes[j])
                    } else {
                        rng.ginibre(sizes[i], sizes[j]).scale(spec.scale)
                    }
                })
                .collect()
        })
        .collect();
    Ok(BlockPartition::new(sizes, blocks)?)
}

/// Post-check of the promised class invariants.
fn verify_class(spec: &GeneratorSpec, inst: &Instance) -> Result<()> {
    let fail = |what: &str| Err(HarnessError::ClassViolation { kind: spec.kind.as_str(), seed: spec.seed, what: what.to_string() });
    match (spec.kind, inst) {
        (GeneratorKind::Unitary, Instance::Single(u)) => {
            let n = u.rows();
            let residual = operator_norm(&(&u.adjoint().matmul(u) - &ComplexMatrix::identity(n).scale(spec.scale * spec.scale)))?;
            if residual > CLASS_TOL * (1.0 + spec.scale * spec.scale) {
                return fail("unitarity");
            }
        }
        (GeneratorKind::Positive, Instance::Single(p)) if !is_positive(p) => return fail("positivity"),
        (GeneratorKind::ContractionPair, Instance::Pair(a, b)) if !(is_positive(a) && is_positive(b)) => return fail("positivity"),
        (GeneratorKind::IntertwinedPair, Instance::Pair(a, b)) => {
            let (r, _) = intertwining_residual(a, b)?;
            if r > CLASS_TOL * (1.0 + operator_norm(a)? * operator_norm(b)?) {
                return fail("intertwining");
            }
        }
        _ => {}
    }
    Ok(())
}
