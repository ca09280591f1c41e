//! Block operator matrices and their pinchings.
//!
//! A partition `A = [A_ij]` is collapsed to a small nonnegative matrix of
//! blockwise norms/radii (the pinch) whose numerical or spectral radius
//! bounds `w(A)`. Indices are 0-based here; the anti-diagonal of an `n×n`
//! grid is `j = n − 1 − i`. Where a block is both diagonal and anti-diagonal
//! (the centre of an odd grid) the diagonal rule applies.

use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_complementary, modulus_power, operator_norm, spectral_radius, PowerFunction};
use crate::matrix::{ComplexMatrix, MatrixJson};
use crate::numrad::{default_tolerance, numerical_radius};
use crate::record::BoundRecord;

/// Square operator matrix with one size sequence for rows and columns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct BlockPartition {
    block_sizes: Vec<usize>,
    blocks: Vec<Vec<ComplexMatrix>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionJson {
    pub block_sizes: Vec<usize>,
    pub blocks: Vec<Vec<MatrixJson>>,
}

impl TryFrom<PartitionJson> for BlockPartition {
    type Error = Error;

    fn try_from(json: PartitionJson) -> Result<Self> {
        let blocks = json
            .blocks
            .into_iter()
            .map(|row| row.into_iter().map(ComplexMatrix::try_from).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.block_sizes, blocks)
    }
}

impl From<BlockPartition> for PartitionJson {
    fn from(p: BlockPartition) -> Self {
        Self {
            block_sizes: p.block_sizes,
            blocks: p.blocks.into_iter().map(|row| row.into_iter().map(MatrixJson::from).collect()).collect(),
        }
    }
}

impl BlockPartition {
    pub fn new(block_sizes: Vec<usize>, blocks: Vec<Vec<ComplexMatrix>>) -> Result<Self> {
        let n = block_sizes.len();
        if n == 0 || block_sizes.contains(&0) {
            return Err(Error::InvalidPartition(format!("block sizes must be positive and non-empty, got {block_sizes:?}")));
        }
        if blocks.len() != n || blocks.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPartition(format!("expected a {n}x{n} grid of blocks")));
        }
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                if b.rows() != block_sizes[i] || b.cols() != block_sizes[j] {
                    return Err(Error::InvalidPartition(format!(
                        "block ({i},{j}) is {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        block_sizes[i],
                        block_sizes[j]
                    )));
                }
            }
        }
        Ok(Self { block_sizes, blocks })
    }

    /// Cuts a square matrix along `block_sizes`.
    pub fn split(full: &ComplexMatrix, block_sizes: Vec<usize>) -> Result<Self> {
        let total: usize = block_sizes.iter().sum();
        if full.rows() != total || full.cols() != total {
            return Err(Error::InvalidPartition(format!("sizes sum to {total}, matrix is {}x{}", full.rows(), full.cols())));
        }
        let offsets: Vec<usize> = block_sizes.iter().scan(0, |acc, &k| Some(std::mem::replace(acc, *acc + k))).collect();
        let blocks = (0..block_sizes.len())
            .map(|i| {
                (0..block_sizes.len()).map(|j| full.submatrix(offsets[i], offsets[j], block_sizes[i], block_sizes[j])).collect()
            })
            .collect();
        Self::new(block_sizes, blocks)
    }

    pub fn n(&self) -> usize {
        self.block_sizes.len()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn block(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.blocks[i][j]
    }

    pub fn blocks(&self) -> &[Vec<ComplexMatrix>] {
        &self.blocks
    }

    pub fn assemble(&self) -> ComplexMatrix {
        ComplexMatrix::from_blocks(&self.blocks)
    }

    /// `k_i = k_{n−1−i}`, so every anti-diagonal block is square.
    pub fn is_palindromic(&self) -> bool {
        self.block_sizes.iter().eq(self.block_sizes.iter().rev())
    }

    /// Applies a permutation `π` of block indices: block `(i, j)` of the
    /// result is block `(π(i), π(j))` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&k| k >= n || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::InvalidPartition(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let sizes = perm.iter().map(|&k| self.block_sizes[k]).collect();
        let blocks = perm.iter().map(|&pi| perm.iter().map(|&pj| self.blocks[pi][pj].clone()).collect()).collect();
        Self::new(sizes, blocks)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeId {
    T1,
    T2,
    T3,
    A,
    B,
    C,
    D,
}

impl SchemeId {
    pub const ALL: [SchemeId; 7] = [Self::T1, Self::T2, Self::T3, Self::A, Self::B, Self::C, Self::D];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::T1 => "t1",
            Self::T2 => "t2",
            Self::T3 => "t3",
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
        }
    }

    pub fn bound_id(self) -> &'static str {
        match self {
            Self::T1 => "block.t1",
            Self::T2 => "block.t2",
            Self::T3 => "block.t3",
            Self::A => "block.a",
            Self::B => "block.b",
            Self::C => "block.c",
            Self::D => "block.d",
        }
    }

    /// Schemes whose bound is the spectral radius of the pinch.
    pub fn uses_spectral_radius(self) -> bool {
        matches!(self, Self::B | Self::D)
    }

    pub fn needs_power_functions(self) -> bool {
        matches!(self, Self::C | Self::D)
    }

    /// Schemes with a dedicated anti-diagonal rule.
    pub fn uses_anti_diagonal(self) -> bool {
        matches!(self, Self::A | Self::B | Self::C | Self::D)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown scheme {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PinchScheme {
    pub id: SchemeId,
    pub f: Option<PowerFunction>,
    pub g: Option<PowerFunction>,
}

impl PinchScheme {
    pub fn new(id: SchemeId) -> Self {
        Self { id, f: None, g: None }
    }

    pub fn with_functions(id: SchemeId, f: PowerFunction, g: PowerFunction) -> Result<Self> {
        check_complementary(&f, &g)?;
        Ok(Self { id, f: Some(f), g: Some(g) })
    }

    /// `f = t^α`, `g = t^{1−α}`.
    pub fn with_alpha(id: SchemeId, alpha: f64) -> Result<Self> {
        let (f, g) = PowerFunction::complementary_pair(alpha)?;
        Self::with_functions(id, f, g)
    }

    fn functions(&self) -> Result<(PowerFunction, PowerFunction)> {
        match (self.f, self.g) {
            (Some(f), Some(g)) => {
                check_complementary(&f, &g)?;
                Ok((f, g))
            }
            _ => Err(Error::SchemeParameterMissing(self.id.to_string())),
        }
    }
}

/// Per-block quantities shared across schemes, computed on first use.
#[derive(Debug)]
pub struct PartitionProfile<'a> {
    partition: &'a BlockPartition,
    tol: f64,
    norms: Vec<Vec<OnceCell<f64>>>,
    radii: Vec<Vec<OnceCell<f64>>>,
    fg_terms: RefCell<HashMap<(usize, usize, u64), f64>>,
    full_radius: OnceCell<f64>,
}

fn grid(n: usize) -> Vec<Vec<OnceCell<f64>>> {
    (0..n).map(|_| (0..n).map(|_| OnceCell::new()).collect()).collect()
}

fn cached(cell: &OnceCell<f64>, init: impl FnOnce() -> Result<f64>) -> Result<f64> {
    if let Some(v) = cell.get() {
        return Ok(*v);
    }
    let v = init()?;
    Ok(*cell.get_or_init(|| v))
}

impl<'a> PartitionProfile<'a> {
    /// All numerical radii (blocks, pinch, full matrix) use `tol`.
    pub fn new(partition: &'a BlockPartition, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol));
        }
        let n = partition.n();
        Ok(Self { partition, tol, norms: grid(n), radii: grid(n), fg_terms: RefCell::new(HashMap::new()), full_radius: OnceCell::new() })
    }

    /// Tolerance `1e-9·(1+‖A‖)` of the assembled matrix.
    pub fn with_default_tolerance(partition: &'a BlockPartition) -> Result<Self> {
        Self::new(partition, default_tolerance(operator_norm(&partition.assemble())?))
    }

    pub fn partition(&self) -> &BlockPartition {
        self.partition
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn norm(&self, i: usize, j: usize) -> Result<f64> {
        cached(&self.norms[i][j], || operator_norm(self.partition.block(i, j)))
    }

    pub fn radius(&self, i: usize, j: usize) -> Result<f64> {
        cached(&self.radii[i][j], || {
            let b = self.partition.block(i, j);
            if !b.is_square() {
                return Err(Error::InvalidPartition(format!(
                    "block ({i},{j}) is {}x{}; anti-diagonal schemes need equal sizes k_i = k_(n-1-i)",
                    b.rows(),
                    b.cols()
                )));
            }
            Ok(numerical_radius(b, self.tol)?.value)
        })
    }

    /// `½‖f²(|A_ij|) + g²(|A_ijᴴ|)‖`.
    pub fn fg_term(&self, i: usize, j: usize, f: PowerFunction, g: PowerFunction) -> Result<f64> {
        let key = (i, j, f.exponent().to_bits());
        if let Some(v) = self.fg_terms.borrow().get(&key) {
            return Ok(*v);
        }
        let b = self.partition.block(i, j);
        if !b.is_square() {
            return Err(Error::InvalidPartition(format!("block ({i},{j}) is {}x{}; schemes c and d need it square", b.rows(), b.cols())));
        }
        let v = 0.5 * operator_norm(&(&modulus_power(b, f.exponent())? + &modulus_power(&b.adjoint(), g.exponent())?))?;
        self.fg_terms.borrow_mut().insert(key, v);
        Ok(v)
    }

    /// `w(A)` of the assembled matrix.
    pub fn full_radius(&self) -> Result<f64> {
        cached(&self.full_radius, || Ok(numerical_radius(&self.partition.assemble(), self.tol)?.value))
    }

    /// Entry rule of the anti-diagonal schemes before symmetrization.
    fn entry(&self, scheme: &PinchScheme, i: usize, j: usize) -> Result<f64> {
        let n = self.partition.n();
        let diagonal = i == j;
        let anti = j == n - 1 - i;
        match scheme.id {
            SchemeId::T1 => self.norm(i, j),
            SchemeId::T2 if diagonal => {
                let b = self.partition.block(i, i);
                Ok(0.5 * (self.norm(i, i)? + operator_norm(&b.matmul(b))?.sqrt()))
            }
            SchemeId::T2 => self.norm(i, j),
            SchemeId::T3 | SchemeId::A | SchemeId::B if diagonal => self.radius(i, i),
            SchemeId::A | SchemeId::B if anti => self.radius(i, j),
            SchemeId::C | SchemeId::D if diagonal || anti => {
                let (f, g) = scheme.functions()?;
                self.fg_term(i, j, f, g)
            }
            _ => self.norm(i, j),
        }
    }

    /// The pinch matrix, entrywise nonnegative.
    pub fn pinch(&self, scheme: &PinchScheme) -> Result<Vec<Vec<f64>>> {
        if scheme.id.needs_power_functions() {
            scheme.functions()?;
        }
        if scheme.id.uses_anti_diagonal() && !self.partition.is_palindromic() {
            return Err(Error::InvalidPartition(format!(
                "scheme {} needs square anti-diagonal blocks, sizes {:?} are not palindromic",
                scheme.id,
                self.partition.block_sizes()
            )));
        }
        let n = self.partition.n();
        let mut raw = vec![vec![0.0; n]; n];
        for (i, row) in raw.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.entry(scheme, i, j)?;
            }
        }
        if !scheme.id.uses_spectral_radius() {
            return Ok(raw);
        }
        // Symmetrized schemes: (P + Pᵀ)/2. The diagonal is unchanged.
        Ok((0..n).map(|i| (0..n).map(|j| 0.5 * (raw[i][j] + raw[j][i])).collect()).collect())
    }

    /// `w(pinch)` or `r(pinch)` depending on the scheme.
    pub fn pinch_bound(&self, scheme: &PinchScheme) -> Result<(Vec<Vec<f64>>, f64)> {
        let p = self.pinch(scheme)?;
        let m = real_matrix(&p);
        let value = if scheme.id.uses_spectral_radius() { spectral_radius(&m)? } else { numerical_radius(&m, self.tol)?.value };
        Ok((p, value))
    }

    pub fn block_bound(&self, scheme: &PinchScheme) -> Result<BoundRecord> {
        let (_, rhs) = self.pinch_bound(scheme)?;
        let mut note = format!("scheme = {}", scheme.id);
        if let (Some(f), true) = (scheme.f, scheme.id.needs_power_functions()) {
            note.push_str(&format!(", alpha = {}", f.exponent()));
        }
        Ok(BoundRecord::new(scheme.id.bound_id(), self.full_radius()?, rhs).with_note(note))
    }

    /// `½(w₁₁ + w₂₂ + √((w₁₁−w₂₂)² + (w₁₂+w₂₁)²))` for a 2×2 grid.
    pub fn two_by_two_closed_form(&self) -> Result<BoundRecord> {
        let n = self.partition.n();
        if n != 2 {
            return Err(Error::NotTwoByTwo(n));
        }
        let (w11, w22) = (self.radius(0, 0)?, self.radius(1, 1)?);
        let off = self.radius(0, 1)? + self.radius(1, 0)?;
        let rhs = 0.5 * (w11 + w22 + ((w11 - w22).powi(2) + off * off).sqrt());
        let sym = spectral_radius(&real_matrix(&[vec![w11, off / 2.0], vec![off / 2.0, w22]]))?;
        let record = BoundRecord::new("block.2x2", self.full_radius()?, rhs).with_note(format!("r(symmetrized pinch) = {sym:.15e}"));
        Ok(if (sym - rhs).abs() > 1e-10 { record.with_note("closed form disagrees with r of the symmetrized pinch") } else { record })
    }
}

pub fn real_matrix(p: &[Vec<f64>]) -> ComplexMatrix {
    let n = p.len();
    ComplexMatrix::from_fn(n, n, |i, j| p[i][j].into())
}

pub fn pinch(partition: &BlockPartition, scheme: &PinchScheme, tol: f64) -> Result<Vec<Vec<f64>>> {
    PartitionProfile::new(partition, tol)?.pinch(scheme)
}

/// `w(A) ≤ w(pinch)` (or `r(pinch)` for the symmetrized schemes).
pub fn block_bound(partition: &BlockPartition, scheme: &PinchScheme, tol: f64) -> Result<BoundRecord> {
    PartitionProfile::new(partition, tol)?.block_bound(scheme)
}

pub fn two_by_two_closed_form(partition: &BlockPartition, tol: f64) -> Result<BoundRecord> {
    PartitionProfile::new(partition, tol)?.two_by_two_closed_form()
}
