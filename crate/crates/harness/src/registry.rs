//! The bound vocabulary: what each id consumes and how it is evaluated.

use numrad_core::block_bounds::{PartitionProfile, PinchScheme, SchemeId};
use numrad_core::linalg::PowerFunction;
use numrad_core::product_bounds::{
    cor1_alpha_bounds, cor2_bound, cor5_bound, lem4_record, thm1_bounds, thm2_bounds, thm3_bound, thm4_bound, HolderPair, Pair,
    ProductBoundInput,
};
use numrad_core::random::{hash_str, SeededRng};
use numrad_core::scalar_bounds::{
    buzano_key_check, dragomir, eq11_sandwich, kittaneh2003, kittaneh2005, kittaneh_fg_gap, mccarty_check, mixed_schwarz_gap,
    norm_sum_estimate, fact2_check, refined_cauchy_schwarz, scalar_lemma_checks, spectral_radius_product_estimate, yamazaki,
    DragomirVariant,
};
use numrad_core::{BoundRecord, Error as CoreError, Profile};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::generate::{Arity, GeneratorKind, Instance};

/// Hypothesis class a bound needs beyond its arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    None,
    /// `|A|B = Bᴴ|A|`.
    Intertwined,
    /// `AB = BA` and `|A²|B² = (B²)ᴴ|A²|`.
    Commuting,
    /// Positive `A`, `B` with `‖AB‖ ≤ 1`.
    PositiveContraction,
}

#[derive(Debug, Clone, Copy)]
pub struct BoundInfo {
    pub id: &'static str,
    pub arity: Arity,
    pub hypothesis: Hypothesis,
    /// Violations are anticipated and reported separately.
    pub expected_failure: bool,
}

const fn bound(id: &'static str, arity: Arity, hypothesis: Hypothesis) -> BoundInfo {
    BoundInfo { id, arity, hypothesis, expected_failure: false }
}

use Arity::{Pair as P, Partition as B, Single as S};
use Hypothesis::{Commuting, Intertwined, None as Free, PositiveContraction};

pub const BOUNDS: &[BoundInfo] = &[
    bound("eq1.1.lower", S, Free),
    bound("eq1.1.upper", S, Free),
    bound("eq1.2", S, Free),
    bound("eq1.3.lower", S, Free),
    bound("eq1.3.upper", S, Free),
    bound("eq1.4.first", S, Free),
    bound("eq1.4.second", S, Free),
    BoundInfo { id: "eq1.5.as_printed", arity: S, hypothesis: Free, expected_failure: true },
    bound("eq1.5.squared_norm", S, Free),
    bound("eq2.4", S, Free),
    bound("lem5", P, Intertwined),
    bound("fact1", P, Free),
    bound("fact2", P, Free),
    bound("fact3", P, Free),
    bound("lem7.refined", S, Free),
    bound("lem7.outer", S, Free),
    bound("buzano.key", S, Free),
    bound("pmi", S, Free),
    bound("young", S, Free),
    bound("mccarty", S, Free),
    bound("eq2.1.first", P, Intertwined),
    bound("eq2.1.second", P, Intertwined),
    bound("eq3.2", P, Intertwined),
    bound("eq3.2.second", P, Intertwined),
    bound("eq3.3", P, Intertwined),
    bound("eq3.4.first", P, Intertwined),
    bound("eq3.4.second", P, Intertwined),
    bound("eq3.5", P, Intertwined),
    bound("eq3.6", P, Commuting),
    bound("thm4", P, PositiveContraction),
    bound("cor5", S, Free),
    bound("lem4.positivity", S, Free),
    bound("block.t1", B, Free),
    bound("block.t2", B, Free),
    bound("block.t3", B, Free),
    bound("block.a", B, Free),
    bound("block.b", B, Free),
    bound("block.c", B, Free),
    bound("block.d", B, Free),
    bound("block.2x2", B, Free),
];

pub fn lookup(id: &str) -> Result<&'static BoundInfo> {
    BOUNDS.iter().find(|b| b.id == id).ok_or_else(|| HarnessError::UnknownBoundId(id.to_string()))
}

pub fn all_bound_ids() -> Vec<&'static str> {
    BOUNDS.iter().map(|b| b.id).collect()
}

impl BoundInfo {
    /// Whether instances of `kind` satisfy this bound's arity and hypothesis.
    pub fn accepts(&self, kind: GeneratorKind) -> bool {
        if kind.arity() != self.arity {
            return false;
        }
        match self.hypothesis {
            Hypothesis::None => true,
            Hypothesis::Intertwined => matches!(kind, GeneratorKind::IntertwinedPair | GeneratorKind::CommutingPair),
            Hypothesis::Commuting => kind == GeneratorKind::CommutingPair,
            Hypothesis::PositiveContraction => kind == GeneratorKind::ContractionPair,
        }
    }

    pub fn requirement(&self) -> String {
        let arity = match self.arity {
            Arity::Single => "a single matrix",
            Arity::Pair => "a pair",
            Arity::Partition => "a block partition",
        };
        match self.hypothesis {
            Hypothesis::None => arity.to_string(),
            Hypothesis::Intertwined => format!("{arity} with |A|B = B*|A|"),
            Hypothesis::Commuting => format!("{arity} with AB = BA"),
            Hypothesis::PositiveContraction => format!("{arity} of positive operators with ||AB|| <= 1"),
        }
    }
}

/// Optional fixed parameters; anything left unset is drawn from the
/// evaluation seed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Split exponent: `f = t^α`, `g = t^{1−α}` (also the mixed Schwarz `α`).
    pub alpha: Option<f64>,
    /// First Hölder exponent; the second is conjugate.
    pub holder: Option<f64>,
    pub p: Option<f64>,
}

/// Evaluated records, or why the bound does not apply to this instance.
#[derive(Debug, Clone)]
pub enum Outcome {
    Records(Vec<BoundRecord>),
    NotApplicable(String),
}

/// Cached quantities of one instance, shared by every bound evaluated on it.
#[allow(clippy::large_enum_variant)] // one per instance, never stored in bulk
pub enum Context<'a> {
    Single(Profile),
    Pair(Pair),
    Partition(PartitionProfile<'a>),
}

impl<'a> Context<'a> {
    pub fn new(instance: &'a Instance) -> Result<Self> {
        Ok(match instance {
            Instance::Single(t) => Self::Single(Profile::new(t)?),
            Instance::Pair(a, b) => Self::Pair(Pair::new(a, b)?),
            Instance::Partition(p) => Self::Partition(PartitionProfile::with_default_tolerance(p)?),
        })
    }

    fn arity(&self) -> Arity {
        match self {
            Self::Single(_) => Arity::Single,
            Self::Pair(_) => Arity::Pair,
            Self::Partition(_) => Arity::Partition,
        }
    }
}

struct Draws {
    rng: SeededRng,
    params: BoundParams,
}

impl Draws {
    fn alpha(&mut self) -> f64 {
        let u = self.rng.uniform();
        self.params.alpha.unwrap_or(u)
    }

    fn p(&mut self, lo: f64, hi: f64) -> f64 {
        let u = self.rng.uniform_in(lo, hi);
        self.params.p.unwrap_or(u)
    }

    /// Conjugate pair `(α, β)`, `α ≥ β`, with `α ∈ [2, 6)` unless fixed.
    fn holder(&mut self) -> numrad_core::Result<HolderPair> {
        let u = self.rng.uniform_in(2.0, 6.0);
        HolderPair::from_alpha(self.params.holder.unwrap_or(u))
    }
}

fn pick(records: Vec<BoundRecord>, id: &str) -> Outcome {
    Outcome::Records(records.into_iter().filter(|r| r.bound_id == id).collect())
}

fn one(record: BoundRecord) -> Outcome {
    Outcome::Records(vec![record])
}

/// Evaluate `info` on a prepared context. Random vectors and unset parameters
/// come from a stream keyed by `(seed, bound id)`, so each bound sees the same
/// draws regardless of which other bounds run alongside it.
pub fn evaluate(ctx: &Context, info: &BoundInfo, params: &BoundParams, seed: u64) -> Result<Outcome> {
    if ctx.arity() != info.arity {
        return Err(HarnessError::ArityMismatch { bound_id: info.id.to_string(), needs: info.requirement() });
    }
    let mut d = Draws { rng: SeededRng::derive(seed, hash_str(info.id)), params: *params };
    let outcome = match ctx {
        Context::Single(t) => single(t, info.id, &mut d),
        Context::Pair(pair) => pair_bound(pair, info.id, &mut d),
        Context::Partition(pp) => partition(pp, info.id, &mut d),
    };
    match outcome {
        Ok(o) => Ok(o),
        Err(CoreError::PreconditionFailed(why) | CoreError::InvalidPartition(why)) => Ok(Outcome::NotApplicable(why)),
        Err(CoreError::NotTwoByTwo(n)) => Ok(Outcome::NotApplicable(format!("{n} blocks per side"))),
        Err(e) => Err(e.into()),
    }
}

fn single(t: &Profile, id: &str, d: &mut Draws) -> numrad_core::Result<Outcome> {
    let n = t.dim();
    Ok(match id {
        "eq1.1.lower" => one(eq11_sandwich(t)?.0),
        "eq1.1.upper" => one(eq11_sandwich(t)?.1),
        "eq1.2" => one(kittaneh2003(t)?),
        "eq1.3.lower" => one(kittaneh2005(t)?.0),
        "eq1.3.upper" => one(kittaneh2005(t)?.1),
        "eq1.4.first" => one(yamazaki(t)?.0),
        "eq1.4.second" => one(yamazaki(t)?.1),
        "eq1.5.as_printed" => one(dragomir(t, DragomirVariant::AsPrinted)?),
        "eq1.5.squared_norm" => one(dragomir(t, DragomirVariant::SquaredNorm)?),
        "eq2.4" => {
            let (x, y) = (d.rng.complex_vector(n), d.rng.complex_vector(n));
            let alpha = d.alpha();
            one(mixed_schwarz_gap(t.matrix(), &x, &y, alpha)?)
        }
        "lem7.refined" | "lem7.outer" => {
            // Unit vectors only: the refinement term is defined at unit norm.
            let (x, y) = (d.rng.unit_vector(n), d.rng.unit_vector(n));
            let p = d.params.p.unwrap_or(*d.rng.pick(&[2.0, 3.0, 4.0]));
            let (refined, outer) = refined_cauchy_schwarz(t.abs()?, &x, &y, p)?;
            one(if id == "lem7.refined" { refined } else { outer })
        }
        "buzano.key" => {
            let (x, y, e) = (d.rng.complex_vector(n), d.rng.complex_vector(n), d.rng.unit_vector(n));
            one(buzano_key_check(&x, &y, &e)?)
        }
        "pmi" | "young" => {
            let (a, b) = (d.rng.normal().exp(), d.rng.normal().exp());
            let h = d.holder()?;
            let p = d.p(1.0, 3.0);
            pick(scalar_lemma_checks(a, b, h.alpha(), h.beta(), p)?, id)
        }
        "mccarty" => {
            let x = d.rng.unit_vector(n);
            let p = d.p(1.0, 4.0);
            one(mccarty_check(t.abs()?, &x, p)?)
        }
        "cor5" => {
            let p = d.p(2.0, 4.0);
            one(cor5_bound(t, p)?)
        }
        "lem4.positivity" => {
            // [[|T|, Tᴴ], [T, |Tᴴ|]] is always positive.
            let seed = d.rng.index(usize::MAX) as u64;
            one(lem4_record(t.abs()?, t.abs_adjoint()?, t.matrix(), seed)?)
        }
        other => unreachable!("{other} is not a single-matrix bound"),
    })
}

fn pair_bound(pair: &Pair, id: &str, d: &mut Draws) -> numrad_core::Result<Outcome> {
    let (a, b) = (pair.a.matrix(), pair.b.matrix());
    let n = pair.a.dim();
    Ok(match id {
        "eq2.1.first" | "eq2.1.second" => {
            let (f, g) = PowerFunction::complementary_pair(d.alpha())?;
            let (first, second) = thm1_bounds(&ProductBoundInput::new(pair, f, g, 1.0, None)?)?;
            one(if id == "eq2.1.first" { first } else { second })
        }
        "eq3.2" | "eq3.2.second" => {
            let (first, second) = cor1_alpha_bounds(pair, d.alpha())?;
            one(if id == "eq3.2" { first } else { second })
        }
        "eq3.3" => one(cor2_bound(pair)?),
        "eq3.4.first" | "eq3.4.second" | "eq3.5" | "eq3.6" => {
            let (f, g) = PowerFunction::complementary_pair(d.alpha())?;
            let h = d.holder()?;
            // βp ≥ 2 keeps the inner power map convex.
            let p = d.p((2.0 / h.beta()).max(1.0), 3.0);
            let input = ProductBoundInput::new(pair, f, g, p, Some(h))?;
            if id == "eq3.6" {
                one(thm3_bound(&input)?)
            } else {
                let (first, second, third) = thm2_bounds(&input)?;
                one(match id {
                    "eq3.4.first" => first,
                    "eq3.4.second" => second,
                    _ => third,
                })
            }
        }
        "lem5" => {
            let (x, y) = (d.rng.complex_vector(n), d.rng.complex_vector(n));
            let (f, g) = PowerFunction::complementary_pair(d.alpha())?;
            one(kittaneh_fg_gap(a, b, &x, &y, f, g)?)
        }
        "thm4" => {
            let p = d.p(2.0, 4.0);
            one(thm4_bound(a, b, p)?)
        }
        // Facts 1 and 2 concern positive operators; feed the moduli.
        "fact1" => one(norm_sum_estimate(pair.a.abs()?, pair.b.abs()?)?),
        "fact2" => one(fact2_check(pair.a.abs()?, pair.b.abs()?)?),
        "fact3" => one(spectral_radius_product_estimate(a, b)?),
        other => unreachable!("{other} is not a pair bound"),
    })
}

fn partition(pp: &PartitionProfile, id: &str, d: &mut Draws) -> numrad_core::Result<Outcome> {
    if id == "block.2x2" {
        return Ok(one(pp.two_by_two_closed_form()?));
    }
    let scheme_id: SchemeId = id.trim_start_matches("block.").parse()?;
    let scheme = if scheme_id.needs_power_functions() { PinchScheme::with_alpha(scheme_id, d.alpha())? } else { PinchScheme::new(scheme_id) };
    Ok(one(pp.block_bound(&scheme)?))
}
