//! Random instance generators, the inequality sweep engine and its reports.
//!
//! A sweep draws instances from seeded generators, evaluates every compatible
//! bound on each, classifies the records against a [`TolerancePolicy`] and
//! aggregates tightness. Reports depend only on the configuration, so two
//! runs of the same suite are byte-identical.
//!
//! [`TolerancePolicy`]: numrad_core::TolerancePolicy

pub mod error;
pub mod generate;
pub mod registry;
pub mod sweep;

pub use error::{HarnessError, Result};
pub use generate::{generate, Arity, GeneratorKind, GeneratorSpec, Instance};
pub use registry::{all_bound_ids, evaluate, lookup, BoundInfo, BoundParams, Context, Outcome, BOUNDS};
pub use sweep::{run_config, run_suite, tightness_csv, tightness_table, SuiteConfig, SweepReport, TightnessRow};
