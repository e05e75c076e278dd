//! Checks of the identity `c(f)^k c(g) = c(f)^(k-1) c(fg)` for power series over
//! `k[x1..xn]`, together with the surrounding lemmas and worked examples.
//!
//! Every `verified` verdict carries the truncation depth at which it was certified;
//! `refuted` is reserved for polynomial inputs, where all contents are exact.

mod corpus;
mod engine;
mod examples;
mod lemmas;
mod report;

pub use corpus::{
    generate_corpus, generate_ggp_pairs, generate_unit_content_pairs, random_series, run_corpus, CorpusOptions, CorpusPair,
    CorpusRing, CorpusRow, CorpusSummary,
};
pub use engine::{
    default_d_max, dm_check, dm_check_with, dm_exponent, dm_min_exponent, exponent_trail, generator_count_bound,
    reduction_corollary_check, resolve_exponent, unit_content_identity_check, CheckOptions,
};
pub use examples::{generic_counterexample, rush_example_check, CounterexampleReport, RushReport};
pub use lemmas::{drop_generator_check, mingen_perturbation_check};
pub use report::{CertificateRecord, DmReport, ExponentSource, TrailEntry, Verdict, REPORT_SCHEMA};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groebner::IdealError;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DmError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("the exponent k must be at least 1")]
    ZeroExponent,
    #[error("the series is zero")]
    ZeroSeries,
    #[error("c(f) = {0} is not the unit ideal")]
    ContentNotUnit(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("the identity did not verify (verdict {0:?})")]
    NotVerified(Verdict),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
