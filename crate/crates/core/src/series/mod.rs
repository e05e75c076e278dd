//! Power series over `R = k[x1..xn]`: truncations, units of `R[[X]]`, and the unit-tail
//! form `f = sum_j a_j u_j X^j` whose content is exactly `(a_0, .., a_n)`.

mod truncated;
mod unit;
mod unit_tail;

pub use truncated::{series_mul, stabilization_index, truncated_content, TruncatedSeries};
pub use unit::{unit_inverse, UnitSeries};
pub use unit_tail::{content, expand, pdeg_upper_bound, unit_tail_rewrite, UnitTailSeries, UnitTerm};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::groebner::IdealError;

/// Working precision used when none is given.
pub const DEFAULT_PRECISION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("unit known to precision {available}, needed {needed}")]
    InsufficientUnitPrecision { needed: usize, available: usize },
    #[error("requested coefficient {requested} beyond precision {precision}")]
    PrecisionExceeded { requested: usize, precision: usize },
    #[error("constant term {0} of a unit must be a nonzero scalar")]
    NotAUnit(String),
    #[error("exponent {0} appears twice in the term list")]
    DuplicateExponent(usize),
    #[error("recurrence row for coefficient {index} does not reproduce it")]
    RecurrenceMismatch { index: usize },
    #[error("coefficient {index} is not in the ideal of the leading coefficients")]
    NotStabilized { index: usize },
}
