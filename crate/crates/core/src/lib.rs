//! Content ideals of polynomials and power series over `k[x1..xn]`, with certified checks
//! of the Dedekind-Mertens identity `c(f)^k c(g) = c(f)^(k-1) c(fg)` in `R[[X]]`.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: exact fields (`Q`, `F_p`) and sparse polynomials.
//! * [`groebner`]: ideals, reduced Gröbner bases, membership with cofactors, local
//!   minimal generator counts and reduction numbers.
//! * [`series`]: truncated power series and the unit-tail form `sum a_j u_j X^j`, whose
//!   content is exactly `(a_0, .., a_n)`.
//! * [`dmcheck`]: the verification engine and the worked examples.
//! * [`exprio`]: polynomial grammar, series documents and report JSON.
//! * [`cli`]: the `dmkit` command line driver.

pub mod algebra;
pub mod cli;
pub mod dmcheck;
pub mod exprio;
pub mod groebner;
pub mod series;

pub use algebra::{Field, FieldElement, Monomial, MonomialOrder, Polynomial, RationalPoint, RingSpec};
pub use groebner::{Ideal, MembershipCertificate};
pub use series::{TruncatedSeries, UnitSeries, UnitTailSeries};
