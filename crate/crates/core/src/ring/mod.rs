//! Exact arithmetic: coefficients, polynomials, integer matrices, Smith
//! normal form and ranks.

pub mod coeff;
pub mod cyclotomic;
pub mod euclid;
pub mod laurent;
pub mod matrix;
pub mod rank;
pub mod snf;
pub mod unipoly;

use thiserror::Error;

pub use coeff::{format_rational, is_prime, parse_rational, CoeffDomain, Coefficient, FieldKind};
pub use cyclotomic::{cyclotomic, euler_phi};
pub use euclid::{EuclideanRing, Integers};
pub use laurent::LaurentPoly;
pub use matrix::{IntMatrix, Matrix};
pub use rank::{betti_compare, fraction_rank, fraction_rank_seeded, rank_over, BettiComparison, FAST_PATH_SEED};
pub use snf::{smith_normal_form, smith_normal_form_in, SmithForm};
pub use unipoly::{PolyRing, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("variable `{0}` must be evaluated at a unit")]
    InvalidUnit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad shape: {0}")]
    Shape(String),
}
