//! Exact arithmetic substrate: canonical big rationals, decimal literals,
//! closed rational intervals and dense rational polynomials.
//!
//! Nothing in this crate rounds implicitly. The only lossy operations are the
//! explicit outward roundings in [`decimal`], which always widen.

mod decimal;
mod error;
mod interval;
mod poly;
mod rational;

pub use decimal::{outward_round, parse_decimal, round_down, round_up, DecimalInterval};
pub use error::{ExactError, ParseDecimalError};
pub use interval::{interval_arith, IntervalOp, RatInterval, Sign};
pub use poly::{Poly, RationalFunction};
pub use rational::Rational;

pub use num_bigint::BigInt;
