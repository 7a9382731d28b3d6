//! Certified rational enclosures of the constants in the asymptotic number
//! of labelled planar graphs: `t0`, `nu`, `rho` and `exp(-nu)`.
//!
//! Every enclosure comes with a certificate that the independent checker in
//! `planarconst-cert` replays using exact rational arithmetic.
//!
//! ```
//! let rho = planarconst::compute_rho().unwrap();
//! assert!(rho.lo() > &planarconst_exact::parse_decimal("0.03672841251").unwrap());
//! ```

pub mod bound;
mod error;
pub mod functions;
pub mod pipeline;
pub mod transcendental;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
pub use functions::{exact_poly_at, Evaluator};
pub use pipeline::{
    compute_all, compute_exp_neg_nu, compute_nu, compute_rho, compute_t0, Config, ConstantReport,
    Pipeline,
};
