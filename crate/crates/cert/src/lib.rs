//! Certificates for rational enclosures of the planar-graph constants, and a
//! checker that replays them using exact rational arithmetic only.
//!
//! This crate knows the closed-form expressions ([`formula`]), the shape of
//! the evidence ([`evidence`]), the file format ([`file`]) and how to replay
//! all of it ([`check`], [`verify()`]). It does not know how evidence is found:
//! no search, no adaptive precision, no bisection. Construction lives in the
//! `planarconst` crate, which this crate does not depend on.

pub mod check;
pub mod evidence;
pub mod file;
pub mod formula;
mod verify;

pub use check::Rejection;
pub use file::{
    Argument, BoundCertificate, CertificateFile, Claim, ConfigEcho, DecodeError, Evidence,
    SignedName, Subject,
};
pub use formula::{Expr, FunctionId};
pub use verify::{verify, verify_bytes, Verified};
