//! Entanglement-monogamy diagnostics on small multiqubit and 2⊗d states.
//!
//! The crate computes concurrence, fully entangled fraction (FEF) and
//! teleportation fidelity for states of up to five qubits, checks the
//! monogamy inequalities built from those quantities on pure states, and
//! constructs the one-parameter σ_γ family of three-qubit mixed states on
//! which the FEF/fidelity monogamy inequalities fail.
//!
//! Everything is dense, double-precision and deterministic: random sampling
//! always takes an explicit seed and there is no ambient RNG. The crate is
//! `no_std` (with `alloc`); IO, file formats and the CLI live in the
//! companion `entmono-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod rng;
pub mod states;
pub mod telesim;

use alloc::string::String;
use core::fmt;

pub use num_complex::Complex64;

/// Errors shared across the numeric modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix/vector dimensions are inconsistent with the requested operation.
    Shape(String),
    /// An argument violates a precondition (range, invariant, subsystem set).
    Argument(String),
    /// An operation would exceed the configured size limits.
    SizeLimit(String),
    /// A numeric procedure failed (iteration cap, invalid intermediate).
    Numeric(String),
    /// An iterative optimizer exhausted all restarts without converging;
    /// `best` carries the best objective value seen so far.
    NonConvergence { best: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::SizeLimit(msg) => write!(f, "size limit exceeded: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
            Error::NonConvergence { best } => {
                write!(f, "optimizer failed to converge (best value so far: {best})")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
