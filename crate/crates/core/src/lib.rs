//! Exact arithmetic toolkit for counting, generating and verifying solutions of
//! the unit-fraction equation 4/n = 1/x + 1/y + 1/z and its k-term relatives
//! m/n = 1/t_1 + ... + 1/t_k.
//!
//! The crate is organized around the two six-coordinate solution varieties that
//! parameterize Type I solutions (n divides exactly one denominator) and Type II
//! solutions (n divides exactly two).  On top of those sit:
//!
//! - [`numkit`] — sieves, factorization and multiplicative functions; every other
//!   module reduces to exact integer arithmetic from here.
//! - [`sextuple`] — the varieties themselves: constraint checking, projection to
//!   solutions, and lifting solutions back to canonical six-tuples.
//! - [`count`] — exact per-n counters for Type I / Type II solutions: a direct
//!   box enumeration and a sub-linear case-split enumeration that must agree.
//! - [`oracle`] — independent brute-force enumeration used as ground truth.
//! - [`witness`] — fast existence search (one verified solution per n).
//! - [`congruence`] — the seven parametric residue-class families with explicit
//!   polynomial constructions, plus coverage search mod 840.
//! - [`multifrac`] — generation, verification and injective reconstruction of
//!   k-term Type II solutions.
//! - [`analytics`] — divisor-sum experiments, aggregate counts and prime
//!   discrepancy statistics.
//!
//! All counting is exact; floating point appears only when a raw integer sum is
//! normalized against a predicted growth term for reporting.

// divisibility tests are written in the classical `x % y == 0` form throughout
#![allow(clippy::manual_is_multiple_of)]

pub mod analytics;
pub mod congruence;
pub mod count;
pub mod multifrac;
pub mod numkit;
pub mod oracle;
pub mod rat;
pub mod sextuple;
pub mod witness;

pub use congruence::{Family, FamilyKind, ResidueClass};
pub use count::{count_f1_box, count_f1_fast, count_f2_box, count_f2_fast, f_prime, CountReport};
pub use multifrac::{GenTuple, IndexSet};
pub use numkit::{Factorization, SpfTable};
pub use oracle::SolutionSet;
pub use rat::Rat;
pub use sextuple::{SextupleI, SextupleII, Solution, SolutionTag};
pub use witness::has_solution;

/// Error taxonomy shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument was violated.
    InvalidArgument(String),
    /// An input was not of the claimed solution type.
    Classification(String),
    /// The request exceeds a configured capacity limit.
    Capacity(String),
    /// The input is structurally degenerate (e.g. a generated coordinate
    /// collapsed to zero or below).
    Degenerate(String),
    /// A tuple could not be reconstructed as the image of any generator data.
    Reconstruction(String),
    /// An exact intermediate exceeded 128-bit range.
    Overflow(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::Classification(m) => write!(f, "classification error: {m}"),
            Error::Capacity(m) => write!(f, "capacity exceeded: {m}"),
            Error::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Error::Reconstruction(m) => write!(f, "reconstruction failure: {m}"),
            Error::Overflow(m) => write!(f, "overflow: {m}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
