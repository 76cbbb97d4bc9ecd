//! # typlab — a typicality laboratory
//!
//! Desk-scale simulation and verification toolkit for the circle of ideas
//! connecting chain probabilities, entropy, large deviations, source coding,
//! symbolic dynamics, computable randomness surrogates, the Kac ring model,
//! and random-walk approximants of Brownian motion.
//!
//! Everything here is finite and reproducible: infinite-sequence statements
//! are replaced by high-probability finite-N checks driven by a counter-based
//! PRNG, and every quantitative claim is backed by either exact enumeration
//! or a Monte Carlo experiment with an explicit tolerance.
//!
//! Module map:
//!
//! - [`prob`] — alphabets, distributions, symbol strings/streams, sampling.
//! - [`rng`] — seedable counter-based random streams.
//! - [`entropy`] — Shannon entropy, KL divergence, type counting, Sanov and
//!   Cramér rate functions, the Hoeffding test.
//! - [`coding`] — prefix codes, Kraft checks, Shannon/Huffman construction,
//!   typical sets.
//! - [`randomness`] — a sequential-test battery, LZ78 complexity, and
//!   compressibility-based randomness deficiency.
//! - [`dynamics`] — coarse-grained orbits, block entropy, entropy rate,
//!   per-orbit information and complexity rates for built-in systems.
//! - [`kacring`] — the Kac ring: microdynamics, macrodynamics, typicality
//!   experiments, reversal and recurrence.
//! - [`brownian`] — piecewise-linear random-walk paths, crossing-sign
//!   extraction, and path-regularity statistics.
//! - [`acceptance`] — the end-to-end verification battery with pinned
//!   tolerances (also exposed through the CLI `suite` subcommand).

pub mod acceptance;
pub mod brownian;
pub mod coding;
pub mod dynamics;
pub mod entropy;
pub mod kacring;
pub mod prob;
pub mod randomness;
pub mod rng;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("empty input")]
    EmptyInput,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("zero-probability symbol {0}")]
    ZeroProbabilitySymbol(usize),
    #[error("state space too large for exact enumeration: {0}")]
    TooLargeForExact(String),
    #[error("exact cylinder oracle unavailable for this system")]
    OracleUnavailable,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("input too short: need at least {needed} symbols, got {got}")]
    TooShort { needed: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
