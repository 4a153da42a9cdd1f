//! Error type shared by all modules.
//!
//! Every error carries a [`ErrorKind`] so callers (notably the CLI) can map
//! failures to a stable exit code: parse errors, domain errors (the input is
//! well-formed but mathematically invalid), and guard errors (the instance is
//! too large for the requested exhaustive computation).

use num_bigint::BigUint;
use thiserror::Error;

/// Coarse classification used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input text/JSON (exit code 2).
    Parse,
    /// Well-formed input outside an operation's domain (exit code 3).
    Domain,
    /// A size guard was exceeded (exit code 4).
    Guard,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {message}{}", position.map(|p| format!(" (at byte {p})")).unwrap_or_default())]
    Parse {
        message: String,
        position: Option<usize>,
    },

    /// Division by `[divisor]_q` left a nonzero remainder, so the quotient is
    /// not a polynomial.
    #[error("not a polynomial: division by [{divisor}]_q leaves a remainder")]
    NonPolynomial { divisor: BigUint },

    /// Exact division succeeded but the expansion is not a distribution.
    #[error("expanded polynomial has a negative coefficient at q^{exponent}")]
    NegativeCoefficient { exponent: u64 },

    #[error("polynomial has zero total mass")]
    ZeroMass,

    #[error("degenerate distribution: variance is zero")]
    DegenerateDistribution,

    #[error("partition has {len} parts but m = {m}")]
    LengthExceedsM { len: usize, m: u64 },

    #[error("weft is undefined for a single-level partition")]
    SingleLevel,

    #[error("operation requires a nonempty partition")]
    EmptyPartition,

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("density sum needs 2^{m} terms; capped at m <= 20")]
    TooManySummands { m: usize },

    #[error("weight multiset is empty after trimming zeros")]
    EmptyWeights,

    #[error("weight multiset has zero 2-norm")]
    ZeroNorm,

    #[error("p-norm requires p >= 1 (or infinity)")]
    BadP,

    #[error("target 2-norm^2 {m} is below |t|_2^2 = {norm2_sq}")]
    MTooSmall { m: f64, norm2_sq: f64 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("poset is not a single tree")]
    NotATree,

    #[error("chain is not a maximal chain: {0}")]
    ChainNotMaximal(String),

    #[error("rank {r} exceeds alpha * n = {bound}")]
    RankTooLarge { r: usize, bound: f64 },

    #[error("tree is not standardized (root must have at least two children)")]
    NotStandardized,

    #[error("{0}")]
    Domain(String),

    #[error("guard exceeded: {0}")]
    Guard(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::InstanceTooLarge(_) | Error::TooManySummands { .. } | Error::Guard(_) => {
                ErrorKind::Guard
            }
            _ => ErrorKind::Domain,
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        Error::Parse {
            message: message.into(),
            position: None,
        }
    }

    pub fn parse_at(message: impl Into<String>, position: usize) -> Self {
        Error::Parse {
            message: message.into(),
            position: Some(position),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_map_to_exit_code_classes() {
        assert_eq!(Error::parse("x").kind(), ErrorKind::Parse);
        assert_eq!(
            Error::NonPolynomial {
                divisor: BigUint::from(2u32)
            }
            .kind(),
            ErrorKind::Domain
        );
        assert_eq!(
            Error::InstanceTooLarge("x".into()).kind(),
            ErrorKind::Guard
        );
        assert_eq!(Error::TooManySummands { m: 21 }.kind(), ErrorKind::Guard);
        assert_eq!(Error::DegenerateDistribution.kind(), ErrorKind::Domain);
    }

    #[test]
    fn parse_error_reports_position() {
        let e = Error::parse_at("unexpected ')'", 3);
        assert!(e.to_string().contains("at byte 3"));
    }
}
