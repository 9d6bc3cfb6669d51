//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid letter {letter} for alphabet size {d}")]
    InvalidLetter { letter: u8, d: u8 },
    #[error("alphabet size {0} out of range (2..=15)")]
    BadAlphabet(u32),
    #[error("positions {0} and {1} do not hold a pair of equal letters")]
    PositionNotAPair(usize, usize),
    #[error("target letter {0} equals the current pair letter")]
    SameColor(u8),
    #[error("word is not the interior of a single block with base {0}")]
    NotSingleBlockInterior(u8),
    #[error("not a colored Dyck word")]
    NotDyck,
    #[error("bad subspace label: {0}")]
    BadLabel(String),
    #[error("size limit exceeded: {what} = {size} > {limit}")]
    SizeLimitExceeded {
        what: String,
        size: u128,
        limit: u128,
    },
    #[error("colored Motzkin counts with extra steps are not supported")]
    UnsupportedColoredExtra,
    #[error("bad parity: {0}")]
    BadParity(String),
    #[error("spectrum not normalized (deviation {0:e})")]
    NotNormalized(f64),
    #[error("bad model parameters: {0}")]
    BadModelParams(String),
    #[error("eigensolver did not converge (residual {residual:e})")]
    ConvergenceFailure { residual: f64 },
    #[error("parent assignment infeasible at level {0}")]
    MatchingInfeasible(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_size(what: &str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimitExceeded {
            what: what.to_string(),
            size,
            limit,
        })
    } else {
        Ok(())
    }
}
