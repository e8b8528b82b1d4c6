use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is empty")]
    Empty,
    #[error("symbol 0 is reserved and may not appear in a text (offset {0})")]
    ReservedSymbol(usize),
    #[error("index {index} is outside 1..={len}")]
    OutOfRange { index: usize, len: usize },
    #[error("inverted range [{lo}, {hi}]")]
    InvertedRange { lo: usize, hi: usize },
    #[error("coordinate {0} does not fit the grid")]
    Coordinate(usize),
    #[error("malformed parse: {0}")]
    MalformedParse(&'static str),
    #[error("malformed tree: {0}")]
    MalformedTree(&'static str),
    #[error("suffix array does not match its text")]
    InvalidSuffixArray,
    #[error("threshold {t} is outside 1..={max}")]
    Threshold { t: u64, max: u64 },
}

/// Checks `1 <= lo <= hi <= len`.
pub(crate) fn check_range(lo: usize, hi: usize, len: usize) -> Result<()> {
    if lo > hi {
        return Err(Error::InvertedRange { lo, hi });
    }
    if lo == 0 {
        return Err(Error::OutOfRange { index: lo, len });
    }
    if hi > len {
        return Err(Error::OutOfRange { index: hi, len });
    }
    Ok(())
}
