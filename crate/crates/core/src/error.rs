use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range (valid: {lo}..={hi})")]
    Range { index: usize, lo: usize, hi: usize },
    #[error("invalid range [{start}, {end}] for length {len}")]
    InvalidRange { start: usize, end: usize, len: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn check_index(index: usize, lo: usize, hi: usize) -> Result<()> {
        if index < lo || index > hi {
            Err(Error::Range { index, lo, hi })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_range(start: usize, end: usize, len: usize) -> Result<()> {
        if start == 0 || start > end || end > len {
            Err(Error::InvalidRange { start, end, len })
        } else {
            Ok(())
        }
    }
}
