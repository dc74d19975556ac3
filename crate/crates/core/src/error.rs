use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a Gröbner computation stopped before completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Interruption {
    /// An S-pair above the configured total-degree cap was skipped.
    DegreeCap(u32),
    /// The wall-clock budget ran out.
    Timeout,
}

impl fmt::Display for Interruption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interruption::DegreeCap(d) => write!(f, "degree cap {d} reached"),
            Interruption::Timeout => write!(f, "timeout"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("parse error at position {pos}: {msg}\n  {input}\n  {caret}", caret = caret(*.pos))]
    Parse { pos: usize, msg: String, input: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("computation incomplete: {0}")]
    Incomplete(Interruption),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn caret(pos: usize) -> String {
    format!("{}^", " ".repeat(pos))
}
