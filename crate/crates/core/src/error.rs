use thiserror::Error;

/// Errors produced anywhere in the codec pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be odd and within 3..=127")]
    InvalidModulus(u32),

    #[error("invalid image geometry: {0}")]
    InvalidGeometry(String),

    #[error("sample {value} is not a multiple of modulus {modulus}")]
    NotQuantized { value: u8, modulus: u8 },

    #[error("index {index} exceeds the maximum index {max} for this modulus")]
    IndexOutOfRange { index: u32, max: u32 },

    #[error("value {value} does not fit in {width} bits")]
    ValueTooWide { value: u32, width: u32 },

    #[error("bit width {0} outside 1..=32")]
    InvalidBitWidth(u32),

    #[error("truncated stream: needed {needed} bits, {available} available")]
    Truncated { needed: usize, available: usize },

    #[error("corrupt stream: {0}")]
    Corrupt(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("netpbm {field}: {reason}")]
    Netpbm { field: &'static str, reason: String },

    #[error("dimension mismatch: {0}")]
    Mismatch(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
