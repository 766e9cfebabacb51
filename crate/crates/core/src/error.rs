use thiserror::Error;

pub type Result<T> = std::result::Result<T, LzError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LzError {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("symbol {symbol} at position {position} is outside an alphabet of size {size}")]
    SymbolOutOfRange {
        position: usize,
        symbol: u32,
        size: u32,
    },
    #[error("sequence of length {0} exceeds the 2^32 - 1 symbol cap")]
    SequenceTooLong(usize),
    #[error("empty sequence where a nonempty one is required: {0}")]
    EmptySequence(&'static str),
    #[error("alphabet mismatch: sizes {left} and {right}")]
    AlphabetMismatch { left: u32, right: u32 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed bit stream: {0}")]
    MalformedStream(String),
    #[error("truncated payload: needed {needed} more bits at token {token}")]
    TruncatedPayload { token: u64, needed: usize },
    #[error("phrase id {id} out of range at token {token}")]
    PhraseIdOutOfRange { token: u64, id: u64 },
    #[error("trailing data after the last token: {0}")]
    TrailingGarbage(String),
    #[error("key stream exhausted: needed {needed} bits, {available} available")]
    KeyExhausted { needed: usize, available: usize },
    #[error("guardrail exceeded: {what} = {requested} is over the limit {limit}")]
    Guardrail {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
}

impl LzError {
    pub fn is_guardrail(&self) -> bool {
        matches!(self, LzError::Guardrail { .. })
    }
}
