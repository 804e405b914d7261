use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed blob, table, or container header.
    #[error("format error: {0}")]
    Format(String),

    /// A level-1 stream that does not follow the escape grammar.
    #[error("corrupt stream at byte {offset}: {reason}")]
    CorruptStream { offset: usize, reason: String },

    #[error("rank {rank} is not in a dictionary of {len} entries")]
    UnknownPattern { rank: usize, len: usize },

    #[error("rank {rank} out of range for a dictionary of {len} entries")]
    RankOutOfRange { rank: usize, len: usize },

    #[error("dictionary digest mismatch: container expects {expected:016x}, got {found:016x}")]
    DictionaryMismatch { expected: u64, found: u64 },

    #[error("container needs external dictionary {0:016x} but none was supplied")]
    DictionaryUnavailable(u64),

    #[error("bitstream exhausted after {decoded} of {expected} symbols")]
    Truncated { decoded: u64, expected: u64 },

    #[error("non-zero bits after the last symbol")]
    TrailingGarbage,

    #[error("symbol 0x{0:02x} has no code in the code book")]
    Coverage(u8),

    #[error("rejected keyword {keyword:?}: {reason}")]
    RejectedKeyword { keyword: String, reason: String },

    #[error("input is empty")]
    DegenerateInput,
}

impl Error {
    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn corrupt(offset: usize, reason: impl Into<String>) -> Self {
        Error::CorruptStream {
            offset,
            reason: reason.into(),
        }
    }
}
