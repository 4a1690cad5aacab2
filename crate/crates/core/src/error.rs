use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LchError {
    /// Malformed input or mismatched descriptors.
    #[error("format error: {0}")]
    Format(String),
    /// A value outside an operation's domain (zero coordinate, invalid augmentation, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    /// A sub-DGA whose differential leaves the subalgebra.
    #[error("not closed: d({generator}) contains `{word}` outside the generator set")]
    NotClosed { generator: String, word: String },
    /// Two pieces of a pushout disagree on a shared generator.
    #[error("conflict on `{generator}`: {detail}")]
    Conflict { generator: String, detail: String },
    #[error("validation failed: {0}")]
    Validation(String),
    /// A search exceeded its configured budget; nothing is silently truncated.
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, LchError>;
