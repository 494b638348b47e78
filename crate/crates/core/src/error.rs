//! Error type shared across the crate.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unsupported audio encoding: {0}")]
    UnsupportedEncoding(String),

    #[error("audio stream is empty")]
    EmptyAudio,

    #[error("signal too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("target rate {0} Hz is below the 2 kHz analysis bandwidth floor")]
    RateTooLow(u32),

    #[error("window anchor {anchor} out of range: window of {window} samples on {len}-sample signal")]
    AnchorOutOfRange {
        anchor: usize,
        window: usize,
        len: usize,
    },

    #[error("no voiced content detected; choose the analysis window manually")]
    NoVoicedContent,

    #[error("insufficient glottal cycles: needed {needed}, found {found}")]
    InsufficientCycles { needed: usize, found: usize },

    #[error("annotation parse error at line {line}: {msg}")]
    AnnotationParse { line: usize, msg: String },

    #[error("fixture script error at `{field}`: {msg}")]
    ScriptField { field: String, msg: String },

    #[error("malformed fixture script: {0}")]
    ScriptParse(String),

    #[error("frame at {at_s:.3} s is unvoiced or has no resolvable harmonic peaks")]
    UnvoicedFrame { at_s: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
