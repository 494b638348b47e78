pub mod baseline;
pub mod classify;
pub mod drf;
pub mod error;
pub mod export;
pub mod fft;
pub mod pipeline;
pub mod signal;
pub mod synth;
pub mod zff;
pub mod ztw;

pub use error::{Error, Result};
