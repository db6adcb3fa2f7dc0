//! Number-format laboratory and FFT benchmark harness.
//!
//! Runs spectral PDE solvers, round-trip image FFTs, and audio STFTs
//! entirely in emulated machine-number formats (OFP8 E4M3/E5M2, bfloat16,
//! IEEE binary16/32/64, posits, linear takums), compares every run against
//! an extended-precision reference, and emits cumulative error
//! distributions.

pub mod formats;
pub mod reference;

pub use formats::{round_to_format, Family, FormatDescriptor, SpecialClass, TargetScalar};
pub use reference::RefReal;
