//! Construction and exhaustive verification of two-dimensional minimal
//! linear codes over `Z_{p^n}`.
//!
//! * [`ring`]: arithmetic and unit / zero-divisor classification in `Z_M`
//! * [`structure`]: exhaustive checks of the ring facts the construction uses
//! * [`matrix`], [`codes`]: generator matrices, enumeration and minimality
//! * [`construction`]: the canonical, scaled and column-omitted builders
//! * [`cli`]: the `mincode` command line

pub mod cli;
pub mod codes;
pub mod construction;
pub mod error;
pub mod matrix;
pub mod ring;
pub mod structure;

pub use error::{Error, Result};
