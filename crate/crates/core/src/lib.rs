//! Exact-arithmetic laboratory for gales, supergales and the dimensions they define.
//!
//! Values are exact rationals throughout; logarithms are certified intervals.

pub mod bits;
pub mod circuit;
pub mod describe;
pub mod diag;
pub mod dimension;
pub mod error;
pub mod exact;
pub mod gale;
pub mod interval;
pub mod par;
pub mod source;
pub mod trace;
pub mod zoo;

pub use bits::{BitWord, PrefixSet};
pub use error::{GaleError, Result};
pub use exact::SExponent;
pub use gale::{Cursor, Gale, GaleRule, Kind};
pub use par::Exec;
