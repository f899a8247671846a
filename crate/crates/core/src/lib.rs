//! Certified arbitrary-precision evaluation of Ramanujan's theta functions,
//! the modular machinery around them, and a catalog of their explicit values.
//!
//! Every numeric result is a [`Ball`]: a midpoint with a rigorous error radius.

pub mod cli;
mod error;
pub mod exact;
pub mod lostnotebook;
pub mod modular;
pub mod precision;
pub mod qseries;

pub use error::{Error, Result};
pub use precision::{Ball, PrecCtx};
pub use qseries::QPoint;
