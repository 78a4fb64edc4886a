//! Tooling for avoidability of formulas with reversal.

pub mod bounds;
pub mod directed;
pub mod error;
pub mod factor_index;
pub mod formula;
pub mod freeness;
pub mod generator;
pub mod morphism;
pub mod replay;
pub mod word;

pub use error::{Error, Result};
