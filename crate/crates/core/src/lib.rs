//! Pivot-based similarity search with Ptolemaic and triangular lower-bound
//! filtering, plus the generators and harness used to measure it.

pub mod bounds;
pub mod cli;
pub mod datagen;
pub mod distances;
mod error;
pub mod experiments;
pub mod index;
pub mod objects;
pub mod pivots;
pub mod ptolemaicity;
mod rng;

pub use error::{Error, Result};
