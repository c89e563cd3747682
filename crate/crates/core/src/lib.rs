//! Exact Jack characters, Jack-deformed measures on Young diagrams, and
//! Monte Carlo diagnostics for their large-`n` behaviour.

pub mod algebra;
pub mod cumulants;
pub mod error;
pub mod experiments;
pub mod jack;
pub mod kerov;
pub mod measures;
pub mod partitions;
pub mod shape;

pub use error::{Error, Result};
