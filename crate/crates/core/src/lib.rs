//! Exact dyadic flows, Frostman measures and Hausdorff content for closed
//! subsets of `[0, 1]` given by stage-indexed names.

pub mod cli;
pub mod dimension;
pub mod dyadic;
pub mod error;
pub mod flows;
pub mod frostman;
pub mod io;
pub mod measures;
pub mod sets;

pub use error::{Error, Result};
