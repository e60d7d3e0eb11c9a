//! Exact computation of Hirzebruch `chi_y` genera, intersection-cohomology
//! genera and their characteristic-class versions for proper maps of
//! stratified complex algebraic varieties.

pub mod error;
pub mod classes;
pub mod cli;
pub mod genus;
pub mod hodge;
pub mod oracle;
pub mod ring;
pub mod strata;
mod text;
pub mod toric;

pub use error::{Error, Result};
