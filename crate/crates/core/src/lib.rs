pub mod error;
pub mod instances;

pub use error::{Error, Result};
pub mod cli;
pub mod diffpoly;
pub mod hahn;
pub mod hensel;
pub mod lambda;
pub mod rv;
pub mod sample;
