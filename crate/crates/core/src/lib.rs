pub mod cli;
pub mod error;
pub mod harness;
pub mod loops;
pub mod modulispace;
pub mod superalgebra;
pub mod surface;

pub use error::{Error, Result};
