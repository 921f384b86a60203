pub mod algebra;
pub mod cli;
pub mod crossed;
pub mod error;
pub mod groups;
pub mod kms;
mod parse;
pub mod scalar;
pub mod suites;
pub mod words;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
