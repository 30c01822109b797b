pub mod cli;
pub mod divisibility;
pub mod error;
pub mod fields;
pub mod groups;
pub mod lattices;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
