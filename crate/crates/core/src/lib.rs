//! Topology of fractal squares, fractal cubes and rational self-similar sets.

pub mod error;
pub mod exec;
pub mod cellset;
pub mod certificates;
pub mod corpus;
pub mod ifs;
pub mod numeric;
pub mod render;
pub mod topology;

pub use error::{Error, Result};
pub use exec::Exec;
