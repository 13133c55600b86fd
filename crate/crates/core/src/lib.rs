//! Relief-distribution planning: warehouse selection on road networks,
//! demand allocation, truck territories and delivery tours.

pub mod error;
pub mod graph;
pub mod matrix;
pub mod planner;
pub mod region;
pub mod tsp;

pub use error::{Error, Result};
pub use matrix::{Matrix, Weight};
