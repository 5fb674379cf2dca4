pub mod dynamic_hull;
pub mod edge_tree;
pub mod engine;
pub mod error;
pub mod generators;
pub mod geom;
pub mod polygon;
pub mod potentials;
pub mod predictor;
pub mod strategies;
pub mod svg;

pub use error::{Error, Result};
