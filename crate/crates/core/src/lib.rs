pub mod algebra;
pub mod carlitz;
pub mod error;
pub mod experiment;
pub mod field;
pub mod galois;
pub mod global;
pub mod kfactor;
pub mod local;
pub mod report;
pub mod rng;
pub mod tower;
pub mod wire;

pub use error::{Error, Result};
