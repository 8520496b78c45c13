pub mod cli;
pub mod config;
pub mod connection;
pub mod error;
pub mod fredholm;
pub mod ncalgebra;
pub mod poly;
pub mod qarith;
pub mod repr;
pub mod spectral;
pub mod weights;

pub use error::{Error, Result};
