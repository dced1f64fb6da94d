pub mod cli;
pub mod error;
pub mod levy_model;
pub mod mc_engine;
pub mod quadrature;
pub mod stable_dist;
pub mod sup_calc;

pub use error::{Error, Result};
