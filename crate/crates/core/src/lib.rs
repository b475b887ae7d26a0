pub mod curve;
pub mod error;
pub mod harness;
pub mod mutation;
mod par;
pub mod poly;
pub mod shear;
pub mod snakegraph;
pub mod surface;

pub use error::{Error, Result};
