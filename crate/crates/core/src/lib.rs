pub mod action;
pub mod algebra;
pub mod bialgebroid;
pub mod bimodule;
pub mod catalog;
pub mod error;
pub mod galois;
pub mod group;
pub mod io;
pub mod linalg;
pub mod quasibase;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Field, Scalar};
