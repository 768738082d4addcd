#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commutator;
pub mod error;
pub mod linalg;
pub mod norms;
pub mod optimize;
pub mod radii;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
