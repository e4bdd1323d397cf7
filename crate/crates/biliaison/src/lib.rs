//! Exact computer algebra for liaison and biliaison of space curves in P³
//! over a prime field or the dual numbers over it.

pub mod curve;
pub mod error;
pub mod gradedmod;
pub mod groebner;
pub mod liaison;
pub mod linalg;
pub mod polyring;
pub mod raoclass;
pub mod scalars;

pub use error::{Error, Result};
