pub mod cli;
pub mod closedform;
pub mod descent;
pub mod error;
pub mod measures;
pub mod polyarith;
pub mod primal_dual;
pub mod quadrature;
pub mod support;
pub mod verify;

pub use error::{Error, Result};
