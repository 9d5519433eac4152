pub mod acceptance;
pub mod analytic;
pub mod channel;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod multicell;
pub mod quadrature;
pub mod receivers;
pub mod specfun;

pub use error::{Error, Result};
