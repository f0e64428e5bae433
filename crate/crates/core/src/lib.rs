pub mod error;
pub mod cli;
pub mod fockspace;
pub mod parallel;
pub mod qfourier;
pub mod qcore;
pub mod qalgebra;
pub mod qlattice;
pub mod verify;
pub mod wavefun;

pub use error::{QError, Result};
