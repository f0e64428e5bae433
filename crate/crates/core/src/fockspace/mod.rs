//! Truncated Fock-space realizations of the q-oscillator, the ε-form
//! checks and the position/momentum construction.

mod ops;
mod xp;

pub use ops::{build_fock, spectrum, FockOps, FockRealization};
pub use xp::{balanced_lscale, build_xp, kscale_for, moment_sum, UncertaintyReport, XPOps};

/// Default truncation dimension.
pub const DEFAULT_DIM: usize = 40;
