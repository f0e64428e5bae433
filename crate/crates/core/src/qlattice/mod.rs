//! Geometric lattices, the two Jackson difference operators, the Leibniz
//! rule and the bilateral Jackson integral.

mod diff;
mod integral;
mod lattice;
mod xpoly;

pub use diff::{d_asym, d_sym, dilatation_check, leibniz_sym, LeibnizTriple};
pub use integral::{
    fundamental_theorem_check, qintegral, qintegral_checked, telescoped_boundary, weight, Warning,
    DECAY_TOLERANCE,
};
pub use lattice::{GeoLattice, LatticeFn, LatticeScalar, Sign};
pub use xpoly::{leibniz_sym_exact, XPoly};
