//! Configuration-space ground states as truncated infinite products, their
//! difference equations, and lattice recursions that solve them exactly.

mod product;
mod recursion;

pub use product::{
    check_product_work, evaluate, ground_asym, ground_sym, partial_product, residual_asym, residual_asym_values, Evaluation,
    GroundStateParams, ProductState, MAX_PRODUCT_WORK, POLE_TOLERANCE, TAIL_TOLERANCE,
};
pub use recursion::{
    decay_check, decay_report, ground_sym_decaying, ground_sym_oracle, oracle_inversion_error,
    residual_sym_threepoint, threepoint_at, threepoint_profile, DecayReport, DecayingSolution,
    BOUNDARY_TOLERANCE, SEED_TOLERANCE,
};
