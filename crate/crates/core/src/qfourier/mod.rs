//! The q-exponential, q-Fourier transforms on geometric lattices, and the
//! finite-cutoff q-delta function.

mod delta;
mod series;
mod transform;

pub use delta::{
    boundary_identity_check, boundary_identity_check_with, delta_q, dirac_distance, localization_profile,
    symmetric_offsets, translation_probe, BoundaryReport, DeltaSpec, LocalizationProfile, HALF_WIDTH_ROOT,
};
pub use series::{eigenrelation_residual, qexp, qsin, QExpSeries, SeriesValue, MIN_TERMS, TERM_TOLERANCE};
pub use transform::{
    default_p_lattice, default_x_lattice, extend_zero, ground_correspondence, intertwine_check, momentum_ground_state,
    round_trip, CorrespondenceReport, IntertwineReport,
    RoundTripReport, TransformPlan, Transformed, BOUNDARY_TOLERANCE, MAX_KERNEL_ENTRIES,
};
