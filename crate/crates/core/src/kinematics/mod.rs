//! Spinor-helicity, dual-coordinate and momentum-twistor kinematics in D=3
//! and D=4, and residual checks of the identities relating them.

mod checks;
mod sample;
mod spinor;
mod suite;

pub use checks::{
    calibrate_signs, check_bracket_identity, check_d3_consecutive, check_two_point_trace, check_xij,
    consecutive_identity, evaluate_equation, folding_identity, folding_residual, relative_residual, s_quantity,
    IdentityValue, SQuantity,
};
pub use sample::{
    conservation_residual, dual_from_spinors, open_chain_sample, open_duals, random_open_chain, sample_d3,
    sample_d3_spinors, sample_d4_twistors, sample_from_twistors, twistors_from, Dim, KinematicsSample,
    BRACKET_FLOOR, CONSERVATION_TOL, DEFAULT_RESAMPLE_LIMIT, PLUCKER_FLOOR,
};
pub use spinor::{
    angle, bracket_chain, minkowski, pauli_encode, trace_contract, Mat2, SignCalibration, Spinor,
    BRACKET_CHAIN_SIGN, SIX_POINT_TRACE_SIGN, TWO_POINT_TRACE_SIGN,
};
pub use suite::{
    run_d3_suite, run_d4_control, three_term_relations_hold, trial_rng, Expectation, IdentityStats, ResidualReport,
    CONTROL_VIOLATION_RATE, DEFAULT_CONTROL_THRESHOLD, DEFAULT_TOLERANCE,
};
