//! Large-n expansion of the discrete spectral zeta functions.

pub mod leading;

pub use leading::{leading_coeff, leading_term_coefficient};
pub mod coefficients;

pub use coefficients::{
    angular_lattice_sum, b1_partial_fractions, coeff_b0, coeff_b1, coeff_b1_tilde, coeff_b1_variant, expansion_model,
};
pub mod residual;

pub use residual::{
    expansion_residual, expansion_study, h_function, leading_1d, log_log_slope, residual_1d, residual_order,
    ExpansionResult, ResidualPoint,
};
pub mod euler_maclaurin;
pub mod taylor;

pub use euler_maclaurin::{em_terms, em_verify, em_verify_upper_exclusive, EulerMaclaurinTerms};
pub use taylor::{series_truncation_check, taylor_coefficients, TaylorCoefficient};
