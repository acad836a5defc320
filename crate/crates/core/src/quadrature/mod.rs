//! Numerical quadrature: adaptive Gauss–Kronrod, tanh-sinh, the periodic
//! trapezoidal rule and Hadamard-regularized integrals.

pub mod kronrod;
pub mod periodic;
pub mod regularized;
pub mod tanh_sinh;

use num_complex::Complex64;

pub use kronrod::quad_finite;
pub use periodic::quad_periodic_2d;
pub use regularized::{
    change_of_variables_check, regularized_integral, regularized_limit, AsymptoticDescriptor, DescriptorTerm,
    IntegrandSpec, Location,
};
pub use tanh_sinh::tanh_sinh;

/// An integral estimate and its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
}
