//! Complex special functions used throughout the crate.

pub mod bernoulli;
pub mod bessel;
pub mod gamma;
pub mod zeta;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, BernoulliTable};
pub use bessel::bessel_k;
pub use gamma::{complex_gamma, complex_log_gamma, digamma};
pub use zeta::{dirichlet_beta, riemann_zeta};
