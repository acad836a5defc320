//! Spectral zeta functions of the 5-point and 9-point Laplacians on the
//! discrete 2-torus, their large-n asymptotic expansion, and the Epstein
//! zeta numerics built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: Gamma, digamma, Riemann zeta, Dirichlet beta, Bernoulli.
//! * [`lattice`]: stencils, exact spectra, finite spectral zeta sums.
//! * [`quadrature`]: adaptive and periodic quadrature, Hadamard-regularized
//!   integrals and limits.
//! * [`epstein`]: ζ(Δ,s) = 4ζ(s)β(s), the completed ξ₂, Ω and critical zeros.
//! * [`expansion`]: expansion coefficients, Taylor data, residual orders.
//! * [`lab`]: Ω-ratio and H_n-ratio studies on the critical strip.
//! * [`cli`]: the command-line front end.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod epstein;
pub mod error;
pub mod expansion;
pub mod lab;
pub mod lattice;
pub mod quadrature;
pub mod special;
pub mod summation;

pub use error::{Error, Result};
pub use num_complex::Complex64;
