//! Special functions shared by the rest of the crate.

mod gamma;
mod hyp2f1;
mod jacobi;

pub use gamma::{
    gamma, gamma_ratio, gamma_ratio_with, log_gamma, pole_index, PolePolicy, POLE_TOLERANCE,
};
pub use hyp2f1::{hyp2f1, hyp2f1_power_series, MAX_TERMS};
pub use jacobi::{jacobi_poly, x1_jacobi, JacobiParams};

pub(crate) use jacobi::x1_jacobi_scaled;

/// Complex number used for every gamma, hypergeometric and S-matrix value.
pub type ComplexValue = num_complex::Complex64;
