//! Bound states and the closed-form l = 0 S-matrix of the X₁-Jacobi rational
//! extension of the generalized Pöschl-Teller (GPT) potential on the half-line,
//! together with numerical oracles (Numerov integration, shooting, an
//! independent hypergeometric connection formula) that check every closed form.
//!
//! The potentials are `V = W² - W'` with
//! `W_GPT = A coth r - B csch r` and `W_ext = W_GPT + Δ`, valid for `B > A + 1 > 1`.
//! Both have the bound spectrum `E_ν = A² - (A - ν)²` and the continuum
//! above `A²`.
//!
//! ```
//! use x1scatter::{potential::PotentialParams, scattering, spectrum};
//!
//! let p = PotentialParams::new(2.5, 4.0).unwrap();
//! assert_eq!(spectrum::nu_max(&p), 2);
//! let s = scattering::s_matrix(&p, 1.0).unwrap();
//! assert!((s.norm() - 1.0).abs() < 1e-12);
//! ```

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod grid;
pub mod oracle;
pub mod potential;
pub mod scattering;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use grid::RadialGrid;
pub use potential::{PotentialKind, PotentialParams};
pub use specfun::ComplexValue;
