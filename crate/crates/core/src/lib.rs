//! Bicomplex Fourier–Wigner transforms and their special-function machinery.
//!
//! The crate is organised bottom-up:
//!
//! - [`bicomplex`]: bicomplex and hyperbolic numbers, the idempotent split,
//!   the three conjugations and the companion variable.
//! - [`hermite`]: rescaled real Hermite functions and the polyanalytic
//!   complex Hermite functions.
//! - [`quadrature`]: Gauss–Hermite rules, tensor products and all the inner
//!   products on ℝ, ℝ², ℂ and 𝔹ℂ ≅ ℝ⁴.
//! - [`fwt`]: classical and bicomplex Fourier–Wigner transforms, closed forms
//!   and Moyal-identity checks.
//! - [`bargmann`]: companion Bargmann-space bases, reproducing kernels,
//!   Segal–Bargmann-type isometries and the polyanalytic-order checker.
//! - [`report`]: the [`IdentityReport`](report::IdentityReport) record and its
//!   JSON schema.

pub mod bargmann;
pub mod bicomplex;
mod error;
pub mod fwt;
pub mod hermite;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod suites;

pub use bicomplex::{Bicomplex, Companion, Hyperbolic, IdempotentPair};
pub use error::{Error, Result};
pub use hermite::{HermiteIndex, ScaleParam};
pub use num_complex::Complex64;
pub use report::IdentityReport;
