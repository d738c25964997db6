//! Quaternionic linear algebra and single-input state-feedback design.
//!
//! The crate works directly over the quaternions `H`: scalars are
//! [`Quaternion`]s, column vectors form a right `H`-module, and right
//! eigenvalues are only defined up to similarity, so spectra are reported as
//! multisets of [`SimilarityClass`]es.
//!
//! Main entry points:
//!
//! * [`control::companion_transform`] builds the controllable companion form
//!   of a controllable pair without determinants and reads off its companion
//!   polynomial.
//! * [`control::place_matching`] and [`control::place_ackermann`] compute
//!   feedback gains for a desired monic polynomial.
//! * [`spectral::right_spectrum`] computes right-eigenvalue classes through
//!   the complex adjoint embedding.
//! * [`simulate::simulate_closed_loop`] integrates the closed loop with RK4.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod control;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod quaternion;
pub mod scalar;
pub mod simulate;
pub mod spectral;

pub use control::{
    CompanionTransform, DesignOptions, DesignReport, Method, Residuals, SystemHx,
};
pub use error::{Error, Result};
pub use matrix::{CMatrix, Matrix, QMatrix};
pub use num_complex::Complex64;
pub use poly::QPoly;
pub use quaternion::{Quaternion, SimilarityClass, DEFAULT_CLASS_TOL};
pub use scalar::Scalar;
pub use simulate::Trajectory;
pub use spectral::{ClassEntry, Spectrum};
