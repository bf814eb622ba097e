//! Exact-arithmetic spin calculus in dimension seven.
//!
//! Everything in this crate is computed over exact rational numbers or real
//! quadratic fields Q(√d); there is no floating point on any verification
//! path. The crate provides:
//!
//! - [`exterior`]: the exterior algebra of R^n (n ≤ 8) with wedge, Hodge
//!   star, interior product and the orthonormal inner product,
//! - [`clifford`]: the real Clifford algebra Cl(7) acting on the
//!   8-dimensional real spin representation, built from an octonion
//!   multiplication table and verified against the Clifford relations,
//! - [`g2`]: the nearly parallel G2 layer — the 3-form built from the
//!   3-Sasakian coframe, its distinguished spinor, and the 2-form-to-1-form
//!   transfer operator σ ↦ −*(σ∧*ω³),
//! - [`torus`]: exact Fourier-mode Dirac spectra on the flat 7-torus,
//!   cross-validated mode by mode against the function/1-form transfer
//!   predictions,
//! - [`spectral`]: the closed-form eigenvalue relations and second-eigenvalue
//!   formulas for 7-manifolds with Killing spinors, parametric in the
//!   dimension n and the Killing number a.
//!
//! The crate is `no_std` (with `alloc`); enable the `std` feature for
//! `std::error::Error` integration.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
// indexed loops over small fixed-size matrices read better than iterator
// chains in the dense linear-algebra kernels
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod clifford;
pub mod exact;
pub mod exterior;
pub mod g2;
pub mod linalg;
pub mod spectral;
pub mod torus;

pub use exact::{Rational, Scalar};
pub use spectral::ExactEigenvalue;
