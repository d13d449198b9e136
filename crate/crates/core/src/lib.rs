//! Non-Markovian waveguide QED toolkit.
//!
//! Two emitters coupled to a 1D waveguide with a retarded interaction obey a
//! linear delay differential equation. This crate integrates it ([`dde`],
//! [`two_atom`]), analyses its characteristic roots ([`spectral`]), and
//! simulates the discrete counterpart: a tight-binding cavity array with atom
//! ensembles at two sites ([`cavity`]). [`analysis`] holds the observables
//! (instantaneous decay rate, exponential fits, wave-packet velocimetry) and
//! [`sweep`] runs independent parameter points in parallel.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod analysis;
pub mod cavity;
pub mod dde;
pub mod error;
pub mod lambert;
pub mod spectral;
pub mod sweep;
pub mod two_atom;

pub use error::{Error, Result};
pub use num_complex::Complex64;
