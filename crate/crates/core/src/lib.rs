//! Integrated probabilistic data association filtering on Lie groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`lie`] — group operations, exponential coordinates and Jacobians;
//! - [`gaussian`] — concentrated Gaussians on groups;
//! - [`motion`] — the constant-velocity model on `G × ℝⁿ`;
//! - [`filter`] — one LG-IPDAF cycle for a single track;
//! - [`track`] — track initialisation, routing and lifecycle;
//! - [`scenario`] and [`bench`] — the simulated SE(2) tracking benchmark.

// Validation writes `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod error;
pub mod filter;
pub mod gaussian;
pub mod lie;
pub mod motion;
pub mod scenario;
pub mod selftest;
pub mod track;

pub use error::{Error, Result};
