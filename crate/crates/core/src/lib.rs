//! Simulator and analysis toolkit for the triple-helix communication-field model.
//!
//! The model couples two three-component vectors `P` ("sending") and `Q`
//! ("receiving") over the university / industry / government dimensions
//! through a cross-product Lotka-Volterra interaction. This crate provides:
//!
//! - [`model`]: the core vector algebra, conserved quantities, and signed
//!   redundancy components `R_i = P_i^2 - Q_i^2`;
//! - [`dynamics`]: the nonlinear right-hand side and a fixed-step RK4
//!   integrator, used as the independent oracle for the analytic solution;
//! - [`closed_form`]: the exact sine/cosine solution of the coupled system
//!   and redundancy series evaluated from it without integration;
//! - [`fuzz`]: reproducible stochastic phase noise ("fuzzy intervals")
//!   applied to the receiving vector when forming redundancies;
//! - [`infometrics`]: Shannon entropies and signed mutual redundancy over
//!   empirical contingency tables, in bits;
//! - [`spectral`]: least-squares Fourier-series fitting of redundancy time
//!   series and spectral power extraction.
//!
//! All quantities are dimensionless reals; redundancy outputs are on a bits
//! scale. Every operation is a pure function of its inputs and all returned
//! values are immutable, so everything here is safe to use concurrently.

pub mod closed_form;
pub mod dynamics;
mod error;
pub mod fuzz;
pub mod infometrics;
pub mod model;
pub mod spectral;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
