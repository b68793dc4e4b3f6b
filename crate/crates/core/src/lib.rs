//! Finite-temperature quantum coherence of the two-spin XYZ model with
//! antisymmetric (Dzyaloshinsky-Moriya) exchange in an inhomogeneous
//! magnetic field.
//!
//! The crate builds the 4x4 Hamiltonian for arbitrary coupling/field axes,
//! forms the Gibbs state at temperature T (k_B = 1), and measures coherence
//! in the sigma_z product basis with the square-root quantum Jensen-Shannon
//! divergence (plus l1-norm and relative-entropy cross-checks). A sweep
//! engine scans any parameter over a grid, reproduces the stock figure
//! presets, and checks the summary table of coherence trends.
//!
//! Grid evaluation is data-parallel via rayon behind the default `parallel`
//! feature; disabling it leaves a sequential engine with identical output.

pub mod analytic;
pub mod coherence;
pub mod error;
pub mod linalg;
pub mod model;
pub mod selftest;
pub mod sweep;
pub mod thermal;

pub use error::{Error, Result};
