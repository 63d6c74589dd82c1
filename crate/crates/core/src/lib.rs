//! Steady-state Gaussian model of two identical optomechanical cavities
//! driven by two-mode squeezed light.
//!
//! The crate assembles the 8×8 covariance matrix of the two mechanical and
//! two optical modes in closed form, extracts the four two-mode bipartitions
//! and evaluates logarithmic negativity, Gaussian quantum discord and the
//! analytic separability thresholds. An independent Lyapunov solver
//! ([`lyapunov`]) reconstructs the same covariance from the linearized
//! dynamics and serves as a cross-check. [`sweep`] drives parameter grids
//! and emits CSV.
//!
//! Grid evaluation runs on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise.

pub mod constants;
pub mod covariance;
pub mod error;
pub mod lyapunov;
pub mod measures;
pub mod parallel;
pub mod reduction;
pub mod sweep;
pub mod thresholds;
pub mod validation;

pub use covariance::{
    assemble_global, cm_entries, extract_subsystem, CovarianceEntries, GlobalCovariance,
    Quadrature, Subsystem, TwoModeCovariance,
};
pub use error::{Error, Result};
pub use measures::CorrelationMetrics;
pub use reduction::{NoiseMoments, PhysicalSetup, ReducedParams};
pub use thresholds::ThresholdResult;
