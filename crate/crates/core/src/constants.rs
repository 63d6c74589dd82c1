//! Physical constants (CODATA 2018 exact or recommended values) and defaults.

use std::f64::consts::PI;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K (exact since the 2019 SI redefinition).
pub const K_B: f64 = 1.380_649e-23;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default mechanical angular frequency, 2π × 947 kHz.
pub const DEFAULT_MECHANICAL_FREQUENCY: f64 = 2.0 * PI * 947.0e3;
