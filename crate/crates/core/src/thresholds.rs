//! Analytic separability thresholds for the two homogeneous bipartitions.
//!
//! Each threshold is the level set 2η⁻ = 1 of the corresponding closed form.
//! Temperatures are in kelvin and need the mechanical frequency ω_μ.

use crate::constants::{HBAR, K_B};
use crate::covariance::TwoModeCovariance;

/// A threshold value plus whether entanglement is reachable at all.
///
/// * `attainable == false`: the pair is separable for every value of the
///   swept quantity; `value` is `None`.
/// * `attainable == true, value == None`: entangled across the whole range,
///   no finite threshold exists.
/// * `attainable == true, value == Some(v)`: the crossing point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub value: Option<f64>,
    pub attainable: bool,
}

impl ThresholdResult {
    pub fn at(value: f64) -> Self {
        Self {
            value: Some(value),
            attainable: true,
        }
    }

    pub fn unattainable() -> Self {
        Self {
            value: None,
            attainable: false,
        }
    }

    pub fn unbounded() -> Self {
        Self {
            value: None,
            attainable: true,
        }
    }
}

/// Temperature whose thermal occupation is `n`: ħω/(k_B ln(1/n + 1)).
fn temperature_for(omega_m: f64, n: f64) -> ThresholdResult {
    if n.is_infinite() {
        return ThresholdResult::unbounded();
    }
    ThresholdResult::at(HBAR * omega_m / (K_B * (1.0 / n).ln_1p()))
}

/// T₀ for the mechanical pair: entangled below, separable above.
pub fn t0_mechanical(alpha: f64, beta: f64, r: f64, omega_m: f64) -> ThresholdResult {
    let gain = -(-2.0 * r).exp_m1();
    if gain <= 0.0 || beta <= 0.0 {
        return ThresholdResult::unattainable();
    }
    // 1/T0 ∝ ln(2(1+α+αβ)/(β(1−e^{−2r})) + 1), i.e. n_th at threshold is the
    // inverse of the first term.
    let n0 = beta * gain / (2.0 * (1.0 + alpha + alpha * beta));
    temperature_for(omega_m, n0)
}

/// T₀ for the optical pair.
pub fn t0_optical(alpha: f64, beta: f64, r: f64, omega_m: f64) -> ThresholdResult {
    let gain = -(-2.0 * r).exp_m1();
    if gain <= 0.0 {
        return ThresholdResult::unattainable();
    }
    // With no coupling the optical modes never see the mechanical bath.
    if alpha * beta <= 0.0 {
        return ThresholdResult::unbounded();
    }
    let n0 = (1.0 + alpha + beta) * gain / (2.0 * alpha * beta);
    temperature_for(omega_m, n0)
}

/// β₀ for the mechanical pair: separable below, entangled above.
pub fn beta0_mechanical(alpha: f64, r: f64, n_th: f64) -> ThresholdResult {
    let den = 1.0 - 2.0 * alpha * n_th - (-2.0 * r).exp();
    if den <= 0.0 {
        return ThresholdResult::unattainable();
    }
    ThresholdResult::at(2.0 * n_th * (1.0 + alpha) / den)
}

/// β₀ for the optical pair: entangled below, separable above.
pub fn beta0_optical(alpha: f64, r: f64, n_th: f64) -> ThresholdResult {
    let num = (-2.0 * r).exp_m1() * (1.0 + alpha);
    let den = 1.0 - 2.0 * alpha * n_th - (-2.0 * r).exp();
    if den < 0.0 {
        // num ≤ 0 here; β₀ = 0 at r = 0 means separable for all β.
        ThresholdResult::at(num / den)
    } else if num < 0.0 {
        ThresholdResult::unbounded()
    } else {
        // r = 0 and n_th = 0: the vacuum, never entangled.
        ThresholdResult::unattainable()
    }
}

/// det C < 0, necessary for a two-mode Gaussian state to be entangled.
pub fn simon_precondition(cm: &TwoModeCovariance) -> bool {
    cm.det_c() < 0.0
}
