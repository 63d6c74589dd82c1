//! Logarithmic negativity and Gaussian quantum discord of two-mode states.
//!
//! Conventions: vacuum variance 1/2, natural logarithm for E_N, base-2
//! logarithm inside the entropy function `f`.

use crate::covariance::TwoModeCovariance;
use crate::error::{Error, Result};
use crate::reduction::ReducedParams;

/// Relative slack below which a negative radicand is rounding, not physics.
const RADICAND_TOL: f64 = 1e-12;

/// 2η⁻ within this distance below 1 is rounding at the separability edge.
pub const NEGATIVITY_FLOOR: f64 = 1e-12;

/// Slack on the uncertainty bound ν ≥ 1/2.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// Everything computed for one bipartition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMetrics {
    /// Smallest symplectic eigenvalue of the partial transpose.
    pub eta_minus: f64,
    pub log_negativity: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    /// Conditional symplectic value after the optimal Gaussian measurement.
    pub epsilon: f64,
    pub discord: f64,
}

fn clamped_sqrt(radicand: f64, scale: f64, what: &'static str) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_TOL * scale.abs().max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::NonPhysical {
            what,
            value: radicand,
        })
    }
}

/// Roots of x² − s x + p = 0 as (sqrt(larger), sqrt(smaller)), the smaller
/// one taken as p / larger to avoid cancellation.
fn invariant_pair(sum: f64, det: f64, what: &'static str) -> Result<(f64, f64)> {
    if det < 0.0 {
        return Err(Error::NonPhysical {
            what: "covariance determinant",
            value: det,
        });
    }
    let disc = clamped_sqrt(sum * sum - 4.0 * det, sum * sum, what)?;
    let upper = 0.5 * (sum + disc);
    if upper <= 0.0 {
        return Err(Error::NonPhysical { what, value: upper });
    }
    Ok((upper.sqrt(), (det / upper).sqrt()))
}

/// η⁻: smallest symplectic eigenvalue of the partially transposed state,
/// from Δ̃ = det A + det B − 2 det C.
pub fn pt_min_symplectic(cm: &TwoModeCovariance) -> Result<f64> {
    let delta = cm.det_a() + cm.det_b() - 2.0 * cm.det_c();
    invariant_pair(delta, cm.det(), "partial-transpose radicand").map(|(_, lo)| lo)
}

/// E_N = max(0, −ln 2η⁻).
pub fn log_negativity(cm: &TwoModeCovariance) -> Result<f64> {
    Ok(negativity_from_eta(pt_min_symplectic(cm)?))
}

pub fn negativity_from_eta(eta_minus: f64) -> f64 {
    if 2.0 * eta_minus >= 1.0 - NEGATIVITY_FLOOR {
        0.0
    } else {
        -(2.0 * eta_minus).ln()
    }
}

/// Closed form of η⁻ for the two mechanical modes, `a1 − c1`.
pub fn closed_form_eta_mm(p: &ReducedParams) -> f64 {
    let ReducedParams {
        alpha,
        beta,
        r,
        n_th,
    } = *p;
    let twice = (1.0 + 2.0 * n_th) / (1.0 + alpha) * (1.0 / (1.0 + beta) + alpha)
        + beta * (-2.0 * r).exp() / ((1.0 + alpha) * (1.0 + beta));
    0.5 * twice
}

/// Closed form of η⁻ for the two optical modes, `a2 − c2`.
pub fn closed_form_eta_oo(p: &ReducedParams) -> f64 {
    let ReducedParams {
        alpha,
        beta,
        r,
        n_th,
    } = *p;
    let twice = (1.0 + 2.0 * n_th) / (1.0 + alpha) * alpha * beta / (1.0 + beta)
        + (-2.0 * r).exp() / (1.0 + alpha) * (alpha / (1.0 + beta) + 1.0);
    0.5 * twice
}

/// (ν₊, ν₋) from Δ = det A + det B + 2 det C.
pub fn symplectic_pair(cm: &TwoModeCovariance) -> Result<(f64, f64)> {
    let delta = cm.det_a() + cm.det_b() + 2.0 * cm.det_c();
    invariant_pair(delta, cm.det(), "symplectic radicand")
}

/// f(x) = (x + ½) log₂(x + ½) − (x − ½) log₂(x − ½), with f(½) = 0.
///
/// Written as log₂(x + ½) + (x − ½)·log₂(1 + 1/(x − ½)) so that large
/// arguments do not lose digits to cancellation.
pub fn mirror_f(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.5 - PHYSICAL_TOL {
        return Err(Error::NonPhysical {
            what: "symplectic value below 1/2",
            value: x,
        });
    }
    let d = x - 0.5;
    if d <= 0.0 {
        return Ok(0.0);
    }
    Ok((x + 0.5).log2() + d * (1.0 / d).ln_1p() / std::f64::consts::LN_2)
}

/// Conditional value ε entering the discord.
///
/// Correlation blocks of the form diag(c, −c) use
/// `(√detA + 2√(detA·detB) + 2 detC) / (1 + 2√detB)`; blocks with equal
/// signs use `(2|detC| + √(4detC² + (4detB − 1)(4detσ − detA))) / (4detB − 1)`.
/// A zero block takes the first form, which then reduces to √detA.
pub fn conditional_epsilon(cm: &TwoModeCovariance) -> Result<f64> {
    if !cm.c_is_diagonal() {
        return Err(Error::UnsupportedForm(
            "conditional value needs a diagonal correlation block",
        ));
    }
    let (cx, cy) = (cm.c[(0, 0)], cm.c[(1, 1)]);
    let (det_a, det_b, det_c) = (cm.det_a(), cm.det_b(), cm.det_c());
    if cx * cy < 0.0 || (cx == 0.0 && cy == 0.0) {
        let sa = det_a.sqrt();
        let sb = det_b.sqrt();
        return Ok((sa + 2.0 * (det_a * det_b).sqrt() + 2.0 * det_c) / (1.0 + 2.0 * sb));
    }
    let purity_gap = 4.0 * det_b - 1.0;
    if purity_gap <= RADICAND_TOL {
        // A pure B mode carries no correlations; conditioning leaves A as is.
        return Ok(det_a.sqrt());
    }
    let det = cm.det();
    let inner = 4.0 * det_c * det_c + purity_gap * (4.0 * det - det_a);
    let root = clamped_sqrt(inner, 4.0 * det_c * det_c + det_a, "conditional radicand")?;
    Ok((2.0 * det_c.abs() + root) / purity_gap)
}

/// D = f(√detB) − f(ν₊) − f(ν₋) + f(ε), with every intermediate reported.
pub fn gaussian_discord(cm: &TwoModeCovariance) -> Result<CorrelationMetrics> {
    let eta_minus = pt_min_symplectic(cm)?;
    let (nu_plus, nu_minus) = symplectic_pair(cm)?;
    let epsilon = conditional_epsilon(cm)?;
    let discord = mirror_f(cm.det_b().sqrt())? - mirror_f(nu_plus)? - mirror_f(nu_minus)?
        + mirror_f(epsilon)?;
    Ok(CorrelationMetrics {
        eta_minus,
        log_negativity: negativity_from_eta(eta_minus),
        nu_plus,
        nu_minus,
        epsilon,
        discord,
    })
}
