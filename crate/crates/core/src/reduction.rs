//! Laboratory parameters and their reduction to the four dimensionless
//! knobs (α, β, r, n_th) used by every downstream formula.

use std::f64::consts::PI;

use crate::constants::{HBAR, K_B, SPEED_OF_LIGHT};
use crate::error::{require, Error, Result};

/// Laboratory description of one of the two identical cavities.
///
/// All quantities are SI: lengths in m, angular frequencies and rates in
/// rad/s, power in W, mass in kg, temperature in K. The effective detuning
/// is not stored; it is pinned to `-mechanical_frequency`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalSetup {
    pub cavity_length: f64,
    pub laser_wavelength: f64,
    pub cavity_frequency: f64,
    /// When `None` the laser frequency is `2πc/λ`.
    pub laser_frequency: Option<f64>,
    pub laser_power: f64,
    pub mirror_mass: f64,
    pub mechanical_frequency: f64,
    pub mechanical_damping: f64,
    pub cavity_decay: f64,
    pub bath_temperature: f64,
}

impl PhysicalSetup {
    /// A representative laboratory setup (25 mm cavity,
    /// 1064 nm laser at 11 mW, 145 ng mirror at 947 kHz) with
    /// κ = 2π·2800 Hz, γ = 2π·140 Hz and T = 0.1 mK.
    pub fn reference() -> Self {
        Self {
            cavity_length: 25e-3,
            laser_wavelength: 1064e-9,
            cavity_frequency: 2.0 * PI * 5.26e14,
            laser_frequency: None,
            laser_power: 11e-3,
            mirror_mass: 145e-12,
            mechanical_frequency: 2.0 * PI * 947e3,
            mechanical_damping: 2.0 * PI * 140.0,
            cavity_decay: 2.0 * PI * 2800.0,
            bath_temperature: 1e-4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("cavity_length", self.cavity_length),
            ("laser_wavelength", self.laser_wavelength),
            ("cavity_frequency", self.cavity_frequency),
            ("laser_frequency", self.laser_angular_frequency()),
            ("mirror_mass", self.mirror_mass),
            ("mechanical_frequency", self.mechanical_frequency),
            ("mechanical_damping", self.mechanical_damping),
            ("cavity_decay", self.cavity_decay),
        ];
        for (name, v) in positive {
            require(name, v, v > 0.0, "must be strictly positive")?;
        }
        require(
            "laser_power",
            self.laser_power,
            self.laser_power >= 0.0,
            "must be non-negative",
        )?;
        require(
            "bath_temperature",
            self.bath_temperature,
            self.bath_temperature >= 0.0,
            "must be non-negative",
        )
    }

    pub fn laser_angular_frequency(&self) -> f64 {
        self.laser_frequency
            .unwrap_or(2.0 * PI * SPEED_OF_LIGHT / self.laser_wavelength)
    }

    /// Δ_eff, fixed at the state-transfer point −ω_μ.
    pub fn effective_detuning(&self) -> f64 {
        -self.mechanical_frequency
    }

    /// Pump amplitude ε = sqrt(2κP / ħω_L), in s⁻¹.
    pub fn pump_amplitude(&self) -> f64 {
        (2.0 * self.cavity_decay * self.laser_power / (HBAR * self.laser_angular_frequency()))
            .sqrt()
    }

    /// Steady intracavity amplitude |c_s| at Δ_eff = −ω_μ.
    pub fn intracavity_amplitude(&self) -> f64 {
        let k = self.cavity_decay;
        let d = self.effective_detuning();
        self.pump_amplitude() / (k * k / 4.0 + d * d).sqrt()
    }

    /// Many-photon coupling G = g·|c_s|.
    pub fn effective_coupling(&self) -> f64 {
        optomech_coupling(self) * self.intracavity_amplitude()
    }
}

/// The dimensionless parameters (α, β, r, n_th).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    /// Damping ratio α = γ/κ.
    pub alpha: f64,
    /// Cooperativity β = 4G²/(κγ).
    pub beta: f64,
    /// Squeezing parameter of the injected light.
    pub r: f64,
    /// Mean thermal occupation of the mechanical baths.
    pub n_th: f64,
}

impl ReducedParams {
    pub fn new(alpha: f64, beta: f64, r: f64, n_th: f64) -> Result<Self> {
        let p = Self {
            alpha,
            beta,
            r,
            n_th,
        };
        p.validate()?;
        Ok(p)
    }

    /// Input vacuum, no thermal noise.
    pub fn vacuum(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta,
            r: 0.0,
            n_th: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require("alpha", self.alpha, self.alpha > 0.0, "must be > 0")?;
        require("beta", self.beta, self.beta >= 0.0, "must be >= 0")?;
        require("r", self.r, self.r >= 0.0, "must be >= 0")?;
        require("n_th", self.n_th, self.n_th >= 0.0, "must be >= 0")
    }

    pub fn noise(&self) -> NoiseMoments {
        squeeze_moments(self.r)
    }
}

/// Moments of the squeezed input: N = sinh²r, M = sinh r cosh r.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseMoments {
    pub n: f64,
    pub m: f64,
}

/// Bose occupation 1/(exp(ħω/k_BT) − 1); zero at T = 0.
pub fn mean_thermal_occupation(omega_m: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    1.0 / (HBAR * omega_m / (K_B * temperature)).exp_m1()
}

/// Inverse of [`mean_thermal_occupation`].
pub fn temperature_from_occupation(omega_m: f64, n_th: f64) -> Result<f64> {
    if n_th == 0.0 {
        return Err(Error::ZeroTemperatureUnreachable);
    }
    require("n_th", n_th, n_th > 0.0, "must be > 0")?;
    require("omega_m", omega_m, omega_m > 0.0, "must be > 0")?;
    Ok(HBAR * omega_m / (K_B * (1.0 / n_th).ln_1p()))
}

pub fn squeeze_moments(r: f64) -> NoiseMoments {
    let (s, c) = (r.sinh(), r.cosh());
    NoiseMoments { n: s * s, m: s * c }
}

/// Single-photon coupling g = (ω_c/L)·sqrt(ħ/(μ ω_μ)).
pub fn optomech_coupling(setup: &PhysicalSetup) -> f64 {
    setup.cavity_frequency / setup.cavity_length
        * (HBAR / (setup.mirror_mass * setup.mechanical_frequency)).sqrt()
}

/// Reduce a laboratory setup; the squeezing `r` comes from the caller's
/// configuration since it is a property of the light source.
pub fn reduce(setup: &PhysicalSetup, r: f64) -> Result<ReducedParams> {
    setup.validate()?;
    let g_eff = setup.effective_coupling();
    let (kappa, gamma) = (setup.cavity_decay, setup.mechanical_damping);
    ReducedParams::new(
        gamma / kappa,
        4.0 * g_eff * g_eff / (kappa * gamma),
        r,
        mean_thermal_occupation(setup.mechanical_frequency, setup.bath_temperature),
    )
}
