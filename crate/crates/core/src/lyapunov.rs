//! Independent steady-state route: solve A σ + σ Aᵀ + D = 0 for the
//! linearized, rotating-frame dynamics of both cavities.
//!
//! Per cavity i, with G the many-photon coupling:
//!
//! ```text
//! dXm/dt = −γ/2 Xm + G Xo      dYm/dt = −γ/2 Ym + G Yo
//! dXo/dt = −κ/2 Xo − G Xm      dYo/dt = −κ/2 Yo − G Ym
//! ```
//!
//! Diffusion from the symmetrized input correlators: γ(n_th + ½) on each
//! mechanical quadrature, κ(N + ½) on each optical quadrature, and the
//! two-mode squeezing terms ⟨Xo1 Xo2⟩ = +κM, ⟨Yo1 Yo2⟩ = −κM. The 2ω_μ
//! offset of the squeezed correlators cancels in the frame rotating at ω_μ.

use nalgebra::{DMatrix, DVector, Schur};

use crate::covariance::{assemble_global, cm_entries, GlobalCovariance, Matrix8, Mode};
use crate::error::{require, Error, Result};
use crate::reduction::{squeeze_moments, NoiseMoments, ReducedParams};

/// Agreement threshold between oracle and closed form.
pub const ORACLE_TOL: f64 = 1e-8;
/// Allowed Lyapunov residual relative to ‖D‖∞.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Entries whose closed-form magnitude is below this fraction of the
/// largest entry are compared against that fraction instead of themselves.
pub const RELATIVE_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix(pub Matrix8);

#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionMatrix(pub Matrix8);

pub fn build_drift(coupling: f64, kappa: f64, gamma: f64) -> Result<DriftMatrix> {
    require("kappa", kappa, kappa > 0.0, "must be > 0")?;
    require("gamma", gamma, gamma > 0.0, "must be > 0")?;
    require("coupling", coupling, coupling >= 0.0, "must be >= 0")?;
    let mut a = Matrix8::zeros();
    for (mech, opt) in [
        (Mode::Mechanical1, Mode::Optical1),
        (Mode::Mechanical2, Mode::Optical2),
    ] {
        for (m, o) in [(mech.x(), opt.x()), (mech.y(), opt.y())] {
            let (m, o) = (m.index(), o.index());
            a[(m, m)] = -gamma / 2.0;
            a[(o, o)] = -kappa / 2.0;
            a[(m, o)] = coupling;
            a[(o, m)] = -coupling;
        }
    }
    Ok(DriftMatrix(a))
}

pub fn build_diffusion(
    kappa: f64,
    gamma: f64,
    n_th: f64,
    noise: NoiseMoments,
) -> Result<DiffusionMatrix> {
    require("kappa", kappa, kappa > 0.0, "must be > 0")?;
    require("gamma", gamma, gamma > 0.0, "must be > 0")?;
    require("n_th", n_th, n_th >= 0.0, "must be >= 0")?;
    let mut d = Matrix8::zeros();
    for mode in [Mode::Mechanical1, Mode::Mechanical2] {
        for q in [mode.x(), mode.y()] {
            d[(q.index(), q.index())] = gamma * (n_th + 0.5);
        }
    }
    for mode in [Mode::Optical1, Mode::Optical2] {
        for q in [mode.x(), mode.y()] {
            d[(q.index(), q.index())] = kappa * (noise.n + 0.5);
        }
    }
    let (o1, o2) = (Mode::Optical1, Mode::Optical2);
    for (p, q, v) in [
        (o1.x(), o2.x(), kappa * noise.m),
        (o1.y(), o2.y(), -kappa * noise.m),
    ] {
        d[(p.index(), q.index())] = v;
        d[(q.index(), p.index())] = v;
    }
    Ok(DiffusionMatrix(d))
}

impl DriftMatrix {
    /// Largest real part of the spectrum, or `None` if the Schur iteration
    /// does not converge (it can stall on the repeated eigenvalues of the
    /// two identical cavities).
    pub fn max_real_eigenvalue(&self) -> Option<f64> {
        Schur::try_new(self.0, f64::EPSILON, 10_000).map(|schur| {
            schur
                .complex_eigenvalues()
                .iter()
                .map(|z| z.re)
                .fold(f64::NEG_INFINITY, f64::max)
        })
    }

    /// Hurwitz test by Lyapunov certificate: A is stable iff
    /// AᵀP + PA = −I has a positive definite solution P.
    pub fn is_stable(&self) -> bool {
        let eye = Matrix8::identity();
        match kronecker_solve(&self.0.transpose(), &eye) {
            Some(p) => {
                let p = 0.5 * (p + p.transpose());
                p.iter().all(|v| v.is_finite()) && p.cholesky().is_some()
            }
            None => false,
        }
    }
}

/// X with A X + X Aᵀ + Q = 0, or `None` if the system is singular.
fn kronecker_solve(a: &Matrix8, q: &Matrix8) -> Option<Matrix8> {
    let drift = DMatrix::from_column_slice(8, 8, a.as_slice());
    let eye = DMatrix::<f64>::identity(8, 8);
    let system = eye.kronecker(&drift) + drift.kronecker(&eye);
    let rhs = -DVector::from_column_slice(q.as_slice());
    let solution = system.lu().solve(&rhs)?;
    Some(Matrix8::from_column_slice(solution.as_slice()))
}

fn inf_norm(m: &Matrix8) -> f64 {
    m.row_iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// ‖A σ + σ Aᵀ + D‖∞.
pub fn lyapunov_residual(a: &DriftMatrix, d: &DiffusionMatrix, sigma: &Matrix8) -> f64 {
    inf_norm(&(a.0 * sigma + sigma * a.0.transpose() + d.0))
}

/// Dense solve of the 64-unknown system (I ⊗ A + A ⊗ I) vec σ = −vec D.
pub fn solve_lyapunov(a: &DriftMatrix, d: &DiffusionMatrix) -> Result<GlobalCovariance> {
    let unstable = || Error::Unstable {
        max_real: a.max_real_eigenvalue().unwrap_or(f64::NAN),
    };
    if !a.is_stable() {
        return Err(unstable());
    }
    let sigma = kronecker_solve(&a.0, &d.0).ok_or_else(unstable)?;
    Ok(GlobalCovariance::from_matrix(sigma))
}

/// Rates used by the oracle: κ = 1, γ = ακ, G = sqrt(βκγ)/2.
pub fn oracle_rates(p: &ReducedParams) -> (f64, f64, f64) {
    let kappa = 1.0;
    let gamma = p.alpha * kappa;
    let coupling = (p.beta * kappa * gamma).sqrt() / 2.0;
    (coupling, kappa, gamma)
}

/// Steady state from the dynamics at the given rates.
pub fn oracle_covariance_at(
    p: &ReducedParams,
    coupling: f64,
    kappa: f64,
    gamma: f64,
) -> Result<(GlobalCovariance, f64)> {
    let a = build_drift(coupling, kappa, gamma)?;
    let d = build_diffusion(kappa, gamma, p.n_th, squeeze_moments(p.r))?;
    let sigma = solve_lyapunov(&a, &d)?;
    let residual = lyapunov_residual(&a, &d, sigma.matrix()) / inf_norm(&d.0);
    Ok((sigma, residual))
}

pub fn oracle_covariance(p: &ReducedParams) -> Result<GlobalCovariance> {
    let (g, k, y) = oracle_rates(p);
    oracle_covariance_at(p, g, k, y).map(|(s, _)| s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub params: ReducedParams,
    /// Largest entrywise relative deviation over the closed-form pattern.
    pub max_deviation: f64,
    /// Largest oracle entry outside the pattern, relative to the largest entry.
    pub off_pattern: f64,
    /// Lyapunov residual relative to ‖D‖∞.
    pub residual: f64,
    pub passed: bool,
}

/// Compare the Lyapunov steady state with the closed-form matrix.
pub fn oracle_compare(p: &ReducedParams) -> Result<OracleReport> {
    p.validate()?;
    let (g, k, y) = oracle_rates(p);
    let (oracle, residual) = oracle_covariance_at(p, g, k, y)?;
    let closed = assemble_global(&cm_entries(p));
    Ok(compare_matrices(p, &oracle, &closed, residual))
}

pub(crate) fn compare_matrices(
    p: &ReducedParams,
    oracle: &GlobalCovariance,
    closed: &GlobalCovariance,
    residual: f64,
) -> OracleReport {
    let (o, c) = (oracle.matrix(), closed.matrix());
    let scale = c.amax().max(o.amax());
    let pattern = assemble_global(&crate::covariance::CovarianceEntries {
        a1: 1.0,
        a2: 1.0,
        c1: 1.0,
        c2: 1.0,
        c3: 1.0,
        c4: 1.0,
    });
    let mut max_deviation: f64 = 0.0;
    let mut off_pattern: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            let diff = (o[(i, j)] - c[(i, j)]).abs();
            if pattern.matrix()[(i, j)] != 0.0 {
                let denom = c[(i, j)].abs().max(RELATIVE_FLOOR * scale);
                max_deviation = max_deviation.max(diff / denom);
            } else {
                off_pattern = off_pattern.max(o[(i, j)].abs() / scale);
            }
        }
    }
    let passed = max_deviation < ORACLE_TOL && residual < RESIDUAL_TOL && off_pattern < 1e-10;
    OracleReport {
        params: *p,
        max_deviation,
        off_pattern,
        residual,
        passed,
    }
}
