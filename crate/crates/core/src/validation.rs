//! Seeded end-to-end self-check: Lyapunov oracle against the closed forms
//! plus the physicality, closed-form and Simon invariants.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::covariance::{assemble_global, cm_entries, extract_subsystem, Subsystem};
use crate::error::Result;
use crate::lyapunov::{
    compare_matrices, oracle_covariance_at, oracle_rates, ORACLE_TOL, RESIDUAL_TOL,
};
use crate::measures::{
    closed_form_eta_mm, closed_form_eta_oo, gaussian_discord, pt_min_symplectic, PHYSICAL_TOL,
};
use crate::parallel::{map_ordered, Execution};
use crate::reduction::ReducedParams;
use crate::sweep::format_number;
use crate::thresholds::simon_precondition;

/// Tolerance for the printed η⁻ closed forms against the generic route.
pub const CLOSED_FORM_TOL: f64 = 1e-10;

/// Sampling box of the random draws.
pub const ALPHA_RANGE: (f64, f64) = (1e-3, 1.0);
pub const BETA_RANGE: (f64, f64) = (0.0, 100.0);
pub const R_RANGE: (f64, f64) = (0.0, 3.0);
pub const NTH_RANGE: (f64, f64) = (0.0, 100.0);

/// Test hook: deliberately break one stage so the negative control can be
/// exercised end to end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Perturb c1 of the closed form by one part in 10⁶ before comparing.
    CorruptEntry,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub trial: usize,
    pub check: &'static str,
    pub params: ReducedParams,
    pub value: f64,
    pub limit: f64,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub max_oracle_deviation: f64,
    pub max_residual: f64,
    pub elapsed: Duration,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn write_failures_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "trial", "check", "alpha", "beta", "r", "n_th", "value", "limit",
        ])?;
        for f in &self.failures {
            w.write_record([
                f.trial.to_string(),
                f.check.to_string(),
                format_number(f.params.alpha),
                format_number(f.params.beta),
                format_number(f.params.r),
                format_number(f.params.n_th),
                format_number(f.value),
                format_number(f.limit),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Fixed anchor points checked before the random draws: the vacuum, the
/// decoupled edge β = 0 and an unsqueezed thermal point.
pub fn anchor_points() -> Vec<ReducedParams> {
    vec![
        ReducedParams::vacuum(0.05, 34.0),
        ReducedParams {
            alpha: 0.2,
            beta: 0.0,
            r: 1.5,
            n_th: 7.0,
        },
        ReducedParams {
            alpha: 0.3,
            beta: 20.0,
            r: 0.0,
            n_th: 4.0,
        },
    ]
}

/// `count` draws from the sampling box; α is log-uniform.
pub fn random_draws(count: usize, seed: u64) -> Vec<ReducedParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (la, lb) = (ALPHA_RANGE.0.log10(), ALPHA_RANGE.1.log10());
    (0..count)
        .map(|_| ReducedParams {
            alpha: 10f64.powf(rng.random_range(la..=lb)),
            beta: rng.random_range(BETA_RANGE.0..=BETA_RANGE.1),
            r: rng.random_range(R_RANGE.0..=R_RANGE.1),
            n_th: rng.random_range(NTH_RANGE.0..=NTH_RANGE.1),
        })
        .collect()
}

struct TrialOutcome {
    checks: usize,
    failures: Vec<Failure>,
    deviation: f64,
    residual: f64,
}

fn relative_gap(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn check_point(trial: usize, p: &ReducedParams, fault: Fault) -> TrialOutcome {
    let mut out = TrialOutcome {
        checks: 0,
        failures: Vec::new(),
        deviation: 0.0,
        residual: 0.0,
    };
    let mut expect = |check: &'static str, ok: bool, value: f64, limit: f64| {
        out.checks += 1;
        if !ok {
            out.failures.push(Failure {
                trial,
                check,
                params: *p,
                value,
                limit,
            });
        }
    };

    let mut entries = cm_entries(p);
    if fault == Fault::CorruptEntry {
        entries.c1 += 1e-6 * entries.c1.abs().max(1.0);
    }
    let closed = assemble_global(&entries);

    let (g, k, y) = oracle_rates(p);
    let (deviation, residual) = match oracle_covariance_at(p, g, k, y) {
        Ok((oracle, residual)) => {
            let report = compare_matrices(p, &oracle, &closed, residual);
            expect(
                "oracle_equivalence",
                report.max_deviation < ORACLE_TOL,
                report.max_deviation,
                ORACLE_TOL,
            );
            expect(
                "lyapunov_residual",
                report.residual < RESIDUAL_TOL,
                report.residual,
                RESIDUAL_TOL,
            );
            expect(
                "oracle_sparsity",
                report.off_pattern < 1e-10,
                report.off_pattern,
                1e-10,
            );
            (report.max_deviation, report.residual)
        }
        Err(_) => {
            expect("oracle_solve", false, f64::NAN, 0.0);
            (f64::NAN, f64::NAN)
        }
    };

    match closed.symplectic_spectrum() {
        Ok(nu) => expect(
            "global_physicality",
            nu[0] >= 0.5 - PHYSICAL_TOL,
            nu[0],
            0.5 - PHYSICAL_TOL,
        ),
        Err(_) => expect("global_physicality", false, f64::NAN, 0.5 - PHYSICAL_TOL),
    }

    for subsystem in Subsystem::ALL {
        let cm = extract_subsystem(&closed, subsystem);
        let metrics = match gaussian_discord(&cm) {
            Ok(m) => m,
            Err(_) => {
                expect("subsystem_evaluation", false, f64::NAN, 0.0);
                continue;
            }
        };
        expect(
            "subsystem_physicality",
            metrics.nu_minus >= 0.5 - PHYSICAL_TOL,
            metrics.nu_minus,
            0.5 - PHYSICAL_TOL,
        );
        expect(
            "discord_nonnegative",
            metrics.discord >= -PHYSICAL_TOL,
            metrics.discord,
            -PHYSICAL_TOL,
        );
        if metrics.log_negativity == 0.0 {
            expect(
                "separable_discord_below_one",
                metrics.discord < 1.0 + PHYSICAL_TOL,
                metrics.discord,
                1.0 + PHYSICAL_TOL,
            );
        }
        if !simon_precondition(&cm) {
            expect(
                "simon_criterion",
                metrics.log_negativity == 0.0,
                metrics.log_negativity,
                0.0,
            );
        }
        if p.r == 0.0 && subsystem != Subsystem::HybridLocal {
            expect(
                "unsqueezed_separable",
                metrics.log_negativity == 0.0,
                metrics.log_negativity,
                0.0,
            );
        }
        let closed_form = match subsystem {
            Subsystem::MechanicalPair => Some(closed_form_eta_mm(p)),
            Subsystem::OpticalPair => Some(closed_form_eta_oo(p)),
            _ => None,
        };
        if let (Some(cf), Ok(eta)) = (closed_form, pt_min_symplectic(&cm)) {
            let gap = relative_gap(2.0 * cf, 2.0 * eta);
            expect(
                "closed_form_eta",
                gap < CLOSED_FORM_TOL,
                gap,
                CLOSED_FORM_TOL,
            );
        }
    }
    out.deviation = deviation;
    out.residual = residual;
    out
}

pub fn validate(trials: usize, seed: u64) -> ValidationReport {
    validate_with(trials, seed, Fault::None, Execution::default())
}

pub fn validate_with(trials: usize, seed: u64, fault: Fault, exec: Execution) -> ValidationReport {
    let start = Instant::now();
    let mut points = anchor_points();
    points.extend(random_draws(trials, seed));
    let indexed: Vec<(usize, ReducedParams)> = points.into_iter().enumerate().collect();
    let outcomes = map_ordered(&indexed, exec, |(i, p)| check_point(*i, p, fault));
    let mut report = ValidationReport {
        trials,
        seed,
        checks: 0,
        failures: Vec::new(),
        max_oracle_deviation: 0.0,
        max_residual: 0.0,
        elapsed: Duration::ZERO,
    };
    for o in outcomes {
        report.checks += o.checks;
        report.failures.extend(o.failures);
        report.max_oracle_deviation = report.max_oracle_deviation.max(o.deviation);
        report.max_residual = report.max_residual.max(o.residual);
    }
    report.elapsed = start.elapsed();
    report
}
