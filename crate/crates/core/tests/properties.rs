//! Property tests over the sampling box used by the validation run.

use optocorr::constants::DEFAULT_MECHANICAL_FREQUENCY;
use optocorr::covariance::{assemble_global, cm_entries, extract_subsystem, Subsystem};
use optocorr::lyapunov::{oracle_compare, ORACLE_TOL, RESIDUAL_TOL};
use optocorr::measures::{
    closed_form_eta_mm, closed_form_eta_oo, gaussian_discord, log_negativity, pt_min_symplectic,
    PHYSICAL_TOL,
};
use optocorr::reduction::{mean_thermal_occupation, squeeze_moments, temperature_from_occupation};
use optocorr::thresholds::{
    beta0_mechanical, beta0_optical, simon_precondition, t0_mechanical, t0_optical,
};
use optocorr::ReducedParams;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ReducedParams> {
    (-3.0f64..=0.0, 0.0f64..=100.0, 0.0f64..=3.0, 0.0f64..=100.0)
        .prop_map(|(la, beta, r, n_th)| ReducedParams::new(10f64.powf(la), beta, r, n_th).unwrap())
}

fn en(p: &ReducedParams, s: Subsystem) -> f64 {
    let sigma = assemble_global(&cm_entries(p));
    log_negativity(&extract_subsystem(&sigma, s)).unwrap()
}

proptest! {
    #[test]
    fn states_are_physical(p in params()) {
        let sigma = assemble_global(&cm_entries(&p));
        let nu = sigma.symplectic_spectrum().unwrap();
        prop_assert!(nu[0] >= 0.5 - PHYSICAL_TOL, "global ν⁻ = {}", nu[0]);
        for s in Subsystem::ALL {
            let m = gaussian_discord(&extract_subsystem(&sigma, s)).unwrap();
            prop_assert!(m.nu_minus >= 0.5 - PHYSICAL_TOL, "{s}: ν⁻ = {}", m.nu_minus);
            prop_assert!(m.discord >= -PHYSICAL_TOL, "{s}: D = {}", m.discord);
            if m.log_negativity == 0.0 {
                prop_assert!(m.discord < 1.0 + PHYSICAL_TOL, "{s}: separable D = {}", m.discord);
            }
        }
    }

    #[test]
    fn closed_form_eta_matches_generic(p in params()) {
        let sigma = assemble_global(&cm_entries(&p));
        for (s, cf) in [
            (Subsystem::MechanicalPair, closed_form_eta_mm(&p)),
            (Subsystem::OpticalPair, closed_form_eta_oo(&p)),
        ] {
            let eta = pt_min_symplectic(&extract_subsystem(&sigma, s)).unwrap();
            prop_assert!((cf - eta).abs() <= 1e-10 * eta.max(1.0), "{s}: {cf} vs {eta}");
        }
    }

    #[test]
    fn simon_precondition_is_necessary(p in params()) {
        let sigma = assemble_global(&cm_entries(&p));
        for s in Subsystem::ALL {
            let cm = extract_subsystem(&sigma, s);
            if !simon_precondition(&cm) {
                prop_assert_eq!(log_negativity(&cm).unwrap(), 0.0);
            }
        }
        prop_assert_eq!(en(&p, Subsystem::HybridLocal), 0.0);
    }

    #[test]
    fn unsqueezed_light_gives_no_entanglement(la in -3.0f64..=0.0, beta in 0.0f64..=100.0, n_th in 0.0f64..=100.0) {
        let p = ReducedParams::new(10f64.powf(la), beta, 0.0, n_th).unwrap();
        for s in [Subsystem::MechanicalPair, Subsystem::OpticalPair, Subsystem::HybridCross] {
            prop_assert_eq!(en(&p, s), 0.0);
        }
    }

    #[test]
    fn squeezed_moments_saturate_purity(r in 0.0f64..=5.0) {
        let m = squeeze_moments(r);
        prop_assert!((m.m * m.m - m.n * (m.n + 1.0)).abs() <= 1e-12 * (m.m * m.m).max(1.0));
    }

    #[test]
    fn occupation_is_monotone_and_invertible(t1 in 1e-7f64..1e-2, t2 in 1e-7f64..1e-2) {
        let w = DEFAULT_MECHANICAL_FREQUENCY;
        let (n1, n2) = (mean_thermal_occupation(w, t1), mean_thermal_occupation(w, t2));
        if t1 < t2 {
            prop_assert!(n1 <= n2);
        }
        if n1 > 1e-200 {
            let back = temperature_from_occupation(w, n1).unwrap();
            prop_assert!((back - t1).abs() <= 1e-10 * t1);
        }
    }

    #[test]
    fn cooperativity_thresholds_bracket_the_sign_change(
        la in -3.0f64..=0.0,
        r in 0.05f64..=3.0,
        n_th in 0.0f64..=100.0,
    ) {
        let alpha = 10f64.powf(la);
        let at = |beta: f64, s| en(&ReducedParams::new(alpha, beta, r, n_th).unwrap(), s);
        let mech = beta0_mechanical(alpha, r, n_th);
        if let Some(b0) = mech.value {
            prop_assert_eq!(at(b0 * (1.0 - 1e-6), Subsystem::MechanicalPair), 0.0);
            prop_assert!(at(b0 * (1.0 + 1e-6) + 1e-9, Subsystem::MechanicalPair) > 0.0);
        } else if !mech.attainable {
            prop_assert_eq!(at(1e4, Subsystem::MechanicalPair), 0.0);
        }
        let opt = beta0_optical(alpha, r, n_th);
        if let Some(b0) = opt.value {
            prop_assert!(at(b0 * (1.0 - 1e-6), Subsystem::OpticalPair) > 0.0);
            prop_assert_eq!(at(b0 * (1.0 + 1e-6), Subsystem::OpticalPair), 0.0);
        } else if opt.attainable {
            prop_assert!(at(1e4, Subsystem::OpticalPair) > 0.0);
        }
    }

    #[test]
    fn temperature_thresholds_bracket_the_sign_change(
        la in -3.0f64..=0.0,
        beta in 0.5f64..=100.0,
        r in 0.05f64..=3.0,
    ) {
        let alpha = 10f64.powf(la);
        let w = DEFAULT_MECHANICAL_FREQUENCY;
        let at = |t: f64, s| {
            let n = mean_thermal_occupation(w, t);
            en(&ReducedParams::new(alpha, beta, r, n).unwrap(), s)
        };
        for (s, result) in [
            (Subsystem::MechanicalPair, t0_mechanical(alpha, beta, r, w)),
            (Subsystem::OpticalPair, t0_optical(alpha, beta, r, w)),
        ] {
            let t0 = result.value.unwrap();
            prop_assert!(at(t0 * (1.0 - 1e-6), s) > 0.0, "{s} below T0");
            prop_assert_eq!(at(t0 * (1.0 + 1e-6), s), 0.0, "{} above T0", s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_agrees_with_closed_forms(p in params()) {
        let report = oracle_compare(&p).unwrap();
        prop_assert!(report.max_deviation < ORACLE_TOL, "deviation {}", report.max_deviation);
        prop_assert!(report.residual < RESIDUAL_TOL, "residual {}", report.residual);
        prop_assert!(report.off_pattern < 1e-10, "off pattern {}", report.off_pattern);
    }
}
