use optocorr::covariance::{assemble_global, cm_entries, extract_subsystem, Subsystem};
use optocorr::measures::{gaussian_discord, PHYSICAL_TOL};
use optocorr::parallel::Execution;
use optocorr::sweep::{
    run_preset, run_sweep, run_sweep_with, write_csv, FigurePreset, FixedParams, Measures, Spacing,
    SweepSpec, SweepVariable, CSV_HEADER,
};
use optocorr::thresholds::simon_precondition;

fn csv_bytes(rows: &[optocorr::sweep::Row]) -> Vec<u8> {
    let mut out = Vec::new();
    write_csv(rows, &mut out).unwrap();
    out
}

#[test]
fn vacuum_single_point() {
    let spec = SweepSpec {
        label: String::new(),
        variable: SweepVariable::Squeezing,
        start: 0.0,
        end: 0.0,
        points: 2,
        spacing: Spacing::Linear,
        fixed: FixedParams {
            alpha: 0.05,
            beta: 0.0,
            n_th: Some(0.0),
            ..FixedParams::default()
        },
        subsystems: Subsystem::ALL.to_vec(),
        measures: Measures::BOTH,
    };
    let rows = run_sweep(&spec).unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row.log_negativity, Some(0.0));
        assert_eq!(row.discord, Some(0.0));
    }
}

#[test]
fn preset_equals_manual_spec() {
    let preset = run_preset(FigurePreset::Fig3, Some(11), Execution::Sequential).unwrap();
    let mut manual = Vec::new();
    for n in [1.0, 10.0, 25.0, 60.0] {
        let spec = SweepSpec {
            label: "fig3".into(),
            variable: SweepVariable::Cooperativity,
            start: 0.0,
            end: 100.0,
            points: 11,
            spacing: Spacing::Linear,
            fixed: FixedParams {
                alpha: 0.01,
                beta: 0.0,
                r: 2.0,
                n_th: Some(n),
                ..FixedParams::default()
            },
            subsystems: vec![Subsystem::MechanicalPair, Subsystem::OpticalPair],
            measures: Measures::NEGATIVITY,
        };
        manual.extend(run_sweep(&spec).unwrap());
    }
    assert_eq!(preset, manual);
}

#[test]
fn csv_is_byte_stable_across_execution_modes() {
    for preset in FigurePreset::ALL {
        let a = csv_bytes(&run_preset(preset, Some(9), Execution::Sequential).unwrap());
        let b = csv_bytes(&run_preset(preset, Some(9), Execution::Parallel).unwrap());
        let c = csv_bytes(&run_preset(preset, Some(9), Execution::Parallel).unwrap());
        assert_eq!(a, b, "{preset}");
        assert_eq!(b, c, "{preset}");
        let text = String::from_utf8(a).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            text.lines().count(),
            1 + preset.specs(Some(9)).len() * 9 * preset.specs(Some(9))[0].subsystems.len()
        );
    }
}

#[test]
fn rows_follow_grid_order() {
    let spec = &FigurePreset::Fig7.specs(Some(25))[0];
    let rows = run_sweep_with(spec, Execution::Parallel).unwrap();
    let values: Vec<f64> = rows.iter().map(|r| r.sweep_value).collect();
    assert_eq!(values, spec.grid());
    assert!(values.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn optical_pair_dies_past_beta0_at_n60() {
    let rows = run_preset(FigurePreset::Fig3, Some(201), Execution::default()).unwrap();
    for row in rows
        .iter()
        .filter(|r| r.params.n_th == 60.0 && r.subsystem == Subsystem::OpticalPair)
    {
        let en = row.log_negativity.unwrap();
        if row.params.beta > 4.55 {
            assert_eq!(en, 0.0, "beta = {}", row.params.beta);
        } else if row.params.beta < 4.5 && row.params.beta > 0.0 {
            assert!(en > 0.0, "beta = {}", row.params.beta);
        }
    }
}

#[test]
fn preset_rows_are_physical() {
    for preset in FigurePreset::ALL {
        for row in run_preset(preset, Some(21), Execution::default()).unwrap() {
            let sigma = assemble_global(&cm_entries(&row.params));
            let cm = extract_subsystem(&sigma, row.subsystem);
            let m = gaussian_discord(&cm).unwrap();
            assert!(m.nu_minus >= 0.5 - PHYSICAL_TOL, "{preset}: {row:?}");
            if !simon_precondition(&cm) {
                assert_eq!(m.log_negativity, 0.0, "{preset}: {row:?}");
            }
            if let Some(en) = row.log_negativity {
                assert_eq!(en, m.log_negativity);
            }
        }
    }
}

#[test]
fn temperature_column_is_filled_when_known() {
    for row in run_preset(FigurePreset::Fig2, Some(5), Execution::default()).unwrap() {
        assert_eq!(row.temperature, Some(row.sweep_value));
    }
    for row in run_preset(FigurePreset::Fig3, Some(5), Execution::default()).unwrap() {
        assert_eq!(row.temperature, None);
    }
}
