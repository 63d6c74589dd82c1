//! Parameter sweeps, figure presets and their CSV rendering.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use crate::constants::DEFAULT_MECHANICAL_FREQUENCY;
use crate::covariance::{assemble_global, cm_entries, extract_subsystem, Subsystem};
use crate::error::{Error, Result};
use crate::measures::{gaussian_discord, log_negativity};
use crate::parallel::{map_ordered, Execution};
use crate::reduction::{mean_thermal_occupation, temperature_from_occupation, ReducedParams};
use crate::thresholds::{
    beta0_mechanical, beta0_optical, t0_mechanical, t0_optical, ThresholdResult,
};

pub const CSV_HEADER: [&str; 11] = [
    "preset",
    "subsystem",
    "sweep_name",
    "sweep_value",
    "alpha",
    "beta",
    "r",
    "n_th",
    "T_kelvin",
    "E_N",
    "D",
];

pub const THRESHOLD_HEADER: [&str; 9] = [
    "threshold",
    "subsystem",
    "value",
    "attainable",
    "alpha",
    "beta",
    "r",
    "n_th",
    "omega_m",
];

/// Twelve significant digits, scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Temperature,
    Occupation,
    Cooperativity,
    Squeezing,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Temperature => "T",
            SweepVariable::Occupation => "n_th",
            SweepVariable::Cooperativity => "beta",
            SweepVariable::Squeezing => "r",
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "t" | "temp" | "temperature" | "temp-kelvin" => Ok(SweepVariable::Temperature),
            "nth" | "n_th" | "n-th" => Ok(SweepVariable::Occupation),
            "beta" => Ok(SweepVariable::Cooperativity),
            "r" => Ok(SweepVariable::Squeezing),
            other => Err(Error::InvalidSweep(format!(
                "unknown sweep variable `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Which measures to emit; an unrequested column is left empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measures {
    pub log_negativity: bool,
    pub discord: bool,
}

impl Measures {
    pub const BOTH: Measures = Measures {
        log_negativity: true,
        discord: true,
    };
    pub const NEGATIVITY: Measures = Measures {
        log_negativity: true,
        discord: false,
    };
    pub const DISCORD: Measures = Measures {
        log_negativity: false,
        discord: true,
    };
}

impl FromStr for Measures {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut m = Measures {
            log_negativity: false,
            discord: false,
        };
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item.to_ascii_lowercase().as_str() {
                "en" | "e_n" | "negativity" => m.log_negativity = true,
                "d" | "discord" => m.discord = true,
                "both" | "all" => m = Measures::BOTH,
                other => return Err(Error::InvalidSweep(format!("unknown measure `{other}`"))),
            }
        }
        if !(m.log_negativity || m.discord) {
            return Err(Error::InvalidSweep("no measure selected".into()));
        }
        Ok(m)
    }
}

pub fn parse_subsystems(s: &str) -> Result<Vec<Subsystem>> {
    let list = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Subsystem>>>()?;
    if list.is_empty() {
        return Err(Error::InvalidSweep("no subsystem selected".into()));
    }
    Ok(list)
}

/// Parameters held constant during a sweep. The bath is given either as an
/// occupation or as a temperature, not both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub alpha: f64,
    pub beta: f64,
    pub r: f64,
    pub n_th: Option<f64>,
    pub temperature: Option<f64>,
    /// Explicit mechanical frequency; the default is used for conversions
    /// when absent, but temperatures are then only reported if the bath was
    /// specified as a temperature.
    pub omega_m: Option<f64>,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            alpha: 0.05,
            beta: 34.0,
            r: 0.0,
            n_th: None,
            temperature: None,
            omega_m: None,
        }
    }
}

impl FixedParams {
    pub fn omega(&self) -> f64 {
        self.omega_m.unwrap_or(DEFAULT_MECHANICAL_FREQUENCY)
    }

    fn check(&self) -> Result<()> {
        if self.n_th.is_some() && self.temperature.is_some() {
            return Err(Error::InvalidSweep(
                "give the bath either as n_th or as a temperature, not both".into(),
            ));
        }
        if let Some(t) = self.temperature {
            if t.is_nan() || t < 0.0 {
                return Err(Error::InvalidSweep(format!(
                    "temperature must be >= 0, got {t}"
                )));
            }
        }
        if let Some(w) = self.omega_m {
            if w.is_nan() || w <= 0.0 {
                return Err(Error::InvalidSweep(format!("omega_m must be > 0, got {w}")));
            }
        }
        Ok(())
    }

    /// Occupation implied by the fixed bath (0 when unspecified).
    pub fn occupation(&self) -> f64 {
        match (self.n_th, self.temperature) {
            (Some(n), _) => n,
            (None, Some(t)) => mean_thermal_occupation(self.omega(), t),
            (None, None) => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Written to the `preset` column; empty for ad-hoc sweeps.
    pub label: String,
    pub variable: SweepVariable,
    pub start: f64,
    pub end: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub fixed: FixedParams,
    pub subsystems: Vec<Subsystem>,
    pub measures: Measures,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.fixed.check()?;
        if self.points < 2 {
            return Err(Error::InvalidSweep(format!(
                "grid size must be >= 2, got {}",
                self.points
            )));
        }
        if !(self.start.is_finite() && self.end.is_finite()) {
            return Err(Error::InvalidSweep("range bounds must be finite".into()));
        }
        if self.start < 0.0 || self.end < 0.0 {
            return Err(Error::InvalidSweep(format!(
                "{} range must be non-negative",
                self.variable
            )));
        }
        if self.spacing == Spacing::Log && (self.start <= 0.0 || self.end <= 0.0) {
            return Err(Error::InvalidSweep(
                "log spacing needs positive bounds".into(),
            ));
        }
        if self.subsystems.is_empty() {
            return Err(Error::InvalidSweep("no subsystem selected".into()));
        }
        Ok(())
    }

    /// Grid values in sweep order. A degenerate range yields a single point.
    pub fn grid(&self) -> Vec<f64> {
        if self.start == self.end {
            return vec![self.start];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    return self.end;
                }
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.end - self.start) * t,
                    Spacing::Log => {
                        let (a, b) = (self.start.log10(), self.end.log10());
                        10f64.powf(a + (b - a) * t)
                    }
                }
            })
            .collect()
    }

    /// Reduced parameters and (when known) temperature at a grid value.
    pub fn point(&self, value: f64) -> Result<(ReducedParams, Option<f64>)> {
        let f = &self.fixed;
        let (alpha, mut beta, mut r) = (f.alpha, f.beta, f.r);
        let omega = f.omega();
        let (n_th, temperature) = match self.variable {
            SweepVariable::Temperature => (mean_thermal_occupation(omega, value), Some(value)),
            SweepVariable::Occupation => (value, None),
            _ => (f.occupation(), f.temperature),
        };
        match self.variable {
            SweepVariable::Cooperativity => beta = value,
            SweepVariable::Squeezing => r = value,
            _ => {}
        }
        let temperature = temperature.or_else(|| {
            f.omega_m.map(|w| {
                if n_th == 0.0 {
                    0.0
                } else {
                    temperature_from_occupation(w, n_th).unwrap_or(f64::NAN)
                }
            })
        });
        Ok((ReducedParams::new(alpha, beta, r, n_th)?, temperature))
    }
}

/// One CSV line.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub preset: String,
    pub subsystem: Subsystem,
    pub sweep_name: &'static str,
    pub sweep_value: f64,
    pub params: ReducedParams,
    pub temperature: Option<f64>,
    pub log_negativity: Option<f64>,
    pub discord: Option<f64>,
}

impl Row {
    pub fn record(&self) -> [String; 11] {
        [
            self.preset.clone(),
            self.subsystem.tag().to_string(),
            self.sweep_name.to_string(),
            format_number(self.sweep_value),
            format_number(self.params.alpha),
            format_number(self.params.beta),
            format_number(self.params.r),
            format_number(self.params.n_th),
            format_opt(self.temperature),
            format_opt(self.log_negativity),
            format_opt(self.discord),
        ]
    }
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> Result<Vec<Row>> {
    let (params, temperature) = spec.point(value)?;
    let sigma = assemble_global(&cm_entries(&params));
    spec.subsystems
        .iter()
        .map(|&subsystem| {
            let cm = extract_subsystem(&sigma, subsystem);
            let (en, d) = if spec.measures.discord {
                let m = gaussian_discord(&cm)?;
                (m.log_negativity, Some(m.discord))
            } else {
                (log_negativity(&cm)?, None)
            };
            Ok(Row {
                preset: spec.label.clone(),
                subsystem,
                sweep_name: spec.variable.name(),
                sweep_value: value,
                params,
                temperature,
                log_negativity: spec.measures.log_negativity.then_some(en),
                discord: d,
            })
        })
        .collect()
}

/// Rows for every grid point (outer) and subsystem (inner), in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<Row>> {
    run_sweep_with(spec, Execution::default())
}

pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<Vec<Row>> {
    spec.validate()?;
    let grid = spec.grid();
    let chunks = map_ordered(&grid, exec, |&v| evaluate_point(spec, v));
    let mut rows = Vec::with_capacity(grid.len() * spec.subsystems.len());
    for chunk in chunks {
        rows.extend(chunk?);
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[Row], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Named sweep groups, one per plot of the model's standard curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    /// E_N of the homogeneous pairs against temperature.
    Fig2,
    /// E_N of the homogeneous pairs against cooperativity.
    Fig3,
    /// E_N of the cross hybrid pair against squeezing.
    Fig4,
    /// Discord of the homogeneous pairs against temperature.
    Fig5,
    /// Discord of the homogeneous pairs against cooperativity.
    Fig6,
    /// Discord of the local hybrid pair against occupation.
    Fig7,
    /// Discord of the cross hybrid pair against squeezing.
    Fig8,
}

pub const FIG2_SQUEEZING: [f64; 4] = [0.0, 0.5, 1.0, 1.5];
pub const FIG3_OCCUPATIONS: [f64; 4] = [1.0, 10.0, 25.0, 60.0];
pub const FIG4_DAMPING: [f64; 3] = [0.5, 1.0, 2.0];
pub const FIG7_SQUEEZING: [f64; 3] = [0.75, 1.0, 1.25];

impl FigurePreset {
    pub const ALL: [FigurePreset; 7] = [
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
        FigurePreset::Fig6,
        FigurePreset::Fig7,
        FigurePreset::Fig8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
            FigurePreset::Fig6 => "fig6",
            FigurePreset::Fig7 => "fig7",
            FigurePreset::Fig8 => "fig8",
        }
    }

    pub fn default_points(self) -> usize {
        match self {
            FigurePreset::Fig2 | FigurePreset::Fig5 => 61,
            FigurePreset::Fig7 => 161,
            _ => 101,
        }
    }

    /// One sweep per curve of the figure.
    pub fn specs(self, points: Option<usize>) -> Vec<SweepSpec> {
        use Subsystem::*;
        let points = points.unwrap_or_else(|| self.default_points());
        let spec =
            |variable, start, end, spacing, fixed, subsystems: &[Subsystem], measures| SweepSpec {
                label: self.name().to_string(),
                variable,
                start,
                end,
                points,
                spacing,
                fixed,
                subsystems: subsystems.to_vec(),
                measures,
            };
        let homogeneous = [MechanicalPair, OpticalPair];
        match self {
            FigurePreset::Fig2 | FigurePreset::Fig5 => {
                let measures = if self == FigurePreset::Fig2 {
                    Measures::NEGATIVITY
                } else {
                    Measures::DISCORD
                };
                FIG2_SQUEEZING
                    .iter()
                    .map(|&r| {
                        let fixed = FixedParams {
                            alpha: 0.05,
                            beta: 34.0,
                            r,
                            ..FixedParams::default()
                        };
                        spec(
                            SweepVariable::Temperature,
                            1e-6,
                            1e-3,
                            Spacing::Log,
                            fixed,
                            &homogeneous,
                            measures,
                        )
                    })
                    .collect()
            }
            FigurePreset::Fig3 | FigurePreset::Fig6 => {
                let measures = if self == FigurePreset::Fig3 {
                    Measures::NEGATIVITY
                } else {
                    Measures::DISCORD
                };
                FIG3_OCCUPATIONS
                    .iter()
                    .map(|&n| {
                        let fixed = FixedParams {
                            alpha: 0.01,
                            beta: 0.0,
                            r: 2.0,
                            n_th: Some(n),
                            ..FixedParams::default()
                        };
                        spec(
                            SweepVariable::Cooperativity,
                            0.0,
                            100.0,
                            Spacing::Linear,
                            fixed,
                            &homogeneous,
                            measures,
                        )
                    })
                    .collect()
            }
            FigurePreset::Fig4 | FigurePreset::Fig8 => {
                let measures = if self == FigurePreset::Fig4 {
                    Measures::NEGATIVITY
                } else {
                    Measures::DISCORD
                };
                FIG4_DAMPING
                    .iter()
                    .map(|&alpha| {
                        let fixed = FixedParams {
                            alpha,
                            beta: 1.0,
                            r: 0.0,
                            n_th: Some(0.01),
                            ..FixedParams::default()
                        };
                        spec(
                            SweepVariable::Squeezing,
                            0.0,
                            1.0,
                            Spacing::Linear,
                            fixed,
                            &[HybridCross],
                            measures,
                        )
                    })
                    .collect()
            }
            FigurePreset::Fig7 => FIG7_SQUEEZING
                .iter()
                .map(|&r| {
                    let fixed = FixedParams {
                        alpha: 0.5,
                        beta: 10.0,
                        r,
                        ..FixedParams::default()
                    };
                    spec(
                        SweepVariable::Occupation,
                        1e-2,
                        1e6,
                        Spacing::Log,
                        fixed,
                        &[HybridLocal],
                        Measures::DISCORD,
                    )
                })
                .collect(),
        }
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub fn run_preset(
    preset: FigurePreset,
    points: Option<usize>,
    exec: Execution,
) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for spec in preset.specs(points) {
        rows.extend(run_sweep_with(&spec, exec)?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRow {
    pub threshold: &'static str,
    pub subsystem: Subsystem,
    pub result: ThresholdResult,
}

/// T₀ and β₀ for both homogeneous pairs at the given fixed parameters.
pub fn threshold_table(fixed: &FixedParams) -> Result<Vec<ThresholdRow>> {
    fixed.check()?;
    let n_th = fixed.occupation();
    ReducedParams::new(fixed.alpha, fixed.beta, fixed.r, n_th)?;
    let (alpha, beta, r, w) = (fixed.alpha, fixed.beta, fixed.r, fixed.omega());
    Ok(vec![
        ThresholdRow {
            threshold: "T0_kelvin",
            subsystem: Subsystem::MechanicalPair,
            result: t0_mechanical(alpha, beta, r, w),
        },
        ThresholdRow {
            threshold: "T0_kelvin",
            subsystem: Subsystem::OpticalPair,
            result: t0_optical(alpha, beta, r, w),
        },
        ThresholdRow {
            threshold: "beta0",
            subsystem: Subsystem::MechanicalPair,
            result: beta0_mechanical(alpha, r, n_th),
        },
        ThresholdRow {
            threshold: "beta0",
            subsystem: Subsystem::OpticalPair,
            result: beta0_optical(alpha, r, n_th),
        },
    ])
}

pub fn write_threshold_csv<W: Write>(
    fixed: &FixedParams,
    rows: &[ThresholdRow],
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(THRESHOLD_HEADER)?;
    for row in rows {
        w.write_record([
            row.threshold.to_string(),
            row.subsystem.tag().to_string(),
            format_opt(row.result.value),
            row.result.attainable.to_string(),
            format_number(fixed.alpha),
            format_number(fixed.beta),
            format_number(fixed.r),
            format_number(fixed.occupation()),
            format_number(fixed.omega()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manual(variable: SweepVariable, start: f64, end: f64) -> SweepSpec {
        SweepSpec {
            label: String::new(),
            variable,
            start,
            end,
            points: 5,
            spacing: Spacing::Linear,
            fixed: FixedParams {
                alpha: 0.05,
                beta: 0.0,
                r: 0.0,
                n_th: Some(0.0),
                ..FixedParams::default()
            },
            subsystems: Subsystem::ALL.to_vec(),
            measures: Measures::BOTH,
        }
    }

    #[test]
    fn single_point_vacuum_sweep() {
        let rows = run_sweep(&manual(SweepVariable::Squeezing, 0.0, 0.0)).unwrap();
        assert_eq!(rows.len(), 4);
        for row in rows {
            assert_eq!(row.log_negativity, Some(0.0));
            assert!(row.discord.unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn grids() {
        let mut s = manual(SweepVariable::Temperature, 1e-6, 1e-3);
        s.spacing = Spacing::Log;
        s.points = 4;
        let g = s.grid();
        assert_eq!(g.len(), 4);
        assert_eq!(g[3], 1e-3);
        assert!((g[1] / 1e-5 - 1.0).abs() < 1e-12);
        s.start = 0.0;
        assert!(s.validate().is_err());
        s.spacing = Spacing::Linear;
        s.points = 1;
        assert!(s.validate().is_err());
    }

    #[test]
    fn temperature_column_rules() {
        let mut s = manual(SweepVariable::Cooperativity, 0.0, 10.0);
        s.fixed.n_th = Some(2.0);
        let rows = run_sweep(&s).unwrap();
        assert!(rows.iter().all(|r| r.temperature.is_none()));
        s.fixed.omega_m = Some(DEFAULT_MECHANICAL_FREQUENCY);
        let rows = run_sweep(&s).unwrap();
        assert!(rows.iter().all(|r| r.temperature.unwrap() > 0.0));

        let mut t = manual(SweepVariable::Temperature, 1e-5, 1e-4);
        t.fixed.n_th = None;
        let rows = run_sweep(&t).unwrap();
        assert_eq!(rows[0].temperature, Some(1e-5));
        assert!(rows[0].params.n_th > 0.0);
    }

    #[test]
    fn ambiguous_bath_is_rejected() {
        let mut s = manual(SweepVariable::Squeezing, 0.0, 1.0);
        s.fixed.temperature = Some(1e-4);
        assert!(matches!(run_sweep(&s), Err(Error::InvalidSweep(_))));
    }

    #[test]
    fn unrequested_measure_is_empty() {
        let mut s = manual(SweepVariable::Squeezing, 0.0, 1.0);
        s.measures = Measures::NEGATIVITY;
        let rows = run_sweep(&s).unwrap();
        assert!(rows.iter().all(|r| r.discord.is_none()));
        let rec = rows[0].record();
        assert_eq!(rec[10], "");
    }

    #[test]
    fn parse_selectors() {
        assert_eq!("en,discord".parse::<Measures>().unwrap(), Measures::BOTH);
        assert!("en,bogus".parse::<Measures>().is_err());
        assert!(parse_subsystems("mm,zz").is_err());
        assert_eq!(parse_subsystems("hl, hc").unwrap().len(), 2);
        assert_eq!("FIG7".parse::<FigurePreset>().unwrap(), FigurePreset::Fig7);
        assert!("fig9".parse::<FigurePreset>().is_err());
        assert_eq!(
            "nth".parse::<SweepVariable>().unwrap(),
            SweepVariable::Occupation
        );
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(0.5), "5.00000000000e-1");
        assert_eq!(format_number(1e-6), "1.00000000000e-6");
        assert_eq!(format_number(0.0), "0.00000000000e0");
    }

    #[test]
    fn threshold_rows() {
        let fixed = FixedParams {
            alpha: 0.01,
            beta: 10.0,
            r: 2.0,
            n_th: Some(60.0),
            ..FixedParams::default()
        };
        let rows = threshold_table(&fixed).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(!rows[2].result.attainable);
        assert!((rows[3].result.value.unwrap() - 4.5416).abs() < 1e-3);
        let mut buf = Vec::new();
        write_threshold_csv(&fixed, &rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("threshold,subsystem,value,attainable"));
        assert!(text.contains("beta0,mm,,false"));
    }
}
