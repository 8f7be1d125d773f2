//! The three subcommands as pure functions from inputs to output text.

use heplus_core::{
    analytic_time_average, build_correction_table, compare_with_oracle, p_eq, purity_trace, trace_summary,
    two_level_period_s, CorrectionSource, ModelParams, ParamWarning, QuadratureSpec, Spectra, SubsystemKind,
    WeightProfile,
};
use serde::Serialize;

use crate::config::Scenario;
use crate::error::CliError;
use crate::output::{sci, trace_csv};

pub const CROSSING_THRESHOLD: f64 = 0.999;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub p_min: f64,
    pub t_at_p_min_s: f64,
    pub p_mean: f64,
    pub p_eq: f64,
    pub analytic_time_average: f64,
    pub oscillation_period_s: Option<f64>,
    pub first_crossing_0_999_s: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SimulationOutput {
    pub summary: SimulationSummary,
    pub trace_csv: String,
    pub summary_json: String,
    pub warnings: Vec<ParamWarning>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    pub p_eq: f64,
    pub analytic_time_average: f64,
}

#[derive(Debug, Clone)]
pub struct PredictionOutput {
    pub prediction: Prediction,
    pub json: String,
    pub warnings: Vec<ParamWarning>,
}

#[derive(Debug, Clone)]
pub struct CorrectionsOutput {
    pub csv: String,
    /// One line per row comparing oracle and closed form; empty without the oracle.
    pub report: Vec<String>,
}

fn checked_params(params: &ModelParams) -> Result<Vec<ParamWarning>, CliError> {
    Ok(params.validate()?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain structs serialize");
    s.push('\n');
    s
}

struct Prepared {
    table: heplus_core::CorrectionTable,
    spectra: Spectra,
    warnings: Vec<ParamWarning>,
}

fn prepare(scenario: &Scenario) -> Result<Prepared, CliError> {
    let warnings = checked_params(&scenario.params)?;
    let el = scenario.state.levels(SubsystemKind::Electron);
    let nl = scenario.state.levels(SubsystemKind::Nucleus);
    let table = build_correction_table(el, nl, &scenario.params, scenario.source)?;
    let spectra = Spectra::new(*el.last().unwrap(), *nl.last().unwrap(), &scenario.params)?;
    Ok(Prepared {
        table,
        spectra,
        warnings,
    })
}

pub fn run_simulate(scenario: &Scenario) -> Result<SimulationOutput, CliError> {
    let Prepared {
        table,
        spectra,
        warnings,
    } = prepare(scenario)?;
    let p = &scenario.params;
    let mut trace = purity_trace(
        &scenario.state,
        &table,
        &spectra,
        p,
        scenario.t_max_seconds,
        scenario.num_points,
    )?;
    trace.scenario = scenario.name.clone();
    let stats = trace_summary(&trace, &[CROSSING_THRESHOLD])?;

    let summary = SimulationSummary {
        p_min: stats.min,
        t_at_p_min_s: stats.argmin_s,
        p_mean: stats.mean,
        p_eq: p_eq(&WeightProfile::from_state(&scenario.state)),
        analytic_time_average: analytic_time_average(&scenario.state, &table)?,
        oscillation_period_s: two_level_period_s(&scenario.state, &table, p)?,
        first_crossing_0_999_s: stats.first_crossing(CROSSING_THRESHOLD),
    };
    Ok(SimulationOutput {
        trace_csv: trace_csv(&trace),
        summary_json: to_json(&summary),
        summary,
        warnings,
    })
}

pub fn run_predict(scenario: &Scenario) -> Result<PredictionOutput, CliError> {
    let Prepared { table, warnings, .. } = prepare(scenario)?;
    let prediction = Prediction {
        p_eq: p_eq(&WeightProfile::from_state(&scenario.state)),
        analytic_time_average: analytic_time_average(&scenario.state, &table)?,
    };
    Ok(PredictionOutput {
        json: to_json(&prediction),
        prediction,
        warnings,
    })
}

pub fn run_corrections(
    n_max: u32,
    nn_max: u32,
    oracle: bool,
    params: &ModelParams,
) -> Result<CorrectionsOutput, CliError> {
    checked_params(params)?;
    if n_max == 0 || nn_max == 0 {
        return Err(CliError::Config("--n-max and --nn-max must be >= 1".into()));
    }
    if n_max > heplus_core::corrections::CLOSED_FORM_MAX_N {
        return Err(CliError::Config(format!("--n-max must be <= 20 (got {n_max})")));
    }
    if oracle && (n_max > heplus_core::corrections::ORACLE_MAX_N || nn_max > heplus_core::corrections::ORACLE_MAX_BIG_N)
    {
        return Err(CliError::Config(format!(
            "--oracle needs --n-max <= 3 and --nn-max <= 10 (got {n_max}, {nn_max})"
        )));
    }
    let el: Vec<u32> = (1..=n_max).collect();
    let nl: Vec<u32> = (1..=nn_max).collect();

    let mut csv = String::new();
    let mut report = Vec::new();
    if oracle {
        csv.push_str("n,N,correction_eV,oracle_eV\n");
        for row in compare_with_oracle(&el, &nl, params, &QuadratureSpec::default())? {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                row.n,
                row.big_n,
                sci(row.closed_form_ev),
                sci(row.oracle_ev)
            ));
            report.push(format!(
                "n={} N={} closed_form_eV={} oracle_eV={} oracle/closed_form={}",
                row.n,
                row.big_n,
                sci(row.closed_form_ev),
                sci(row.oracle_ev),
                sci(row.ratio())
            ));
        }
    } else {
        let table = build_correction_table(&el, &nl, params, CorrectionSource::ClosedForm)?;
        csv.push_str("n,N,correction_eV\n");
        for &n in &el {
            for &m in &nl {
                csv.push_str(&format!("{n},{m},{}\n", sci(table.get(n, m)?)));
            }
        }
    }
    Ok(CorrectionsOutput { csv, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{resolve, FlagOverrides, ScenarioConfig};
    use heplus_core::default_params;

    fn preset(name: &str) -> Scenario {
        resolve(
            &ScenarioConfig::default(),
            &FlagOverrides {
                scenario: Some(name.into()),
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn fig2_summary() {
        let out = run_simulate(&preset("fig2")).unwrap();
        let s = &out.summary;
        assert!((s.p_eq - 0.75).abs() < 1e-15);
        assert!((s.analytic_time_average - 0.75).abs() < 1e-12);
        let period = s.oscillation_period_s.unwrap();
        assert!((period / 1.433_375_2e-5 - 1.0).abs() < 1e-6);
        assert!((s.p_min - 0.5).abs() < 1e-5);
        assert!(s.first_crossing_0_999_s.unwrap() < 1e-6);
        assert_eq!(out.trace_csv.lines().count(), 2001);
        for key in [
            "p_min",
            "t_at_p_min_s",
            "p_mean",
            "p_eq",
            "analytic_time_average",
            "oscillation_period_s",
            "first_crossing_0_999_s",
        ] {
            assert!(out.summary_json.contains(&format!("\"{key}\"")), "{key}");
        }
    }

    #[test]
    fn fig3_prediction() {
        let out = run_predict(&preset("fig3")).unwrap();
        assert!((out.prediction.p_eq - 0.19).abs() < 1e-12);
        assert!((out.prediction.analytic_time_average - 0.19).abs() < 1e-12);
        let v: serde_json::Value = serde_json::from_str(&out.json).unwrap();
        assert!((v["p_eq"].as_f64().unwrap() - 0.19).abs() < 1e-12);
    }

    #[test]
    fn non_square_state_has_no_period() {
        let cfg = ScenarioConfig::from_json(
            r#"{"electron_levels":[1,2,3],"electron_amplitudes":[[1,0],[1,0],[1,0]],
                "nucleus_levels":[2],"nucleus_amplitudes":[[1,0]],"t_max_seconds":1,"num_points":5}"#,
        )
        .unwrap();
        let s = resolve(&cfg, &FlagOverrides::default()).unwrap();
        let out = run_simulate(&s).unwrap();
        assert_eq!(out.summary.oscillation_period_s, None);
        assert_eq!(out.summary.first_crossing_0_999_s, None);
        assert!(out.summary_json.contains("\"oscillation_period_s\": null"));
        assert_eq!(run_predict(&s).unwrap().prediction.p_eq, 1.0);
    }

    #[test]
    fn oracle_source_is_limited_to_low_levels() {
        let mut s = preset("fig3");
        s.source = CorrectionSource::Oracle;
        assert!(matches!(run_predict(&s), Err(CliError::Config(_))));
        let mut s = preset("fig2");
        s.source = CorrectionSource::Oracle;
        let out = run_predict(&s).unwrap();
        assert!((out.prediction.p_eq - 0.75).abs() < 1e-15);
    }

    #[test]
    fn invalid_params_are_config_errors() {
        let mut s = preset("fig2");
        s.params.nucleon_core_radius_m = 0.0;
        let err = run_simulate(&s).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("nucleon_core_radius_m must be positive"));
        s.params = ModelParams {
            nuclear_charge: 1,
            ..default_params()
        };
        assert_eq!(run_simulate(&s).unwrap().warnings.len(), 1);
    }

    #[test]
    fn corrections_csv() {
        let p = default_params();
        let out = run_corrections(2, 2, false, &p).unwrap();
        let lines: Vec<_> = out.csv.lines().collect();
        assert_eq!(lines[0], "n,N,correction_eV");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "1,1,2.21577900503e-9");
        assert!(out.report.is_empty());

        assert!(run_corrections(21, 1, false, &p).is_err());
        assert!(run_corrections(4, 2, true, &p).is_err());
        assert!(run_corrections(1, 11, true, &p).is_err());
        assert!(run_corrections(0, 1, false, &p).is_err());
    }

    #[test]
    fn corrections_maximum_sits_at_ground_electron_top_nucleus() {
        let out = run_corrections(10, 10, false, &default_params()).unwrap();
        let best = out
            .csv
            .lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[0].to_string(), f[1].to_string(), f[2].parse::<f64>().unwrap())
            })
            .max_by(|a, b| a.2.total_cmp(&b.2))
            .unwrap();
        assert_eq!((best.0.as_str(), best.1.as_str()), ("1", "10"));
    }
}
