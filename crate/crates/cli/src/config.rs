//! Scenario configuration: JSON config files, presets, and flag overrides.

use std::path::{Path, PathBuf};

use heplus_core::{default_params, make_product_state, Complex64, CorrectionSource, ModelParams, ProductState};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SourceArg {
    ClosedForm,
    Oracle,
}

impl From<SourceArg> for CorrectionSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::ClosedForm => CorrectionSource::ClosedForm,
            SourceArg::Oracle => CorrectionSource::Oracle,
        }
    }
}

/// Any subset of the model parameters.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    pub alpha: Option<f64>,
    #[serde(rename = "hbar_eV_s")]
    pub hbar_ev_s: Option<f64>,
    #[serde(rename = "hbar_c_eV_m")]
    pub hbar_c_ev_m: Option<f64>,
    #[serde(rename = "electron_rest_energy_eV")]
    pub electron_rest_energy_ev: Option<f64>,
    #[serde(rename = "proton_rest_energy_eV")]
    pub proton_rest_energy_ev: Option<f64>,
    pub nucleon_core_radius_m: Option<f64>,
    pub bohr_radius_m: Option<f64>,
    pub nuclear_charge: Option<u32>,
}

impl ParamOverrides {
    pub fn apply(&self, base: ModelParams) -> ModelParams {
        ModelParams {
            alpha: self.alpha.unwrap_or(base.alpha),
            hbar_ev_s: self.hbar_ev_s.unwrap_or(base.hbar_ev_s),
            hbar_c_ev_m: self.hbar_c_ev_m.unwrap_or(base.hbar_c_ev_m),
            electron_rest_energy_ev: self.electron_rest_energy_ev.unwrap_or(base.electron_rest_energy_ev),
            proton_rest_energy_ev: self.proton_rest_energy_ev.unwrap_or(base.proton_rest_energy_ev),
            nucleon_core_radius_m: self.nucleon_core_radius_m.unwrap_or(base.nucleon_core_radius_m),
            bohr_radius_m: self.bohr_radius_m.unwrap_or(base.bohr_radius_m),
            nuclear_charge: self.nuclear_charge.unwrap_or(base.nuclear_charge),
        }
    }
}

/// On-disk scenario description. Amplitudes are `[re, im]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Option<String>,
    pub electron_levels: Option<Vec<u32>>,
    pub electron_amplitudes: Option<Vec<[f64; 2]>>,
    pub nucleus_levels: Option<Vec<u32>>,
    pub nucleus_amplitudes: Option<Vec<[f64; 2]>>,
    pub t_max_seconds: Option<f64>,
    pub num_points: Option<usize>,
    pub correction_source: Option<SourceArg>,
    pub params: Option<ParamOverrides>,
    pub trace_path: Option<PathBuf>,
    pub summary_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn has_explicit_state(&self) -> bool {
        self.electron_levels.is_some()
            || self.electron_amplitudes.is_some()
            || self.nucleus_levels.is_some()
            || self.nucleus_amplitudes.is_some()
    }
}

/// Built-in initial states with their default time axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub electron_levels: &'static [u32],
    pub nucleus_levels: &'static [u32],
    pub t_max_seconds: f64,
    pub num_points: usize,
}

pub const PRESETS: [Preset; 3] = [
    Preset {
        name: "fig2",
        electron_levels: &[1, 2],
        nucleus_levels: &[1, 2],
        t_max_seconds: 5e-5,
        num_points: 2000,
    },
    Preset {
        name: "fig2-high",
        electron_levels: &[14, 15],
        nucleus_levels: &[1, 2],
        t_max_seconds: 1e20,
        num_points: 200,
    },
    Preset {
        name: "fig3",
        electron_levels: &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        nucleus_levels: &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        t_max_seconds: 10.0,
        num_points: 2000,
    },
];

pub fn preset(name: &str) -> Result<&'static Preset, CliError> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        CliError::Config(format!("unknown scenario '{name}' (available: {})", names.join(", ")))
    })
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct FlagOverrides {
    pub scenario: Option<String>,
    pub t_max_seconds: Option<f64>,
    pub num_points: Option<usize>,
    pub source: Option<SourceArg>,
    pub trace_path: Option<PathBuf>,
    pub summary_path: Option<PathBuf>,
}

/// A fully resolved run description.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub state: ProductState,
    pub t_max_seconds: f64,
    pub num_points: usize,
    pub source: CorrectionSource,
    pub params: ModelParams,
    pub trace_path: Option<PathBuf>,
    pub summary_path: Option<PathBuf>,
}

fn explicit_state(cfg: &ScenarioConfig) -> Result<ProductState, CliError> {
    fn side(
        what: &str,
        levels: &Option<Vec<u32>>,
        amps: &Option<Vec<[f64; 2]>>,
    ) -> Result<Vec<(u32, Complex64)>, CliError> {
        let levels = levels
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("{what}_levels missing")))?;
        let amps = amps
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("{what}_amplitudes missing")))?;
        if levels.len() != amps.len() {
            return Err(CliError::Config(format!(
                "{what}_levels has {} entries but {what}_amplitudes has {}",
                levels.len(),
                amps.len()
            )));
        }
        Ok(levels
            .iter()
            .zip(amps)
            .map(|(&l, &[re, im])| (l, Complex64::new(re, im)))
            .collect())
    }
    let e = side("electron", &cfg.electron_levels, &cfg.electron_amplitudes)?;
    let c = side("nucleus", &cfg.nucleus_levels, &cfg.nucleus_amplitudes)?;
    make_product_state(&e, &c).map_err(|e| CliError::Config(e.to_string()))
}

fn uniform(levels: &[u32]) -> Vec<(u32, Complex64)> {
    levels.iter().map(|&l| (l, Complex64::new(1.0, 0.0))).collect()
}

/// Merges config and flags; exactly one of preset or explicit state must remain.
pub fn resolve(cfg: &ScenarioConfig, flags: &FlagOverrides) -> Result<Scenario, CliError> {
    let scenario_name = flags.scenario.clone().or_else(|| cfg.scenario.clone());
    let (name, state, default_t, default_points) = match (scenario_name, cfg.has_explicit_state()) {
        (Some(_), true) => {
            return Err(CliError::Config(
                "give either a scenario preset or an explicit state, not both".into(),
            ))
        }
        (None, false) => return Err(CliError::Config("no scenario preset or explicit state given".into())),
        (Some(name), false) => {
            let p = preset(&name)?;
            let state = make_product_state(&uniform(p.electron_levels), &uniform(p.nucleus_levels))
                .map_err(|e| CliError::Config(e.to_string()))?;
            (name, state, Some(p.t_max_seconds), Some(p.num_points))
        }
        (None, true) => ("custom".to_string(), explicit_state(cfg)?, None, None),
    };

    let t_max_seconds = flags
        .t_max_seconds
        .or(cfg.t_max_seconds)
        .or(default_t)
        .ok_or_else(|| CliError::Config("t_max_seconds missing".into()))?;
    if !(t_max_seconds > 0.0 && t_max_seconds.is_finite()) {
        return Err(CliError::Config(format!(
            "t_max must be positive (got {t_max_seconds})"
        )));
    }
    let num_points = flags
        .num_points
        .or(cfg.num_points)
        .or(default_points)
        .ok_or_else(|| CliError::Config("num_points missing".into()))?;
    if num_points < 2 {
        return Err(CliError::Config(format!("num_points must be >= 2 (got {num_points})")));
    }

    let params = cfg.params.clone().unwrap_or_default().apply(default_params());
    let source = flags
        .source
        .or(cfg.correction_source)
        .unwrap_or(SourceArg::ClosedForm)
        .into();

    Ok(Scenario {
        name,
        state,
        t_max_seconds,
        num_points,
        source,
        params,
        trace_path: flags.trace_path.clone().or_else(|| cfg.trace_path.clone()),
        summary_path: flags.summary_path.clone().or_else(|| cfg.summary_path.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use heplus_core::SubsystemKind;

    fn flags(scenario: &str) -> FlagOverrides {
        FlagOverrides {
            scenario: Some(scenario.into()),
            ..Default::default()
        }
    }

    #[test]
    fn presets_resolve_with_defaults() {
        let s = resolve(&ScenarioConfig::default(), &flags("fig2")).unwrap();
        assert_eq!((s.t_max_seconds, s.num_points), (5e-5, 2000));
        assert_eq!(s.state.levels(SubsystemKind::Electron), &[1, 2]);
        let s = resolve(&ScenarioConfig::default(), &flags("fig2-high")).unwrap();
        assert_eq!((s.t_max_seconds, s.num_points), (1e20, 200));
        assert_eq!(s.state.levels(SubsystemKind::Electron), &[14, 15]);
        let s = resolve(&ScenarioConfig::default(), &flags("fig3")).unwrap();
        assert_eq!((s.t_max_seconds, s.num_points), (10.0, 2000));
        assert_eq!(s.state.dims(), (10, 10));
        assert!(resolve(&ScenarioConfig::default(), &flags("fig9")).is_err());
    }

    #[test]
    fn flags_override_config() {
        let cfg = ScenarioConfig::from_json(r#"{"scenario":"fig2","t_max_seconds":1e-4,"num_points":10}"#).unwrap();
        let s = resolve(
            &cfg,
            &FlagOverrides {
                num_points: Some(50),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((s.t_max_seconds, s.num_points), (1e-4, 50));
    }

    #[test]
    fn explicit_state_from_json() {
        let cfg = ScenarioConfig::from_json(
            r#"{"electron_levels":[2,1],"electron_amplitudes":[[0,1],[1,0]],
                "nucleus_levels":[3],"nucleus_amplitudes":[[2,0]],
                "t_max_seconds":1.0,"num_points":3,"correction_source":"closed-form",
                "params":{"nucleon_core_radius_m":2.5e-15}}"#,
        )
        .unwrap();
        let s = resolve(&cfg, &FlagOverrides::default()).unwrap();
        assert_eq!(s.name, "custom");
        assert_eq!(s.state.levels(SubsystemKind::Electron), &[1, 2]);
        assert_eq!(s.state.amplitudes(SubsystemKind::Nucleus)[0], Complex64::new(1.0, 0.0));
        assert_eq!(s.params.nucleon_core_radius_m, 2.5e-15);
        assert_eq!(s.params.alpha, default_params().alpha);
    }

    #[test]
    fn preset_and_state_are_exclusive() {
        let cfg = ScenarioConfig::from_json(
            r#"{"scenario":"fig2","electron_levels":[1],"electron_amplitudes":[[1,0]],
                "nucleus_levels":[1],"nucleus_amplitudes":[[1,0]]}"#,
        )
        .unwrap();
        assert!(matches!(
            resolve(&cfg, &FlagOverrides::default()),
            Err(CliError::Config(_))
        ));
        assert!(matches!(
            resolve(&ScenarioConfig::default(), &FlagOverrides::default()),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn malformed_configs() {
        assert!(ScenarioConfig::from_json(r#"{"scenaro":"fig2"}"#).is_err());
        assert!(ScenarioConfig::from_json(r#"{"correction_source":"exact"}"#).is_err());
        let cfg = ScenarioConfig::from_json(r#"{"scenario":"fig2","num_points":1}"#).unwrap();
        assert!(resolve(&cfg, &FlagOverrides::default()).is_err());
        let cfg = ScenarioConfig::from_json(
            r#"{"electron_levels":[1,2],"electron_amplitudes":[[1,0]],
                "nucleus_levels":[1],"nucleus_amplitudes":[[1,0]],"t_max_seconds":1,"num_points":2}"#,
        )
        .unwrap();
        assert!(resolve(&cfg, &FlagOverrides::default()).is_err());
    }
}
