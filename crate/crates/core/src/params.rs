//! Physical constants and model parameters.
//!
//! Unit conventions used everywhere in the crate: energies in eV, lengths in
//! meters, times in seconds. Masses are carried as rest energies so that every
//! formula can be written with ħc instead of kilograms.
//!
//! Constants are the CODATA 2018 recommended values:
//!
//! | quantity                     | value                 | unit  |
//! |------------------------------|-----------------------|-------|
//! | fine-structure constant α    | 7.2973525693e-3       | 1     |
//! | reduced Planck constant ħ    | 6.582119569e-16       | eV·s  |
//! | ħc                           | 197.3269804e6 × 1e-15 | eV·m  |
//! | electron rest energy m·c²    | 0.51099895000e6       | eV    |
//! | proton rest energy M·c²      | 938.27208816e6        | eV    |
//! | Bohr radius a₀               | 5.29177210903e-11     | m     |
//!
//! The core radius r₀ = 2.2e-15 m is the α-particle radius from scattering.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;
pub const ELECTRON_REST_ENERGY_EV: f64 = 0.510_998_950_00e6;
pub const PROTON_REST_ENERGY_EV: f64 = 938.272_088_16e6;
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;
pub const ALPHA_CORE_RADIUS_M: f64 = 2.2e-15;

/// Charge number of the He⁺ nucleus.
pub const CANONICAL_CHARGE: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub alpha: f64,
    #[serde(rename = "hbar_eV_s")]
    pub hbar_ev_s: f64,
    #[serde(rename = "hbar_c_eV_m")]
    pub hbar_c_ev_m: f64,
    #[serde(rename = "electron_rest_energy_eV")]
    pub electron_rest_energy_ev: f64,
    #[serde(rename = "proton_rest_energy_eV")]
    pub proton_rest_energy_ev: f64,
    pub nucleon_core_radius_m: f64,
    /// Length `a` entering the closed-form corrections. This is the
    /// infinite-mass, Z = 1 Bohr radius, not the reduced-mass or Z-scaled one.
    pub bohr_radius_m: f64,
    pub nuclear_charge: u32,
}

/// Non-fatal findings from [`ModelParams::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamWarning {
    NonCanonicalCharge(u32),
}

impl std::fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamWarning::NonCanonicalCharge(z) => write!(f, "non-canonical Z (nuclear_charge = {z})"),
        }
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        default_params()
    }
}

/// Canonical He⁺ parameter set.
pub fn default_params() -> ModelParams {
    ModelParams {
        alpha: FINE_STRUCTURE,
        hbar_ev_s: HBAR_EV_S,
        hbar_c_ev_m: HBAR_C_EV_M,
        electron_rest_energy_ev: ELECTRON_REST_ENERGY_EV,
        proton_rest_energy_ev: PROTON_REST_ENERGY_EV,
        nucleon_core_radius_m: ALPHA_CORE_RADIUS_M,
        bohr_radius_m: BOHR_RADIUS_M,
        nuclear_charge: CANONICAL_CHARGE,
    }
}

impl ModelParams {
    /// Reduced rest energy of the electron relative to the two-proton
    /// nucleus, μ_e·c² = 2·Mc²·mc² / (2Mc² + mc²).
    pub fn electron_reduced_rest_energy_ev(&self) -> f64 {
        let m = self.electron_rest_energy_ev;
        let big_m = self.proton_rest_energy_ev;
        2.0 * big_m * m / (2.0 * big_m + m)
    }

    /// Radius of the internuclear hard-wall well, twice the core radius.
    pub fn well_radius_m(&self) -> f64 {
        2.0 * self.nucleon_core_radius_m
    }

    /// Hydrogenic length scale for the electron: reduced-mass Bohr radius
    /// divided by Z.
    pub fn electron_length_scale_m(&self) -> f64 {
        let reduced_bohr = self.bohr_radius_m * self.electron_rest_energy_ev / self.electron_reduced_rest_energy_ev();
        reduced_bohr / self.nuclear_charge as f64
    }

    /// Checks every invariant and returns the first violation as an error.
    /// A valid set with a charge other than 2 passes with a warning.
    pub fn validate(&self) -> Result<Vec<ParamWarning>> {
        let fields: [(&'static str, f64); 7] = [
            ("alpha", self.alpha),
            ("hbar_eV_s", self.hbar_ev_s),
            ("hbar_c_eV_m", self.hbar_c_ev_m),
            ("electron_rest_energy_eV", self.electron_rest_energy_ev),
            ("proton_rest_energy_eV", self.proton_rest_energy_ev),
            ("nucleon_core_radius_m", self.nucleon_core_radius_m),
            ("bohr_radius_m", self.bohr_radius_m),
        ];
        for (field, value) in fields {
            if value.is_nan() || value.is_infinite() {
                return Err(Error::NonFiniteParameter { field });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveParameter { field });
            }
        }
        if self.nuclear_charge == 0 {
            return Err(Error::NonPositiveParameter {
                field: "nuclear_charge",
            });
        }

        let mu = self.electron_reduced_rest_energy_ev();
        if !(mu > 0.0 && mu < self.electron_rest_energy_ev) {
            return Err(Error::ReducedMassOutOfRange {
                value: mu,
                electron: self.electron_rest_energy_ev,
            });
        }

        let mut warnings = Vec::new();
        if self.nuclear_charge != CANONICAL_CHARGE {
            warnings.push(ParamWarning::NonCanonicalCharge(self.nuclear_charge));
        }
        Ok(warnings)
    }
}
