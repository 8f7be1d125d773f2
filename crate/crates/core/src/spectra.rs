//! s-state spectra of the two decoupled subsystems: the hydrogenic electron
//! bound to a point charge Z, and the proton-proton relative coordinate in a
//! hard-wall spherical well of radius 2·r₀.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SubsystemKind {
    Electron,
    Nucleus,
}

impl fmt::Display for SubsystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsystemKind::Electron => f.write_str("electron"),
            SubsystemKind::Nucleus => f.write_str("nucleus"),
        }
    }
}

fn check_level(what: &'static str, value: u32) -> Result<()> {
    if value == 0 {
        Err(Error::QuantumNumber { what, value })
    } else {
        Ok(())
    }
}

/// Bohr level −μ_e c² (Zα)² / (2n²).
pub fn electron_level_energy(n: u32, params: &ModelParams) -> Result<f64> {
    check_level("n", n)?;
    let z_alpha = params.nuclear_charge as f64 * params.alpha;
    let n = n as f64;
    Ok(-params.electron_reduced_rest_energy_ev() * z_alpha * z_alpha / (2.0 * n * n))
}

/// s-wave level of the hard-wall well for reduced rest energy Mc²/2:
/// (ħc)² π² N² / (Mc² R_w²).
pub fn nucleus_level_energy(big_n: u32, params: &ModelParams) -> Result<f64> {
    check_level("N", big_n)?;
    let rw = params.well_radius_m();
    let k = big_n as f64 * PI * params.hbar_c_ev_m / rw;
    Ok(k * k / params.proton_rest_energy_ev)
}

/// Radial probability density of well level N, (2/R_w) sin²(NπK/R_w) inside
/// the well and zero outside.
pub fn nucleus_radial_density(big_n: u32, k: f64, params: &ModelParams) -> Result<f64> {
    check_level("N", big_n)?;
    if k < 0.0 {
        return Err(Error::NegativeLength { what: "K", value: k });
    }
    let rw = params.well_radius_m();
    if k > rw {
        return Ok(0.0);
    }
    let s = (big_n as f64 * PI * k / rw).sin();
    Ok(2.0 / rw * s * s)
}

/// ⟨K²⟩ in well level N: R_w² (1/3 − 1/(2π²N²)).
pub fn nucleus_mean_square_radius(big_n: u32, params: &ModelParams) -> Result<f64> {
    check_level("N", big_n)?;
    let rw = params.well_radius_m();
    Ok(rw * rw * well_shape_factor(big_n))
}

/// The dimensionless factor 1/3 − 1/(2π²N²).
pub(crate) fn well_shape_factor(big_n: u32) -> f64 {
    let n = big_n as f64;
    1.0 / 3.0 - 1.0 / (2.0 * PI * PI * n * n)
}

/// Hydrogenic s-wave radial function R_{n0}(r) for n ≤ 3, normalized so that
/// ∫ r² R² dr = 1, with length scale `a`.
pub(crate) fn hydrogenic_radial(n: u32, r: f64, a: f64) -> Result<f64> {
    let x = r / a;
    let norm = a.powf(-1.5);
    let value = match n {
        1 => 2.0 * norm * (-x).exp(),
        2 => norm / 2f64.sqrt() * (1.0 - x / 2.0) * (-x / 2.0).exp(),
        3 => 2.0 / (3.0 * 3f64.sqrt()) * norm * (1.0 - 2.0 * x / 3.0 + 2.0 * x * x / 27.0) * (-x / 3.0).exp(),
        _ => return Err(Error::UnsupportedLevel(n)),
    };
    Ok(value)
}

/// 4πR²|ψ_{n0}(R)|² for n ∈ {1, 2, 3}, on the reduced-mass, Z-scaled length.
pub fn electron_radial_density(n: u32, r: f64, params: &ModelParams) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::NegativeLength { what: "R", value: r });
    }
    let radial = hydrogenic_radial(n, r, params.electron_length_scale_m())?;
    Ok(r * r * radial * radial)
}

/// Labeled levels 1..=max of one subsystem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsystemSpectrum {
    kind: SubsystemKind,
    levels: Vec<(u32, f64)>,
}

impl SubsystemSpectrum {
    pub fn new(kind: SubsystemKind, max_level: u32, params: &ModelParams) -> Result<Self> {
        check_level("max_level", max_level)?;
        let energy = match kind {
            SubsystemKind::Electron => electron_level_energy,
            SubsystemKind::Nucleus => nucleus_level_energy,
        };
        let levels = (1..=max_level)
            .map(|q| energy(q, params).map(|e| (q, e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { kind, levels })
    }

    pub fn kind(&self) -> SubsystemKind {
        self.kind
    }

    pub fn levels(&self) -> &[(u32, f64)] {
        &self.levels
    }

    pub fn energy(&self, level: u32) -> Result<f64> {
        level
            .checked_sub(1)
            .and_then(|i| self.levels.get(i as usize))
            .map(|&(_, e)| e)
            .ok_or(Error::MissingLevel { kind: self.kind, level })
    }
}

/// Unperturbed spectra of both subsystems.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectra {
    pub electron: SubsystemSpectrum,
    pub nucleus: SubsystemSpectrum,
}

impl Spectra {
    pub fn new(max_n: u32, max_big_n: u32, params: &ModelParams) -> Result<Self> {
        Ok(Self {
            electron: SubsystemSpectrum::new(SubsystemKind::Electron, max_n, params)?,
            nucleus: SubsystemSpectrum::new(SubsystemKind::Nucleus, max_big_n, params)?,
        })
    }

    pub fn get(&self, kind: SubsystemKind) -> &SubsystemSpectrum {
        match kind {
            SubsystemKind::Electron => &self.electron,
            SubsystemKind::Nucleus => &self.nucleus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::default_params;
    use approx::assert_relative_eq;

    /// Composite Simpson on a fixed uniform grid; test-only reference.
    fn simpson_fixed(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let panels = panels + panels % 2;
        let h = (b - a) / panels as f64;
        let mut sum = f(a) + f(b);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(a + i as f64 * h);
        }
        sum * h / 3.0
    }

    #[test]
    fn electron_ground_state_energy() {
        // −μc²(2α)²/2 evaluated by hand with CODATA 2018 values: −54.40796 eV
        let p = default_params();
        let e1 = electron_level_energy(1, &p).unwrap();
        assert_relative_eq!(e1, -54.407_956_74, max_relative = 1e-9);
        let e2 = electron_level_energy(2, &p).unwrap();
        assert_eq!(e2, e1 / 4.0);
        assert!(matches!(electron_level_energy(0, &p), Err(Error::QuantumNumber { .. })));
    }

    #[test]
    fn nucleus_ground_state_energy() {
        // (ħc)²π²/(Mc² R_w²) ≈ 2.1156e7 eV
        let p = default_params();
        let e1 = nucleus_level_energy(1, &p).unwrap();
        assert_relative_eq!(e1, 2.115_624_246e7, max_relative = 1e-9);
        assert!(e1 > 1e6 && e1 < 1e8, "MeV regime");
        let e3 = nucleus_level_energy(3, &p).unwrap();
        assert_relative_eq!(e3, 9.0 * e1, max_relative = 1e-15);
        assert!(nucleus_level_energy(0, &p).is_err());
    }

    #[test]
    fn energies_strictly_increase() {
        let p = default_params();
        let spec = Spectra::new(50, 50, &p).unwrap();
        for w in spec.electron.levels().windows(2) {
            assert!(w[0].1 < w[1].1 && w[1].1 < 0.0);
            assert_eq!(w[0].0 + 1, w[1].0);
        }
        for w in spec.nucleus.levels().windows(2) {
            assert!(0.0 < w[0].1 && w[0].1 < w[1].1);
        }
        assert_eq!(spec.electron.levels()[0].0, 1);
        assert!(matches!(spec.nucleus.energy(51), Err(Error::MissingLevel { .. })));
        assert!(spec.nucleus.energy(0).is_err());
    }

    #[test]
    fn well_density_boundaries_and_norm() {
        let p = default_params();
        let rw = p.well_radius_m();
        for n in 1..=10 {
            assert_eq!(nucleus_radial_density(n, 0.0, &p).unwrap(), 0.0);
            assert!(nucleus_radial_density(n, rw, &p).unwrap() < 1e-12 / rw);
            assert_eq!(nucleus_radial_density(n, 1.5 * rw, &p).unwrap(), 0.0);
            let norm = simpson_fixed(|k| nucleus_radial_density(n, k, &p).unwrap(), 0.0, rw, 20_000);
            assert!((norm - 1.0).abs() < 1e-10, "N={n} norm={norm}");
        }
        assert!(matches!(
            nucleus_radial_density(1, -1e-16, &p),
            Err(Error::NegativeLength { .. })
        ));
    }

    #[test]
    fn mean_square_radius_against_fixed_grid_quadrature() {
        let p = default_params();
        let rw = p.well_radius_m();
        let k2_1 = nucleus_mean_square_radius(1, &p).unwrap();
        assert_relative_eq!(k2_1 / (rw * rw), 0.282_673, max_relative = 2e-6);
        assert_relative_eq!(
            nucleus_mean_square_radius(2, &p).unwrap(),
            rw * rw * (1.0 / 3.0 - 1.0 / (8.0 * PI * PI)),
            max_relative = 1e-15
        );
        for n in 1..=10 {
            let closed = nucleus_mean_square_radius(n, &p).unwrap();
            let quad = simpson_fixed(|k| k * k * nucleus_radial_density(n, k, &p).unwrap(), 0.0, rw, 20_000);
            assert_relative_eq!(closed, quad, max_relative = 1e-8);
        }
    }

    #[test]
    fn mean_square_radius_increases_toward_a_third() {
        let p = default_params();
        let rw2 = p.well_radius_m().powi(2);
        let mut prev = 0.0;
        for n in 1..=200 {
            let v = nucleus_mean_square_radius(n, &p).unwrap();
            assert!(v > prev && v < rw2 / 3.0);
            prev = v;
        }
        assert!(rw2 / 3.0 - prev < 1e-5 * rw2);
    }

    #[test]
    fn electron_density_norm_and_origin() {
        let p = default_params();
        let a = p.electron_length_scale_m();
        for n in 1..=3 {
            assert_eq!(electron_radial_density(n, 0.0, &p).unwrap(), 0.0);
            // 50·a_Z alone leaves a 5e-8 tail for n = 3
            let cutoff = 50.0 * n as f64 * a;
            let norm = simpson_fixed(|r| electron_radial_density(n, r, &p).unwrap(), 0.0, cutoff, 200_000);
            assert!((norm - 1.0).abs() < 1e-8, "n={n} norm={norm}");
        }
        // |ψ₁₀(0)|² = R₁₀(0)²/(4π) = 1/(π a³)
        let r10 = hydrogenic_radial(1, 0.0, a).unwrap();
        assert_relative_eq!(r10 * r10 / (4.0 * PI), 1.0 / (PI * a.powi(3)), max_relative = 1e-14);
        assert_eq!(electron_radial_density(4, 1e-11, &p), Err(Error::UnsupportedLevel(4)));
        assert!(electron_radial_density(1, -1.0, &p).is_err());
    }

    #[test]
    fn electron_length_scale_is_reduced_and_z_scaled() {
        let p = default_params();
        let a = p.electron_length_scale_m();
        let expected = p.bohr_radius_m * (1.0 + p.electron_rest_energy_ev / (2.0 * p.proton_rest_energy_ev)) / 2.0;
        assert_relative_eq!(a, expected, max_relative = 1e-14);
    }
}
