//! First-order energy corrections E¹(n, N) from the finite size of the
//! nucleus. These are the only coupling between electron and nucleus in the
//! model, and their nonadditive part is what entangles the two.
//!
//! Two routes are provided. The closed form factorizes as
//! `C · f(n) · g(N)` with `f(n) = 1 / (n³ (n!)²)` and
//! `g(N) = 1/3 − 1/(2π²N²)`, `C = α ħc r₀² / (6 a³)`, and drives all
//! dynamics. The oracle integrates the angular-averaged perturbation against
//! the explicit n ≤ 3 hydrogenic densities and the well densities. The two
//! agree on the N-dependence; their absolute magnitudes differ and that
//! difference is reported, not reconciled.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::quadrature::{try_integrate, QuadratureSpec};
use crate::spectra::{hydrogenic_radial, nucleus_radial_density, well_shape_factor, SubsystemKind};

/// Largest electron level accepted by the closed form.
pub const CLOSED_FORM_MAX_N: u32 = 20;
/// Electron levels with explicit radial functions.
pub const ORACLE_MAX_N: u32 = 3;
pub const ORACLE_MAX_BIG_N: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CorrectionSource {
    ClosedForm,
    Oracle,
    /// Caller-supplied values; only shape is checked.
    Custom,
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// 1 / (n³ (n!)²); log space above n = 10.
pub(crate) fn electron_factor(n: u32) -> f64 {
    if n <= 10 {
        let fact: f64 = (1..=n).map(|k| k as f64).product();
        let n = n as f64;
        1.0 / (n * n * n * fact * fact)
    } else {
        (-(3.0 * (n as f64).ln() + 2.0 * ln_factorial(n))).exp()
    }
}

/// Common prefactor α ħc r₀² / (6 a³) in eV.
pub fn closed_form_prefactor(params: &ModelParams) -> f64 {
    let a = params.bohr_radius_m;
    params.alpha * params.hbar_c_ev_m * params.nucleon_core_radius_m.powi(2) / (6.0 * a * a * a)
}

pub fn correction_closed_form(n: u32, big_n: u32, params: &ModelParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::QuantumNumber { what: "n", value: n });
    }
    if big_n == 0 {
        return Err(Error::QuantumNumber {
            what: "N",
            value: big_n,
        });
    }
    if n > CLOSED_FORM_MAX_N {
        return Err(Error::OutOfRange(format!(
            "closed-form corrections support n <= {CLOSED_FORM_MAX_N} (got {n})"
        )));
    }
    Ok(closed_form_prefactor(params) * electron_factor(n) * well_shape_factor(big_n))
}

/// ρ_n(R) · W(R, K), where W is the angular average of the perturbation
/// over s-states: −2αħc (2/K − 1/R) for R < K/2 and zero otherwise.
///
/// Written as 2αħc · R R_n0(R)² (1 − 2R/K) so the 1/R of W is absorbed by
/// the R² of the density.
pub fn oracle_integrand(n: u32, r: f64, k: f64, params: &ModelParams) -> Result<f64> {
    if r < 0.0 || k < 0.0 {
        return Err(Error::NegativeLength {
            what: "R, K",
            value: r.min(k),
        });
    }
    if !(1..=ORACLE_MAX_N).contains(&n) {
        return Err(Error::UnsupportedLevel(n));
    }
    if r >= 0.5 * k {
        return Ok(0.0);
    }
    let radial = hydrogenic_radial(n, r, params.electron_length_scale_m())?;
    Ok(2.0 * params.alpha * params.hbar_c_ev_m * r * radial * radial * (1.0 - 2.0 * r / k))
}

/// Double radial integral ∫₀^{R_w} dK p_N(K) ∫₀^{K/2} dR ρ_n(R) W(R, K).
pub fn correction_oracle(n: u32, big_n: u32, params: &ModelParams, quad: &QuadratureSpec) -> Result<f64> {
    if !(1..=ORACLE_MAX_N).contains(&n) {
        return Err(Error::UnsupportedLevel(n));
    }
    if !(1..=ORACLE_MAX_BIG_N).contains(&big_n) {
        return Err(Error::OutOfRange(format!(
            "oracle corrections support 1 <= N <= {ORACLE_MAX_BIG_N} (got {big_n})"
        )));
    }
    let inner = |k: f64| -> Result<f64> {
        if k == 0.0 {
            return Ok(0.0);
        }
        try_integrate(|r| oracle_integrand(n, r, k, params), 0.0, 0.5 * k, quad)
    };
    try_integrate(
        |k| Ok(nucleus_radial_density(big_n, k, params)? * inner(k)?),
        0.0,
        params.well_radius_m(),
        quad,
    )
}

/// Dense E¹ values over an electron × nucleus level grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectionTable {
    electron_levels: Vec<u32>,
    nucleus_levels: Vec<u32>,
    /// Row-major, rows indexed by electron level.
    values_ev: Vec<f64>,
    source: CorrectionSource,
}

fn check_levels(kind: SubsystemKind, levels: &[u32]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::Construction(format!("{kind} level list is empty")));
    }
    if levels[0] == 0 {
        return Err(Error::Construction(format!("{kind} levels must be >= 1")));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Construction(format!(
            "{kind} levels must be sorted and distinct"
        )));
    }
    Ok(())
}

impl CorrectionTable {
    /// Wraps caller-supplied values (row-major, electron levels as rows).
    pub fn from_values(electron_levels: Vec<u32>, nucleus_levels: Vec<u32>, values_ev: Vec<f64>) -> Result<Self> {
        check_levels(SubsystemKind::Electron, &electron_levels)?;
        check_levels(SubsystemKind::Nucleus, &nucleus_levels)?;
        if values_ev.len() != electron_levels.len() * nucleus_levels.len() {
            return Err(Error::Construction(format!(
                "expected {} values, got {}",
                electron_levels.len() * nucleus_levels.len(),
                values_ev.len()
            )));
        }
        if values_ev.iter().any(|v| !v.is_finite()) {
            return Err(Error::Construction("correction values must be finite".into()));
        }
        Ok(Self {
            electron_levels,
            nucleus_levels,
            values_ev,
            source: CorrectionSource::Custom,
        })
    }

    pub fn electron_levels(&self) -> &[u32] {
        &self.electron_levels
    }

    pub fn nucleus_levels(&self) -> &[u32] {
        &self.nucleus_levels
    }

    pub fn source(&self) -> CorrectionSource {
        self.source
    }

    pub fn values_ev(&self) -> &[f64] {
        &self.values_ev
    }

    pub(crate) fn electron_index(&self, n: u32) -> Result<usize> {
        self.electron_levels.binary_search(&n).map_err(|_| Error::MissingLevel {
            kind: SubsystemKind::Electron,
            level: n,
        })
    }

    pub(crate) fn nucleus_index(&self, big_n: u32) -> Result<usize> {
        self.nucleus_levels
            .binary_search(&big_n)
            .map_err(|_| Error::MissingLevel {
                kind: SubsystemKind::Nucleus,
                level: big_n,
            })
    }

    pub(crate) fn at(&self, i: usize, j: usize) -> f64 {
        self.values_ev[i * self.nucleus_levels.len() + j]
    }

    pub fn get(&self, n: u32, big_n: u32) -> Result<f64> {
        Ok(self.at(self.electron_index(n)?, self.nucleus_index(big_n)?))
    }

    /// Same levels, every entry replaced by `E¹(n, N) + u(n) + v(N)`.
    pub fn with_additive_shift(&self, u: impl Fn(u32) -> f64, v: impl Fn(u32) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(self.values_ev.len());
        for (i, &n) in self.electron_levels.iter().enumerate() {
            for (j, &big_n) in self.nucleus_levels.iter().enumerate() {
                values.push(self.at(i, j) + u(n) + v(big_n));
            }
        }
        Self::from_values(self.electron_levels.clone(), self.nucleus_levels.clone(), values)
    }

    fn check_invariants(&self) -> Result<()> {
        let cols = self.nucleus_levels.len();
        for (i, &n) in self.electron_levels.iter().enumerate() {
            for (j, &big_n) in self.nucleus_levels.iter().enumerate() {
                let v = self.at(i, j);
                if v.is_nan() || v <= 0.0 {
                    return Err(Error::Construction(format!("E1({n},{big_n}) = {v:e} is not positive")));
                }
                if j + 1 < cols && v >= self.at(i, j + 1) {
                    return Err(Error::Construction(format!("E1({n},N) not increasing at N = {big_n}")));
                }
                if self.source == CorrectionSource::ClosedForm
                    && i + 1 < self.electron_levels.len()
                    && v <= self.at(i + 1, j)
                {
                    return Err(Error::Construction(format!("E1(n,{big_n}) not decreasing at n = {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Builds and checks a table. Oracle tables use the default quadrature spec.
pub fn build_correction_table(
    electron_levels: &[u32],
    nucleus_levels: &[u32],
    params: &ModelParams,
    source: CorrectionSource,
) -> Result<CorrectionTable> {
    build_correction_table_with(
        electron_levels,
        nucleus_levels,
        params,
        source,
        &QuadratureSpec::default(),
    )
}

pub fn build_correction_table_with(
    electron_levels: &[u32],
    nucleus_levels: &[u32],
    params: &ModelParams,
    source: CorrectionSource,
    quad: &QuadratureSpec,
) -> Result<CorrectionTable> {
    check_levels(SubsystemKind::Electron, electron_levels)?;
    check_levels(SubsystemKind::Nucleus, nucleus_levels)?;
    let max_n = *electron_levels.last().unwrap();
    let max_big_n = *nucleus_levels.last().unwrap();

    let mut values = Vec::with_capacity(electron_levels.len() * nucleus_levels.len());
    match source {
        CorrectionSource::ClosedForm => {
            for &n in electron_levels {
                for &big_n in nucleus_levels {
                    values.push(correction_closed_form(n, big_n, params)?);
                }
            }
        }
        CorrectionSource::Oracle => {
            if max_n > ORACLE_MAX_N || max_big_n > ORACLE_MAX_BIG_N {
                return Err(Error::OutOfRange(format!(
                    "oracle tables need n <= {ORACLE_MAX_N} and N <= {ORACLE_MAX_BIG_N} (got n <= {max_n}, N <= {max_big_n})"
                )));
            }
            for &n in electron_levels {
                for &big_n in nucleus_levels {
                    values.push(correction_oracle(n, big_n, params, quad)?);
                }
            }
        }
        CorrectionSource::Custom => {
            return Err(Error::Construction(
                "custom tables are built with CorrectionTable::from_values".into(),
            ))
        }
    }
    let table = CorrectionTable {
        electron_levels: electron_levels.to_vec(),
        nucleus_levels: nucleus_levels.to_vec(),
        values_ev: values,
        source,
    };
    table.check_invariants()?;
    Ok(table)
}

/// E¹(n,N) − E¹(n',N) − E¹(n,N') + E¹(n',N'); zero for any additive table.
pub fn nonadditive_gap(n: u32, n2: u32, big_n: u32, big_n2: u32, table: &CorrectionTable) -> Result<f64> {
    let (i, i2) = (table.electron_index(n)?, table.electron_index(n2)?);
    let (j, j2) = (table.nucleus_index(big_n)?, table.nucleus_index(big_n2)?);
    // pair the N-columns first so that n = n' cancels exactly
    Ok((table.at(i, j) - table.at(i2, j)) - (table.at(i, j2) - table.at(i2, j2)))
}

/// Closed form vs. oracle for one (n, N) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub closed_form_ev: f64,
    pub oracle_ev: f64,
}

impl ComparisonRow {
    pub fn ratio(&self) -> f64 {
        self.oracle_ev / self.closed_form_ev
    }
}

pub fn compare_with_oracle(
    electron_levels: &[u32],
    nucleus_levels: &[u32],
    params: &ModelParams,
    quad: &QuadratureSpec,
) -> Result<Vec<ComparisonRow>> {
    let closed = build_correction_table(electron_levels, nucleus_levels, params, CorrectionSource::ClosedForm)?;
    let oracle = build_correction_table_with(electron_levels, nucleus_levels, params, CorrectionSource::Oracle, quad)?;
    let mut rows = Vec::new();
    for &n in electron_levels {
        for &big_n in nucleus_levels {
            rows.push(ComparisonRow {
                n,
                big_n,
                closed_form_ev: closed.get(n, big_n)?,
                oracle_ev: oracle.get(n, big_n)?,
            });
        }
    }
    Ok(rows)
}
