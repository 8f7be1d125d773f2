//! Exact dephasing dynamics of product states.
//!
//! The perturbation is treated as diagonal in the product eigenbasis, so a
//! state `Σ c_n d_N |n⟩|N⟩` evolves only by phases
//! `exp(−i E(n,N) t/ħ)` with `E(n,N) = E_n + E_N + E¹(n,N)`. Populations never
//! move; entanglement comes entirely from the nonadditive part of E¹.
//!
//! The electron reduction is
//!
//! ```text
//! ρ_nn'(t) = c_n c̄_n' e^{−i(E_n − E_n')t/ħ} Σ_N |d_N|² e^{−i(E¹(n,N) − E¹(n',N))t/ħ}
//! ```
//!
//! and symmetrically for the nucleus. Corrections enter the phases on their
//! own, never added to the eV-scale unperturbed energies, so corrections of
//! 1e-35 eV still act at t = 1e20 s.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::corrections::{nonadditive_gap, CorrectionTable};
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectra::{Spectra, SubsystemKind};

#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    electron_levels: Vec<u32>,
    electron_amplitudes: Vec<Complex64>,
    nucleus_levels: Vec<u32>,
    nucleus_amplitudes: Vec<Complex64>,
}

fn normalized(kind: SubsystemKind, entries: &[(u32, Complex64)]) -> Result<(Vec<u32>, Vec<Complex64>)> {
    if entries.is_empty() {
        return Err(Error::Construction(format!("{kind} amplitude list is empty")));
    }
    let mut sorted = entries.to_vec();
    sorted.sort_by_key(|&(level, _)| level);
    if sorted[0].0 == 0 {
        return Err(Error::Construction(format!("{kind} levels must be >= 1")));
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Construction(format!("duplicate {kind} level {}", w[0].0)));
    }
    if sorted.iter().any(|(_, c)| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::Construction(format!("{kind} amplitudes must be finite")));
    }
    let norm = sorted.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::Construction(format!("{kind} amplitude vector is zero")));
    }
    Ok(sorted.into_iter().map(|(l, c)| (l, c / norm)).unzip())
}

impl ProductState {
    pub fn levels(&self, kind: SubsystemKind) -> &[u32] {
        match kind {
            SubsystemKind::Electron => &self.electron_levels,
            SubsystemKind::Nucleus => &self.nucleus_levels,
        }
    }

    pub fn amplitudes(&self, kind: SubsystemKind) -> &[Complex64] {
        match kind {
            SubsystemKind::Electron => &self.electron_amplitudes,
            SubsystemKind::Nucleus => &self.nucleus_amplitudes,
        }
    }

    /// Occupation probabilities |c|² of one subsystem.
    pub fn weights(&self, kind: SubsystemKind) -> Vec<f64> {
        self.amplitudes(kind).iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.electron_levels.len(), self.nucleus_levels.len())
    }

    pub fn with_amplitude(&self, kind: SubsystemKind, index: usize, value: Complex64) -> Result<Self> {
        let mut e: Vec<_> = self
            .electron_levels
            .iter()
            .copied()
            .zip(self.electron_amplitudes.iter().copied())
            .collect();
        let mut c: Vec<_> = self
            .nucleus_levels
            .iter()
            .copied()
            .zip(self.nucleus_amplitudes.iter().copied())
            .collect();
        let target = match kind {
            SubsystemKind::Electron => &mut e,
            SubsystemKind::Nucleus => &mut c,
        };
        match target.get_mut(index) {
            Some(entry) => entry.1 = value,
            None => return Err(Error::Construction(format!("{kind} index {index} out of range"))),
        }
        make_product_state(&e, &c)
    }
}

/// Normalizes both amplitude vectors; entries may come in any level order.
pub fn make_product_state(electron: &[(u32, Complex64)], nucleus: &[(u32, Complex64)]) -> Result<ProductState> {
    let (electron_levels, electron_amplitudes) = normalized(SubsystemKind::Electron, electron)?;
    let (nucleus_levels, nucleus_amplitudes) = normalized(SubsystemKind::Nucleus, nucleus)?;
    Ok(ProductState {
        electron_levels,
        electron_amplitudes,
        nucleus_levels,
        nucleus_amplitudes,
    })
}

/// Equal real amplitudes over the given levels in each subsystem.
pub fn uniform_product_state(electron_levels: &[u32], nucleus_levels: &[u32]) -> Result<ProductState> {
    let one = Complex64::new(1.0, 0.0);
    let e: Vec<_> = electron_levels.iter().map(|&n| (n, one)).collect();
    let c: Vec<_> = nucleus_levels.iter().map(|&n| (n, one)).collect();
    make_product_state(&e, &c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub kind: SubsystemKind,
    pub levels: Vec<u32>,
    pub matrix: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Largest |ρ_ij − conj(ρ_ji)|.
    pub fn hermiticity_error(&self) -> f64 {
        let m = &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }

    /// Hermitian, unit trace and positive semidefinite within round-off.
    pub fn validate(&self) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::Construction(format!(
                "density matrix not hermitian (error {herm:e})"
            )));
        }
        let tr = self.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::Construction(format!("density matrix trace {tr} != 1")));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -1e-10 {
            return Err(Error::Construction(format!("density matrix eigenvalue {min:e} < 0")));
        }
        Ok(())
    }
}

/// Tr ρ² = Σ |ρ_ij|².
pub fn purity_of(rho: &DensityMatrix) -> f64 {
    rho.matrix.iter().map(|z| z.norm_sqr()).sum()
}

/// A product state bound to its energies, with all label lookups resolved.
#[derive(Debug, Clone)]
pub struct Evolution {
    electron_levels: Vec<u32>,
    nucleus_levels: Vec<u32>,
    c: Vec<Complex64>,
    d: Vec<Complex64>,
    /// Unperturbed subsystem energies, eV.
    electron_energies: Vec<f64>,
    nucleus_energies: Vec<f64>,
    /// E¹ sub-table restricted to the state, rows = electron levels.
    corrections: Vec<Vec<f64>>,
    hbar: f64,
}

impl Evolution {
    pub fn new(state: &ProductState, table: &CorrectionTable, spectra: &Spectra, params: &ModelParams) -> Result<Self> {
        let electron_energies = state
            .electron_levels
            .iter()
            .map(|&n| spectra.electron.energy(n))
            .collect::<Result<Vec<_>>>()?;
        let nucleus_energies = state
            .nucleus_levels
            .iter()
            .map(|&n| spectra.nucleus.energy(n))
            .collect::<Result<Vec<_>>>()?;
        let corrections = state
            .electron_levels
            .iter()
            .map(|&n| state.nucleus_levels.iter().map(|&big_n| table.get(n, big_n)).collect())
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(Self {
            electron_levels: state.electron_levels.clone(),
            nucleus_levels: state.nucleus_levels.clone(),
            c: state.electron_amplitudes.clone(),
            d: state.nucleus_amplitudes.clone(),
            electron_energies,
            nucleus_energies,
            corrections,
            hbar: params.hbar_ev_s,
        })
    }

    fn phasor(&self, energy: f64, t: f64) -> Complex64 {
        let omega = energy / self.hbar;
        Complex64::cis(-(omega * t))
    }

    /// exp(−i E¹(n,N) t/ħ) for every (n, N) of the state.
    fn correction_phasors(&self, t: f64) -> Vec<Vec<Complex64>> {
        self.corrections
            .iter()
            .map(|row| row.iter().map(|&e| self.phasor(e, t)).collect())
            .collect()
    }

    /// Reduced state of one subsystem at time `t`.
    ///
    /// Built as Σ_k w_k ψ_k ψ_k† over the other subsystem's levels k, so the
    /// result is hermitian and positive semidefinite even where the absolute
    /// phases are far beyond double precision.
    pub fn reduced_density_matrix(&self, t: f64, kind: SubsystemKind) -> DensityMatrix {
        let u = self.correction_phasors(t);
        let (own, other, own_e, levels) = match kind {
            SubsystemKind::Electron => (&self.c, &self.d, &self.electron_energies, &self.electron_levels),
            SubsystemKind::Nucleus => (&self.d, &self.c, &self.nucleus_energies, &self.nucleus_levels),
        };
        let phasor = |a: usize, b: usize| match kind {
            SubsystemKind::Electron => u[a][b],
            SubsystemKind::Nucleus => u[b][a],
        };
        let local: Vec<Complex64> = own.iter().zip(own_e).map(|(amp, &e)| amp * self.phasor(e, t)).collect();
        let dim = own.len();
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let mut coherence = Complex64::new(0.0, 0.0);
                for (k, amp) in other.iter().enumerate() {
                    coherence += amp.norm_sqr() * phasor(i, k) * phasor(j, k).conj();
                }
                let v = local[i] * local[j].conj() * coherence;
                if i == j {
                    m[(i, i)] = Complex64::new(v.re, 0.0);
                } else {
                    m[(i, j)] = v;
                    m[(j, i)] = v.conj();
                }
            }
        }
        DensityMatrix {
            kind,
            levels: levels.clone(),
            matrix: m,
        }
    }

    /// Purity at time `t`, computed without forming the matrix.
    pub fn purity(&self, t: f64) -> f64 {
        let u = self.correction_phasors(t);
        let we: Vec<f64> = self.c.iter().map(|c| c.norm_sqr()).collect();
        let wc: Vec<f64> = self.d.iter().map(|d| d.norm_sqr()).collect();
        let wc_sum: f64 = wc.iter().sum();
        let mut total = 0.0;
        for i in 0..we.len() {
            total += we[i] * we[i] * wc_sum * wc_sum;
            for j in (i + 1)..we.len() {
                let mut coherence = Complex64::new(0.0, 0.0);
                for (k, &w) in wc.iter().enumerate() {
                    coherence += w * u[i][k] * u[j][k].conj();
                }
                total += 2.0 * we[i] * we[j] * coherence.norm_sqr();
            }
        }
        total
    }
}

pub fn reduced_density_matrix(
    state: &ProductState,
    table: &CorrectionTable,
    spectra: &Spectra,
    params: &ModelParams,
    t: f64,
    kind: SubsystemKind,
) -> Result<DensityMatrix> {
    Ok(Evolution::new(state, table, spectra, params)?.reduced_density_matrix(t, kind))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PurityTrace {
    pub times_s: Vec<f64>,
    pub purity: Vec<f64>,
    pub scenario: String,
}

/// `num_points` uniformly spaced times from 0 to `t_max` inclusive.
pub fn time_grid(t_max: f64, num_points: usize) -> Result<Vec<f64>> {
    if num_points < 2 {
        return Err(Error::OutOfRange(format!("num_points must be >= 2 (got {num_points})")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "t_max must be positive and finite (got {t_max})"
        )));
    }
    let last = (num_points - 1) as f64;
    let mut grid: Vec<f64> = (0..num_points).map(|i| t_max * (i as f64 / last)).collect();
    grid[num_points - 1] = t_max;
    Ok(grid)
}

pub fn purity_trace(
    state: &ProductState,
    table: &CorrectionTable,
    spectra: &Spectra,
    params: &ModelParams,
    t_max: f64,
    num_points: usize,
) -> Result<PurityTrace> {
    let times_s = time_grid(t_max, num_points)?;
    let evolution = Evolution::new(state, table, spectra, params)?;
    let purity = times_s.iter().map(|&t| evolution.purity(t)).collect();
    let (de, dc) = state.dims();
    Ok(PurityTrace {
        times_s,
        purity,
        scenario: format!("{de}x{dc} product state"),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSummary {
    pub min: f64,
    pub argmin_s: f64,
    pub mean: f64,
    /// (threshold, earliest grid time with purity below it)
    pub first_crossings: Vec<(f64, Option<f64>)>,
}

impl TraceSummary {
    pub fn first_crossing(&self, threshold: f64) -> Option<f64> {
        self.first_crossings
            .iter()
            .find(|(th, _)| *th == threshold)
            .and_then(|(_, t)| *t)
    }
}

pub fn trace_summary(trace: &PurityTrace, thresholds: &[f64]) -> Result<TraceSummary> {
    if trace.purity.is_empty() || trace.purity.len() != trace.times_s.len() {
        return Err(Error::Construction("trace is empty or ragged".into()));
    }
    let (imin, &min) =
        trace
            .purity
            .iter()
            .enumerate()
            .fold((0, &f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let mean = trace.purity.iter().sum::<f64>() / trace.purity.len() as f64;
    let first_crossings = thresholds
        .iter()
        .map(|&th| {
            let t = trace.purity.iter().position(|&p| p < th).map(|i| trace.times_s[i]);
            (th, t)
        })
        .collect();
    Ok(TraceSummary {
        min,
        argmin_s: trace.times_s[imin],
        mean,
        first_crossings,
    })
}

/// Oscillation period 2πħ/|Δ| of a two-level ⊗ two-level state, where Δ is
/// its nonadditive gap. `None` for other shapes or a vanishing gap.
pub fn two_level_period_s(state: &ProductState, table: &CorrectionTable, params: &ModelParams) -> Result<Option<f64>> {
    if state.dims() != (2, 2) {
        return Ok(None);
    }
    let (e, c) = (&state.electron_levels, &state.nucleus_levels);
    let gap = nonadditive_gap(e[0], e[1], c[0], c[1], table)?;
    if gap == 0.0 {
        return Ok(None);
    }
    Ok(Some(2.0 * std::f64::consts::PI * params.hbar_ev_s / gap.abs()))
}
