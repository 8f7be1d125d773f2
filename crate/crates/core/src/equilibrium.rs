//! Equilibrium purity from initial weights alone, and the exact infinite-time
//! average of the dephasing dynamics.
//!
//! Under the diagonal dynamics the purity is
//! `Σ_{n,n'} W_n W_n' Σ_{N,N'} w_N w_N' cos((gap(n,n',N) − gap(n,n',N')) t/ħ)`
//! with `gap(n,n',N) = E¹(n,N) − E¹(n',N)`. Its long-time average keeps only
//! the terms whose frequency vanishes. When no two N share a gap for any
//! n ≠ n', that average collapses to `S_e + S_c − S_e S_c` with `S = Σ W²`.

use serde::Serialize;

use crate::corrections::{nonadditive_gap, CorrectionTable};
use crate::dynamics::ProductState;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::spectra::SubsystemKind;

/// Relative tolerance under which two gaps count as equal.
pub const GAP_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    weights_e: Vec<f64>,
    weights_c: Vec<f64>,
}

fn check_weights(kind: SubsystemKind, w: &[f64]) -> Result<()> {
    if w.is_empty() {
        return Err(Error::Construction(format!("{kind} weights are empty")));
    }
    if w.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(Error::Construction(format!("{kind} weights must be non-negative")));
    }
    let sum: f64 = w.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(Error::Construction(format!("{kind} weights sum to {sum}, not 1")));
    }
    Ok(())
}

impl WeightProfile {
    pub fn new(weights_e: Vec<f64>, weights_c: Vec<f64>) -> Result<Self> {
        check_weights(SubsystemKind::Electron, &weights_e)?;
        check_weights(SubsystemKind::Nucleus, &weights_c)?;
        Ok(Self { weights_e, weights_c })
    }

    pub fn uniform(dim_e: usize, dim_c: usize) -> Result<Self> {
        Self::new(vec![1.0 / dim_e as f64; dim_e], vec![1.0 / dim_c as f64; dim_c])
    }

    pub fn from_state(state: &ProductState) -> Self {
        Self {
            weights_e: state.weights(SubsystemKind::Electron),
            weights_c: state.weights(SubsystemKind::Nucleus),
        }
    }

    pub fn weights_e(&self) -> &[f64] {
        &self.weights_e
    }

    pub fn weights_c(&self) -> &[f64] {
        &self.weights_c
    }
}

fn sum_squares(w: &[f64]) -> f64 {
    w.iter().map(|x| x * x).sum()
}

/// Σ(W^e)² + Σ(W^c)² − Σ(W^e)² Σ(W^c)².
pub fn p_eq(profile: &WeightProfile) -> f64 {
    let se = sum_squares(&profile.weights_e);
    let sc = sum_squares(&profile.weights_c);
    se + sc - se * sc
}

fn gaps_equal(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= GAP_REL_TOL * a.abs().max(b.abs())
}

/// E¹ sub-table for the state's levels, rows = electron levels.
fn state_corrections(state: &ProductState, table: &CorrectionTable) -> Result<Vec<Vec<f64>>> {
    state
        .levels(SubsystemKind::Electron)
        .iter()
        .map(|&n| {
            state
                .levels(SubsystemKind::Nucleus)
                .iter()
                .map(|&m| table.get(n, m))
                .collect()
        })
        .collect()
}

/// Exact infinite-time average of the purity under the dephasing dynamics.
pub fn analytic_time_average(state: &ProductState, table: &CorrectionTable) -> Result<f64> {
    let e1 = state_corrections(state, table)?;
    let we = state.weights(SubsystemKind::Electron);
    let wc = state.weights(SubsystemKind::Nucleus);
    let mut total = 0.0;
    for (i, &wi) in we.iter().enumerate() {
        for (i2, &wi2) in we.iter().enumerate() {
            let mut inner = 0.0;
            for (j, &wj) in wc.iter().enumerate() {
                for (j2, &wj2) in wc.iter().enumerate() {
                    let g1 = e1[i][j] - e1[i2][j];
                    let g2 = e1[i][j2] - e1[i2][j2];
                    if gaps_equal(g1, g2) {
                        inner += wj * wj2;
                    }
                }
            }
            total += wi * wi2 * inner;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapCollision {
    pub n: u32,
    pub n2: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    #[serde(rename = "N2")]
    pub big_n2: u32,
    pub gap_ev: f64,
}

/// All (n, n', N, N') with N < N' whose gaps coincide, for n < n'.
///
/// With a single electron level there is no n ≠ n' pair; every (n, n, N, N')
/// is then reported as trivially degenerate.
pub fn degenerate_gap_report(state: &ProductState, table: &CorrectionTable) -> Result<Vec<GapCollision>> {
    let e1 = state_corrections(state, table)?;
    let el = state.levels(SubsystemKind::Electron);
    let nl = state.levels(SubsystemKind::Nucleus);
    let pairs: Vec<(usize, usize)> = if el.len() == 1 {
        vec![(0, 0)]
    } else {
        (0..el.len())
            .flat_map(|i| ((i + 1)..el.len()).map(move |i2| (i, i2)))
            .collect()
    };
    let mut out = Vec::new();
    for (i, i2) in pairs {
        for j in 0..nl.len() {
            for j2 in (j + 1)..nl.len() {
                let g1 = e1[i][j] - e1[i2][j];
                let g2 = e1[i][j2] - e1[i2][j2];
                if gaps_equal(g1, g2) {
                    out.push(GapCollision {
                        n: el[i],
                        n2: el[i2],
                        big_n: nl[j],
                        big_n2: nl[j2],
                        gap_ev: g1,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// 2πħ over the smallest nonzero beat |gap(n,n',N) − gap(n,n',N')| of the
/// state: the longest period present in its purity trace. `None` when the
/// purity is constant.
pub fn slowest_dephasing_period_s(
    state: &ProductState,
    table: &CorrectionTable,
    params: &ModelParams,
) -> Result<Option<f64>> {
    let el = state.levels(SubsystemKind::Electron);
    let nl = state.levels(SubsystemKind::Nucleus);
    let mut smallest: Option<f64> = None;
    for (i, &n) in el.iter().enumerate() {
        for &n2 in &el[i + 1..] {
            for (j, &m) in nl.iter().enumerate() {
                for &m2 in &nl[j + 1..] {
                    let beat = nonadditive_gap(n, n2, m, m2, table)?.abs();
                    if beat > 0.0 && smallest.is_none_or(|s| beat < s) {
                        smallest = Some(beat);
                    }
                }
            }
        }
    }
    Ok(smallest.map(|b| 2.0 * std::f64::consts::PI * params.hbar_ev_s / b))
}
