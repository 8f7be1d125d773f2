//! Electron-nucleus entanglement in a three-body He⁺ model.
//!
//! The nucleus is kept as a quantum subsystem (two protons in a hard-wall
//! well) instead of a fixed Coulomb center. Its finite size gives first-order
//! energy corrections E¹(n, N) that are not additive in the two quantum
//! numbers, and those alone dephase initially unentangled product states.
//!
//! Modules, bottom up:
//! - [`params`]: constants and model parameters
//! - [`spectra`]: hydrogenic and well spectra and densities
//! - [`quadrature`]: adaptive Simpson integration
//! - [`corrections`]: E¹ tables, closed form and quadrature oracle
//! - [`dynamics`]: product states, reduced density matrices, purity traces
//! - [`equilibrium`]: equilibrium purity and exact time averages

pub mod corrections;
pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod params;
pub mod quadrature;
pub mod spectra;

pub use corrections::{
    build_correction_table, build_correction_table_with, compare_with_oracle, correction_closed_form,
    correction_oracle, nonadditive_gap, ComparisonRow, CorrectionSource, CorrectionTable,
};
pub use dynamics::{
    make_product_state, purity_of, purity_trace, reduced_density_matrix, trace_summary, two_level_period_s,
    uniform_product_state, DensityMatrix, Evolution, ProductState, PurityTrace, TraceSummary,
};
pub use equilibrium::{
    analytic_time_average, degenerate_gap_report, p_eq, slowest_dephasing_period_s, GapCollision, WeightProfile,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{default_params, ModelParams, ParamWarning};
pub use quadrature::QuadratureSpec;
pub use spectra::{Spectra, SubsystemKind, SubsystemSpectrum};
