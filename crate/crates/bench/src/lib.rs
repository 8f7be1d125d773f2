//! Fixtures shared by the benchmarks.

use heplus_core::{
    build_correction_table, default_params, uniform_product_state, CorrectionSource, CorrectionTable, ModelParams,
    ProductState, Spectra,
};

pub struct Fixture {
    pub params: ModelParams,
    pub state: ProductState,
    pub table: CorrectionTable,
    pub spectra: Spectra,
}

/// Uniform superposition over levels 1..=dim in both subsystems.
pub fn uniform_fixture(dim: u32) -> Fixture {
    let params = default_params();
    let levels: Vec<u32> = (1..=dim).collect();
    Fixture {
        state: uniform_product_state(&levels, &levels).expect("valid state"),
        table: build_correction_table(&levels, &levels, &params, CorrectionSource::ClosedForm).expect("valid table"),
        spectra: Spectra::new(dim, dim, &params).expect("valid spectra"),
        params,
    }
}
