//! State file format: a JSON document with subsystem `dims` and either a
//! row-major `matrix` of [re, im] pairs (density operator) or an
//! `amplitudes` array (pure state).
//!
//! ```json
//! { "dims": [2, 2], "matrix": [[0.5, 0.0], [0.0, 0.0], ...] }
//! { "dims": [2, 4], "amplitudes": [[0.7071, 0.0], ...] }
//! ```

use std::path::Path;

use entmono_core::linalg::ComplexMatrix;
use entmono_core::states::{DensityOperator, PureState};
use entmono_core::Complex64;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
struct RawState {
    dims: Vec<usize>,
    #[serde(default)]
    matrix: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    amplitudes: Option<Vec<[f64; 2]>>,
}

#[derive(Debug)]
pub enum LoadedState {
    Density(DensityOperator),
    Pure(PureState),
}

impl LoadedState {
    /// View as a density operator with the given subsystem dims (pure
    /// states are promoted to their projector).
    pub fn as_density(&self, dims: &[usize]) -> Result<DensityOperator, CliError> {
        let rho = match self {
            LoadedState::Density(rho) => rho.clone(),
            LoadedState::Pure(psi) => psi.density(),
        };
        rho.with_dims(dims.to_vec())
            .map_err(|e| CliError::data(format!("requested dims are incompatible with the state: {e}")))
    }
}

fn to_complex(pairs: &[[f64; 2]]) -> Vec<Complex64> {
    pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

/// Parse and validate a state file; every violated invariant is named in
/// the error.
pub fn load_state(path: &Path) -> Result<LoadedState, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    let raw: RawState = serde_json::from_str(&text)
        .map_err(|e| CliError::data(format!("cannot parse {}: {e}", path.display())))?;

    match (raw.matrix, raw.amplitudes) {
        (Some(matrix), None) => {
            let total: usize = raw.dims.iter().product();
            let entries = to_complex(&matrix);
            let m = ComplexMatrix::new(total, total, entries)
                .map_err(|e| CliError::data(format!("invalid matrix: {e}")))?;
            let rho = DensityOperator::new(m, raw.dims)
                .map_err(|e| CliError::data(format!("not a density operator: {e}")))?;
            Ok(LoadedState::Density(rho))
        }
        (None, Some(amplitudes)) => {
            let psi = PureState::new(to_complex(&amplitudes), raw.dims)
                .map_err(|e| CliError::data(format!("not a pure state: {e}")))?;
            Ok(LoadedState::Pure(psi))
        }
        (Some(_), Some(_)) => Err(CliError::data("state file has both matrix and amplitudes".to_string())),
        (None, None) => Err(CliError::data("state file has neither matrix nor amplitudes".to_string())),
    }
}
