//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2, 2], "amps": [[0.7071067811865476, 0.0], [0.0, 0.0], ...]}
//! ```
//!
//! `amps` holds `[re, im]` pairs in row-major order, last subsystem fastest,
//! so entry `n` is the amplitude of the 1-based basis label whose digits
//! (each digit minus one) spell `n` in the mixed radix `dims`. An optional
//! `"normalize": true` rescales the vector to unit norm on load.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::tensor::{make_state, NormPolicy, PureStateTensor, Shape};
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amps: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<bool>,
}

impl StateFile {
    pub fn from_state(state: &PureStateTensor) -> Self {
        Self {
            dims: state.shape().dims().to_vec(),
            amps: state.amps().iter().map(|a| [a.re, a.im]).collect(),
            normalize: None,
        }
    }

    /// Builds the state; `force_normalize` overrides the file's flag.
    pub fn into_state(self, force_normalize: bool) -> Result<PureStateTensor> {
        let policy = if force_normalize || self.normalize.unwrap_or(false) {
            NormPolicy::AutoNormalize
        } else {
            NormPolicy::RequireNormalized
        };
        let shape = Shape::new(self.dims)?;
        let amps = self.amps.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        make_state(shape, amps, policy)
    }
}

pub fn parse_state(text: &str, force_normalize: bool) -> Result<PureStateTensor> {
    let file: StateFile = serde_json::from_str(text)?;
    file.into_state(force_normalize)
}

/// Compact single-document JSON with a trailing newline. Amplitudes are
/// written with full round-trip precision.
pub fn write_state(state: &PureStateTensor) -> String {
    let mut s = serde_json::to_string(&StateFile::from_state(state)).expect("state serializes");
    s.push('\n');
    s
}
