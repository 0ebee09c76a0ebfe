//! On-disk state format.
//!
//! A state file is a JSON document with a `dims` field and exactly one of
//! `amp` (pure state) or `mat` (density matrix):
//!
//! ```json
//! { "dims": [2, 2, 2], "amp": [[0.7071067812, 0.0], ...] }
//! { "dims": [2, 2],    "mat": [[[0.5, 0.0], ...], ...] }
//! ```
//!
//! Complex numbers are `[re, im]` pairs; `amp` lists D entries in row-major
//! label order (party 1 most significant) and `mat` lists D rows of D
//! entries. The loader validates every type invariant (normalization,
//! Hermiticity, unit trace, positivity).

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMat;
use crate::error::{Error, Result};
use crate::hilbert::HilbertDims;
use crate::state::{DensityMatrix, StateVector};

#[derive(Serialize, Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    amp: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mat: Option<Vec<Vec<[f64; 2]>>>,
}

/// A state read from disk: pure or mixed.
#[derive(Debug, Clone)]
pub enum LoadedState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl LoadedState {
    pub fn dims(&self) -> &HilbertDims {
        match self {
            LoadedState::Pure(psi) => psi.dims(),
            LoadedState::Mixed(rho) => rho.dims(),
        }
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, LoadedState::Pure(_))
    }

    /// View as a density matrix, projecting pure states.
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            LoadedState::Pure(psi) => psi.to_density(),
            LoadedState::Mixed(rho) => rho.clone(),
        }
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<LoadedState> {
    let text = std::fs::read_to_string(&path)?;
    let file: StateFile = serde_json::from_str(&text)
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.as_ref().display())))?;
    let dims = HilbertDims::new(file.dims)?;
    match (file.amp, file.mat) {
        (Some(amp), None) => {
            if amp.len() != dims.total() {
                return Err(Error::StateFile(format!(
                    "amp has {} entries, total dimension is {}",
                    amp.len(),
                    dims.total()
                )));
            }
            let amp = amp.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            Ok(LoadedState::Pure(StateVector::new(dims, amp)?))
        }
        (None, Some(rows)) => {
            let d = dims.total();
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::StateFile(format!("mat must be {d}x{d}")));
            }
            let mut mat = CMat::zeros(d);
            for (r, row) in rows.iter().enumerate() {
                for (c, &[re, im]) in row.iter().enumerate() {
                    mat[(r, c)] = Complex64::new(re, im);
                }
            }
            Ok(LoadedState::Mixed(DensityMatrix::new(dims, mat)?))
        }
        (Some(_), Some(_)) => Err(Error::StateFile(
            "state file must have exactly one of `amp` or `mat`, found both".into(),
        )),
        (None, None) => Err(Error::StateFile(
            "state file must have one of `amp` or `mat`".into(),
        )),
    }
}

/// Materialize a [`FamilySpec`](crate::factory::FamilySpec) into a state.
pub fn realize(spec: &crate::factory::FamilySpec) -> Result<LoadedState> {
    use crate::factory::{self, FamilySpec};
    match spec {
        FamilySpec::Ghz { n, d } => Ok(LoadedState::Pure(factory::make_ghz(*n, *d)?)),
        FamilySpec::W { n } => Ok(LoadedState::Pure(factory::make_w(*n)?)),
        FamilySpec::Gghz {
            n,
            d,
            alpha,
            beta,
            frames,
            seed,
        } => {
            let dims = HilbertDims::uniform(*n, *d)?;
            let frames = match (frames, seed) {
                (Some(f), _) => f.clone(),
                (None, Some(s)) => factory::random_local_frames(&dims, *s),
                (None, None) => factory::identity_frames(&dims),
            };
            let psi = factory::make_gghz(
                &dims,
                Complex64::new(alpha[0], alpha[1]),
                Complex64::new(beta[0], beta[1]),
                &frames,
            )?;
            Ok(LoadedState::Pure(psi))
        }
        FamilySpec::GhzWNoise { c1, c2 } => {
            Ok(LoadedState::Mixed(factory::make_ghz_w_mix(*c1, *c2)?))
        }
        FamilySpec::CustomFile { path } => load(path),
    }
}

pub fn save(path: impl AsRef<Path>, state: &LoadedState) -> Result<()> {
    let file = match state {
        LoadedState::Pure(psi) => StateFile {
            dims: psi.dims().dims().to_vec(),
            amp: Some(psi.amplitudes().iter().map(|z| [z.re, z.im]).collect()),
            mat: None,
        },
        LoadedState::Mixed(rho) => {
            let d = rho.dims().total();
            let rows = (0..d)
                .map(|r| {
                    (0..d)
                        .map(|c| {
                            let z = rho.element(r, c);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect();
            StateFile {
                dims: rho.dims().dims().to_vec(),
                amp: None,
                mat: Some(rows),
            }
        }
    };
    let text = serde_json::to_string_pretty(&file).expect("serializable");
    std::fs::write(path, text)?;
    Ok(())
}
