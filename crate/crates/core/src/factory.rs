//! Construction of named states, seeded random states and noisy mixtures.
//!
//! Everything here is deterministic given its inputs; random constructors
//! take an explicit seed and never touch a global generator.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cmatrix::CMat;
use crate::error::{Error, Result};
use crate::hilbert::HilbertDims;
use crate::partitions::enumerate_bipartitions;
use crate::state::{DensityMatrix, IndexSplitter, StateVector};
use crate::unitary::{param_count, unitary_from_params};

/// GHZ-type state (|0...0> + |1...1>)/sqrt(2) on n qudits of dimension d.
/// The second branch uses level 1 (not d-1) so it lines up with the default
/// witness labels.
pub fn make_ghz(n: usize, d: usize) -> Result<StateVector> {
    let dims = HilbertDims::uniform(n, d)?;
    let mut amp = vec![Complex64::ZERO; dims.total()];
    let s = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let ones = vec![1usize; n];
    amp[0] = s;
    amp[dims.flat_from_digits(&ones)?] = s;
    StateVector::new(dims, amp)
}

/// W state: equal superposition of the n single-excitation labels. Qubits
/// only.
pub fn make_w(n: usize) -> Result<StateVector> {
    let dims = HilbertDims::uniform(n, 2)?;
    let mut amp = vec![Complex64::ZERO; dims.total()];
    let s = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for p in 0..n {
        amp[1 << (n - 1 - p)] = s;
    }
    StateVector::new(dims, amp)
}

/// Generalized GHZ state alpha |0'...0'> + beta |1'...1'>, where the primed
/// levels on party i are the first two columns of that party's frame
/// unitary. `frames` holds one angle table of length d_i^2 per party.
pub fn make_gghz(
    dims: &HilbertDims,
    alpha: Complex64,
    beta: Complex64,
    frames: &[Vec<f64>],
) -> Result<StateVector> {
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized((norm_sqr - 1.0).abs()));
    }
    if frames.len() != dims.n() {
        return Err(Error::ParamCount {
            expected: dims.n(),
            got: frames.len(),
        });
    }
    let mut zero_cols = Vec::with_capacity(dims.n());
    let mut one_cols = Vec::with_capacity(dims.n());
    for (party, angles) in frames.iter().enumerate() {
        let d = dims.dim(party);
        if angles.len() != param_count(d) {
            return Err(Error::ParamCount {
                expected: param_count(d),
                got: angles.len(),
            });
        }
        let u = unitary_from_params(d, angles)?;
        zero_cols.push((0..d).map(|r| u[(r, 0)]).collect::<Vec<_>>());
        one_cols.push((0..d).map(|r| u[(r, 1)]).collect::<Vec<_>>());
    }
    let branch_zero = kron_columns(&zero_cols);
    let branch_one = kron_columns(&one_cols);
    let amp: Vec<Complex64> = branch_zero
        .iter()
        .zip(&branch_one)
        .map(|(z, o)| alpha * z + beta * o)
        .collect();
    StateVector::new(dims.clone(), amp)
}

/// Identity angle tables for every party.
pub fn identity_frames(dims: &HilbertDims) -> Vec<Vec<f64>> {
    dims.dims().iter().map(|&d| vec![0.0; d * d]).collect()
}

/// Seeded random angle tables (mixing angles in [0, pi/2], phases in
/// [0, 2 pi]).
pub fn random_local_frames(dims: &HilbertDims, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    dims.dims()
        .iter()
        .map(|&d| {
            let mut angles = vec![0.0; d * d];
            for m in 0..d {
                for n in 0..d {
                    angles[m * d + n] = if m < n {
                        rng.random_range(0.0..std::f64::consts::FRAC_PI_2)
                    } else {
                        rng.random_range(0.0..std::f64::consts::TAU)
                    };
                }
            }
            angles
        })
        .collect()
}

/// The three-qubit family c1 |GHZ><GHZ| + c2 |W><W| + (1 - c1 - c2)/8 * 1.
pub fn make_ghz_w_mix(c1: f64, c2: f64) -> Result<DensityMatrix> {
    if c1 < 0.0 || c2 < 0.0 || c1 + c2 > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "mixture weights must satisfy c1, c2 >= 0 and c1 + c2 <= 1, got ({c1}, {c2})"
        )));
    }
    let dims = HilbertDims::uniform(3, 2)?;
    let ghz = make_ghz(3, 2)?.to_density();
    let w = make_w(3)?.to_density();
    let mut mat = ghz.matrix().lincomb(c1, w.matrix(), c2);
    let background = (1.0 - c1 - c2) / 8.0;
    for i in 0..8 {
        mat[(i, i)] += Complex64::new(background, 0.0);
    }
    Ok(DensityMatrix::from_parts_unchecked(dims, mat))
}

/// GHZ state on n qudits mixed with white noise: p |GHZ><GHZ| + (1-p) 1/D.
pub fn ghz_white_noise(n: usize, d: usize, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "visibility must lie in [0, 1], got {p}"
        )));
    }
    let ghz = make_ghz(n, d)?.to_density();
    let mixed = DensityMatrix::maximally_mixed(ghz.dims().clone());
    let mat = ghz.matrix().lincomb(p, mixed.matrix(), 1.0 - p);
    Ok(DensityMatrix::from_parts_unchecked(ghz.dims().clone(), mat))
}

/// Haar-like random pure state: normalized complex Gaussian amplitudes.
pub fn random_pure(dims: &HilbertDims, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_pure_with(dims, &mut rng)
}

fn random_pure_with(dims: &HilbertDims, rng: &mut ChaCha8Rng) -> StateVector {
    let mut amp: Vec<Complex64> = (0..dims.total())
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm: f64 = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in amp.iter_mut() {
        *a /= norm;
    }
    StateVector::new(dims.clone(), amp).expect("normalized by construction")
}

/// Seeded random biseparable mixture: 2 to 8 pure product states across
/// independently chosen cuts, mixed with random weights. By construction
/// the result carries no genuine multipartite entanglement.
pub fn random_biseparable(dims: &HilbertDims, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cuts = enumerate_bipartitions(dims.n())?;
    let components = rng.random_range(2..=8usize);
    let mut weights: Vec<f64> = (0..components)
        .map(|_| rng.random_range(0.01..1.0))
        .collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let d = dims.total();
    let mut mat = CMat::zeros(d);
    for &weight in &weights {
        let cut = cuts[rng.random_range(0..cuts.len())];
        let side_a = cut.side_a();
        let dims_a = HilbertDims::from_reduction(side_a.iter().map(|&p| dims.dim(p)).collect());
        let dims_b =
            HilbertDims::from_reduction(cut.side_b().iter().map(|&p| dims.dim(p)).collect());
        let psi_a = random_pure_with(&dims_a, &mut rng);
        let psi_b = random_pure_with(&dims_b, &mut rng);
        let split = IndexSplitter::new(dims, &side_a)?;
        let mut amp = vec![Complex64::ZERO; d];
        for a in 0..split.kept_dim() {
            for b in 0..split.rest_dim() {
                amp[split.full_index(a, b)] = psi_a.amplitude(a) * psi_b.amplitude(b);
            }
        }
        for r in 0..d {
            if amp[r] == Complex64::ZERO {
                continue;
            }
            for c in 0..d {
                mat[(r, c)] += amp[r] * amp[c].conj() * weight;
            }
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(dims.clone(), mat))
}

/// Kronecker product of one column vector per party, party 1 most
/// significant.
fn kron_columns(cols: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut out = vec![Complex64::ONE];
    for col in cols {
        let mut next = Vec::with_capacity(out.len() * col.len());
        for o in &out {
            for c in col {
                next.push(o * c);
            }
        }
        out = next;
    }
    out
}

/// Declarative description of a state family, as embedded in config files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// GHZ on n qudits of dimension d.
    Ghz {
        n: usize,
        #[serde(default = "default_qubit")]
        d: usize,
    },
    /// W state on n qubits.
    W { n: usize },
    /// Generalized GHZ with optional explicit frames or a frame seed.
    Gghz {
        n: usize,
        #[serde(default = "default_qubit")]
        d: usize,
        alpha: [f64; 2],
        beta: [f64; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frames: Option<Vec<Vec<f64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    /// Three-qubit GHZ/W/white-noise mixture.
    GhzWNoise { c1: f64, c2: f64 },
    /// State loaded from a state file.
    #[serde(rename = "custom-file")]
    CustomFile { path: String },
}

fn default_qubit() -> usize {
    2
}
