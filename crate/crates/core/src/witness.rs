//! The biseparability inequality, its maximization over product witnesses,
//! and noise-threshold location.
//!
//! For a witness with basis labels (x, y) and per-party frame unitaries U_i,
//! write |x~> = (U_1 x ... x U_n)|x>. The evaluated quantity is
//!
//! ```text
//! I[rho, w] = |<x~| rho |y~>| - sum_gamma sqrt(<a~(gamma)|rho|a~(gamma)> <b~(gamma)|rho|b~(gamma)>)
//! ```
//!
//! with (a(gamma), b(gamma)) the label pair obtained by exchanging the
//! digits of x and y on the parties of each canonical bipartition. Every
//! biseparable state satisfies I <= 0, so 2I is a certified lower bound on
//! the gme-concurrence whenever it is positive. The two-copy permutation
//! operator behind the inequality never needs to be materialized: only the
//! D^2 matrix elements above enter.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{BasisLabel, HilbertDims};
use crate::measure::check_labels_disjoint;
use crate::optim::{coordinate_ascent, splitmix64};
use crate::partitions::enumerate_bipartitions;
use crate::state::DensityMatrix;
use crate::unitary::{level_pair_angles, param_count, unitary_from_params};

/// A separable two-copy witness: basis labels (x, y) that differ on every
/// party, plus one local-unitary angle table per party fixing the frame.
#[derive(Debug, Clone)]
pub struct WitnessVector {
    x: BasisLabel,
    y: BasisLabel,
    frame: Vec<Vec<f64>>,
}

impl WitnessVector {
    pub fn new(x: BasisLabel, y: BasisLabel, frame: Vec<Vec<f64>>) -> Result<Self> {
        if x.dims() != y.dims() {
            return Err(Error::DimsMismatch(
                "witness labels on different systems".into(),
            ));
        }
        check_labels_disjoint(&x, &y)?;
        let dims = x.dims();
        if frame.len() != dims.n() {
            return Err(Error::ParamCount {
                expected: dims.n(),
                got: frame.len(),
            });
        }
        for (party, angles) in frame.iter().enumerate() {
            let want = param_count(dims.dim(party));
            if angles.len() != want {
                return Err(Error::ParamCount {
                    expected: want,
                    got: angles.len(),
                });
            }
        }
        Ok(Self { x, y, frame })
    }

    /// x = 0...0, y = 1...1 in the computational frame.
    pub fn canonical(dims: &HilbertDims) -> Self {
        let frame = dims.dims().iter().map(|&d| vec![0.0; d * d]).collect();
        Self {
            x: BasisLabel::all_zero(dims.clone()),
            y: BasisLabel::all_one(dims.clone()),
            frame,
        }
    }

    pub fn x(&self) -> &BasisLabel {
        &self.x
    }

    pub fn y(&self) -> &BasisLabel {
        &self.y
    }

    pub fn frame(&self) -> &[Vec<f64>] {
        &self.frame
    }

    /// Per-party frame columns at the witness levels: (U_i |x_i>, U_i |y_i>).
    fn frame_columns(&self) -> Result<Vec<(Vec<Complex64>, Vec<Complex64>)>> {
        let dims = self.x.dims();
        let mut cols = Vec::with_capacity(dims.n());
        for party in 0..dims.n() {
            let d = dims.dim(party);
            let u = unitary_from_params(d, &self.frame[party])?;
            let cx = (0..d).map(|r| u[(r, self.x.digit(party))]).collect();
            let cy = (0..d).map(|r| u[(r, self.y.digit(party))]).collect();
            cols.push((cx, cy));
        }
        Ok(cols)
    }
}

/// Outcome of a witness maximization.
#[derive(Debug, Clone)]
pub struct BoundResult {
    /// Maximized 2 I[rho, w]; negative when nothing was detected.
    pub raw_2i: f64,
    /// max(raw_2i, 0): the certified lower bound on the gme-concurrence.
    pub lower_bound: f64,
    /// Witness attaining the maximum.
    pub witness: WitnessVector,
    /// Total objective evaluations over all restarts.
    pub evaluations: usize,
    /// Whether the best restart's final sweep improved by less than tol.
    pub converged: bool,
}

/// Multi-start search configuration. `max_evals` is the objective-evaluation
/// budget per restart. Identical configs on identical inputs give identical
/// results, independent of thread scheduling.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_evals: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_evals: 2000,
            seed: 0,
            tol: 1e-9,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::Domain("restarts must be at least 1".into()));
        }
        if self.tol <= 0.0 || self.tol.is_nan() {
            return Err(Error::Domain("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Evaluate I[rho, w].
pub fn bound_i(rho: &DensityMatrix, w: &WitnessVector) -> Result<f64> {
    if w.x.dims() != rho.dims() {
        return Err(Error::DimsMismatch(
            "witness labels on a different system".into(),
        ));
    }
    let cols = w.frame_columns()?;
    Ok(bound_i_from_columns(rho, &cols))
}

/// I from per-party (x-column, y-column) pairs; the optimizer hot path.
fn bound_i_from_columns(rho: &DensityMatrix, cols: &[(Vec<Complex64>, Vec<Complex64>)]) -> f64 {
    let dims = rho.dims();
    let n = dims.n();
    let x_vec = kron_select(cols, 0);
    let y_vec = kron_select(cols, u64::MAX);
    let off = sandwich(rho, &x_vec, &y_vec).norm();
    let mut cross = 0.0;
    for gamma in enumerate_bipartitions(n).expect("n >= 2") {
        let alpha = kron_select(cols, gamma.mask());
        let beta = kron_select(cols, !gamma.mask());
        let pa = sandwich(rho, &alpha, &alpha).re.max(0.0);
        let pb = sandwich(rho, &beta, &beta).re.max(0.0);
        cross += (pa * pb).sqrt();
    }
    off - cross
}

/// Product vector taking the y-column on parties whose bit is set in `mask`
/// and the x-column elsewhere.
fn kron_select(cols: &[(Vec<Complex64>, Vec<Complex64>)], mask: u64) -> Vec<Complex64> {
    let mut out = vec![Complex64::ONE];
    for (party, (cx, cy)) in cols.iter().enumerate() {
        let col = if mask & (1 << party) != 0 { cy } else { cx };
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

/// <a| rho |b>.
fn sandwich(rho: &DensityMatrix, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let rb = rho.matrix().matvec(b);
    a.iter().zip(&rb).map(|(ai, ri)| ai.conj() * ri).sum()
}

/// Maximize 2 I[rho, w] over the witness frames with x = 0...0, y = 1...1.
pub fn maximize_bound(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<BoundResult> {
    maximize_bound_warm(rho, cfg, None)
}

/// Like [`maximize_bound`], with optional warm-start frame angles used for
/// the first restart (grid scans pass the neighboring point's witness).
pub fn maximize_bound_warm(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
    warm: Option<&[Vec<f64>]>,
) -> Result<BoundResult> {
    cfg.validate()?;
    let dims = rho.dims().clone();
    if dims.n() < 2 {
        return Err(Error::InvalidArity(
            "witness search needs at least 2 parties".into(),
        ));
    }
    let layout: Vec<usize> = dims.dims().iter().map(|&d| param_count(d)).collect();
    let total_params: usize = layout.iter().sum();

    let starts = restart_points(&dims, &layout, total_params, cfg, warm);

    let results: Vec<crate::optim::AscentResult> = starts
        .par_iter()
        .map(|x0| {
            let mut objective = |angles: &[f64]| {
                let cols = columns_from_flat(&dims, &layout, angles);
                2.0 * bound_i_from_columns(rho, &cols)
            };
            coordinate_ascent(
                &mut objective,
                x0.clone(),
                std::f64::consts::FRAC_PI_2,
                cfg.tol,
                cfg.max_evals,
            )
        })
        .collect();

    let evaluations: usize = results.iter().map(|r| r.evals).sum();
    let best = results
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.value
                .partial_cmp(&b.value)
                .expect("finite objective")
                .then(ib.cmp(ia)) // ties: lowest restart index wins
        })
        .map(|(_, r)| r)
        .expect("at least one restart");

    let frame = split_flat(&layout, &best.x);
    let witness = WitnessVector::new(
        BasisLabel::all_zero(dims.clone()),
        BasisLabel::all_one(dims),
        frame,
    )?;
    Ok(BoundResult {
        raw_2i: best.value,
        lower_bound: best.value.max(0.0),
        witness,
        evaluations,
        converged: best.converged,
    })
}

fn columns_from_flat(
    dims: &HilbertDims,
    layout: &[usize],
    flat: &[f64],
) -> Vec<(Vec<Complex64>, Vec<Complex64>)> {
    let mut cols = Vec::with_capacity(dims.n());
    let mut offset = 0;
    for (party, &len) in layout.iter().enumerate() {
        let d = dims.dim(party);
        let u = unitary_from_params(d, &flat[offset..offset + len]).expect("layout matches");
        offset += len;
        let cx = (0..d).map(|r| u[(r, 0)]).collect();
        let cy = (0..d).map(|r| u[(r, 1)]).collect();
        cols.push((cx, cy));
    }
    cols
}

fn split_flat(layout: &[usize], flat: &[f64]) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(layout.len());
    let mut offset = 0;
    for &len in layout {
        out.push(flat[offset..offset + len].to_vec());
        offset += len;
    }
    out
}

/// Deterministic restart schedule: warm start (when given), the identity
/// frame, level-pair frames on parties with more than two levels, then
/// seeded random frames.
fn restart_points(
    dims: &HilbertDims,
    layout: &[usize],
    total_params: usize,
    cfg: &OptimizerConfig,
    warm: Option<&[Vec<f64>]>,
) -> Vec<Vec<f64>> {
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(cfg.restarts);
    if let Some(frame) = warm {
        starts.push(frame.concat());
    }
    if starts.len() < cfg.restarts {
        starts.push(vec![0.0; total_params]);
    }
    // Level-pair seeds matter only when some party has levels beyond {0, 1}.
    if dims.dims().iter().any(|&d| d > 2) {
        let max_pairs = dims.dims().iter().map(|&d| d * (d - 1)).max().unwrap_or(2);
        for pair_idx in 1..max_pairs {
            if starts.len() >= cfg.restarts {
                break;
            }
            let mut point = Vec::with_capacity(total_params);
            for &d in dims.dims() {
                let pairs = level_pairs(d);
                let (a, b) = pairs[pair_idx % pairs.len()];
                point.extend(level_pair_angles(d, a, b).expect("valid pair"));
            }
            debug_assert_eq!(point.len(), total_params);
            starts.push(point);
        }
    }
    let mut restart_idx = 0u64;
    while starts.len() < cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(cfg.seed ^ restart_idx));
        restart_idx += 1;
        let mut point = Vec::with_capacity(total_params);
        for (party, &len) in layout.iter().enumerate() {
            let d = dims.dim(party);
            for m in 0..d {
                for n in 0..d {
                    point.push(if m < n {
                        rng.random_range(0.0..std::f64::consts::FRAC_PI_2)
                    } else {
                        rng.random_range(0.0..std::f64::consts::TAU)
                    });
                }
            }
            debug_assert_eq!(d * d, len);
        }
        starts.push(point);
    }
    starts.truncate(cfg.restarts);
    starts
}

fn level_pairs(d: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(d * (d - 1));
    for a in 0..d {
        for b in 0..d {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

/// Result of a noise-threshold search along a state family rho(p).
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdOutcome {
    /// Sign change located: raw 2I <= 0 below p_star and > 0 above, to
    /// absolute tolerance 1e-3 in p.
    Threshold { p_star: f64 },
    /// raw 2I <= 0 over the whole interval (nothing ever detected).
    NeverPositive,
    /// raw 2I > 0 over the whole interval (detected even at p = 0).
    AlwaysPositive,
}

/// Absolute tolerance in p for [`noise_threshold`].
pub const THRESHOLD_TOL: f64 = 1e-3;

/// Bisection on p in [0, 1] for the sign change of the maximized raw 2I of
/// `family(p)`. Each midpoint re-optimizes, warm-started from the previous
/// optimum. The family is assumed monotone in detectability along p.
pub fn noise_threshold(
    family: impl Fn(f64) -> Result<DensityMatrix>,
    cfg: &OptimizerConfig,
) -> Result<ThresholdOutcome> {
    let mut warm: Option<Vec<Vec<f64>>> = None;
    let eval = |p: f64, warm: &mut Option<Vec<Vec<f64>>>| -> Result<f64> {
        let rho = family(p)?;
        let result = maximize_bound_warm(&rho, cfg, warm.as_deref())?;
        *warm = Some(result.witness.frame().to_vec());
        Ok(result.raw_2i)
    };
    let at_one = eval(1.0, &mut warm)?;
    if at_one <= 0.0 {
        return Ok(ThresholdOutcome::NeverPositive);
    }
    let at_zero = eval(0.0, &mut warm)?;
    if at_zero > 0.0 {
        return Ok(ThresholdOutcome::AlwaysPositive);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while hi - lo > THRESHOLD_TOL {
        let mid = 0.5 * (lo + hi);
        if eval(mid, &mut warm)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdOutcome::Threshold {
        p_star: 0.5 * (lo + hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory;

    fn qubits(n: usize) -> HilbertDims {
        HilbertDims::uniform(n, 2).unwrap()
    }

    #[test]
    fn canonical_witness_on_ghz() {
        let rho = factory::make_ghz(3, 2).unwrap().to_density();
        let w = WitnessVector::canonical(&qubits(3));
        let i = bound_i(&rho, &w).unwrap();
        assert!((i - 0.5).abs() < 1e-14, "I = {i}");
    }

    #[test]
    fn canonical_witness_on_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(qubits(3));
        let w = WitnessVector::canonical(&qubits(3));
        let i = bound_i(&rho, &w).unwrap();
        assert!((i + 3.0 / 8.0).abs() < 1e-14, "I = {i}");
    }

    #[test]
    fn canonical_witness_on_w_state() {
        let rho = factory::make_w(3).unwrap().to_density();
        let w = WitnessVector::canonical(&qubits(3));
        let i = bound_i(&rho, &w).unwrap();
        assert!(i.abs() < 1e-14, "I = {i}");
    }

    #[test]
    fn witness_rejects_label_collision() {
        let dims = qubits(3);
        let x = BasisLabel::all_zero(dims.clone());
        let y = BasisLabel::new(dims.clone(), vec![1, 0, 1]).unwrap();
        let frame = vec![vec![0.0; 4]; 3];
        assert!(matches!(
            WitnessVector::new(x, y, frame),
            Err(Error::UnsupportedWitness(2))
        ));
    }

    #[test]
    fn maximized_ghz_reaches_one_from_identity_start() {
        let rho = factory::make_ghz(3, 2).unwrap().to_density();
        let cfg = OptimizerConfig {
            restarts: 2,
            max_evals: 1500,
            ..Default::default()
        };
        let out = maximize_bound(&rho, &cfg).unwrap();
        assert!((out.raw_2i - 1.0).abs() < 1e-6, "raw {}", out.raw_2i);
        assert_eq!(out.lower_bound, out.raw_2i);
    }

    #[test]
    fn maximally_mixed_is_never_detected() {
        let rho = DensityMatrix::maximally_mixed(qubits(3));
        let cfg = OptimizerConfig {
            restarts: 4,
            max_evals: 800,
            ..Default::default()
        };
        let out = maximize_bound(&rho, &cfg).unwrap();
        assert!(out.raw_2i <= 1e-10, "raw {}", out.raw_2i);
        assert_eq!(out.lower_bound, 0.0);
    }

    #[test]
    fn rotated_ghz_recovered_by_search() {
        let dims = qubits(3);
        let frames = factory::random_local_frames(&dims, 11);
        let alpha = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
        let psi = factory::make_gghz(&dims, alpha, alpha, &frames).unwrap();
        let rho = psi.to_density();
        let cfg = OptimizerConfig {
            restarts: 12,
            max_evals: 3000,
            seed: 3,
            ..Default::default()
        };
        let out = maximize_bound(&rho, &cfg).unwrap();
        assert!((out.raw_2i - 1.0).abs() < 1e-4, "raw {}", out.raw_2i);
    }

    #[test]
    fn qutrit_gghz_recovered_including_level_pair_seeds() {
        // Frames on two qutrits: 9 angles per party; the level-pair restart
        // band is active here.
        let dims = HilbertDims::uniform(2, 3).unwrap();
        let frames = factory::random_local_frames(&dims, 21);
        let alpha = Complex64::new(0.6, 0.0);
        let beta = Complex64::new(0.0, 0.8);
        let psi = factory::make_gghz(&dims, alpha, beta, &frames).unwrap();
        let cfg = OptimizerConfig {
            restarts: 16,
            max_evals: 4000,
            seed: 5,
            ..Default::default()
        };
        let out = maximize_bound(&psi.to_density(), &cfg).unwrap();
        assert!((out.raw_2i - 0.96).abs() < 1e-4, "raw {}", out.raw_2i);
    }

    #[test]
    fn determinism_across_runs() {
        let rho = factory::make_ghz_w_mix(0.55, 0.2).unwrap();
        let cfg = OptimizerConfig {
            restarts: 6,
            max_evals: 600,
            seed: 9,
            ..Default::default()
        };
        let a = maximize_bound(&rho, &cfg).unwrap();
        let b = maximize_bound(&rho, &cfg).unwrap();
        assert_eq!(a.raw_2i.to_bits(), b.raw_2i.to_bits());
        assert_eq!(a.witness.frame(), b.witness.frame());
    }

    #[test]
    fn ghz3_noise_threshold_near_three_sevenths() {
        let cfg = OptimizerConfig {
            restarts: 3,
            max_evals: 800,
            ..Default::default()
        };
        let outcome = noise_threshold(
            |p| {
                let ghz = factory::make_ghz(3, 2)?.to_density();
                let mixed = DensityMatrix::maximally_mixed(qubits(3));
                let mat = ghz.matrix().lincomb(p, mixed.matrix(), 1.0 - p);
                DensityMatrix::new(qubits(3), mat)
            },
            &cfg,
        )
        .unwrap();
        match outcome {
            ThresholdOutcome::Threshold { p_star } => {
                assert!((p_star - 3.0 / 7.0).abs() < 2e-3, "p* = {p_star}");
            }
            other => panic!("expected a threshold, got {other:?}"),
        }
    }

    #[test]
    fn constant_product_family_never_positive() {
        let cfg = OptimizerConfig {
            restarts: 3,
            max_evals: 600,
            ..Default::default()
        };
        let outcome = noise_threshold(
            |_| {
                let mut amp = vec![Complex64::ZERO; 8];
                amp[0] = Complex64::ONE;
                Ok(crate::state::StateVector::new(qubits(3), amp)?.to_density())
            },
            &cfg,
        )
        .unwrap();
        assert_eq!(outcome, ThresholdOutcome::NeverPositive);
    }
}
