//! Pure states and density matrices on n-partite systems, with the
//! reductions and transforms the measures are built from.

use num_complex::Complex64;

use crate::cmatrix::CMat;
use crate::eigen;
use crate::error::{Error, Result};
use crate::hilbert::HilbertDims;
use crate::partitions::Bipartition;

/// Construction tolerance for norms, traces and Hermiticity.
pub const CONSTRUCT_TOL: f64 = 1e-10;

/// Allowed negative slack on density-matrix eigenvalues.
pub const PSD_SLACK: f64 = 1e-8;

/// Splits the flat index into a (kept, rest) pair for a fixed subset of
/// parties, with a lookup table back to the full flat index.
pub(crate) struct IndexSplitter {
    kept_dim: usize,
    rest_dim: usize,
    table: Vec<usize>, // (kept, rest) -> full flat index
}

impl IndexSplitter {
    /// `keep`: 0-based party indices, must be a nonempty proper subset.
    pub(crate) fn new(dims: &HilbertDims, keep: &[usize]) -> Result<Self> {
        let n = dims.n();
        let mut in_keep = vec![false; n];
        for &p in keep {
            if p >= n {
                return Err(Error::InvalidSubset(format!(
                    "party index {} out of range for n = {n}",
                    p + 1
                )));
            }
            if in_keep[p] {
                return Err(Error::InvalidSubset(format!(
                    "party {} listed twice",
                    p + 1
                )));
            }
            in_keep[p] = true;
        }
        let k = keep.len();
        if k == 0 || k == n {
            return Err(Error::InvalidSubset(
                "kept parties must be a nonempty proper subset".into(),
            ));
        }
        let kept_dim: usize = (0..n)
            .filter(|&p| in_keep[p])
            .map(|p| dims.dim(p))
            .product();
        let rest_dim = dims.total() / kept_dim;
        let mut table = vec![0usize; dims.total()];
        for full in 0..dims.total() {
            let digits = dims.digits_from_flat(full);
            let mut kept = 0usize;
            let mut rest = 0usize;
            for p in 0..n {
                if in_keep[p] {
                    kept = kept * dims.dim(p) + digits[p];
                } else {
                    rest = rest * dims.dim(p) + digits[p];
                }
            }
            table[kept * rest_dim + rest] = full;
        }
        Ok(Self {
            kept_dim,
            rest_dim,
            table,
        })
    }

    pub(crate) fn kept_dim(&self) -> usize {
        self.kept_dim
    }

    pub(crate) fn rest_dim(&self) -> usize {
        self.rest_dim
    }

    pub(crate) fn full_index(&self, kept: usize, rest: usize) -> usize {
        self.table[kept * self.rest_dim + rest]
    }
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: HilbertDims,
    amp: Vec<Complex64>,
}

impl StateVector {
    pub fn new(dims: HilbertDims, amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() != dims.total() {
            return Err(Error::DimsMismatch(format!(
                "{} amplitudes for total dimension {}",
                amp.len(),
                dims.total()
            )));
        }
        let norm_sqr: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > CONSTRUCT_TOL {
            return Err(Error::NotNormalized((norm_sqr - 1.0).abs()));
        }
        Ok(Self { dims, amp })
    }

    pub fn dims(&self) -> &HilbertDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn amplitude(&self, flat: usize) -> Complex64 {
        self.amp[flat]
    }

    /// The projector |psi><psi| as a density matrix.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dims.total();
        let mut mat = CMat::zeros(d);
        for r in 0..d {
            for c in 0..d {
                mat[(r, c)] = self.amp[r] * self.amp[c].conj();
            }
        }
        DensityMatrix {
            dims: self.dims.clone(),
            mat,
        }
    }

    /// Reduction onto `keep` (0-based parties): Tr_rest |psi><psi|.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let split = IndexSplitter::new(&self.dims, keep)?;
        let ka = split.kept_dim();
        let kb = split.rest_dim();
        let mut mat = CMat::zeros(ka);
        for a in 0..ka {
            for a2 in 0..ka {
                let mut acc = Complex64::ZERO;
                for b in 0..kb {
                    acc +=
                        self.amp[split.full_index(a, b)] * self.amp[split.full_index(a2, b)].conj();
                }
                mat[(a, a2)] = acc;
            }
        }
        let kept_dims: Vec<usize> = {
            let mut sorted = keep.to_vec();
            sorted.sort_unstable();
            sorted.iter().map(|&p| self.dims.dim(p)).collect()
        };
        Ok(DensityMatrix {
            dims: HilbertDims::from_reduction(kept_dims),
            mat,
        })
    }

    /// (U_1 x ... x U_n) |psi>.
    pub fn apply_local_unitaries(&self, units: &[CMat]) -> Result<StateVector> {
        check_factors(&self.dims, units)?;
        let mut amp = self.amp.clone();
        for (party, u) in units.iter().enumerate() {
            apply_factor_to_amp(&mut amp, &self.dims, party, u);
        }
        Ok(StateVector {
            dims: self.dims.clone(),
            amp,
        })
    }
}

/// A Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: HilbertDims,
    mat: CMat,
}

impl DensityMatrix {
    /// Validating constructor: Hermiticity and trace to 1e-10, minimum
    /// eigenvalue above -1e-8. Internal code paths that produce density
    /// matrices by construction use `from_parts_unchecked`.
    pub fn new(dims: HilbertDims, mat: CMat) -> Result<Self> {
        if mat.dim() != dims.total() {
            return Err(Error::DimsMismatch(format!(
                "{}x{} matrix for total dimension {}",
                mat.dim(),
                mat.dim(),
                dims.total()
            )));
        }
        let herm = mat.hermiticity_deviation();
        if herm > CONSTRUCT_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > CONSTRUCT_TOL || tr.im.abs() > CONSTRUCT_TOL {
            return Err(Error::BadTrace((tr - Complex64::ONE).norm()));
        }
        let min_eig = eigen::min_eigenvalue_selfadjoint(&mat)?;
        if min_eig < -PSD_SLACK {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self { dims, mat })
    }

    pub(crate) fn from_parts_unchecked(dims: HilbertDims, mat: CMat) -> Self {
        debug_assert_eq!(mat.dim(), dims.total());
        debug_assert!(mat.hermiticity_deviation() <= 1e-9);
        Self { dims, mat }
    }

    /// 1/D on the given system.
    pub fn maximally_mixed(dims: HilbertDims) -> Self {
        let d = dims.total();
        let mut mat = CMat::zeros(d);
        for i in 0..d {
            mat[(i, i)] = Complex64::new(1.0 / d as f64, 0.0);
        }
        Self { dims, mat }
    }

    pub fn dims(&self) -> &HilbertDims {
        &self.dims
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn element(&self, r: usize, c: usize) -> Complex64 {
        self.mat[(r, c)]
    }

    /// Tr(rho^2); for Hermitian rho this is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.mat.data().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Tr_rest rho over the complement of `keep` (0-based parties).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let split = IndexSplitter::new(&self.dims, keep)?;
        let ka = split.kept_dim();
        let kb = split.rest_dim();
        let mut mat = CMat::zeros(ka);
        for a in 0..ka {
            for a2 in 0..ka {
                let mut acc = Complex64::ZERO;
                for b in 0..kb {
                    acc += self.mat[(split.full_index(a, b), split.full_index(a2, b))];
                }
                mat[(a, a2)] = acc;
            }
        }
        let kept_dims: Vec<usize> = {
            let mut sorted = keep.to_vec();
            sorted.sort_unstable();
            sorted.iter().map(|&p| self.dims.dim(p)).collect()
        };
        Ok(DensityMatrix {
            dims: HilbertDims::from_reduction(kept_dims),
            mat,
        })
    }

    /// Transpose the indices of the parties in `gamma`. The result is
    /// Hermitian but in general not positive, so it is returned as a bare
    /// matrix.
    pub fn partial_transpose(&self, gamma: &Bipartition) -> Result<CMat> {
        partial_transpose_mat(&self.dims, &self.mat, gamma)
    }

    /// Smallest eigenvalue of rho itself.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        eigen::min_eigenvalue_selfadjoint(&self.mat)
    }

    /// (U_1 x ... x U_n) rho (U_1 x ... x U_n)^dag.
    pub fn apply_local_unitaries(&self, units: &[CMat]) -> Result<DensityMatrix> {
        check_factors(&self.dims, units)?;
        let mut mat = self.mat.clone();
        for (party, u) in units.iter().enumerate() {
            apply_factor_rows(&mut mat, &self.dims, party, u);
        }
        for (party, u) in units.iter().enumerate() {
            apply_factor_cols(&mut mat, &self.dims, party, u);
        }
        Ok(DensityMatrix {
            dims: self.dims.clone(),
            mat,
        })
    }
}

/// Partial transpose of any D x D matrix over the parties of `gamma`; a
/// pure entry permutation, so applying it twice is exactly the identity.
pub fn partial_transpose_mat(dims: &HilbertDims, mat: &CMat, gamma: &Bipartition) -> Result<CMat> {
    if gamma.n() != dims.n() {
        return Err(Error::DimsMismatch(format!(
            "bipartition over {} parties, state over {}",
            gamma.n(),
            dims.n()
        )));
    }
    if mat.dim() != dims.total() {
        return Err(Error::DimsMismatch(format!(
            "{}x{} matrix for total dimension {}",
            mat.dim(),
            mat.dim(),
            dims.total()
        )));
    }
    let d = dims.total();
    let mut out = CMat::zeros(d);
    for r in 0..d {
        let rd = dims.digits_from_flat(r);
        for c in 0..d {
            let cd = dims.digits_from_flat(c);
            let mut rd2 = rd.clone();
            let mut cd2 = cd.clone();
            for p in 0..dims.n() {
                if gamma.contains(p) {
                    rd2[p] = cd[p];
                    cd2[p] = rd[p];
                }
            }
            let r2 = dims.flat_from_digits(&rd2).expect("valid digits");
            let c2 = dims.flat_from_digits(&cd2).expect("valid digits");
            out[(r2, c2)] = mat[(r, c)];
        }
    }
    Ok(out)
}

fn check_factors(dims: &HilbertDims, units: &[CMat]) -> Result<()> {
    if units.len() != dims.n() {
        return Err(Error::DimsMismatch(format!(
            "{} unitary factors for {} parties",
            units.len(),
            dims.n()
        )));
    }
    for (party, u) in units.iter().enumerate() {
        if u.dim() != dims.dim(party) {
            return Err(Error::DimsMismatch(format!(
                "factor {} is {}x{}, party dimension is {}",
                party + 1,
                u.dim(),
                u.dim(),
                dims.dim(party)
            )));
        }
        let dev = u.unitarity_deviation();
        if dev > CONSTRUCT_TOL {
            return Err(Error::NotUnitary(dev));
        }
    }
    Ok(())
}

/// In-place contraction of `u` over the given party axis of an amplitude
/// vector.
fn apply_factor_to_amp(amp: &mut [Complex64], dims: &HilbertDims, party: usize, u: &CMat) {
    let d = dims.dim(party);
    let stride: usize = dims.dims()[party + 1..].iter().product();
    let block = d * stride;
    let mut scratch = vec![Complex64::ZERO; d];
    for base in (0..amp.len()).step_by(block) {
        for inner in 0..stride {
            for (i, s) in scratch.iter_mut().enumerate() {
                *s = amp[base + i * stride + inner];
            }
            for j in 0..d {
                let mut acc = Complex64::ZERO;
                for (i, s) in scratch.iter().enumerate() {
                    acc += u[(j, i)] * s;
                }
                amp[base + j * stride + inner] = acc;
            }
        }
    }
}

/// rho <- (u on `party`) rho: contract u over the row index.
fn apply_factor_rows(mat: &mut CMat, dims: &HilbertDims, party: usize, u: &CMat) {
    let total = dims.total();
    let d = dims.dim(party);
    let stride: usize = dims.dims()[party + 1..].iter().product();
    let block = d * stride;
    let mut scratch = vec![Complex64::ZERO; d];
    for col in 0..total {
        for base in (0..total).step_by(block) {
            for inner in 0..stride {
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = mat[(base + i * stride + inner, col)];
                }
                for j in 0..d {
                    let mut acc = Complex64::ZERO;
                    for (i, s) in scratch.iter().enumerate() {
                        acc += u[(j, i)] * s;
                    }
                    mat[(base + j * stride + inner, col)] = acc;
                }
            }
        }
    }
}

/// rho <- rho (u on `party`)^dag: contract conj(u) over the column index.
fn apply_factor_cols(mat: &mut CMat, dims: &HilbertDims, party: usize, u: &CMat) {
    let total = dims.total();
    let d = dims.dim(party);
    let stride: usize = dims.dims()[party + 1..].iter().product();
    let block = d * stride;
    let mut scratch = vec![Complex64::ZERO; d];
    for row in 0..total {
        for base in (0..total).step_by(block) {
            for inner in 0..stride {
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = mat[(row, base + i * stride + inner)];
                }
                for j in 0..d {
                    let mut acc = Complex64::ZERO;
                    for (i, s) in scratch.iter().enumerate() {
                        acc += u[(j, i)].conj() * s;
                    }
                    mat[(row, base + j * stride + inner)] = acc;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn qubits(n: usize) -> HilbertDims {
        HilbertDims::uniform(n, 2).unwrap()
    }

    fn ghz3() -> StateVector {
        let mut amp = vec![Complex64::ZERO; 8];
        amp[0] = re(1.0 / 2f64.sqrt());
        amp[7] = re(1.0 / 2f64.sqrt());
        StateVector::new(qubits(3), amp).unwrap()
    }

    fn w3() -> StateVector {
        let mut amp = vec![Complex64::ZERO; 8];
        for i in [1, 2, 4] {
            amp[i] = re(1.0 / 3f64.sqrt());
        }
        StateVector::new(qubits(3), amp).unwrap()
    }

    fn bell2() -> StateVector {
        let s = 1.0 / 2f64.sqrt();
        StateVector::new(qubits(2), vec![re(s), re(0.0), re(0.0), re(s)]).unwrap()
    }

    #[test]
    fn outer_product_basis_state() {
        let mut amp = vec![Complex64::ZERO; 4];
        amp[0] = re(1.0);
        let rho = StateVector::new(qubits(2), amp).unwrap().to_density();
        assert_eq!(rho.element(0, 0), re(1.0));
        for r in 0..4 {
            for c in 0..4 {
                if (r, c) != (0, 0) {
                    assert_eq!(rho.element(r, c), Complex64::ZERO);
                }
            }
        }
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn outer_product_ghz() {
        let rho = ghz3().to_density();
        for (r, c) in [(0, 0), (0, 7), (7, 0), (7, 7)] {
            assert!((rho.element(r, c) - re(0.5)).norm() < 1e-12);
        }
        let sum: f64 = (0..8)
            .flat_map(|r| (0..8).map(move |c| (r, c)))
            .map(|(r, c)| rho.element(r, c).norm())
            .sum();
        assert!(
            (sum - 2.0).abs() < 1e-12,
            "only the four corner entries are set"
        );
    }

    #[test]
    fn outer_product_w_block() {
        let rho = w3().to_density();
        for r in [1, 2, 4] {
            for c in [1, 2, 4] {
                assert!((rho.element(r, c) - re(1.0 / 3.0)).norm() < 1e-12);
            }
        }
        assert_eq!(rho.element(0, 0), Complex64::ZERO);
    }

    #[test]
    fn non_normalized_rejected() {
        let amp = vec![re(1.0), re(1.0), re(0.0), re(0.0)];
        assert!(matches!(
            StateVector::new(qubits(2), amp),
            Err(Error::NotNormalized(_))
        ));
    }

    // Independent oracle for partial traces: explicit summation over the
    // traced digits, written directly against the binary expansion rather
    // than through IndexSplitter.
    fn qubit_reduction_oracle(rho: &DensityMatrix, keep: &[usize]) -> Vec<Vec<Complex64>> {
        let n = rho.dims().n();
        let ka = 1usize << keep.len();
        let mut out = vec![vec![Complex64::ZERO; ka]; ka];
        let bit = |flat: usize, p: usize| (flat >> (n - 1 - p)) & 1;
        for r in 0..(1 << n) {
            for c in 0..(1 << n) {
                let traced_match = (0..n)
                    .filter(|p| !keep.contains(p))
                    .all(|p| bit(r, p) == bit(c, p));
                if !traced_match {
                    continue;
                }
                let mut a = 0;
                let mut a2 = 0;
                for &p in keep {
                    a = a * 2 + bit(r, p);
                    a2 = a2 * 2 + bit(c, p);
                }
                out[a][a2] += rho.element(r, c);
            }
        }
        out
    }

    #[test]
    fn ghz_reduction_is_maximally_mixed() {
        let rho = ghz3().to_density();
        let red = rho.partial_trace(&[0]).unwrap();
        assert!((red.element(0, 0) - re(0.5)).norm() < 1e-12);
        assert!((red.element(1, 1) - re(0.5)).norm() < 1e-12);
        assert!(red.element(0, 1).norm() < 1e-12);
        let oracle = qubit_reduction_oracle(&rho, &[0]);
        for r in 0..2 {
            for c in 0..2 {
                assert!((red.element(r, c) - oracle[r][c]).norm() < 1e-12);
            }
        }
        // GHZ reduced to party 1 has purity 1/2.
        assert!((red.purity() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn product_state_reduces_to_factor() {
        // |0> x |+>
        let s = 1.0 / 2f64.sqrt();
        let psi = StateVector::new(qubits(2), vec![re(s), re(s), re(0.0), re(0.0)]).unwrap();
        let red = psi.to_density().partial_trace(&[0]).unwrap();
        assert!((red.element(0, 0) - re(1.0)).norm() < 1e-12);
        assert!(red.element(1, 1).norm() < 1e-12);
    }

    #[test]
    fn bell_reduction_second_party() {
        let rho = bell2().to_density();
        let red = rho.partial_trace(&[1]).unwrap();
        let oracle = qubit_reduction_oracle(&rho, &[1]);
        for r in 0..2 {
            for c in 0..2 {
                assert!((red.element(r, c) - oracle[r][c]).norm() < 1e-12);
            }
        }
        assert!((red.element(0, 0) - re(0.5)).norm() < 1e-12);
        assert!((red.element(1, 1) - re(0.5)).norm() < 1e-12);
    }

    #[test]
    fn reduced_density_matches_partial_trace_of_projector() {
        let psi = w3();
        let via_projector = psi.to_density().partial_trace(&[0, 2]).unwrap();
        let direct = psi.reduced_density(&[0, 2]).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert!((via_projector.element(r, c) - direct.element(r, c)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_or_full_keep_rejected() {
        let rho = ghz3().to_density();
        assert!(rho.partial_trace(&[]).is_err());
        assert!(rho.partial_trace(&[0, 1, 2]).is_err());
    }

    #[test]
    fn purity_of_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(qubits(3));
        assert!((rho.purity() - 0.125).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_fixes_diagonal_states() {
        let rho = DensityMatrix::maximally_mixed(qubits(3));
        for gamma in crate::partitions::enumerate_bipartitions(3).unwrap() {
            let pt = rho.partial_transpose(&gamma).unwrap();
            assert_eq!(pt, *rho.matrix());
        }
    }

    #[test]
    fn bell_pair_partial_transpose_negative() {
        // Bell x |0><0| on 3 qubits, transpose on party 1.
        let s = 1.0 / 2f64.sqrt();
        let mut amp = vec![Complex64::ZERO; 8];
        // Bell on parties 1,2 (|00>+|11>)/sqrt2, party 3 in |0>:
        // labels 000 and 110 -> flat 0 and 6.
        amp[0] = re(s);
        amp[6] = re(s);
        let rho = StateVector::new(qubits(3), amp).unwrap().to_density();
        let gamma = Bipartition::new(3, &[0]).unwrap();
        let pt = rho.partial_transpose(&gamma).unwrap();
        let min = eigen::min_eigenvalue_selfadjoint(&pt).unwrap();
        assert!((min + 0.5).abs() < 1e-9, "min eigenvalue {min}");
    }

    #[test]
    fn product_split_partial_transpose_stays_positive() {
        // rho_A x rho_B with the cut matching the split: transposing one
        // factor of a product state keeps it a state.
        let plus = StateVector::new(qubits(2), vec![re(0.5); 4]).unwrap();
        let rho = plus.to_density();
        let gamma = Bipartition::new(2, &[0]).unwrap();
        let pt = rho.partial_transpose(&gamma).unwrap();
        let min = eigen::min_eigenvalue_selfadjoint(&pt).unwrap();
        assert!(min >= -1e-12);
    }

    #[test]
    fn partial_transpose_is_involution_bitwise() {
        let rho = w3().to_density();
        for gamma in crate::partitions::enumerate_bipartitions(3).unwrap() {
            let twice = DensityMatrix::from_parts_unchecked(
                rho.dims().clone(),
                rho.partial_transpose(&gamma).unwrap(),
            )
            .partial_transpose(&gamma)
            .unwrap();
            assert_eq!(twice, *rho.matrix());
        }
    }

    #[test]
    fn partial_transpose_rejects_wrong_party_count() {
        let rho = ghz3().to_density();
        let gamma = Bipartition::new(2, &[0]).unwrap();
        assert!(matches!(
            rho.partial_transpose(&gamma),
            Err(Error::DimsMismatch(_))
        ));
    }

    #[test]
    fn identity_factors_leave_state_unchanged() {
        let psi = ghz3();
        let units = vec![CMat::identity(2); 3];
        let out = psi.apply_local_unitaries(&units).unwrap();
        assert_eq!(out.amplitudes(), psi.amplitudes());
        let rho = psi.to_density();
        let out = rho.apply_local_unitaries(&units).unwrap();
        assert_eq!(out.matrix(), rho.matrix());
    }

    #[test]
    fn pauli_x_on_first_party_permutes_ghz() {
        let psi = ghz3();
        let mut x = CMat::zeros(2);
        x[(0, 1)] = re(1.0);
        x[(1, 0)] = re(1.0);
        let units = vec![x, CMat::identity(2), CMat::identity(2)];
        let out = psi.apply_local_unitaries(&units).unwrap();
        // (|100> + |011>)/sqrt2: flat 4 and 3.
        let s = 1.0 / 2f64.sqrt();
        assert!((out.amplitude(4) - re(s)).norm() < 1e-12);
        assert!((out.amplitude(3) - re(s)).norm() < 1e-12);
        assert!(out.amplitude(0).norm() < 1e-12);
        assert!(out.amplitude(7).norm() < 1e-12);
    }

    #[test]
    fn non_unitary_factor_rejected() {
        let psi = bell2();
        let mut m = CMat::identity(2);
        m[(0, 0)] = re(2.0);
        assert!(matches!(
            psi.apply_local_unitaries(&[m, CMat::identity(2)]),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn factor_dimension_mismatch_rejected() {
        let psi = bell2();
        assert!(matches!(
            psi.apply_local_unitaries(&[CMat::identity(3), CMat::identity(2)]),
            Err(Error::DimsMismatch(_))
        ));
    }

    #[test]
    fn density_validation_catches_bad_trace_and_negativity() {
        let dims = qubits(2);
        let mut m = CMat::zeros(4);
        m[(0, 0)] = re(0.5);
        assert!(matches!(
            DensityMatrix::new(dims.clone(), m),
            Err(Error::BadTrace(_))
        ));
        let mut m = CMat::zeros(4);
        m[(0, 0)] = re(1.5);
        m[(1, 1)] = re(-0.5);
        assert!(matches!(
            DensityMatrix::new(dims, m),
            Err(Error::NotPositive(_))
        ));
    }
}
