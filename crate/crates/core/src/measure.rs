//! Pure-state entanglement measures: per-cut concurrence, its minimum over
//! all bipartitions (the gme-concurrence), and the algebraic coefficient
//! bound B.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::BasisLabel;
use crate::partitions::{enumerate_bipartitions, swap_label, Bipartition};
use crate::state::{IndexSplitter, StateVector};

/// Per-bipartition concurrences of a pure state together with their minimum.
#[derive(Debug, Clone)]
pub struct PureMeasureReport {
    /// (cut, concurrence) in canonical enumeration order.
    pub per_bipartition: Vec<(Bipartition, f64)>,
    /// Minimum concurrence over all cuts.
    pub gme_value: f64,
    /// First cut attaining the minimum.
    pub minimizing_bipartition: Bipartition,
}

/// Concurrence sqrt(2 (1 - Tr rho_A^2)) of `psi` across the cut `gamma`,
/// with rho_A the reduction onto the canonical A side. The complementary
/// reduction has the same spectrum, so the side choice does not matter.
///
/// Evaluated as 2 sqrt(sum of squared 2x2 minors) of the amplitude matrix
/// across the cut, which is the same quantity but stays exactly zero on
/// product states instead of picking up sqrt(rounding) noise from the
/// purity route.
pub fn concurrence_bipartition(psi: &StateVector, gamma: &Bipartition) -> Result<f64> {
    if gamma.n() != psi.dims().n() {
        return Err(Error::DimsMismatch(format!(
            "bipartition over {} parties, state over {}",
            gamma.n(),
            psi.dims().n()
        )));
    }
    let split = IndexSplitter::new(psi.dims(), &gamma.side_a())?;
    let da = split.kept_dim();
    let db = split.rest_dim();
    let m = |a: usize, b: usize| psi.amplitude(split.full_index(a, b));
    let mut sum = 0.0;
    for a in 0..da {
        for a2 in a + 1..da {
            for b in 0..db {
                for b2 in b + 1..db {
                    sum += (m(a, b) * m(a2, b2) - m(a, b2) * m(a2, b)).norm_sqr();
                }
            }
        }
    }
    Ok(2.0 * sum.sqrt())
}

/// Minimum of [`concurrence_bipartition`] over all canonical cuts.
pub fn gme_concurrence_pure(psi: &StateVector) -> Result<PureMeasureReport> {
    let cuts = enumerate_bipartitions(psi.dims().n())?;
    let mut per_bipartition = Vec::with_capacity(cuts.len());
    for gamma in cuts {
        let c = concurrence_bipartition(psi, &gamma)?;
        per_bipartition.push((gamma, c));
    }
    let (minimizing_bipartition, gme_value) = per_bipartition
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite concurrence"))
        .map(|(g, v)| (*g, *v))
        .expect("at least one bipartition");
    Ok(PureMeasureReport {
        per_bipartition,
        gme_value,
        minimizing_bipartition,
    })
}

/// Coefficient bound B = 2|c_x c_y| - 2 sum_gamma |c_alpha(gamma) c_beta(gamma)|
/// on the gme-concurrence of a pure state, read in the computational frame.
/// May be negative. The labels must differ on every party.
pub fn pure_bound_b(psi: &StateVector, x: &BasisLabel, y: &BasisLabel) -> Result<f64> {
    if x.dims() != psi.dims() || y.dims() != psi.dims() {
        return Err(Error::DimsMismatch(
            "labels live on a different system".into(),
        ));
    }
    check_labels_disjoint(x, y)?;
    let amp = |label: &BasisLabel| psi.amplitude(label.flat_index());
    let leading = 2.0 * (amp(x) * amp(y)).norm();
    let mut cross = 0.0;
    for gamma in enumerate_bipartitions(psi.dims().n())? {
        let (alpha, beta) = swap_label(x, y, &gamma)?;
        cross += (amp(&alpha) * amp(&beta)).norm();
    }
    Ok(leading - 2.0 * cross)
}

/// Concurrence 2|alpha beta| of any generalized GHZ state
/// alpha |0'...0'> + beta |1'...1'>.
pub fn gghz_concurrence(alpha: Complex64, beta: Complex64) -> Result<f64> {
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized((norm_sqr - 1.0).abs()));
    }
    Ok(2.0 * (alpha * beta).norm())
}

pub(crate) fn check_labels_disjoint(x: &BasisLabel, y: &BasisLabel) -> Result<()> {
    for p in 0..x.dims().n() {
        if x.digit(p) == y.digit(p) {
            return Err(Error::UnsupportedWitness(p + 1));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertDims;

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

    /// |0> x (|00>+|11>)/sqrt2 on parties (2,3).
    fn zero_bell() -> StateVector {
        let s = 1.0 / 2f64.sqrt();
        let mut amp = vec![Complex64::ZERO; 8];
        amp[0b000] = re(s);
        amp[0b011] = re(s);
        StateVector::new(qubits(3), amp).unwrap()
    }

    fn label(dims: &HilbertDims, digits: &[usize]) -> BasisLabel {
        BasisLabel::new(dims.clone(), digits.to_vec()).unwrap()
    }

    #[test]
    fn ghz_single_party_cut_is_one() {
        let gamma = Bipartition::new(3, &[0]).unwrap();
        let c = concurrence_bipartition(&ghz3(), &gamma).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_cut_gives_zero() {
        let gamma = Bipartition::new(3, &[0]).unwrap();
        let c = concurrence_bipartition(&zero_bell(), &gamma).unwrap();
        assert!(c.abs() < 1e-12);
    }

    #[test]
    fn entangled_cut_of_partly_product_state() {
        // Cut separating party 2 from {1,3}: purity of the reduction is 1/2.
        let gamma = Bipartition::new(3, &[1]).unwrap();
        let reduced = zero_bell().reduced_density(&gamma.side_a()).unwrap();
        assert!((reduced.purity() - 0.5).abs() < 1e-12);
        let c = concurrence_bipartition(&zero_bell(), &gamma).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gme_of_ghz_is_one() {
        let report = gme_concurrence_pure(&ghz3()).unwrap();
        assert!((report.gme_value - 1.0).abs() < 1e-12);
        assert_eq!(report.per_bipartition.len(), 3);
    }

    #[test]
    fn gme_of_w_matches_reduction_oracle() {
        // Any single-party reduction of W3 is diag(2/3, 1/3): purity 5/9,
        // concurrence sqrt(8/9) = 2 sqrt(2) / 3.
        let red = w3().reduced_density(&[0]).unwrap();
        assert!((red.element(0, 0).re - 2.0 / 3.0).abs() < 1e-12);
        assert!((red.element(1, 1).re - 1.0 / 3.0).abs() < 1e-12);
        assert!((red.purity() - 5.0 / 9.0).abs() < 1e-12);
        let report = gme_concurrence_pure(&w3()).unwrap();
        let expect = (8.0f64 / 9.0).sqrt();
        assert!((report.gme_value - expect).abs() < 1e-12);
        assert!((report.gme_value - 0.942809).abs() < 1e-6);
    }

    #[test]
    fn biseparable_pure_state_has_zero_gme() {
        let report = gme_concurrence_pure(&zero_bell()).unwrap();
        assert!(report.gme_value < 1e-12);
        assert_eq!(report.minimizing_bipartition.side_a(), vec![0]);
    }

    #[test]
    fn bound_b_ghz() {
        let dims = qubits(3);
        let x = label(&dims, &[0, 0, 0]);
        let y = label(&dims, &[1, 1, 1]);
        let b = pure_bound_b(&ghz3(), &x, &y).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bound_b_w_and_basis_state_vanish() {
        let dims = qubits(3);
        let x = label(&dims, &[0, 0, 0]);
        let y = label(&dims, &[1, 1, 1]);
        assert!(pure_bound_b(&w3(), &x, &y).unwrap().abs() < 1e-12);
        let mut amp = vec![Complex64::ZERO; 8];
        amp[0] = re(1.0);
        let zero = StateVector::new(qubits(3), amp).unwrap();
        assert!(pure_bound_b(&zero, &x, &y).unwrap().abs() < 1e-12);
    }

    #[test]
    fn bound_b_rejects_label_collision() {
        let dims = qubits(3);
        let x = label(&dims, &[0, 0, 0]);
        let y = label(&dims, &[1, 0, 1]);
        assert!(matches!(
            pure_bound_b(&ghz3(), &x, &y),
            Err(Error::UnsupportedWitness(2))
        ));
    }

    #[test]
    fn gghz_values() {
        let s = 1.0 / 2f64.sqrt();
        assert!((gghz_concurrence(re(s), re(s)).unwrap() - 1.0).abs() < 1e-12);
        assert!(gghz_concurrence(re(1.0), re(0.0)).unwrap().abs() < 1e-15);
        assert!((gghz_concurrence(re(0.6), re(0.8)).unwrap() - 0.96).abs() < 1e-12);
        assert!(gghz_concurrence(re(1.0), re(1.0)).is_err());
    }
}
