//! Invariant checks on seeded random inputs, plus proptest coverage of the
//! index machinery.

use num_complex::Complex64;
use proptest::prelude::*;

use gmec::factory;
use gmec::{
    bound_i, concurrence_bipartition, enumerate_bipartitions, gme_concurrence_pure, pure_bound_b,
    swap_label, BasisLabel, Bipartition, CMat, DensityMatrix, HilbertDims, OptimizerConfig,
    StateVector, WitnessVector,
};

fn dims_catalog() -> Vec<HilbertDims> {
    vec![
        HilbertDims::uniform(3, 2).unwrap(),
        HilbertDims::uniform(4, 2).unwrap(),
        HilbertDims::uniform(2, 3).unwrap(),
        HilbertDims::new(vec![2, 3, 2]).unwrap(),
    ]
}

/// Random mixture of a few random pure projectors.
fn random_density(dims: &HilbertDims, seed: u64) -> DensityMatrix {
    let components = 1 + (seed % 4) as usize;
    let weights: Vec<f64> = (0..components)
        .map(|k| 1.0 + ((seed >> k) % 5) as f64)
        .collect();
    let total: f64 = weights.iter().sum();
    let d = dims.total();
    let mut mat = CMat::zeros(d);
    for (k, w) in weights.iter().enumerate() {
        let psi = factory::random_pure(dims, seed.wrapping_mul(31).wrapping_add(k as u64));
        for r in 0..d {
            for c in 0..d {
                mat[(r, c)] += psi.amplitude(r) * psi.amplitude(c).conj() * (w / total);
            }
        }
    }
    DensityMatrix::new(dims.clone(), mat).expect("convex mixture of projectors")
}

fn random_units(dims: &HilbertDims, seed: u64) -> Vec<CMat> {
    factory::random_local_frames(dims, seed)
        .iter()
        .zip(dims.dims())
        .map(|(angles, &d)| gmec::unitary_from_params(d, angles).unwrap())
        .collect()
}

#[test]
fn partial_trace_preserves_trace_and_hermiticity() {
    for dims in dims_catalog() {
        for seed in 0..10u64 {
            let rho = random_density(&dims, seed);
            for gamma in enumerate_bipartitions(dims.n()).unwrap() {
                let red = rho.partial_trace(&gamma.side_a()).unwrap();
                let tr = red.matrix().trace();
                assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
                assert!(red.matrix().hermiticity_deviation() < 1e-12);
            }
        }
    }
}

#[test]
fn complementary_reductions_share_purity() {
    for dims in dims_catalog() {
        for seed in 0..10u64 {
            let psi = factory::random_pure(&dims, seed);
            let rho = psi.to_density();
            for gamma in enumerate_bipartitions(dims.n()).unwrap() {
                let a = rho.partial_trace(&gamma.side_a()).unwrap().purity();
                let b = rho.partial_trace(&gamma.side_b()).unwrap().purity();
                assert!((a - b).abs() < 1e-10, "purities {a} vs {b}");
            }
        }
    }
}

#[test]
fn local_unitaries_preserve_purity_and_spectrum() {
    for dims in dims_catalog() {
        for seed in 20..30u64 {
            let rho = random_density(&dims, seed);
            let units = random_units(&dims, seed);
            let rotated = rho.apply_local_unitaries(&units).unwrap();
            assert!((rho.purity() - rotated.purity()).abs() < 1e-10);
            let eigs_a = gmec::eigen::hermitian_eigenvalues(rho.matrix()).unwrap();
            let eigs_b = gmec::eigen::hermitian_eigenvalues(rotated.matrix()).unwrap();
            for (a, b) in eigs_a.iter().zip(&eigs_b) {
                assert!((a - b).abs() < 1e-10, "spectrum moved: {a} vs {b}");
            }
        }
    }
}

#[test]
fn reduction_purity_invariant_under_local_unitaries() {
    // Local rotations act on each reduction as a unitary conjugation, so
    // every reduction purity is unchanged. 20 random inputs.
    for seed in 0..20u64 {
        let dims = HilbertDims::uniform(3, 2).unwrap();
        let psi = factory::random_pure(&dims, seed);
        let units = random_units(&dims, seed + 1000);
        let rotated = psi.apply_local_unitaries(&units).unwrap();
        assert!((rotated.to_density().purity() - 1.0).abs() < 1e-10);
        for gamma in enumerate_bipartitions(3).unwrap() {
            let before = psi.reduced_density(&gamma.side_a()).unwrap().purity();
            let after = rotated.reduced_density(&gamma.side_a()).unwrap().purity();
            assert!((before - after).abs() < 1e-10);
        }
    }
}

#[test]
fn partial_transpose_involution_trace_and_hermiticity() {
    for dims in dims_catalog() {
        let rho = random_density(&dims, 5);
        for gamma in enumerate_bipartitions(dims.n()).unwrap() {
            let pt = rho.partial_transpose(&gamma).unwrap();
            // Trace and Hermiticity are preserved exactly: the map permutes
            // entries and fixes the diagonal.
            assert_eq!(pt.trace(), rho.matrix().trace());
            assert_eq!(pt.hermiticity_deviation(), rho.matrix().hermiticity_deviation());
            let twice = gmec::state::partial_transpose_mat(&dims, &pt, &gamma).unwrap();
            assert_eq!(&twice, rho.matrix(), "involution must be exact");
        }
    }
}

#[test]
fn gme_is_exhaustive_minimum() {
    for dims in dims_catalog() {
        let psi = factory::random_pure(&dims, 77);
        let report = gme_concurrence_pure(&psi).unwrap();
        let exhaustive = enumerate_bipartitions(dims.n())
            .unwrap()
            .iter()
            .map(|g| concurrence_bipartition(&psi, g).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!((report.gme_value - exhaustive).abs() < 1e-14);
    }
}

#[test]
fn gme_is_locally_unitary_invariant() {
    for dims in dims_catalog() {
        for seed in 0..8u64 {
            let psi = factory::random_pure(&dims, seed);
            let units = random_units(&dims, seed ^ 0xABCD);
            let rotated = psi.apply_local_unitaries(&units).unwrap();
            let a = gme_concurrence_pure(&psi).unwrap().gme_value;
            let b = gme_concurrence_pure(&rotated).unwrap().gme_value;
            assert!(
                (a - b).abs() < 1e-9,
                "gme moved under local unitaries: {a} vs {b}"
            );
        }
    }
}

#[test]
fn concurrence_minors_agree_with_purity_route() {
    // Dual-route check: the minors formula equals sqrt(2 (1 - Tr rho_A^2))
    // up to the purity route's own rounding.
    for dims in dims_catalog() {
        for seed in 0..10u64 {
            let psi = factory::random_pure(&dims, seed);
            for gamma in enumerate_bipartitions(dims.n()).unwrap() {
                let via_minors = concurrence_bipartition(&psi, &gamma).unwrap();
                let purity = psi.reduced_density(&gamma.side_a()).unwrap().purity();
                let via_purity = (2.0 * (1.0 - purity)).max(0.0).sqrt();
                assert!(
                    (via_minors - via_purity).abs() < 1e-7,
                    "routes disagree: {via_minors} vs {via_purity}"
                );
            }
        }
    }
}

#[test]
fn pure_bound_b_is_dominated_by_gme() {
    for dims in dims_catalog() {
        for seed in 0..10u64 {
            let psi = factory::random_pure(&dims, seed);
            let gme = gme_concurrence_pure(&psi).unwrap().gme_value;
            let x = BasisLabel::all_zero(dims.clone());
            let y = BasisLabel::all_one(dims.clone());
            let b = pure_bound_b(&psi, &x, &y).unwrap();
            assert!(b <= gme + 1e-10, "B = {b} exceeds gme {gme}");
        }
    }
}

#[test]
fn gghz_gme_equals_two_alpha_beta_in_any_frame() {
    for seed in 0..10u64 {
        let dims = HilbertDims::uniform(3, 2).unwrap();
        let t = 0.1 + 0.8 * (seed as f64 / 10.0);
        let alpha = Complex64::new(t.sqrt(), 0.0);
        let beta = Complex64::new(0.0, (1.0 - t).sqrt());
        let frames = factory::random_local_frames(&dims, seed);
        let psi = factory::make_gghz(&dims, alpha, beta, &frames).unwrap();
        let gme = gme_concurrence_pure(&psi).unwrap().gme_value;
        let expect = 2.0 * (alpha * beta).norm();
        assert!((gme - expect).abs() < 1e-9, "gme {gme} vs 2|ab| {expect}");
    }
}

#[test]
fn biseparable_pure_products_have_zero_gme() {
    // Explicit tensor products across every cut of a 4-party system.
    let dims = HilbertDims::uniform(4, 2).unwrap();
    for (s, gamma) in enumerate_bipartitions(4).unwrap().into_iter().enumerate() {
        let psi = product_across(&dims, &gamma, s as u64);
        let report = gme_concurrence_pure(&psi).unwrap();
        assert!(
            report.gme_value < 1e-9,
            "cut {gamma}: biseparable state scored {}",
            report.gme_value
        );
    }
}

/// Random pure product psi_A x psi_B across the given cut.
fn product_across(dims: &HilbertDims, gamma: &Bipartition, seed: u64) -> StateVector {
    let side = gamma.side_a();
    let other = gamma.side_b();
    let da: usize = side.iter().map(|&p| dims.dim(p)).product();
    let db: usize = other.iter().map(|&p| dims.dim(p)).product();
    let wrap = |k: usize, s: u64| {
        // Low-discrepancy-ish deterministic complex amplitudes.
        let x = ((k as f64 + 1.3) * (s as f64 + 2.7)).sin();
        let y = ((k as f64 + 0.4) * (s as f64 + 1.9)).cos();
        Complex64::new(x, 0.3 * y)
    };
    let mut amp_a: Vec<Complex64> = (0..da).map(|k| wrap(k, seed)).collect();
    let norm: f64 = amp_a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amp_a.iter_mut().for_each(|z| *z /= norm);
    let mut amp_b: Vec<Complex64> = (0..db).map(|k| wrap(k, seed + 101)).collect();
    let norm: f64 = amp_b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    amp_b.iter_mut().for_each(|z| *z /= norm);

    let mut amp = vec![Complex64::ZERO; dims.total()];
    for full in 0..dims.total() {
        let digits = dims.digits_from_flat(full);
        let mut a = 0usize;
        for &p in &side {
            a = a * dims.dim(p) + digits[p];
        }
        let mut b = 0usize;
        for &p in &other {
            b = b * dims.dim(p) + digits[p];
        }
        amp[full] = amp_a[a] * amp_b[b];
    }
    StateVector::new(dims.clone(), amp).unwrap()
}

#[test]
fn bound_dominated_by_gme_on_pure_states() {
    for dims in dims_catalog() {
        for seed in 0..6u64 {
            let psi = factory::random_pure(&dims, seed);
            let rho = psi.to_density();
            let gme = gme_concurrence_pure(&psi).unwrap().gme_value;
            for wseed in 0..4u64 {
                let frame = factory::random_local_frames(&dims, seed ^ (wseed << 8));
                let w = WitnessVector::new(
                    BasisLabel::all_zero(dims.clone()),
                    BasisLabel::all_one(dims.clone()),
                    frame,
                )
                .unwrap();
                let two_i = 2.0 * bound_i(&rho, &w).unwrap();
                assert!(two_i <= gme + 1e-9, "2I = {two_i} exceeds gme {gme}");
            }
        }
    }
}

#[test]
fn frame_equivalence_of_bound() {
    // Evaluating with a frame equals rotating the state by the inverse
    // frame and evaluating in the computational frame.
    for dims in dims_catalog() {
        let rho = random_density(&dims, 3);
        for seed in 0..5u64 {
            let frame = factory::random_local_frames(&dims, seed);
            let w = WitnessVector::new(
                BasisLabel::all_zero(dims.clone()),
                BasisLabel::all_one(dims.clone()),
                frame.clone(),
            )
            .unwrap();
            let direct = bound_i(&rho, &w).unwrap();

            let units: Vec<CMat> = frame
                .iter()
                .zip(dims.dims())
                .map(|(angles, &d)| gmec::unitary_from_params(d, angles).unwrap().adjoint())
                .collect();
            let rotated = rho.apply_local_unitaries(&units).unwrap();
            let canonical = WitnessVector::canonical(&dims);
            let via_rotation = bound_i(&rotated, &canonical).unwrap();
            assert!(
                (direct - via_rotation).abs() < 1e-12,
                "frame evaluation differs: {direct} vs {via_rotation}"
            );
        }
    }
}

#[test]
fn bound_is_convex_in_the_state() {
    let dims = HilbertDims::uniform(3, 2).unwrap();
    for seed in 0..20u64 {
        let rho1 = random_density(&dims, seed * 2 + 1);
        let rho2 = random_density(&dims, seed * 2 + 2);
        let frame = factory::random_local_frames(&dims, seed);
        let w = WitnessVector::new(
            BasisLabel::all_zero(dims.clone()),
            BasisLabel::all_one(dims.clone()),
            frame,
        )
        .unwrap();
        for &lambda in &[0.25, 0.5, 0.9] {
            let mat = rho1.matrix().lincomb(lambda, rho2.matrix(), 1.0 - lambda);
            let mixed = DensityMatrix::new(dims.clone(), mat).unwrap();
            let lhs = bound_i(&mixed, &w).unwrap();
            let rhs =
                lambda * bound_i(&rho1, &w).unwrap() + (1.0 - lambda) * bound_i(&rho2, &w).unwrap();
            assert!(lhs <= rhs + 1e-10, "convexity violated: {lhs} > {rhs}");
        }
    }
}

#[test]
fn biseparable_mixtures_are_sound_spot_check() {
    // The full 200-state suite runs in the acceptance tests.
    let dims = HilbertDims::uniform(3, 2).unwrap();
    let cfg = OptimizerConfig {
        restarts: 4,
        max_evals: 600,
        ..Default::default()
    };
    for seed in 0..10u64 {
        let rho = factory::random_biseparable(&dims, seed).unwrap();
        let out = gmec::maximize_bound(&rho, &cfg).unwrap();
        assert!(out.raw_2i <= 1e-8, "seed {seed}: raw 2I = {}", out.raw_2i);
    }
}

#[test]
fn factory_outputs_satisfy_type_invariants() {
    for dims in dims_catalog() {
        let psi = factory::random_pure(&dims, 1);
        let norm: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let rho = factory::random_biseparable(&dims, 1).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(rho.matrix().hermiticity_deviation() < 1e-12);
        assert!(rho.min_eigenvalue().unwrap() > -1e-10);
    }
    for (c1, c2) in [(0.0, 0.0), (0.3, 0.3), (0.5, 0.0), (0.0, 0.9), (1.0, 0.0)] {
        let rho = factory::make_ghz_w_mix(c1, c2).unwrap();
        let floor = (1.0 - c1 - c2) / 8.0;
        assert!(rho.min_eigenvalue().unwrap() >= floor - 1e-12);
    }
}

proptest! {
    #[test]
    fn flat_and_multi_index_roundtrip(
        dims in prop::collection::vec(2usize..4, 2..5),
        salt in 0usize..1_000_000,
    ) {
        let dims = HilbertDims::new(dims).unwrap();
        let flat = salt % dims.total();
        let digits = dims.digits_from_flat(flat);
        prop_assert_eq!(dims.flat_from_digits(&digits).unwrap(), flat);
    }

    #[test]
    fn bipartition_count_matches_formula(n in 2usize..9) {
        let cuts = enumerate_bipartitions(n).unwrap();
        prop_assert_eq!(cuts.len(), (1 << (n - 1)) - 1);
        // Canonical form: every cut contains party 0 and no duplicates.
        let mut seen = std::collections::HashSet::new();
        for cut in &cuts {
            prop_assert!(cut.contains(0));
            prop_assert!(seen.insert(cut.mask()));
        }
    }

    #[test]
    fn swap_label_involution(
        xsalt in 0usize..10_000,
        ysalt in 0usize..10_000,
        mask in 1u64..7,
    ) {
        let dims = HilbertDims::new(vec![2, 3, 2]).unwrap();
        let x = BasisLabel::new(dims.clone(), dims.digits_from_flat(xsalt % dims.total())).unwrap();
        let y = BasisLabel::new(dims.clone(), dims.digits_from_flat(ysalt % dims.total())).unwrap();
        let gamma = Bipartition::from_mask(3, mask).unwrap();
        let (a, b) = swap_label(&x, &y, &gamma).unwrap();
        let (xx, yy) = swap_label(&a, &b, &gamma).unwrap();
        prop_assert_eq!(xx, x);
        prop_assert_eq!(yy.digits(), y.digits());
    }
}
