//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal entry with a complex plane
//! rotation; sweeps repeat in a fixed (p, q) order until the off-diagonal
//! Frobenius norm drops below [`OFF_DIAGONAL_TOL`]. The fixed order makes the
//! result deterministic, which matters more than speed at the matrix sizes
//! handled here.

use num_complex::Complex64;

use crate::cmatrix::CMat;
use crate::error::{Error, Result};

/// Input must be Hermitian to this tolerance.
pub const HERMITICITY_TOL: f64 = 1e-8;

/// Convergence: off-diagonal Frobenius norm below this.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    let dev = m.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.dim();
    // Work on the Hermitian part so rounding in the input cannot drift.
    let mut a = CMat::zeros(n);
    for r in 0..n {
        for c in 0..n {
            a[(r, c)] = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
        }
    }

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) < OFF_DIAGONAL_TOL {
            let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
            eigs.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(eigs);
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue_selfadjoint(m: &CMat) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for p in 0..n - 1 {
        for q in p + 1..n {
            sum += 2.0 * a[(p, q)].norm_sqr();
        }
    }
    sum.sqrt()
}

/// Annihilate a_pq with the unitary rotation
/// J_pp = c, J_pq = -s e^{i phi}, J_qp = s e^{-i phi}, J_qq = c,
/// where phi = arg(a_pq) and tan(2 theta) = 2|a_pq| / (a_pp - a_qq).
fn rotate(a: &mut CMat, p: usize, q: usize) {
    let z = a[(p, q)];
    let abs = z.norm();
    if abs == 0.0 {
        return;
    }
    let phase = z / abs; // e^{i phi}
    let diff = a[(p, p)].re - a[(q, q)].re;
    let tau = diff / (2.0 * abs);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (tau * tau + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let sp = phase * s; // s e^{i phi}
    let spc = phase.conj() * s; // s e^{-i phi}

    let n = a.dim();
    // Left multiply by J^dag: mixes rows p and q.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c + aqj * sp;
        a[(q, j)] = -apj * spc + aqj * c;
    }
    // Right multiply by J: mixes columns p and q.
    for j in 0..n {
        let ajp = a[(j, p)];
        let ajq = a[(j, q)];
        a[(j, p)] = ajp * c + ajq * spc;
        a[(j, q)] = -ajp * sp + ajq * c;
    }
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}
