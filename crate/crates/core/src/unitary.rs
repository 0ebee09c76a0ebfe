//! Local-unitary parametrization used for the witness-frame search.
//!
//! A d x d unitary is built from d^2 angles arranged as a row-major d x d
//! table `lambda`:
//!
//! * `lambda[m][n]` with m < n is the mixing angle of a rotation in the
//!   (m, n) plane,
//! * `lambda[n][m]` with m < n is the relative phase applied to level n
//!   together with that rotation,
//! * `lambda[l][l]` are diagonal phases applied last.
//!
//! The product runs over planes in ascending (m, n) order:
//!
//! ```text
//! U = prod_{m<n} [ P_n(lambda[n][m]) R_{mn}(lambda[m][n]) ] * prod_l P_l(lambda[l][l])
//! ```
//!
//! with P_l a single-level phase and R_{mn} the real rotation
//! [[cos t, sin t], [-sin t, cos t]] on the (m, n) plane. All-zero angles
//! give the identity, and the map covers U(d) up to an irrelevant global
//! phase.

use num_complex::Complex64;

use crate::cmatrix::CMat;
use crate::error::{Error, Result};

/// Number of angles for a d x d unitary.
pub fn param_count(d: usize) -> usize {
    d * d
}

/// Build the unitary for the given angle table (see module docs for layout).
pub fn unitary_from_params(d: usize, angles: &[f64]) -> Result<CMat> {
    if d < 1 {
        return Err(Error::InvalidArity("dimension must be at least 1".into()));
    }
    if angles.len() != d * d {
        return Err(Error::ParamCount {
            expected: d * d,
            got: angles.len(),
        });
    }
    let mut u = CMat::identity(d);
    for m in 0..d {
        for n in m + 1..d {
            let phase = angles[n * d + m];
            let theta = angles[m * d + n];
            if phase != 0.0 {
                scale_column(&mut u, n, Complex64::from_polar(1.0, phase));
            }
            if theta != 0.0 {
                rotate_columns(&mut u, m, n, theta);
            }
        }
    }
    for l in 0..d {
        let phase = angles[l * d + l];
        if phase != 0.0 {
            scale_column(&mut u, l, Complex64::from_polar(1.0, phase));
        }
    }
    Ok(u)
}

/// Angle table whose frame sends level 0 to level `a` and level 1 to level
/// `b` (up to signs). Used to seed optimizer restarts on qudit parties.
pub fn level_pair_angles(d: usize, a: usize, b: usize) -> Result<Vec<f64>> {
    if a >= d || b >= d || a == b {
        return Err(Error::InvalidArity(format!(
            "level pair ({a}, {b}) invalid for dimension {d}"
        )));
    }
    let mut angles = vec![0.0; d * d];
    let quarter = std::f64::consts::FRAC_PI_2;
    if a == 1 || b == 0 {
        angles[1] = quarter; // theta_{01}
    }
    if a >= 2 {
        angles[a] = quarter; // theta_{0a}
    }
    if b >= 2 {
        angles[d + b] = quarter; // theta_{1b}
    }
    Ok(angles)
}

/// Right-multiplication by a single-level phase: scales one column.
fn scale_column(u: &mut CMat, col: usize, factor: Complex64) {
    let d = u.dim();
    for r in 0..d {
        u[(r, col)] *= factor;
    }
}

/// Right-multiplication by the (m, n)-plane rotation.
fn rotate_columns(u: &mut CMat, m: usize, n: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    let d = u.dim();
    for r in 0..d {
        let um = u[(r, m)];
        let un = u[(r, n)];
        u[(r, m)] = um * c - un * s;
        u[(r, n)] = um * s + un * c;
    }
}
