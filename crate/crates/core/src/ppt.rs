//! PPT/NPT classification per bipartition.

use rayon::prelude::*;

use crate::eigen::min_eigenvalue_selfadjoint;
use crate::error::Result;
use crate::partitions::{enumerate_bipartitions, Bipartition};
use crate::state::DensityMatrix;

/// Eigensolver noise absorbed into the PPT side; states on the boundary
/// count as PPT.
pub const PPT_SLACK: f64 = 1e-9;

/// Minimum partial-transpose eigenvalue per cut, and whether every cut is
/// positive.
#[derive(Debug, Clone)]
pub struct PptReport {
    /// (cut, min eigenvalue of rho^{T_cut}) in canonical enumeration order.
    pub per_bipartition: Vec<(Bipartition, f64)>,
    /// True iff every minimum eigenvalue is >= -[`PPT_SLACK`].
    pub ppt_all: bool,
}

/// Classify `rho` as PPT or NPT for every canonical bipartition.
pub fn ppt_classify(rho: &DensityMatrix) -> Result<PptReport> {
    let cuts = enumerate_bipartitions(rho.dims().n())?;
    let per_bipartition: Vec<(Bipartition, f64)> = cuts
        .into_par_iter()
        .map(|gamma| -> Result<(Bipartition, f64)> {
            let pt = rho.partial_transpose(&gamma)?;
            Ok((gamma, min_eigenvalue_selfadjoint(&pt)?))
        })
        .collect::<Result<_>>()?;
    let ppt_all = per_bipartition.iter().all(|&(_, e)| e >= -PPT_SLACK);
    Ok(PptReport {
        per_bipartition,
        ppt_all,
    })
}
