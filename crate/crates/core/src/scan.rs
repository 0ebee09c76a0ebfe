//! Grid scan of the GHZ/W/white-noise simplex.
//!
//! Rows of fixed c1 run in parallel; within a row the points run serially in
//! ascending c2 so each point can warm-start from its left neighbor's
//! witness. Per-point seeds depend only on (seed, c1, c2), so the CSV is
//! byte-identical across runs and thread counts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factory::make_ghz_w_mix;
use crate::optim::splitmix64;
use crate::ppt::ppt_classify;
use crate::witness::{maximize_bound_warm, OptimizerConfig};

/// Grid-scan parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanSpec {
    /// Grid step h, 0 < h <= 0.25, over c1, c2 >= 0 with c1 + c2 <= 1.
    pub step: f64,
    pub optimizer: OptimizerConfig,
    /// Warm-start each point from its row neighbor (on by default).
    pub warm_start: bool,
}

impl Default for ScanSpec {
    fn default() -> Self {
        Self {
            step: 0.02,
            optimizer: OptimizerConfig::default(),
            warm_start: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub c1: f64,
    pub c2: f64,
    /// Optimized clamped lower bound at this grid point.
    pub bound: f64,
    pub ppt_all: bool,
}

/// Evaluate the whole grid, rows ordered lexicographically by (c1, c2).
pub fn run_scan(spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    if !(spec.step > 0.0 && spec.step <= 0.25) {
        return Err(Error::Domain(format!(
            "grid step must be in (0, 0.25], got {}",
            spec.step
        )));
    }
    let h = spec.step;
    let n1 = (1.0 / h + 1e-9).floor() as usize;
    let rows: Vec<Vec<ScanRow>> = (0..=n1)
        .into_par_iter()
        .map(|i| -> Result<Vec<ScanRow>> {
            let c1 = i as f64 * h;
            let mut warm: Option<Vec<Vec<f64>>> = None;
            let mut row = Vec::new();
            let mut j = 0usize;
            loop {
                let c2 = j as f64 * h;
                if c1 + c2 > 1.0 + 1e-9 {
                    break;
                }
                let rho = make_ghz_w_mix(c1.min(1.0), c2.min(1.0 - c1.min(1.0)))?;
                let mut cfg = spec.optimizer.clone();
                cfg.seed = splitmix64(cfg.seed ^ ((i as u64) << 32 | j as u64));
                let result = maximize_bound_warm(&rho, &cfg, warm.as_deref())?;
                if spec.warm_start {
                    warm = Some(result.witness.frame().to_vec());
                }
                let ppt = ppt_classify(&rho)?;
                row.push(ScanRow {
                    c1,
                    c2,
                    bound: result.lower_bound,
                    ppt_all: ppt.ppt_all,
                });
                j += 1;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// CSV with header `c1,c2,bound,ppt_all`; weights at 2 decimals, bound at 6,
/// ppt_all as 0/1.
pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("c1,c2,bound,ppt_all\n");
    for r in rows {
        out.push_str(&format!(
            "{:.2},{:.2},{:.6},{}\n",
            r.c1,
            r.c2,
            r.bound,
            u8::from(r.ppt_all)
        ));
    }
    out
}
