//! Quantification of genuine multipartite entanglement for n-partite qudit
//! systems.
//!
//! The library computes the pure-state gme-concurrence (the minimum
//! bipartition concurrence over all cuts), a computable lower bound on it for
//! arbitrary density matrices obtained by maximizing a biseparability
//! inequality over product witnesses, PPT classification per bipartition,
//! white-noise thresholds, and the GHZ/W-mixture grid scan behind the
//! `scan` CLI subcommand.

pub mod cli;
pub mod cmatrix;
pub mod eigen;
pub mod error;
pub mod factory;
pub mod hilbert;
pub mod measure;
pub mod optim;
pub mod partitions;
pub mod ppt;
pub mod scan;
pub mod state;
pub mod statefile;
pub mod unitary;
pub mod witness;

pub use cmatrix::CMat;
pub use error::{Error, Result};
pub use hilbert::{BasisLabel, HilbertDims};
pub use measure::{
    concurrence_bipartition, gghz_concurrence, gme_concurrence_pure, pure_bound_b,
    PureMeasureReport,
};
pub use partitions::{enumerate_bipartitions, swap_label, Bipartition};
pub use ppt::{ppt_classify, PptReport};
pub use state::{DensityMatrix, StateVector};
pub use statefile::LoadedState;
pub use unitary::unitary_from_params;
pub use witness::{
    bound_i, maximize_bound, noise_threshold, BoundResult, OptimizerConfig, ThresholdOutcome,
    WitnessVector,
};
