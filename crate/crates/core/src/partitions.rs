//! Bipartitions of n parties and the label-swap map behind the bound's
//! diagonal terms.
//!
//! A bipartition {A|B} is stored as the A-side bitmask over 0-based party
//! indices. {A|B} and {B|A} are the same cut, so the canonical form always
//! contains party 0 (party 1 in the 1-based convention used for display and
//! CLI input).

use crate::error::{Error, Result};
use crate::hilbert::BasisLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    n: usize,
    mask: u64,
}

impl Bipartition {
    /// Build from 0-based party indices of one side; the canonical
    /// (party-0-containing) side is stored.
    pub fn new(n: usize, parties: &[usize]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArity(format!(
                "need at least 2 parties, got {n}"
            )));
        }
        if n > 64 {
            return Err(Error::InvalidArity(format!("party count {n} exceeds 64")));
        }
        let mut mask = 0u64;
        for &p in parties {
            if p >= n {
                return Err(Error::InvalidSubset(format!(
                    "party index {} out of range for n = {n}",
                    p + 1
                )));
            }
            mask |= 1 << p;
        }
        Self::from_mask(n, mask)
    }

    /// Build from an A-side bitmask; complements when party 0 is absent.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if mask == 0 || mask == full {
            return Err(Error::InvalidSubset(
                "bipartition side must be a nonempty proper subset".into(),
            ));
        }
        let mask = if mask & 1 == 1 { mask } else { full & !mask };
        Ok(Self { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, party: usize) -> bool {
        party < self.n && self.mask & (1 << party) != 0
    }

    /// 0-based parties of the canonical A side, ascending.
    pub fn side_a(&self) -> Vec<usize> {
        (0..self.n).filter(|&p| self.contains(p)).collect()
    }

    /// 0-based parties of the complement, ascending.
    pub fn side_b(&self) -> Vec<usize> {
        (0..self.n).filter(|&p| !self.contains(p)).collect()
    }

    /// "1,3|2,4"-style description, 1-based.
    pub fn cut_string(&self) -> String {
        let fmt = |v: Vec<usize>| {
            v.iter()
                .map(|p| (p + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{}|{}", fmt(self.side_a()), fmt(self.side_b()))
    }
}

impl std::fmt::Display for Bipartition {
    /// The canonical A side as a 1-based comma-separated list (CLI syntax).
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = self
            .side_a()
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        f.write_str(&s)
    }
}

/// All 2^(n-1) - 1 canonical bipartitions, ordered by ascending A-side mask.
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::InvalidArity(format!(
            "need at least 2 parties, got {n}"
        )));
    }
    if n > 64 {
        return Err(Error::InvalidArity(format!("party count {n} exceeds 64")));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::with_capacity((1usize << (n - 1)) - 1);
    let mut mask = 1u64;
    while mask < full {
        out.push(Bipartition { n, mask });
        mask += 2; // keep bit 0 set
    }
    Ok(out)
}

/// The pair (alpha, beta) obtained from (x, y) by exchanging the digits at
/// the parties of `gamma`: alpha takes y's digits there, beta takes x's.
pub fn swap_label(
    x: &BasisLabel,
    y: &BasisLabel,
    gamma: &Bipartition,
) -> Result<(BasisLabel, BasisLabel)> {
    if x.dims() != y.dims() {
        return Err(Error::DimsMismatch(
            "labels live on different systems".into(),
        ));
    }
    if x.dims().n() != gamma.n() {
        return Err(Error::DimsMismatch(format!(
            "bipartition is over {} parties, labels over {}",
            gamma.n(),
            x.dims().n()
        )));
    }
    let mut alpha = x.digits().to_vec();
    let mut beta = y.digits().to_vec();
    for p in 0..gamma.n() {
        if gamma.contains(p) {
            alpha[p] = y.digit(p);
            beta[p] = x.digit(p);
        }
    }
    let alpha = BasisLabel::new(x.dims().clone(), alpha)?;
    let beta = BasisLabel::new(x.dims().clone(), beta)?;
    Ok((alpha, beta))
}
