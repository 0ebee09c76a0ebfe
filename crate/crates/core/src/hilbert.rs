//! Tensor-factor structure of an n-partite Hilbert space and basis-label
//! indexing.
//!
//! Flat indices are row-major with party 1 most significant, so for qubit
//! systems the flat index of a label is just its binary reading. All public
//! constructors validate; a valid value can be indexed without bounds panics.

use crate::error::{Error, Result};

/// Per-party dimensions (d_1, ..., d_n) of an n-partite system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertDims {
    dims: Vec<usize>,
}

impl HilbertDims {
    /// At least two parties, every local dimension at least 2.
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidArity(format!(
                "need at least 2 parties, got {}",
                dims.len()
            )));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidArity(format!("local dimension {d} < 2")));
        }
        Ok(Self { dims })
    }

    /// Uniform n-qudit system.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    /// Reductions may keep a single party; only internal code builds those.
    pub(crate) fn from_reduction(dims: Vec<usize>) -> Self {
        debug_assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 2));
        Self { dims }
    }

    /// Number of parties.
    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension D = prod d_i.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, party: usize) -> usize {
        self.dims[party]
    }

    /// True when every party is a qubit.
    pub fn all_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Row-major flat index of per-party digits (party 1 most significant).
    pub fn flat_from_digits(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.n() {
            return Err(Error::DimsMismatch(format!(
                "label has {} digits, system has {} parties",
                digits.len(),
                self.n()
            )));
        }
        let mut flat = 0;
        for (party, (&digit, &dim)) in digits.iter().zip(&self.dims).enumerate() {
            if digit >= dim {
                return Err(Error::InvalidLabel { party, digit, dim });
            }
            flat = flat * dim + digit;
        }
        Ok(flat)
    }

    /// Inverse of [`flat_from_digits`](Self::flat_from_digits) on [0, D).
    pub fn digits_from_flat(&self, mut flat: usize) -> Vec<usize> {
        debug_assert!(flat < self.total());
        let mut digits = vec![0; self.n()];
        for (slot, &dim) in digits.iter_mut().zip(&self.dims).rev() {
            *slot = flat % dim;
            flat /= dim;
        }
        digits
    }
}

/// A computational-basis label: one digit per party.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisLabel {
    dims: HilbertDims,
    digits: Vec<usize>,
}

impl BasisLabel {
    pub fn new(dims: HilbertDims, digits: Vec<usize>) -> Result<Self> {
        dims.flat_from_digits(&digits)?;
        Ok(Self { dims, digits })
    }

    /// Label 0...0.
    pub fn all_zero(dims: HilbertDims) -> Self {
        let digits = vec![0; dims.n()];
        Self { dims, digits }
    }

    /// Label 1...1 (level 1 on every party).
    pub fn all_one(dims: HilbertDims) -> Self {
        let digits = vec![1; dims.n()];
        Self { dims, digits }
    }

    pub fn dims(&self) -> &HilbertDims {
        &self.dims
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, party: usize) -> usize {
        self.digits[party]
    }

    /// Row-major flat index of this label.
    pub fn flat_index(&self) -> usize {
        // Digits were validated at construction.
        self.dims
            .flat_from_digits(&self.digits)
            .expect("valid label")
    }
}

impl std::fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
