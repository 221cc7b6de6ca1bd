//! Vectors over a finite field, with the lexicographic order and index
//! enumeration the rest of the crate relies on.

use std::fmt;

use super::field::FieldSpec;
use super::FfError;

/// A point of `F_q^n`, coordinates stored as scalar indices.
///
/// The derived ordering compares the field first and then the coordinates
/// left to right, so same-field vectors sort lexicographically by residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVec {
    field: FieldSpec,
    coords: Vec<u64>,
}

impl FpVec {
    pub fn new(field: FieldSpec, coords: Vec<u64>) -> Result<FpVec, FfError> {
        if coords.is_empty() {
            return Err(FfError::ZeroDimension);
        }
        let q = field.q();
        if let Some(&bad) = coords.iter().find(|&&c| c >= q) {
            return Err(FfError::NonCanonicalResidue { value: bad, q });
        }
        Ok(FpVec { field, coords })
    }

    pub fn zero(field: FieldSpec, n: usize) -> FpVec {
        FpVec { field, coords: vec![0; n] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.coords.iter().position(|&c| c != 0)
    }

    fn check_domain(&self, other: &FpVec) -> Result<(), FfError> {
        if self.field != other.field || self.n() != other.n() {
            return Err(FfError::MixedDomains);
        }
        Ok(())
    }

    pub fn add(&self, other: &FpVec) -> Result<FpVec, FfError> {
        self.check_domain(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FpVec { field: self.field, coords })
    }

    pub fn sub(&self, other: &FpVec) -> Result<FpVec, FfError> {
        self.check_domain(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(FpVec { field: self.field, coords })
    }

    pub fn scale(&self, c: u64) -> FpVec {
        let coords = self.coords.iter().map(|&a| self.field.mul(a, c)).collect();
        FpVec { field: self.field, coords }
    }

    /// Standard bilinear form `Σ xᵢ·yᵢ`.
    pub fn dot(&self, other: &FpVec) -> Result<u64, FfError> {
        self.check_domain(other)?;
        let f = self.field;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    /// Rank of this vector in the lexicographic enumeration of `F_q^n`.
    pub fn index(&self) -> u64 {
        let q = self.field.q();
        self.coords.iter().fold(0, |acc, &c| acc * q + c)
    }

    /// Inverse of [`FpVec::index`].
    pub fn from_index(field: FieldSpec, n: usize, mut index: u64) -> FpVec {
        let q = field.q();
        let mut coords = vec![0; n];
        for slot in coords.iter_mut().rev() {
            *slot = index % q;
            index /= q;
        }
        FpVec { field, coords }
    }

    /// All of `F_q^n` in lexicographic order, guarded by `cap`.
    pub fn all_points(field: FieldSpec, n: usize, cap: u64) -> Result<Vec<FpVec>, FfError> {
        if n == 0 {
            return Err(FfError::ZeroDimension);
        }
        let needed = (field.q() as u128).pow(n as u32);
        if needed > cap as u128 {
            return Err(FfError::SizeLimit { needed, cap });
        }
        Ok((0..needed as u64).map(|i| FpVec::from_index(field, n, i)).collect())
    }
}

impl fmt::Display for FpVec {
    /// Whitespace-delimited residues; extension scalars print as the pair
    /// `c0 c1` of base-field residues, so a vector always prints as `r·n`
    /// numbers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p();
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match self.field.r() {
                1 => write!(f, "{c}")?,
                _ => write!(f, "{} {}", c % p, c / p)?,
            }
        }
        Ok(())
    }
}
