//! Exact arithmetic and enumerative geometry over `F_p^n` and `F_{p²}^n`.
//!
//! Everything here is integer arithmetic on canonical representatives:
//! scalars are residue indices, subspaces are reduced row-echelon bases,
//! lines and flats carry lexicographically minimal representatives. Equality
//! and hashing are therefore structural, and every enumeration comes out in
//! a deterministic order.

pub mod exceptional;
pub mod field;
pub mod fourier;
pub mod line;
pub mod subspace;
pub mod vector;

pub use exceptional::{
    example_fullgrid, example_subfield, falconer_ff_report, orth_exceptional_set,
    radial_bound_report, radial_exceptional_set,
};
pub use field::FieldSpec;
pub use fourier::{
    dft, dft_reference, flat_spectrum_expected, high_low_split, inverse_dft, FpFunction, Spectrum,
};
pub use line::FpLine;
pub use subspace::{enumerate_flats, enumerate_subspaces, gaussian_binomial, FpFlat, FpSubspace};
pub use vector::FpVec;

use thiserror::Error;

/// Errors from finite-field constructions and enumerations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} is unsupported; only 1 and 2 are implemented")]
    UnsupportedExtension(u32),
    #[error("operands belong to different fields or ambient dimensions")]
    MixedDomains,
    #[error("the point set is empty")]
    EmptySet,
    #[error("coordinate {value} is not a canonical residue below {q}")]
    NonCanonicalResidue { value: u64, q: u64 },
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("subspace dimension {k} is out of range for ambient dimension {n}")]
    InvalidDimension { k: usize, n: usize },
    #[error("the two points coincide; no unique line passes through them")]
    CoincidentPoints,
    #[error("the zero vector is not a direction")]
    ZeroDirection,
    #[error("enumeration needs {needed} items, above the cap {cap}")]
    SizeLimit { needed: u128, cap: u64 },
    #[error("expected {expected} values for this domain, got {got}")]
    LengthMismatch { expected: u128, got: usize },
    #[error("function values must be finite")]
    NonFiniteValue,
}
