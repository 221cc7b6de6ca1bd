//! Affine lines over finite fields in canonical form.
//!
//! A line is a direction plus the lexicographically smallest of its `q`
//! points. Directions are scaled so the first nonzero coordinate is 1,
//! which picks one representative per projective class, so structurally
//! equal values describe equal point sets and vice versa.

use std::collections::BTreeSet;

use super::field::FieldSpec;
use super::subspace::FpSubspace;
use super::vector::FpVec;
use super::FfError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpLine {
    base: FpVec,
    direction: FpVec,
}

/// Scale a nonzero vector so its first nonzero coordinate becomes 1.
pub fn normalize_direction(d: &FpVec) -> Result<FpVec, FfError> {
    let lead = d.first_nonzero().ok_or(FfError::ZeroDirection)?;
    let inv = d.field().inv(d.coords()[lead]);
    Ok(d.scale(inv))
}

impl FpLine {
    /// The line through `point` with the given direction.
    pub fn from_point_direction(point: &FpVec, direction: &FpVec) -> Result<FpLine, FfError> {
        if point.field() != direction.field() || point.n() != direction.n() {
            return Err(FfError::MixedDomains);
        }
        let direction = normalize_direction(direction)?;
        let base = FpSubspace::span(&direction).reduce(point)?;
        Ok(FpLine { base, direction })
    }

    /// The unique line through two distinct points.
    pub fn through(x: &FpVec, y: &FpVec) -> Result<FpLine, FfError> {
        if x == y {
            return Err(FfError::CoincidentPoints);
        }
        FpLine::from_point_direction(x, &y.sub(x)?)
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Lexicographically smallest point on the line.
    pub fn base(&self) -> &FpVec {
        &self.base
    }

    /// Direction with first nonzero coordinate 1.
    pub fn direction(&self) -> &FpVec {
        &self.direction
    }

    /// The `q` points of the line, sorted.
    pub fn points(&self) -> Vec<FpVec> {
        let mut points: Vec<FpVec> = self
            .field()
            .scalars()
            .map(|t| {
                self.base
                    .add(&self.direction.scale(t))
                    .expect("line pieces share a domain")
            })
            .collect();
        points.sort();
        points
    }

    pub fn contains(&self, v: &FpVec) -> Result<bool, FfError> {
        let diff = v.sub(&self.base)?;
        FpSubspace::span(&self.direction).contains(&diff)
    }

    /// Every affine line of `F_q^n`, sorted.
    pub fn all(field: FieldSpec, n: usize, cap: u64) -> Result<Vec<FpLine>, FfError> {
        let flats = super::subspace::enumerate_flats(field, n, 1, cap)?;
        let mut lines: Vec<FpLine> = flats
            .into_iter()
            .map(|flat| FpLine {
                direction: flat.subspace().basis().swap_remove(0),
                base: flat.translate().clone(),
            })
            .collect();
        lines.sort();
        Ok(lines)
    }
}

/// The distinct lines joining `x` to the points of `ys`, excluding `x`
/// itself; empty exactly when `ys ⊆ {x}`.
pub fn radial_lines(x: &FpVec, ys: &[FpVec]) -> Result<BTreeSet<FpLine>, FfError> {
    let mut lines = BTreeSet::new();
    for y in ys {
        if y != x {
            lines.insert(FpLine::through(x, y)?);
        }
    }
    Ok(lines)
}

/// Number of distinct lines through `x` meeting `ys \ {x}`, computed by
/// counting normalized difference directions instead of building lines.
/// Agrees with `radial_lines(x, ys).len()` because lines through a common
/// point are distinct exactly when their directions are.
pub fn radial_direction_count(x: &FpVec, ys: &[FpVec]) -> Result<usize, FfError> {
    let mut directions = BTreeSet::new();
    for y in ys {
        if y != x {
            directions.insert(normalize_direction(&y.sub(x)?)?);
        }
    }
    Ok(directions.len())
}
