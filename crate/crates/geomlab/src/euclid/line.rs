//! Affine lines of `Q^n` in a canonical, order-friendly form.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::point::{dot, is_zero_vec, normalize_projective, scale, RatPoint};
use super::GeomError;

/// An affine line, stored canonically.
///
/// The direction is scaled so its first nonzero coordinate is 1, picking one
/// representative per parallel class. The base is the foot of the
/// perpendicular from the origin, the unique point of the line whose
/// coordinate vector is orthogonal to the direction; it is rational because
/// it solves a rational linear system. Two lines are equal as point sets
/// exactly when both fields agree, so the derived equality, ordering, and
/// hashing are geometric.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatLine {
    direction: Vec<BigRational>,
    base: RatPoint,
}

impl RatLine {
    /// The line through `p` with direction `d`.
    pub fn from_point_direction(p: &RatPoint, d: &[BigRational]) -> Result<RatLine, GeomError> {
        if p.n() != d.len() {
            return Err(GeomError::MixedDimensions);
        }
        let direction = normalize_projective(d).ok_or(GeomError::ZeroDirection)?;
        let t = dot(p.coords(), &direction) / dot(&direction, &direction);
        let base = p
            .coords()
            .iter()
            .zip(scale(&direction, &t))
            .map(|(c, s)| c - s)
            .collect();
        Ok(RatLine {
            direction,
            base: RatPoint::new(base).expect("foot keeps the ambient dimension"),
        })
    }

    /// The line through two distinct points.
    pub fn through(p: &RatPoint, q: &RatPoint) -> Result<RatLine, GeomError> {
        let d = p.displacement_to(q)?;
        if is_zero_vec(&d) {
            return Err(GeomError::CoincidentPoints);
        }
        RatLine::from_point_direction(p, &d)
    }

    pub fn n(&self) -> usize {
        self.direction.len()
    }

    /// Canonical direction: first nonzero coordinate is 1.
    pub fn direction(&self) -> &[BigRational] {
        &self.direction
    }

    /// Canonical base point: the perpendicular foot from the origin.
    pub fn base(&self) -> &RatPoint {
        &self.base
    }

    /// Exact membership test. A point of a different ambient dimension lies
    /// on no line.
    pub fn contains(&self, x: &RatPoint) -> bool {
        if x.n() != self.n() {
            return false;
        }
        let diff: Vec<BigRational> = x
            .coords()
            .iter()
            .zip(self.base.coords())
            .map(|(a, b)| a - b)
            .collect();
        let lead = self
            .direction
            .iter()
            .position(|c| c.is_one())
            .expect("canonical direction has a unit leading coordinate");
        let t = &diff[lead];
        diff.iter()
            .zip(&self.direction)
            .all(|(d, v)| *d == v * t)
    }

    /// The point at parameter `t`, `base + t * direction`.
    pub fn point_at(&self, t: &BigRational) -> RatPoint {
        self.base
            .translate(&scale(&self.direction, t))
            .expect("direction matches the base dimension")
    }

    /// The common point of two nonparallel lines, if one exists. Returns
    /// `None` for identical, parallel, or skew lines and for lines of
    /// different ambient dimensions. Distinct lines share at most one point,
    /// so the result is unique.
    pub fn intersect(&self, other: &RatLine) -> Option<RatPoint> {
        if self.n() != other.n() || self.direction == other.direction {
            return None;
        }
        let va = &self.direction;
        let vb = &other.direction;
        let w = self.base.displacement_to(&other.base).expect("dimensions match");
        let (mut pivot, mut det) = ((0, 0), BigRational::zero());
        'search: for i in 0..va.len() {
            for j in (i + 1)..va.len() {
                let d = &va[i] * &vb[j] - &va[j] * &vb[i];
                if !d.is_zero() {
                    (pivot, det) = ((i, j), d);
                    break 'search;
                }
            }
        }
        debug_assert!(!det.is_zero(), "distinct canonical directions are independent");
        let (i, j) = pivot;
        let t = (&w[i] * &vb[j] - &vb[i] * &w[j]) / &det;
        let u = (&w[i] * &va[j] - &va[i] * &w[j]) / &det;
        let consistent = (0..va.len()).all(|m| &t * &va[m] - &u * &vb[m] == w[m]);
        if consistent {
            Some(self.point_at(&t))
        } else {
            None
        }
    }

    /// Whether the line is vertical in the plane sense: dimension 2 with
    /// direction `(0, 1)`.
    pub fn is_vertical(&self) -> bool {
        self.n() == 2 && self.direction[0].is_zero()
    }

    /// Slope and intercept `(m, b)` with the line given by `y = m x + b`.
    /// Defined for nonvertical planar lines only.
    pub fn slope_intercept(&self) -> Result<(BigRational, BigRational), GeomError> {
        if self.n() != 2 {
            return Err(GeomError::NotPlanar { got: self.n() });
        }
        if self.is_vertical() {
            return Err(GeomError::VerticalLine);
        }
        let m = self.direction[1].clone();
        let b = &self.base.coords()[1] - &self.base.coords()[0] * &m;
        Ok((m, b))
    }

    /// The planar line `y = m x + b`.
    pub fn from_slope_intercept(m: &BigRational, b: &BigRational) -> RatLine {
        let p = RatPoint::new(vec![BigRational::zero(), b.clone()])
            .expect("two coordinates");
        let d = [BigRational::one(), m.clone()];
        RatLine::from_point_direction(&p, &d).expect("direction (1, m) is nonzero")
    }
}
