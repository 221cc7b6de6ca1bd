//! Points of `Q^n` and the small vector algebra the other modules share.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::GeomError;

/// A point of `Q^n`, `n >= 2`.
///
/// Coordinates are arbitrary-precision rationals; the rational type keeps
/// them in lowest terms. Ordering is lexicographic on the coordinates, which
/// fixes a canonical iteration order for sets and maps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    coords: Vec<BigRational>,
}

impl RatPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<RatPoint, GeomError> {
        if coords.len() < 2 {
            return Err(GeomError::DimensionTooSmall { required: 2, got: coords.len() });
        }
        Ok(RatPoint { coords })
    }

    /// Convenience constructor from integer coordinates.
    pub fn from_integers(coords: &[i64]) -> Result<RatPoint, GeomError> {
        RatPoint::new(coords.iter().map(|&c| rat(c)).collect())
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// The displacement vector `other - self`.
    pub fn displacement_to(&self, other: &RatPoint) -> Result<Vec<BigRational>, GeomError> {
        if self.n() != other.n() {
            return Err(GeomError::MixedDimensions);
        }
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| b - a)
            .collect())
    }

    /// The point `self + v`.
    pub fn translate(&self, v: &[BigRational]) -> Result<RatPoint, GeomError> {
        if self.n() != v.len() {
            return Err(GeomError::MixedDimensions);
        }
        Ok(RatPoint {
            coords: self.coords.iter().zip(v).map(|(a, b)| a + b).collect(),
        })
    }
}

/// An integer as a rational.
pub(crate) fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn scale(v: &[BigRational], t: &BigRational) -> Vec<BigRational> {
    v.iter().map(|x| x * t).collect()
}

pub(crate) fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scale a nonzero vector so its first nonzero coordinate is 1. Returns
/// `None` for the zero vector. The result is the canonical representative of
/// the vector's projective class: two vectors normalize to the same thing
/// exactly when one is a nonzero rational multiple of the other.
pub(crate) fn normalize_projective(v: &[BigRational]) -> Option<Vec<BigRational>> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.recip();
    Some(scale(v, &inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xs: &[i64]) -> RatPoint {
        RatPoint::from_integers(xs).unwrap()
    }

    #[test]
    fn points_need_two_coordinates() {
        assert_eq!(
            RatPoint::from_integers(&[1]),
            Err(GeomError::DimensionTooSmall { required: 2, got: 1 })
        );
        assert!(RatPoint::from_integers(&[1, 2]).is_ok());
        assert_eq!(pt(&[1, 2, 3]).n(), 3);
    }

    #[test]
    fn displacement_and_translate_are_inverse() {
        let a = pt(&[1, 2, 3]);
        let b = pt(&[4, -1, 0]);
        let v = a.displacement_to(&b).unwrap();
        assert_eq!(a.translate(&v).unwrap(), b);
        assert!(is_zero_vec(&a.displacement_to(&a).unwrap()));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let a = pt(&[1, 2]);
        let b = pt(&[1, 2, 3]);
        assert_eq!(a.displacement_to(&b), Err(GeomError::MixedDimensions));
        assert_eq!(a.translate(&[rat(1)]), Err(GeomError::MixedDimensions));
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut pts = vec![pt(&[1, 0]), pt(&[0, 5]), pt(&[0, 2]), pt(&[-3, 9])];
        pts.sort();
        assert_eq!(pts, vec![pt(&[-3, 9]), pt(&[0, 2]), pt(&[0, 5]), pt(&[1, 0])]);
    }

    #[test]
    fn projective_normalization_identifies_scalings() {
        let v = [rat(0), rat(-2), rat(4)];
        let w = [rat(0), rat(3), rat(-6)];
        assert_eq!(normalize_projective(&v), normalize_projective(&w));
        assert_eq!(
            normalize_projective(&v).unwrap(),
            vec![rat(0), rat(1), rat(-2)]
        );
        assert_eq!(normalize_projective(&[rat(0), rat(0)]), None);
    }

    #[test]
    fn dot_products_are_exact() {
        let a = [BigRational::new(BigInt::from(1), BigInt::from(3)), rat(2)];
        let b = [rat(3), BigRational::new(BigInt::from(1), BigInt::from(2))];
        assert_eq!(dot(&a, &b), rat(2));
    }
}
