//! Field descriptions and scalar arithmetic for `F_p` and `F_{p²}`.
//!
//! A scalar is stored as its index in `0..q`: for the prime field this is
//! the residue itself, and for the quadratic extension `F_p[t]/(m(t))` the
//! element `c₀ + c₁·t` has index `c₀ + c₁·p`. Index order is also the
//! canonical scalar order used everywhere lexicographic comparisons appear.
//!
//! The extension modulus is pinned to the lexicographically first monic
//! irreducible quadratic `t² + a·t + b`, ordering candidates by `(a, b)`, so
//! the same `p` always produces the same field tables.

use super::FfError;

/// A prime field `F_p` or its quadratic extension `F_{p²}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u64,
    r: u32,
    /// `[a, b]` for the modulus `t² + a·t + b`; present exactly when `r = 2`.
    modulus: Option<[u64; 2]>,
}

impl FieldSpec {
    /// Build a field description, validating primality and, for `r = 2`,
    /// selecting the canonical irreducible quadratic.
    pub fn new(p: u64, r: u32) -> Result<FieldSpec, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        match r {
            1 => Ok(FieldSpec { p, r, modulus: None }),
            2 => Ok(FieldSpec { p, r, modulus: Some(first_irreducible_quadratic(p)) }),
            other => Err(FfError::UnsupportedExtension(other)),
        }
    }

    /// Shorthand for the prime field.
    pub fn prime(p: u64) -> Result<FieldSpec, FfError> {
        FieldSpec::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Field size `q = p^r`.
    pub fn q(&self) -> u64 {
        match self.r {
            1 => self.p,
            _ => self.p * self.p,
        }
    }

    /// Coefficients `[a, b]` of the extension modulus `t² + a·t + b`, if any.
    pub fn modulus(&self) -> Option<[u64; 2]> {
        self.modulus
    }

    /// All scalars in index order.
    pub fn scalars(&self) -> impl Iterator<Item = u64> {
        0..self.q()
    }

    /// Whether a scalar of `F_{p²}` lies in the prime subfield (for `r = 1`
    /// this is every scalar).
    pub fn in_prime_subfield(&self, s: u64) -> bool {
        debug_assert!(s < self.q());
        s < self.p
    }

    fn split(&self, s: u64) -> (u64, u64) {
        (s % self.p, s / self.p)
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        let (x0, x1) = self.split(x);
        let (y0, y1) = self.split(y);
        (x0 + y0) % self.p + ((x1 + y1) % self.p) * self.p
    }

    pub fn neg(&self, x: u64) -> u64 {
        let (x0, x1) = self.split(x);
        (self.p - x0) % self.p + ((self.p - x1) % self.p) * self.p
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        let p = self.p;
        match self.modulus {
            None => (x * y) % p,
            Some([a, b]) => {
                let (x0, x1) = self.split(x);
                let (y0, y1) = self.split(y);
                // (x0 + x1 t)(y0 + y1 t) with t² = -(a t + b).
                let tt = (x1 * y1) % p;
                let c0 = (x0 * y0 + tt * (p - b % p)) % p;
                let c1 = (x0 * y1 + x1 * y0 + tt * (p - a % p)) % p;
                c0 + c1 * p
            }
        }
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero scalar.
    ///
    /// # Panics
    /// On zero input.
    pub fn inv(&self, x: u64) -> u64 {
        assert!(x != 0, "zero has no multiplicative inverse");
        self.pow(x, self.q() - 2)
    }

    /// `x / y` for nonzero `y`.
    pub fn div(&self, x: u64, y: u64) -> u64 {
        self.mul(x, self.inv(y))
    }

    /// Render a scalar for diagnostics: the residue itself for `r = 1`,
    /// `c0+c1t` for extension elements with `c1 != 0`.
    pub fn scalar_string(&self, s: u64) -> String {
        let (c0, c1) = self.split(s);
        if c1 == 0 {
            format!("{c0}")
        } else {
            format!("{c0}+{c1}t")
        }
    }
}

/// Deterministic trial-division primality test; exact for all `u64` inputs
/// that fit the desk-scale caps used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The lexicographically first `(a, b)` with `t² + a·t + b` irreducible over
/// `F_p`, found by checking all candidates for roots by exhaustion.
fn first_irreducible_quadratic(p: u64) -> [u64; 2] {
    for a in 0..p {
        for b in 0..p {
            let has_root = (0..p).any(|t| (t * t + a * t + b) % p == 0);
            if !has_root {
                return [a, b];
            }
        }
    }
    unreachable!("every prime field admits an irreducible quadratic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_small_table() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn rejects_composite_and_unsupported_degree() {
        assert_eq!(FieldSpec::new(6, 1), Err(FfError::NotPrime(6)));
        assert_eq!(FieldSpec::new(1, 1), Err(FfError::NotPrime(1)));
        assert_eq!(FieldSpec::new(5, 3), Err(FfError::UnsupportedExtension(3)));
        assert_eq!(FieldSpec::new(5, 0), Err(FfError::UnsupportedExtension(0)));
    }

    #[test]
    fn canonical_moduli_for_small_primes() {
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), Some([1, 1]));
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), Some([0, 1]));
        assert_eq!(FieldSpec::new(5, 2).unwrap().modulus(), Some([0, 2]));
        assert_eq!(FieldSpec::new(7, 2).unwrap().modulus(), Some([0, 1]));
    }

    #[test]
    fn chosen_moduli_have_no_roots() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = FieldSpec::new(p, 2).unwrap();
            let [a, b] = f.modulus().unwrap();
            assert!((0..p).all(|t| (t * t + a * t + b) % p != 0), "p = {p}");
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.q(), 7);
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.inv(3), 5);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.pow(3, 6), 1);
    }

    #[test]
    fn every_nonzero_scalar_has_an_inverse() {
        for (p, r) in [(2u64, 1u32), (7, 1), (2, 2), (3, 2), (5, 2)] {
            let f = FieldSpec::new(p, r).unwrap();
            for x in 1..f.q() {
                assert_eq!(f.mul(x, f.inv(x)), 1, "p = {p}, r = {r}, x = {x}");
            }
        }
    }

    #[test]
    fn extension_multiplication_reduces_by_the_modulus() {
        // In F_9 = F_3[t]/(t² + 1): t·t = -1 = 2, and
        // (1 + t)(1 + 2t) = 1 + 3t + 2t² = 1 + 2·(-1) = -1 = 2.
        let f = FieldSpec::new(3, 2).unwrap();
        let t = 3;
        assert_eq!(f.mul(t, t), 2);
        let x = 1 + 3;
        let y = 1 + 2 * 3;
        assert_eq!(f.mul(x, y), 2);
    }

    #[test]
    fn extension_field_is_associative_and_distributive_exhaustively() {
        let f = FieldSpec::new(3, 2).unwrap();
        for x in f.scalars() {
            for y in f.scalars() {
                for z in f.scalars() {
                    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn prime_subfield_is_fixed_by_frobenius() {
        let f = FieldSpec::new(5, 2).unwrap();
        for s in f.scalars() {
            assert_eq!(f.in_prime_subfield(s), f.pow(s, 5) == s);
        }
    }

    #[test]
    fn scalar_strings() {
        let f = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f.scalar_string(2), "2");
        assert_eq!(f.scalar_string(5), "2+1t");
    }
}
