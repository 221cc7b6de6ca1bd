//! Discrete Fourier analysis on `F_p^n` in double precision.
//!
//! The transform is `f̂(ξ) = Σ_x f(x)·e^(-2πi x·ξ/p)`, with points and
//! frequencies sharing the lexicographic index order of [`FpVec`]. A naive
//! quadratic summation is the reference implementation; [`dft`] factors the
//! transform along one axis at a time and is checked against the reference
//! in tests.
//!
//! All comparisons downstream use the scaled tolerance [`FpFunction::tolerance`],
//! `τ = 10⁻⁹·p^n·max|f|`, far above rounding noise at the sizes the
//! enumeration caps allow.

use num_complex::Complex64;

use super::field::FieldSpec;
use super::subspace::FpFlat;
use super::vector::FpVec;
use super::FfError;

/// A function `F_p^n → C`, one value per point in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct FpFunction {
    field: FieldSpec,
    n: usize,
    values: Vec<Complex64>,
}

/// Frequency-side values, same layout as [`FpFunction`].
pub type Spectrum = FpFunction;

impl FpFunction {
    pub fn new(field: FieldSpec, n: usize, values: Vec<Complex64>) -> Result<FpFunction, FfError> {
        if field.r() != 1 {
            return Err(FfError::UnsupportedExtension(field.r()));
        }
        if n == 0 {
            return Err(FfError::ZeroDimension);
        }
        let expected = (field.p() as u128).pow(n as u32);
        if values.len() as u128 != expected {
            return Err(FfError::LengthMismatch { expected, got: values.len() });
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FfError::NonFiniteValue);
        }
        Ok(FpFunction { field, n, values })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Result<FpFunction, FfError> {
        let len = (field.p() as u128).pow(n as u32) as usize;
        FpFunction::new(field, n, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Indicator function of a point set.
    pub fn indicator(field: FieldSpec, n: usize, points: &[FpVec]) -> Result<FpFunction, FfError> {
        let mut f = FpFunction::zero(field, n)?;
        for point in points {
            if point.field() != field || point.n() != n {
                return Err(FfError::MixedDomains);
            }
            f.values[point.index() as usize] = Complex64::new(1.0, 0.0);
        }
        Ok(f)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value_at(&self, x: &FpVec) -> Complex64 {
        self.values[x.index() as usize]
    }

    /// Comparison tolerance `10⁻⁹ · p^n · max|f|`.
    pub fn tolerance(&self) -> f64 {
        let max = self.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        1e-9 * self.values.len() as f64 * max
    }

    /// Largest pointwise distance to another function of the same shape.
    pub fn max_distance(&self, other: &FpFunction) -> Result<f64, FfError> {
        if self.field != other.field || self.n != other.n {
            return Err(FfError::MixedDomains);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// `Σ |f(x)|²`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    /// The translated function `x ↦ f(x + v)`.
    pub fn translate(&self, v: &FpVec) -> Result<FpFunction, FfError> {
        if v.field() != self.field || v.n() != self.n {
            return Err(FfError::MixedDomains);
        }
        let mut values = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for (i, slot) in values.iter_mut().enumerate() {
            let x = FpVec::from_index(self.field, self.n, i as u64);
            let shifted = x.add(v)?;
            *slot = self.values[shifted.index() as usize];
        }
        FpFunction::new(self.field, self.n, values)
    }
}

fn check_cap(f: &FpFunction, cap: u64) -> Result<(), FfError> {
    let needed = f.values.len() as u128;
    if needed > cap as u128 {
        return Err(FfError::SizeLimit { needed, cap });
    }
    Ok(())
}

fn twiddles(p: u64, sign: f64) -> Vec<Complex64> {
    (0..p)
        .map(|k| Complex64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * k as f64 / p as f64))
        .collect()
}

/// Reference transform by direct double summation; authoritative in tests.
pub fn dft_reference(f: &FpFunction, cap: u64) -> Result<Spectrum, FfError> {
    check_cap(f, cap)?;
    let p = f.field.p();
    let tw = twiddles(p, -1.0);
    let len = f.values.len();
    let points: Vec<Vec<u64>> = (0..len)
        .map(|i| FpVec::from_index(f.field, f.n, i as u64).coords().to_vec())
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (fi, slot) in out.iter_mut().enumerate() {
        let freq = &points[fi];
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, value) in f.values.iter().enumerate() {
            let dot: u64 = points[xi]
                .iter()
                .zip(freq)
                .map(|(&a, &b)| a * b % p)
                .sum::<u64>()
                % p;
            acc += value * tw[dot as usize];
        }
        *slot = acc;
    }
    FpFunction::new(f.field, f.n, out)
}

/// Transform along one axis at a time: `n` passes of length-`p` sums.
fn factored_transform(f: &FpFunction, sign: f64) -> Vec<Complex64> {
    let p = f.field.p() as usize;
    let len = f.values.len();
    let tw = twiddles(f.field.p(), sign);
    let mut v = f.values.clone();
    let mut scratch = vec![Complex64::new(0.0, 0.0); p];
    let mut stride = len / p;
    for _ in 0..f.n {
        let block = stride * p;
        for base in (0..len).step_by(block) {
            for off in 0..stride {
                for (t, slot) in scratch.iter_mut().enumerate() {
                    *slot = v[base + off + t * stride];
                }
                for s in 0..p {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (t, value) in scratch.iter().enumerate() {
                        acc += value * tw[s * t % p];
                    }
                    v[base + off + s * stride] = acc;
                }
            }
        }
        stride /= p;
    }
    v
}

/// The transform `f̂(ξ) = Σ_x f(x)·e^(-2πi x·ξ/p)`, via the factored path.
pub fn dft(f: &FpFunction, cap: u64) -> Result<Spectrum, FfError> {
    check_cap(f, cap)?;
    FpFunction::new(f.field, f.n, factored_transform(f, -1.0))
}

/// The inversion `f(x) = p^(-n)·Σ_ξ f̂(ξ)·e^(2πi x·ξ/p)`.
pub fn inverse_dft(spectrum: &Spectrum, cap: u64) -> Result<FpFunction, FfError> {
    check_cap(spectrum, cap)?;
    let scale = 1.0 / spectrum.values.len() as f64;
    let values = factored_transform(spectrum, 1.0)
        .into_iter()
        .map(|z| z * scale)
        .collect();
    FpFunction::new(spectrum.field, spectrum.n, values)
}

/// Closed-form spectrum of a flat's indicator: writing the flat as `V + b`
/// with `b` the canonical translate, the value is `p^k·e^(-2πi b·ξ/p)` for
/// `ξ ∈ V^⊥` and zero elsewhere. The phase does not depend on which coset
/// representative is used, since `b` only moves within `V` and `V·ξ = 0` on
/// the support.
pub fn flat_spectrum_expected(flat: &FpFlat, cap: u64) -> Result<Spectrum, FfError> {
    let field = flat.subspace().field();
    if field.r() != 1 {
        return Err(FfError::UnsupportedExtension(field.r()));
    }
    let n = flat.subspace().n();
    let mut spectrum = FpFunction::zero(field, n)?;
    check_cap(&spectrum, cap)?;
    let p = field.p();
    let magnitude = (p as f64).powi(flat.k() as i32);
    let b = flat.translate();
    for xi in flat.subspace().orthogonal_complement().points(cap)? {
        let dot = b.dot(&xi)?;
        let phase = -2.0 * std::f64::consts::PI * dot as f64 / p as f64;
        spectrum.values[xi.index() as usize] = Complex64::from_polar(magnitude, phase);
    }
    Ok(spectrum)
}

/// Split `f = f_high + f_low` where `f_low` is the constant at the mean of
/// `f`. The low part carries exactly the zero frequency and the high part
/// the rest.
pub fn high_low_split(f: &FpFunction) -> (FpFunction, FpFunction) {
    let mean = f.mean();
    let low_values = vec![mean; f.values.len()];
    let high_values = f.values.iter().map(|z| z - mean).collect();
    let low = FpFunction::new(f.field, f.n, low_values).expect("same shape as f");
    let high = FpFunction::new(f.field, f.n, high_values).expect("same shape as f");
    (high, low)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::line::FpLine;
    use crate::ff::subspace::{enumerate_flats, FpSubspace};
    use crate::rng::Rng;

    const CAP: u64 = 1_000_000;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn vec_of(p: u64, coords: &[u64]) -> FpVec {
        FpVec::new(fp(p), coords.to_vec()).unwrap()
    }

    fn random_function(field: FieldSpec, n: usize, seed: u64) -> FpFunction {
        let mut rng = Rng::new(seed);
        let len = (field.p() as u128).pow(n as u32) as usize;
        let values = (0..len)
            .map(|_| {
                let re = rng.below(2_000) as f64 / 1_000.0 - 1.0;
                let im = rng.below(2_000) as f64 / 1_000.0 - 1.0;
                Complex64::new(re, im)
            })
            .collect();
        FpFunction::new(field, n, values).unwrap()
    }

    #[test]
    fn delta_at_origin_transforms_to_the_constant_one() {
        let f = FpFunction::indicator(fp(3), 2, &[vec_of(3, &[0, 0])]).unwrap();
        let spectrum = dft_reference(&f, CAP).unwrap();
        for value in spectrum.values() {
            assert!((value - Complex64::new(1.0, 0.0)).norm() <= f.tolerance());
        }
    }

    #[test]
    fn line_through_origin_has_flat_spectrum_on_the_perp() {
        for p in [3u64, 5] {
            let theta = vec_of(p, &[1, 2]);
            let line = FpLine::from_point_direction(&FpVec::zero(fp(p), 2), &theta).unwrap();
            let f = FpFunction::indicator(fp(p), 2, &line.points()).unwrap();
            let spectrum = dft_reference(&f, CAP).unwrap();
            let perp = FpSubspace::span(&theta).orthogonal_complement();
            let tau = f.tolerance();
            for xi_index in 0..spectrum.values().len() {
                let xi = FpVec::from_index(fp(p), 2, xi_index as u64);
                let expected = if perp.contains(&xi).unwrap() { p as f64 } else { 0.0 };
                assert!(
                    (spectrum.values()[xi_index] - Complex64::new(expected, 0.0)).norm() <= tau,
                    "p = {p}, xi = {xi}"
                );
            }
        }
    }

    #[test]
    fn factored_transform_matches_the_reference() {
        for (p, n) in [(2u64, 3usize), (3, 2), (5, 2), (7, 1)] {
            let f = random_function(fp(p), n, 1000 + p + n as u64);
            let fast = dft(&f, CAP).unwrap();
            let reference = dft_reference(&f, CAP).unwrap();
            assert!(fast.max_distance(&reference).unwrap() <= f.tolerance());
        }
    }

    #[test]
    fn inversion_roundtrips() {
        for (p, n) in [(2u64, 2usize), (3, 3), (5, 2)] {
            let f = random_function(fp(p), n, 7 * p + n as u64);
            let back = inverse_dft(&dft(&f, CAP).unwrap(), CAP).unwrap();
            assert!(back.max_distance(&f).unwrap() <= f.tolerance());
        }
    }

    #[test]
    fn plancherel_holds_for_seeded_random_functions() {
        for p in [2u64, 3, 5, 7] {
            for n in 1..=3usize {
                if (p as u128).pow(n as u32) > 343 {
                    continue;
                }
                for trial in 0..100u64 {
                    let f = random_function(fp(p), n, trial * 31 + p * 7 + n as u64);
                    let spectrum = dft(&f, CAP).unwrap();
                    let direct = f.energy();
                    let via_spectrum = spectrum.energy() / f.values().len() as f64;
                    assert!(
                        (direct - via_spectrum).abs() <= f.tolerance(),
                        "p = {p}, n = {n}, trial = {trial}"
                    );
                }
            }
        }
    }

    #[test]
    fn translation_multiplies_the_spectrum_by_a_phase() {
        let f = random_function(fp(5), 2, 99);
        let v = vec_of(5, &[2, 3]);
        let translated_spectrum = dft(&f.translate(&v).unwrap(), CAP).unwrap();
        let spectrum = dft(&f, CAP).unwrap();
        let tau = f.tolerance();
        for xi_index in 0..spectrum.values().len() {
            let xi = FpVec::from_index(fp(5), 2, xi_index as u64);
            let dot = v.dot(&xi).unwrap();
            let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * dot as f64 / 5.0);
            let expected = spectrum.values()[xi_index] * phase;
            assert!((translated_spectrum.values()[xi_index] - expected).norm() <= tau);
        }
    }

    #[test]
    fn dft_is_linear() {
        let f = random_function(fp(3), 2, 5);
        let g = random_function(fp(3), 2, 6);
        let alpha = Complex64::new(0.75, -1.25);
        let beta = Complex64::new(-2.0, 0.5);
        let combined = FpFunction::new(
            fp(3),
            2,
            f.values()
                .iter()
                .zip(g.values())
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        )
        .unwrap();
        let lhs = dft(&combined, CAP).unwrap();
        let f_hat = dft(&f, CAP).unwrap();
        let g_hat = dft(&g, CAP).unwrap();
        let rhs = FpFunction::new(
            fp(3),
            2,
            f_hat
                .values()
                .iter()
                .zip(g_hat.values())
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        )
        .unwrap();
        assert!(lhs.max_distance(&rhs).unwrap() <= 10.0 * combined.tolerance());
    }

    #[test]
    fn expected_flat_spectra_match_the_transform_exhaustively() {
        for p in [2u64, 3, 5] {
            for n in 2..=3usize {
                for k in 0..=n {
                    for flat in enumerate_flats(fp(p), n, k, CAP).unwrap() {
                        let f =
                            FpFunction::indicator(fp(p), n, &flat.points(CAP).unwrap()).unwrap();
                        let spectrum = dft(&f, CAP).unwrap();
                        let expected = flat_spectrum_expected(&flat, CAP).unwrap();
                        assert!(
                            spectrum.max_distance(&expected).unwrap() <= spectrum.tolerance(),
                            "p = {p}, n = {n}, k = {k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn axis_flat_spectrum_values_are_pinned() {
        let flat = FpFlat::new(
            FpSubspace::span(&vec_of(3, &[1, 0])),
            &FpVec::zero(fp(3), 2),
        )
        .unwrap();
        let spectrum = flat_spectrum_expected(&flat, CAP).unwrap();
        let mut support = 0;
        for xi_index in 0..9u64 {
            let xi = FpVec::from_index(fp(3), 2, xi_index);
            let value = spectrum.values()[xi_index as usize];
            if xi.coords()[0] == 0 {
                assert!((value - Complex64::new(3.0, 0.0)).norm() < 1e-12);
                support += 1;
            } else {
                assert_eq!(value, Complex64::new(0.0, 0.0));
            }
        }
        assert_eq!(support, 3);
    }

    #[test]
    fn translated_flat_spectrum_picks_up_the_conjugate_phase() {
        let flat = FpFlat::new(
            FpSubspace::span(&vec_of(3, &[1, 0])),
            &vec_of(3, &[0, 1]),
        )
        .unwrap();
        let expected = flat_spectrum_expected(&flat, CAP).unwrap();
        let via_dft = dft_reference(
            &FpFunction::indicator(fp(3), 2, &flat.points(CAP).unwrap()).unwrap(),
            CAP,
        )
        .unwrap();
        let xi = vec_of(3, &[0, 1]);
        let pinned = Complex64::from_polar(3.0, -2.0 * std::f64::consts::PI / 3.0);
        assert!((expected.value_at(&xi) - pinned).norm() < 1e-12);
        assert!((via_dft.value_at(&xi) - pinned).norm() <= via_dft.tolerance());
        assert!(expected.max_distance(&via_dft).unwrap() <= via_dft.tolerance());
    }

    #[test]
    fn full_space_flat_transforms_to_a_delta() {
        let f5 = fp(5);
        let flat = FpFlat::new(FpSubspace::full(f5, 2), &FpVec::zero(f5, 2)).unwrap();
        let spectrum = flat_spectrum_expected(&flat, CAP).unwrap();
        assert_eq!(spectrum.value_at(&FpVec::zero(f5, 2)), Complex64::new(25.0, 0.0));
        let nonzero: usize = spectrum
            .values()
            .iter()
            .filter(|z| z.norm() > 0.0)
            .count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn high_low_split_of_a_constant_has_no_high_part() {
        let f = FpFunction::new(fp(3), 1, vec![Complex64::new(2.5, -1.0); 3]).unwrap();
        let (high, low) = high_low_split(&f);
        assert!(high.values().iter().all(|z| z.norm() < 1e-12));
        assert_eq!(low.values(), f.values());
    }

    #[test]
    fn high_low_split_of_a_line_indicator() {
        let line = FpLine::through(&vec_of(3, &[0, 0]), &vec_of(3, &[1, 1])).unwrap();
        let f = FpFunction::indicator(fp(3), 2, &line.points()).unwrap();
        let (high, low) = high_low_split(&f);
        for value in low.values() {
            assert!((value - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-12);
        }
        for (h, original) in high.values().iter().zip(f.values()) {
            assert!((h - (original - Complex64::new(1.0 / 3.0, 0.0))).norm() < 1e-12);
        }
    }

    #[test]
    fn high_low_split_spectral_supports() {
        let f = random_function(fp(5), 2, 12345);
        let (high, low) = high_low_split(&f);
        let sum = FpFunction::new(
            fp(5),
            2,
            high.values()
                .iter()
                .zip(low.values())
                .map(|(a, b)| a + b)
                .collect(),
        )
        .unwrap();
        assert_eq!(sum.values(), f.values());
        let tau = f.tolerance();
        let zero = FpVec::zero(fp(5), 2);
        let high_hat = dft(&high, CAP).unwrap();
        assert!(high_hat.value_at(&zero).norm() <= tau);
        let low_hat = dft(&low, CAP).unwrap();
        for xi_index in 1..low_hat.values().len() {
            assert!(low_hat.values()[xi_index].norm() <= tau);
        }
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(
            FpFunction::new(fp(3), 2, vec![Complex64::new(0.0, 0.0); 8]),
            Err(FfError::LengthMismatch { expected: 9, got: 8 })
        );
        let ext = FieldSpec::new(3, 2).unwrap();
        assert_eq!(
            FpFunction::new(ext, 1, vec![Complex64::new(0.0, 0.0); 9]),
            Err(FfError::UnsupportedExtension(2))
        );
        assert_eq!(
            FpFunction::new(fp(2), 1, vec![Complex64::new(f64::NAN, 0.0); 2]),
            Err(FfError::NonFiniteValue)
        );
    }

    #[test]
    fn transforms_respect_the_cap() {
        let f = random_function(fp(3), 2, 1);
        assert_eq!(dft(&f, 8), Err(FfError::SizeLimit { needed: 9, cap: 8 }));
        assert_eq!(dft_reference(&f, 8), Err(FfError::SizeLimit { needed: 9, cap: 8 }));
    }
}
