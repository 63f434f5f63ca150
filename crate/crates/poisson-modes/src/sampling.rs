//! Reproducible random sample points and maps.

use num::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::moebius::{Family, MoebiusMap, SphereMoebius};
use crate::pfm::{ExtendedComplex, OmegaPoint};
use crate::scalar::{Real, C};
use crate::sphere::{stereo, SpherePointC};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in the disk `|z| < radius`.
pub fn random_in_disk<T: Real>(rng: &mut SampleRng, radius: f64) -> C<T> {
    let r = radius * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::new(T::lit(r * t.cos()), T::lit(r * t.sin()))
}

/// A point of the bidisk `D_r × D_r`, `r < 1`.
pub fn random_bidisk_point<T: Real>(rng: &mut SampleRng, radius: f64) -> OmegaPoint<T> {
    let z = random_in_disk(rng, radius);
    let w = random_in_disk(rng, radius);
    OmegaPoint::finite(z, w).expect("bidisk of radius < 1 lies in Ω")
}

/// A point of Ω with coordinates of moderate size and `|zw - 1| ≥ 0.1`;
/// about one in ten samples uses an `∞` chart.
pub fn random_omega_point<T: Real>(rng: &mut SampleRng) -> OmegaPoint<T> {
    loop {
        let coord = |rng: &mut SampleRng| -> ExtendedComplex<T> {
            if rng.random_bool(0.05) {
                ExtendedComplex::Infinity
            } else {
                random_in_disk(rng, 3.0).into()
            }
        };
        let (z, w) = (coord(rng), coord(rng));
        let far = match z.omega_product(&w) {
            ExtendedComplex::Infinity => true,
            ExtendedComplex::Finite(p) => (p - Complex::new(T::one(), T::zero())).norm() >= T::lit(0.1),
        };
        if far {
            if let Ok(p) = OmegaPoint::new(z, w) {
                return p;
            }
        }
    }
}

pub fn random_sphere_point<T: Real>(rng: &mut SampleRng) -> SpherePointC<T> {
    stereo(&random_omega_point(rng))
}

/// A point of the rotated diagonal, `(z, -z̄)` with `z` uniform in `|z| < radius`.
pub fn random_diagonal_point<T: Real>(rng: &mut SampleRng, radius: f64) -> OmegaPoint<T> {
    let z: C<T> = random_in_disk(rng, radius);
    OmegaPoint::finite(z, -z.conj()).expect("rotated diagonal lies in Ω")
}

/// Matrix entries uniform in the unit square, `|det| ≥ 0.2`, random family.
pub fn random_moebius<T: Real>(rng: &mut SampleRng) -> MoebiusMap<T> {
    loop {
        let mut e = || Complex::new(T::lit(rng.random_range(-1.0..1.0)), T::lit(rng.random_range(-1.0..1.0)));
        let (a, b, c, d) = (e(), e(), e(), e());
        if (a * d - b * c).norm() < T::lit(0.2) {
            continue;
        }
        let family = if rng.random_bool(0.5) { Family::Direct } else { Family::Swapped };
        return MoebiusMap::new(SphereMoebius::new(a, b, c, d).expect("nonsingular"), family);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<OmegaPoint<f64>> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_omega_point(&mut r)
            })
            .collect();
        let mut r = rng(7);
        let b: Vec<OmegaPoint<f64>> = (0..5).map(|_| random_omega_point(&mut r)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn charts_are_exercised() {
        let mut r = rng(1);
        let pts: Vec<OmegaPoint<f64>> = (0..400).map(|_| random_omega_point(&mut r)).collect();
        assert!(pts.iter().any(|p| p.z().is_infinite()));
        assert!(pts.iter().any(|p| p.w().is_infinite()));
        assert!(pts.iter().filter(|p| p.coords().is_some()).count() > 300);
    }
}
