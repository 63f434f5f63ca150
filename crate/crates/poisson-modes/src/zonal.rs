//! Complex zonal harmonics `Z_m` on Ω and their restrictions to the Riemann
//! sphere and the unit disk.

use num::{Complex, Zero};

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::jacobi::jacobi_poly;
use crate::moebius::MoebiusMap;
use crate::numeric::{CompensatedSum, TwoFold, TwoFoldC};
use crate::pfm::{pfm_eval, pfm_eval_twofold, y_normalization, ExtendedComplex, OmegaPoint, PFMIndex};
use crate::quadrature::SphereQuadrature;
use crate::scalar::{binom_f, sign, Real, C};
use crate::sphere::stereo;

/// `Z_m(p1, p2) = Σ_j Y_j^{-m}(p1) Y_{-j}^{-m}(p2)` with the normalizations
/// precomputed.
#[derive(Debug, Clone)]
pub struct ZonalEvaluator<T> {
    pub m: u32,
    /// `N_j` for `j = -m..=m`.
    pub factors: Vec<C<T>>,
}

impl<T: Real> ZonalEvaluator<T> {
    pub fn new(m: u32) -> Self {
        let factors = (-(m as i32)..=m as i32).map(|j| y_normalization(PFMIndex::new(m, j))).collect();
        ZonalEvaluator { m, factors }
    }

    /// Terms are formed in double-word arithmetic: for points far from the
    /// bidisk they exceed the sum by many orders of magnitude.
    pub fn eval(&self, p1: &OmegaPoint<T>, p2: &OmegaPoint<T>) -> C<T> {
        let m = self.m as i32;
        let mut acc = TwoFoldC::new(Complex::zero());
        for j in -m..=m {
            let a = j.unsigned_abs() as i64;
            let mi = self.m as i64;
            let f = TwoFold::new(T::lit(((2 * mi + 1) as f64) * sign::<f64>(a)))
                * TwoFold::new(binom_f::<T>(mi + a, a))
                / TwoFold::new(binom_f::<T>(mi, a));
            let term = pfm_eval_twofold(PFMIndex::new(self.m, j), p1) * pfm_eval_twofold(PFMIndex::new(self.m, -j), p2);
            acc = acc + term.scale(f);
        }
        acc.value()
    }
}

pub fn zonal_sum<T: Real>(m: u32, p1: &OmegaPoint<T>, p2: &OmegaPoint<T>) -> C<T> {
    ZonalEvaluator::new(m).eval(p1, p2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `T_{u,v}`, for finite `u, v`.
    T,
    /// `T̃_{u,v}`, for nonzero `u, v`.
    TTilde,
}

/// `(2m+1) P_0^{-m}(A(p1))` with `A = T_{u,v}` or `T̃_{u,v}`, `(u,v) = p2`.
pub fn zonal_pullback_branch<T: Real>(m: u32, p1: &OmegaPoint<T>, p2: &OmegaPoint<T>, branch: Branch) -> Result<C<T>> {
    let map = match branch {
        Branch::T => {
            let (u, v) = p2.coords().ok_or_else(|| Error::Domain("T-branch needs finite coordinates".into()))?;
            MoebiusMap::t_zw(u, v)?
        }
        Branch::TTilde => MoebiusMap::t_tilde(p2.z(), p2.w())?,
    };
    let q = map.apply(p1)?;
    Ok(pfm_eval(PFMIndex::new(m, 0), &q) * T::lit((2 * m + 1) as f64))
}

/// `Z_m` through the pullback of `P_0^{-m}`; the `T`-branch whenever `p2` is
/// finite, the `T̃`-branch otherwise.
pub fn zonal_pullback<T: Real>(m: u32, p1: &OmegaPoint<T>, p2: &OmegaPoint<T>) -> Result<C<T>> {
    if p2.coords().is_none() {
        return zonal_pullback_branch(m, p1, p2, Branch::TTilde);
    }
    let v = zonal_pullback_branch(m, p1, p2, Branch::T)?;
    if cfg!(debug_assertions) && !p2.z().is_zero() && !p2.w().is_zero() {
        if let Ok(t) = zonal_pullback_branch(m, p1, p2, Branch::TTilde) {
            debug_assert!(
                (t - v).norm() <= T::lit(1e-6) * (T::one() + v.norm()),
                "zonal branches disagree: {v} vs {t}"
            );
        }
    }
    Ok(v)
}

/// `max |Z_m(T p1, T p2) − Z_m(p1, p2)| / (1 + |Z_m(p1, p2)|)` over the pairs.
///
/// `Z_m` is unbounded near the locus where `T_{u,v}(p1)` meets `zw = 1`, so the
/// error is measured relative to the value.
pub fn zonal_invariance_residual<T: Real>(
    m: u32,
    t: &MoebiusMap<T>,
    pairs: &[(OmegaPoint<T>, OmegaPoint<T>)],
) -> Result<T> {
    let z = ZonalEvaluator::new(m);
    let mut worst = T::zero();
    for (p1, p2) in pairs {
        let before = z.eval(p1, p2);
        let after = z.eval(&t.apply(p1)?, &t.apply(p2)?);
        worst = worst.max((after - before).norm() / (T::one() + before.norm()));
    }
    Ok(worst)
}

/// Invariance of `Z_m(·, (u,v))` under `T_{u,v}∘ρ_γ∘T_{u,v}`, which fixes `(u,v)`.
pub fn fixed_point_invariance<T: Real>(
    m: u32,
    uv: &OmegaPoint<T>,
    gamma: C<T>,
    samples: &[OmegaPoint<T>],
) -> Result<T> {
    let (u, v) = uv.coords().ok_or_else(|| Error::Domain("fixed point must be finite".into()))?;
    let t = MoebiusMap::t_zw(u, v)?;
    let map = t.compose(&MoebiusMap::rho(gamma)?).compose(&t);
    let z = ZonalEvaluator::new(m);
    let mut worst = T::zero();
    for p in samples {
        let before = z.eval(p, uv);
        let after = z.eval(&map.apply(p)?, uv);
        worst = worst.max((after - before).norm() / (T::one() + before.norm()));
    }
    Ok(worst)
}

/// `|∫ F(η,-η̄) Z_m(pt, (η,-η̄)) dμ(η) − F(pt)|` with the mass-one measure of
/// the quadrature; no conjugation in the integrand.
pub fn reproducing_residual<T, F>(m: u32, f: F, pt: &OmegaPoint<T>, q: &SphereQuadrature<T>) -> Result<T>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    let z = ZonalEvaluator::new(m);
    let mut acc = CompensatedSum::new();
    for (eta, w) in q.nodes() {
        acc.add(f(&eta)? * z.eval(pt, &eta) * w);
    }
    Ok((acc.value() - f(pt)?).norm())
}

fn real_part<T: Real>(m: u32, v: C<T>) -> Result<T> {
    let tol = T::lit(1e-11) * T::lit((2 * m + 1) as f64) * T::one().max(v.re.abs());
    if v.im.abs() > tol {
        return Err(Error::Numeric(format!("imaginary residue {} exceeds {tol}", v.im)));
    }
    Ok(v.re)
}

/// `ℓ_Ĉ(z) = (z, -z̄)`, with `ℓ_Ĉ(∞) = (∞, ∞)`.
pub fn rotated_diagonal<T: Real>(z: ExtendedComplex<T>) -> OmegaPoint<T> {
    OmegaPoint::new(z, z.conj().neg()).expect("rotated diagonal lies in Ω")
}

/// `ℓ_D(z) = (z, z̄)` for `|z| < 1`.
pub fn disk_diagonal<T: Real>(z: C<T>) -> Result<OmegaPoint<T>> {
    if !(z.norm() < T::one()) {
        return Err(Error::Domain(format!("|{z}| ≥ 1")));
    }
    OmegaPoint::finite(z, z.conj())
}

/// `Z_m^Ĉ(z,u) = (2m+1) P_m(⟨x, y⟩)` with `x = S(ℓ_Ĉ z)`, `y = S(ℓ_Ĉ u)` on the real sphere.
pub fn zonal_sphere<T: Real>(m: u32, z: ExtendedComplex<T>, u: ExtendedComplex<T>) -> Result<T> {
    let x = stereo(&rotated_diagonal(z));
    let y = stereo(&rotated_diagonal(u));
    let dot = x.z1 * y.z1 + x.z2 * y.z2 + x.z3 * y.z3;
    let p = jacobi_poly(m as usize, &rat(0), &rat(0));
    real_part(m, p.eval(dot) * T::lit((2 * m + 1) as f64))
}

/// `Z_m(ℓ_Ĉ z, ℓ_Ĉ u)` from the defining sum.
pub fn zonal_sphere_sum<T: Real>(m: u32, z: ExtendedComplex<T>, u: ExtendedComplex<T>) -> Result<T> {
    real_part(m, zonal_sum(m, &rotated_diagonal(z), &rotated_diagonal(u)))
}

/// `Σ_j conj(e_j(u)) e_j(z)` for the orthonormal restrictions `e_j = |N_j| P_j^{-m} ∘ ℓ_Ĉ`.
pub fn zonal_sphere_addition<T: Real>(m: u32, z: ExtendedComplex<T>, u: ExtendedComplex<T>) -> Result<T> {
    let (pz, pu) = (rotated_diagonal(z), rotated_diagonal(u));
    let mut acc = CompensatedSum::new();
    for j in -(m as i32)..=m as i32 {
        let idx = PFMIndex::new(m, j);
        let n2 = y_normalization::<T>(idx).norm_sqr();
        acc.add(pfm_eval(idx, &pu).conj() * pfm_eval(idx, &pz) * n2);
    }
    real_part(m, acc.value())
}

/// `Z_m^D(z,u) = (2m+1) P_0^{-m}(T_{ℓ_D u}(ℓ_D z))`.
pub fn zonal_disk<T: Real>(m: u32, z: C<T>, u: C<T>) -> Result<T> {
    let pz = disk_diagonal(z)?;
    let pu = disk_diagonal(u)?;
    real_part(m, zonal_pullback_branch(m, &pz, &pu, Branch::T)?)
}

/// `P_{-j}^{-m}(u,-ū) − (-1)^j conj(P_j^{-m}(u,-ū))`.
pub fn conjugation_defect<T: Real>(idx: PFMIndex, u: ExtendedComplex<T>) -> C<T> {
    let p = rotated_diagonal(u);
    let lhs = pfm_eval(PFMIndex::new(idx.m, -idx.n), &p);
    let rhs = pfm_eval(idx, &p).conj() * crate::scalar::sign::<T>(idx.n as i64);
    if lhs.is_zero() && rhs.is_zero() {
        return Complex::zero();
    }
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_bidisk_point, random_in_disk, random_moebius, random_omega_point, rng};

    fn c(re: f64, im: f64) -> C<f64> {
        Complex::new(re, im)
    }

    fn pt(z: C<f64>, w: C<f64>) -> OmegaPoint<f64> {
        OmegaPoint::finite(z, w).unwrap()
    }

    #[test]
    fn sum_examples() {
        let p = pt(c(0.3, 0.2), c(-0.4, 0.5));
        let q = pt(c(1.3, -0.2), c(0.1, 0.5));
        assert!((zonal_sum(0, &p, &q) - 1.0).norm() < 1e-15);
        for m in 0..6 {
            assert!((zonal_sum(m, &p, &p) - (2 * m + 1) as f64).norm() < 1e-10 * (2 * m + 1) as f64);
        }
        let z = ZonalEvaluator::<f64>::new(4);
        assert_eq!(z.factors.len(), 9);
        assert_eq!(z.factors[1], z.factors[7]);
    }

    #[test]
    fn sum_matches_pullback() {
        let mut r = rng(11);
        for m in 0..=6 {
            for _ in 0..10 {
                let p1: OmegaPoint<f64> = random_omega_point(&mut r);
                let p2: OmegaPoint<f64> = random_omega_point(&mut r);
                let a = zonal_sum(m, &p1, &p2);
                let b = zonal_pullback(m, &p1, &p2).unwrap();
                assert!((a - b).norm() < 1e-10 * (1.0 + b.norm()), "m={m} {p1} {p2}: {a} vs {b}");
                let s = zonal_sum(m, &p2, &p1);
                assert!((a - s).norm() < 1e-10 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn pullback_examples() {
        let p = pt(c(0.3, 0.2), c(-0.4, 0.5));
        let z = zonal_pullback(3, &p, &OmegaPoint::origin()).unwrap();
        assert!((z - pfm_eval(PFMIndex::new(3, 0), &p) * 7.0).norm() < 1e-12);
        assert!((zonal_pullback(3, &p, &p).unwrap() - 7.0).norm() < 1e-12);
        let q = pt(c(0.5, -0.1), c(0.2, 0.7));
        let a = zonal_pullback_branch(4, &p, &q, Branch::T).unwrap();
        let b = zonal_pullback_branch(4, &p, &q, Branch::TTilde).unwrap();
        assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
        assert!(zonal_pullback_branch(2, &p, &OmegaPoint::origin(), Branch::TTilde).is_err());
    }

    #[test]
    fn invariance() {
        let mut r = rng(3);
        let pairs: Vec<_> =
            (0..20).map(|_| (random_bidisk_point(&mut r, 0.7), random_bidisk_point(&mut r, 0.7))).collect();
        assert!(zonal_invariance_residual(3, &MoebiusMap::identity(), &pairs).unwrap() == 0.0);
        let rho = MoebiusMap::rho(c(0.7, 1.2)).unwrap();
        assert!(zonal_invariance_residual(3, &rho, &pairs).unwrap() < 1e-10);
        let t = MoebiusMap::t_zw(c(0.2, -0.1), c(0.3, 0.2)).unwrap();
        assert!(zonal_invariance_residual(4, &t, &pairs).unwrap() < 1e-10);
        for _ in 0..5 {
            let t = random_moebius(&mut r).compose(&random_moebius(&mut r));
            let res = zonal_invariance_residual(4, &t, &pairs).unwrap();
            assert!(res < 1e-9, "{res} {t}");
        }
    }

    #[test]
    fn fixed_points() {
        let mut r = rng(5);
        let samples: Vec<_> = (0..20).map(|_| random_bidisk_point(&mut r, 0.6)).collect();
        let o = OmegaPoint::origin();
        assert!(fixed_point_invariance(3, &o, c(1.0, 0.0), &samples).unwrap() < 1e-14);
        assert!(fixed_point_invariance(3, &o, c(0.0, 1.0), &samples).unwrap() < 1e-10);
        let uv = pt(c(0.4, 0.0), c(0.1, 0.0));
        let g = Complex::from_polar(1.0, 2.0);
        assert!(fixed_point_invariance(4, &uv, g, &samples).unwrap() < 1e-9);
    }

    #[test]
    fn reproducing() {
        let q = SphereQuadrature::<f64>::new(48, 64).unwrap();
        let one = |_: &OmegaPoint<f64>| Ok(c(1.0, 0.0));
        assert!(reproducing_residual(0, one, &OmegaPoint::origin(), &q).unwrap() < 1e-13);
        let p3 = |p: &OmegaPoint<f64>| Ok(pfm_eval(PFMIndex::new(3, 0), p));
        assert!(reproducing_residual(3, p3, &OmegaPoint::origin(), &q).unwrap() < 1e-9);
        let mix = |p: &OmegaPoint<f64>| {
            Ok(pfm_eval(PFMIndex::new(2, 1), p) * c(0.3, -1.0)
                + pfm_eval(PFMIndex::new(2, -2), p) * 2.0
                + pfm_eval(PFMIndex::new(2, 0), p))
        };
        let at = pt(c(0.2, 0.1), c(-0.3, 0.4));
        assert!(reproducing_residual(2, mix, &at, &q).unwrap() < 1e-8);
    }

    #[test]
    fn sphere_restriction() {
        let inf = ExtendedComplex::Infinity;
        let pts: Vec<ExtendedComplex<f64>> =
            vec![c(0.0, 0.0).into(), c(0.3, -0.8).into(), c(2.0, 1.5).into(), inf, c(-5.0, 0.2).into()];
        for m in 0..=6 {
            for z in &pts {
                assert!((zonal_sphere(m, *z, *z).unwrap() - (2 * m + 1) as f64).abs() < 1e-10);
                for u in &pts {
                    let a = zonal_sphere(m, *z, *u).unwrap();
                    let b = zonal_sphere_sum(m, *z, *u).unwrap();
                    let d = zonal_sphere_addition(m, *z, *u).unwrap();
                    assert!((a - b).abs() < 1e-9 && (a - d).abs() < 1e-9, "m={m}: {a} {b} {d}");
                    assert!(a.abs() <= (2 * m + 1) as f64 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn disk_restriction() {
        let mut r = rng(9);
        assert!((zonal_disk(0, c(0.1, 0.2), c(-0.5, 0.3)).unwrap() - 1.0).abs() < 1e-15);
        let psi = |z: C<f64>| {
            let a = c(0.3, -0.4);
            let e = Complex::from_polar(1.0, 0.7);
            e * (z - a) / (c(1.0, 0.0) - a.conj() * z)
        };
        for _ in 0..20 {
            let z: C<f64> = random_in_disk(&mut r, 0.8);
            let u: C<f64> = random_in_disk(&mut r, 0.8);
            for m in 0..=4 {
                assert!((zonal_disk(m, z, z).unwrap() - (2 * m + 1) as f64).abs() < 1e-10);
                let a = zonal_disk(m, z, u).unwrap();
                let b = zonal_disk(m, psi(z), psi(u)).unwrap();
                assert!((a - b).abs() < 1e-9 * (1.0 + a.abs()));
            }
        }
        assert!(zonal_disk(1, c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn conjugation() {
        for idx in PFMIndex::all_up_to(5) {
            for u in [c(0.3, 0.4), c(-2.0, 1.0), c(0.0, 0.0)] {
                assert!(
                    conjugation_defect(idx, u.into()).norm()
                        < 1e-12 * (1.0 + pfm_eval(idx, &rotated_diagonal(u.into())).norm())
                );
            }
        }
    }
}
