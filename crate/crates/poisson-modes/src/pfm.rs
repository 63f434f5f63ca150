//! Poisson Fourier modes `P_n^{-m}` and the functions `f_{p,q}` on Ω.

use std::fmt;

use num::{Complex, Zero};

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::jacobi::jacobi_poly;
use crate::numeric::{mixed_derivative, CompensatedSum, TwoFold, TwoFoldC};
use crate::scalar::{binom_f, sign, Real, C};

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex<T> {
    Finite(Complex<T>),
    Infinity,
}

impl<T: Real> ExtendedComplex<T> {
    pub fn new(re: T, im: T) -> Self {
        ExtendedComplex::Finite(Complex::new(re, im))
    }

    pub fn zero() -> Self {
        ExtendedComplex::Finite(Complex::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex<T>> {
        match self {
            ExtendedComplex::Finite(z) => Some(*z),
            ExtendedComplex::Infinity => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.finite().is_some_and(|z| z.is_zero())
    }

    /// `1/z` with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            ExtendedComplex::Infinity => ExtendedComplex::zero(),
            ExtendedComplex::Finite(z) if z.is_zero() => ExtendedComplex::Infinity,
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z.inv()),
        }
    }

    /// Product with `∞·0 = 0·∞ = 1` and `∞·z = ∞` otherwise.
    pub fn omega_product(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => ExtendedComplex::Finite(a * b),
            (ExtendedComplex::Infinity, x) | (x, ExtendedComplex::Infinity) => {
                if x.is_zero() {
                    ExtendedComplex::Finite(Complex::new(T::one(), T::zero()))
                } else {
                    ExtendedComplex::Infinity
                }
            }
        }
    }

    /// Chordal distance on the Riemann sphere (diameter 2).
    pub fn chordal_distance(&self, other: &Self) -> T {
        let two = T::lit(2.0);
        match (self, other) {
            (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => T::zero(),
            (ExtendedComplex::Finite(a), ExtendedComplex::Infinity)
            | (ExtendedComplex::Infinity, ExtendedComplex::Finite(a)) => two / (T::one() + a.norm_sqr()).sqrt(),
            (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => {
                two * (a - b).norm() / ((T::one() + a.norm_sqr()) * (T::one() + b.norm_sqr())).sqrt()
            }
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(z.conj()),
            ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtendedComplex::Finite(z) => ExtendedComplex::Finite(-z),
            ExtendedComplex::Infinity => ExtendedComplex::Infinity,
        }
    }
}

impl<T: Real> From<Complex<T>> for ExtendedComplex<T> {
    fn from(z: Complex<T>) -> Self {
        ExtendedComplex::Finite(z)
    }
}

impl<T: Real> fmt::Display for ExtendedComplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedComplex::Infinity => write!(f, "inf"),
            ExtendedComplex::Finite(z) => {
                if z.im < T::zero() {
                    write!(f, "{}-{}i", z.re + T::zero(), -z.im)
                } else {
                    write!(f, "{}+{}i", z.re + T::zero(), z.im.abs())
                }
            }
        }
    }
}

/// A point `(z, w)` of Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaPoint<T> {
    z: ExtendedComplex<T>,
    w: ExtendedComplex<T>,
}

impl<T: Real> OmegaPoint<T> {
    pub fn new(z: ExtendedComplex<T>, w: ExtendedComplex<T>) -> Result<Self> {
        let outside = match z.omega_product(&w) {
            ExtendedComplex::Infinity => false,
            ExtendedComplex::Finite(p) => (p - Complex::new(T::one(), T::zero())).norm() <= T::omega_eps(),
        };
        if outside {
            return Err(Error::Domain(format!("zw = 1 at ({z}, {w})")));
        }
        Ok(OmegaPoint { z, w })
    }

    pub fn finite(z: Complex<T>, w: Complex<T>) -> Result<Self> {
        Self::new(z.into(), w.into())
    }

    pub fn origin() -> Self {
        OmegaPoint { z: ExtendedComplex::zero(), w: ExtendedComplex::zero() }
    }

    pub fn z(&self) -> ExtendedComplex<T> {
        self.z
    }

    pub fn w(&self) -> ExtendedComplex<T> {
        self.w
    }

    /// Both coordinates, if finite.
    pub fn coords(&self) -> Option<(Complex<T>, Complex<T>)> {
        Some((self.z.finite()?, self.w.finite()?))
    }

    pub fn swap(&self) -> Self {
        OmegaPoint { z: self.w, w: self.z }
    }

    /// `(1/w, 1/z)`, again a point of Ω.
    pub fn invert(&self) -> Self {
        OmegaPoint { z: self.w.recip(), w: self.z.recip() }
    }

    /// Sum of the chordal distances of the coordinates.
    pub fn chordal_distance(&self, other: &Self) -> T {
        self.z.chordal_distance(&other.z) + self.w.chordal_distance(&other.w)
    }

    /// Whether evaluation should go through the inversion `(z,w) ↦ (1/w,1/z)`.
    fn prefers_inversion(&self) -> bool {
        match self.coords() {
            None => true,
            Some((z, w)) => (z * w).norm() > T::one(),
        }
    }
}

impl<T: Real> fmt::Display for OmegaPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.z, self.w)
    }
}

/// Degree `m` and Ω-homogeneity `n` of a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PFMIndex {
    pub m: u32,
    pub n: i32,
}

impl PFMIndex {
    pub fn new(m: u32, n: i32) -> Self {
        PFMIndex { m, n }
    }

    /// Eigenvalue `4m(m+1)` of the invariant Laplacian.
    pub fn eigenvalue(&self) -> u64 {
        4 * self.m as u64 * (self.m as u64 + 1)
    }

    /// The mode vanishes identically iff `|n| > m`.
    pub fn is_zero(&self) -> bool {
        self.n.unsigned_abs() > self.m
    }

    /// All indices with `m ≤ max_m`, ordered by `(m, n)`.
    pub fn all_up_to(max_m: u32) -> Vec<PFMIndex> {
        (0..=max_m).flat_map(|m| (-(m as i32)..=m as i32).map(move |n| PFMIndex::new(m, n))).collect()
    }
}

/// `(-1)^n w^n Σ_k C(m,k+n)C(m,k)(zw)^k / (1-zw)^m` for `n ≥ 0`, mirrored for `n < 0`.
fn pfm_finite<T: Real>(m: i64, n: i64, z: C<T>, w: C<T>) -> C<T> {
    if n < 0 {
        return pfm_finite(m, -n, w, z);
    }
    let u = z * w;
    let mut poly: C<T> = Complex::zero();
    for k in (0..=m - n).rev() {
        poly = poly * u + binom_f::<T>(m, k + n) * binom_f::<T>(m, k);
    }
    let one = Complex::new(T::one(), T::zero());
    poly * w.powu(n as u32) * sign::<T>(n) / (one - u).powu(m as u32)
}

/// `P_n^{-m}(z, w)` anywhere on Ω.
pub fn pfm_eval<T: Real>(idx: PFMIndex, p: &OmegaPoint<T>) -> C<T> {
    if idx.is_zero() {
        return Complex::zero();
    }
    let (m, n) = (idx.m as i64, idx.n as i64);
    if p.prefers_inversion() {
        let q = p.invert();
        let (z, w) = q.coords().expect("inverted point is finite");
        return pfm_finite(m, n, z, w) * sign::<T>(m);
    }
    let (z, w) = p.coords().expect("finite point");
    pfm_finite(m, n, z, w)
}

fn pfm_finite_twofold<T: Real>(m: i64, n: i64, z: C<T>, w: C<T>) -> TwoFoldC<T> {
    if n < 0 {
        return pfm_finite_twofold(m, -n, w, z);
    }
    let (zz, ww) = (TwoFoldC::new(z), TwoFoldC::new(w));
    let u = zz * ww;
    let mut poly = TwoFoldC::new(Complex::zero());
    for k in (0..=m - n).rev() {
        let c = TwoFold::new(binom_f::<T>(m, k + n)) * TwoFold::new(binom_f::<T>(m, k));
        poly = poly * u + TwoFoldC::real(c);
    }
    let one = TwoFoldC::new(Complex::new(T::one(), T::zero()));
    let v = poly * ww.powu(n as u32) / (one - u).powu(m as u32);
    v.scale(TwoFold::new(sign::<T>(n)))
}

/// [`pfm_eval`] in double-word arithmetic, for sums that cancel.
pub(crate) fn pfm_eval_twofold<T: Real>(idx: PFMIndex, p: &OmegaPoint<T>) -> TwoFoldC<T> {
    if idx.is_zero() {
        return TwoFoldC::new(Complex::zero());
    }
    let (m, n) = (idx.m as i64, idx.n as i64);
    if p.prefers_inversion() {
        let (z, w) = p.invert().coords().expect("inverted point is finite");
        return pfm_finite_twofold(m, n, z, w).scale(TwoFold::new(sign::<T>(m)));
    }
    let (z, w) = p.coords().expect("finite point");
    pfm_finite_twofold(m, n, z, w)
}

/// The Jacobi-polynomial form of `P_n^{-m}` at a finite point.
pub fn pfm_eval_jacobi<T: Real>(idx: PFMIndex, p: &OmegaPoint<T>) -> Result<C<T>> {
    let (z, w) = p.coords().ok_or_else(|| Error::Domain("Jacobi form needs finite coordinates".into()))?;
    if idx.is_zero() {
        return Err(Error::Parameter(format!("|n| > m for {idx:?}")));
    }
    let a = idx.n.unsigned_abs();
    let poly = jacobi_poly((idx.m - a) as usize, &rat(a as i64), &rat(a as i64));
    let one = Complex::new(T::one(), T::zero());
    let u = z * w;
    let x = (u + one) / (u - one);
    let tail = if idx.n >= 0 { w.powu(a) } else { z.powu(a) };
    Ok(poly.eval(x) * tail * sign::<T>(idx.m as i64) / (one - u).powu(a))
}

/// Trapezoid rule for `(1/2π)∫((1-zw)/((1-ze^{-it})(1-we^{it})))^{-m} e^{-int} dt` on the bidisk.
pub fn pfm_fourier_integral<T: Real>(idx: PFMIndex, z: C<T>, w: C<T>, nodes: usize) -> Result<C<T>> {
    if z.norm() >= T::one() || w.norm() >= T::one() {
        return Err(Error::Domain("Fourier form needs |z|, |w| < 1".into()));
    }
    if nodes == 0 {
        return Err(Error::Parameter("at least one node".into()));
    }
    let one = Complex::new(T::one(), T::zero());
    let m = idx.m;
    let mut acc = CompensatedSum::new();
    for k in 0..nodes {
        let t = T::lit(2.0 * std::f64::consts::PI * k as f64 / nodes as f64);
        let e = Complex::new(t.cos(), t.sin());
        let base = (one - z * e.conj()) * (one - w * e) / (one - z * w);
        let phase = Complex::new((t * T::lit(idx.n as f64)).cos(), -(t * T::lit(idx.n as f64)).sin());
        acc.add(base.powu(m) * phase);
    }
    Ok(acc.value() / T::lit(nodes as f64))
}

/// `f_{p,q}(z,w) = z^p w^q / (1-zw)^{max(p,q)}`, continued to the charts at ∞.
pub fn f_pq_eval<T: Real>(p: u32, q: u32, pt: &OmegaPoint<T>) -> C<T> {
    let big = p.max(q);
    let one = Complex::new(T::one(), T::zero());
    if pt.prefers_inversion() {
        // a = 1/z, b = 1/w: f = (-1)^M a^{M-p} b^{M-q} / (1-ab)^M
        let a = pt.z.recip().finite().expect("finite");
        let b = pt.w.recip().finite().expect("finite");
        return a.powu(big - p) * b.powu(big - q) * sign::<T>(big as i64) / (one - a * b).powu(big);
    }
    let (z, w) = pt.coords().expect("finite point");
    z.powu(p) * w.powu(q) / (one - z * w).powu(big)
}

/// `Δ_zw F = 4(1-zw)² ∂_z∂_w F` by a fourth-order stencil of step `h`, shrunk near `zw = 1`.
pub fn laplacian_zw<T, F>(f: F, pt: &OmegaPoint<T>, h: T) -> Result<C<T>>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    let (z, w) = pt.coords().ok_or_else(|| Error::Domain("stencil needs finite coordinates".into()))?;
    let one = Complex::new(T::one(), T::zero());
    let d = one - z * w;
    let h = h * d.norm().min(T::one());
    let g = |x: C<T>, y: C<T>| {
        let q = OmegaPoint::finite(x, y).map_err(|_| Error::Domain("stencil leaves Ω".into()))?;
        f(&q)
    };
    Ok(mixed_derivative(g, z, w, h)? * d * d * T::lit(4.0))
}

/// `max |Δ_zw P − 4m(m+1)P| / (1+|P|)` over the samples.
pub fn eigen_residual<T: Real>(idx: PFMIndex, samples: &[OmegaPoint<T>], h: T) -> Result<T> {
    let lambda = T::lit(idx.eigenvalue() as f64);
    let mut worst = T::zero();
    for p in samples {
        let lap = laplacian_zw(|q| Ok(pfm_eval(idx, q)), p, h)?;
        let v = pfm_eval(idx, p);
        worst = worst.max((lap - v * lambda).norm() / (T::one() + v.norm()));
    }
    Ok(worst)
}

/// `P(ξz, w/ξ) = ξ^{-n} P(z,w)` for unit `ξ`.
pub fn homogeneity_check<T: Real>(idx: PFMIndex, pt: &OmegaPoint<T>, xi: C<T>, tol: T) -> Result<bool> {
    let scale = |x: ExtendedComplex<T>, s: C<T>| match x {
        ExtendedComplex::Finite(v) => ExtendedComplex::Finite(v * s),
        ExtendedComplex::Infinity => ExtendedComplex::Infinity,
    };
    let q = OmegaPoint::new(scale(pt.z, xi), scale(pt.w, xi.inv()))?;
    let lhs = pfm_eval(idx, &q);
    let rhs = pfm_eval(idx, pt) * crate::scalar::cpow(xi, -(idx.n as i64));
    Ok((lhs - rhs).norm() <= tol * (T::one() + rhs.norm()))
}

/// `√(2m+1) · C(m,|n|)^{-1/2} · C(-m-1,|n|)^{1/2}`, principal root: the
/// factor is real for even `|n|` and imaginary for odd `|n|`.
pub fn y_normalization<T: Real>(idx: PFMIndex) -> C<T> {
    if idx.is_zero() {
        return Complex::zero();
    }
    let (m, a) = (idx.m as i64, idx.n.unsigned_abs() as i64);
    let r = (T::lit((2 * m + 1) as f64) * binom_f::<T>(m + a, a) / binom_f::<T>(m, a)).sqrt();
    if a % 2 == 0 {
        Complex::new(r, T::zero())
    } else {
        Complex::new(T::zero(), r)
    }
}

/// Orthonormal mode `Y_n^{-m}`.
pub fn y_eval<T: Real>(idx: PFMIndex, pt: &OmegaPoint<T>) -> C<T> {
    y_normalization::<T>(idx) * pfm_eval(idx, pt)
}

pub type ExtendedComplex64 = ExtendedComplex<f64>;
pub type OmegaPoint64 = OmegaPoint<f64>;

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C<f64> {
        Complex::new(re, im)
    }

    fn pt(z: C<f64>, w: C<f64>) -> OmegaPoint64 {
        OmegaPoint::finite(z, w).unwrap()
    }

    fn close(a: C<f64>, b: C<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn examples() {
        let p = pt(c(0.3, -0.2), c(0.1, 0.5));
        assert!(close(pfm_eval(PFMIndex::new(0, 0), &p), c(1.0, 0.0), 1e-15));
        let (z, w) = p.coords().unwrap();
        let one = c(1.0, 0.0);
        assert!(close(pfm_eval(PFMIndex::new(1, 0), &p), (one + z * w) / (one - z * w), 1e-14));
        assert!(close(pfm_eval(PFMIndex::new(1, 0), &OmegaPoint::origin()), one, 1e-15));
        let half = pt(c(0.5, 0.0), c(0.5, 0.0));
        assert!(close(pfm_eval(PFMIndex::new(1, 1), &half), c(-2.0 / 3.0, 0.0), 1e-15));
        assert_eq!(pfm_eval(PFMIndex::new(1, 2), &p), Complex::zero());
    }

    #[test]
    fn domain_rejects_unit_product() {
        assert!(OmegaPoint::finite(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(OmegaPoint::finite(c(2.0, 0.0), c(0.5, 0.0)).is_err());
        assert!(OmegaPoint::new(ExtendedComplex::Infinity, ExtendedComplex::<f64>::zero()).is_err());
        assert!(OmegaPoint::new(ExtendedComplex::Infinity, ExtendedComplex::<f64>::Infinity).is_ok());
        assert!(OmegaPoint::new(ExtendedComplex::<f64>::Infinity, c(2.0, 0.0).into()).is_ok());
    }

    #[test]
    fn jacobi_form_examples() {
        let one = c(1.0, 0.0);
        assert!(close(pfm_eval_jacobi(PFMIndex::new(1, 0), &OmegaPoint::origin()).unwrap(), one, 1e-15));
        let p = pt(c(0.3, 0.0), c(0.2, 0.0));
        let idx = PFMIndex::new(2, 1);
        assert!(close(pfm_eval_jacobi(idx, &p).unwrap(), pfm_eval(idx, &p), 1e-12));
        let q = pt(c(0.7, 0.2), c(-0.4, 0.3));
        let idx = PFMIndex::new(3, 3);
        let (z, w) = q.coords().unwrap();
        let expect = -w.powu(3) / (one - z * w).powu(3);
        assert!(close(pfm_eval_jacobi(idx, &q).unwrap(), expect, 1e-13));
        assert!(pfm_eval_jacobi(PFMIndex::new(1, 2), &q).is_err());
    }

    #[test]
    fn fourier_examples() {
        let idx = PFMIndex::new(0, 0);
        let v = pfm_fourier_integral(idx, c(0.2, 0.1), c(0.3, 0.0), 8).unwrap();
        assert!(close(v, c(1.0, 0.0), 1e-15));
        let v = pfm_fourier_integral(PFMIndex::new(1, 0), c(0.5, 0.0), c(0.25, 0.0), 256).unwrap();
        assert!((v - c(1.125 / 0.875, 0.0)).norm() < 1e-12);
        let idx = PFMIndex::new(3, -2);
        let v = pfm_fourier_integral(idx, c(0.0, 0.4), c(0.3, 0.0), 256).unwrap();
        assert!(close(v, pfm_eval(idx, &pt(c(0.0, 0.4), c(0.3, 0.0))), 1e-10));
        assert!(pfm_fourier_integral(idx, c(1.2, 0.0), c(0.0, 0.0), 64).is_err());
    }

    #[test]
    fn f_examples() {
        let p = pt(c(0.3, 0.4), c(-0.2, 0.1));
        assert!(close(f_pq_eval(0, 0, &p), c(1.0, 0.0), 1e-15));
        let half = pt(c(0.5, 0.0), c(0.5, 0.0));
        assert!(close(f_pq_eval(1, 1, &half), c(1.0 / 3.0, 0.0), 1e-15));
        let v = f_pq_eval(1, 2, &pt(c(0.2, 0.0), c(0.5, 0.0)));
        assert!(close(v, c(0.2 * 0.25 / 0.81, 0.0), 1e-15));
    }

    #[test]
    fn f_at_infinity_is_continuous() {
        let big = 1e7;
        for (p, q) in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (2, 2)] {
            let at_inf = OmegaPoint::new(ExtendedComplex::Infinity, c(0.3, 0.2).into()).unwrap();
            let near = pt(c(big, 0.0), c(0.3, 0.2));
            assert!(close(f_pq_eval(p, q, &near), f_pq_eval(p, q, &at_inf), 1e-6), "({p},{q})");
        }
    }

    #[test]
    fn laplacian_examples() {
        let p = pt(c(0.2, 0.0), c(0.3, 0.0));
        let h = 1e-4;
        assert!(laplacian_zw(|_| Ok(c(1.0, 0.0)), &p, h).unwrap().norm() < 1e-9);
        let idx = PFMIndex::new(1, 1);
        let lap = laplacian_zw(|q| Ok(pfm_eval(idx, q)), &p, h).unwrap();
        assert!(close(lap, pfm_eval(idx, &p) * 8.0, 1e-6));
        let lap = laplacian_zw(|q| Ok(q.coords().unwrap().0), &p, h).unwrap();
        assert!(lap.norm() < 1e-8);
        let lap = laplacian_zw(|q| Ok(f_pq_eval(1, 0, q)), &p, h).unwrap();
        assert!(close(lap, f_pq_eval(1, 0, &p) * 8.0, 1e-6));
    }

    #[test]
    fn homogeneity_examples() {
        let p = pt(c(0.3, 0.0), c(0.4, 0.0));
        assert!(homogeneity_check(PFMIndex::new(2, 0), &p, c(0.6, 0.8), 1e-12).unwrap());
        assert!(homogeneity_check(PFMIndex::new(2, 1), &p, c(0.0, 1.0), 1e-12).unwrap());
        let xi = C::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert!(homogeneity_check(PFMIndex::new(3, -2), &p, xi, 1e-12).unwrap());
    }

    #[test]
    fn y_examples() {
        assert!(close(y_eval(PFMIndex::new(0, 0), &pt(c(0.3, 0.1), c(0.2, 0.0))), c(1.0, 0.0), 1e-15));
        assert!(close(y_eval(PFMIndex::new(1, 0), &OmegaPoint::origin()), c(3f64.sqrt(), 0.0), 1e-15));
        assert_eq!(y_normalization::<f64>(PFMIndex::new(2, 1)), y_normalization::<f64>(PFMIndex::new(2, -1)));
    }

    #[test]
    fn f32_evaluation() {
        let p = OmegaPoint::<f32>::finite(Complex::new(0.5, 0.0), Complex::new(0.5, 0.0)).unwrap();
        let v = pfm_eval(PFMIndex::new(1, 1), &p);
        assert!((v.re + 2.0 / 3.0).abs() < 1e-6);
    }
}
