//! The complex two-sphere `z1² + z2² + z3² = 1`, the stereographic
//! biholomorphism with Ω, and complex spherical harmonics.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, Complex, Zero};

use crate::error::{Error, Result};
use crate::exact::{grat, rat, ratio, GaussianRational};
use crate::jacobi::jacobi_poly;
use crate::numeric::{gauss_legendre_unit, CompensatedSum};
use crate::pfm::{pfm_eval, ExtendedComplex, OmegaPoint, PFMIndex};
use crate::quadrature::gram_closed_form;
use crate::scalar::{sign, Real, C};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePointC<T> {
    pub z1: C<T>,
    pub z2: C<T>,
    pub z3: C<T>,
}

fn sphere_tol<T: Real>(z1: C<T>, z2: C<T>, z3: C<T>) -> T {
    T::omega_eps() * T::lit(100.0) * (T::one() + z1.norm_sqr() + z2.norm_sqr() + z3.norm_sqr())
}

impl<T: Real> SpherePointC<T> {
    pub fn new(z1: C<T>, z2: C<T>, z3: C<T>) -> Result<Self> {
        let p = SpherePointC { z1, z2, z3 };
        let r = (p.square_sum() - T::one()).norm();
        if !(r <= sphere_tol(z1, z2, z3)) {
            return Err(Error::Domain(format!("not on the complex sphere: |Σz²-1| = {r}")));
        }
        Ok(p)
    }

    /// A point of the real unit sphere.
    pub fn real(x1: T, x2: T, x3: T) -> Result<Self> {
        let z = |x: T| Complex::new(x, T::zero());
        Self::new(z(x1), z(x2), z(x3))
    }

    pub fn square_sum(&self) -> C<T> {
        self.z1 * self.z1 + self.z2 * self.z2 + self.z3 * self.z3
    }

    pub fn is_real(&self, tol: T) -> bool {
        self.z1.im.abs() <= tol && self.z2.im.abs() <= tol && self.z3.im.abs() <= tol
    }

    pub fn distance(&self, other: &Self) -> T {
        ((self.z1 - other.z1).norm_sqr() + (self.z2 - other.z2).norm_sqr() + (self.z3 - other.z3).norm_sqr()).sqrt()
    }
}

impl<T: Real> fmt::Display for SpherePointC<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |z: C<T>| ExtendedComplex::Finite(z);
        write!(f, "{},{},{}", e(self.z1), e(self.z2), e(self.z3))
    }
}

/// The complex stereographic map `S : Ω → 𝕊²_ℂ`.
pub fn stereo<T: Real>(p: &OmegaPoint<T>) -> SpherePointC<T> {
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let zero = Complex::zero();
    let (z1, z2, z3) = match (p.z(), p.w()) {
        (ExtendedComplex::Finite(z), ExtendedComplex::Finite(w)) => {
            let d = one - z * w;
            ((z - w) / d, -i * (z + w) / d, -(one + z * w) / d)
        }
        (ExtendedComplex::Finite(z), ExtendedComplex::Infinity) => (z.inv(), i / z, one),
        (ExtendedComplex::Infinity, ExtendedComplex::Finite(w)) => (-w.inv(), i / w, one),
        (ExtendedComplex::Infinity, ExtendedComplex::Infinity) => (zero, zero, one),
    };
    SpherePointC { z1, z2, z3 }
}

/// Picks the better-conditioned of two equal quotients; `∞` if both
/// denominators vanish.
fn chart<T: Real>(n1: C<T>, d1: C<T>, n2: C<T>, d2: C<T>, eps: T) -> ExtendedComplex<T> {
    if d1.norm().max(d2.norm()) <= eps {
        return ExtendedComplex::Infinity;
    }
    if d1.norm() >= d2.norm() {
        (n1 / d1).into()
    } else {
        (n2 / d2).into()
    }
}

/// The inverse map `S⁻¹ : 𝕊²_ℂ → Ω`.
pub fn stereo_inv<T: Real>(s: &SpherePointC<T>) -> Result<OmegaPoint<T>> {
    let r = (s.square_sum() - T::one()).norm();
    if !(r <= sphere_tol(s.z1, s.z2, s.z3)) {
        return Err(Error::Domain(format!("not on the complex sphere: |Σz²-1| = {r}")));
    }
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let eps = T::omega_eps();
    let (p, m) = (s.z1 + i * s.z2, s.z1 - i * s.z2);
    let z = chart(p, one - s.z3, one + s.z3, m, eps);
    let w = chart(-m, one - s.z3, -(one + s.z3), p, eps);
    OmegaPoint::new(z, w)
}

/// `√(z1²+z2²+z3²)`, principal branch.
pub fn complex_norm<T: Real>(v: [C<T>; 3]) -> Result<C<T>> {
    let s = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    if s.im.abs() <= T::epsilon() * s.norm() && s.re <= T::zero() {
        return Err(Error::Domain(format!("z1²+z2²+z3² = {s} lies on the branch cut")));
    }
    Ok(s.sqrt())
}

/// `Q_n^{-m} = P_n^{-m} ∘ S⁻¹`.
pub fn spfm_eval<T: Real>(idx: PFMIndex, s: &SpherePointC<T>) -> Result<C<T>> {
    Ok(pfm_eval(idx, &stereo_inv(s)?))
}

/// `(-1)^m ((∓z1 + i z2)/2)^{|n|} P_{m-|n|}^{(|n|,|n|)}(z3)`, upper sign for `n ≥ 0`.
pub fn csh_closed_form<T: Real>(idx: PFMIndex, s: &SpherePointC<T>) -> C<T> {
    if idx.is_zero() {
        return Complex::zero();
    }
    let a = idx.n.unsigned_abs();
    let x1 = if idx.n >= 0 { -s.z1 } else { s.z1 };
    let base = (x1 + Complex::new(T::zero(), T::one()) * s.z2) / T::lit(2.0);
    let q = rat(a as i64);
    let poly = jacobi_poly((idx.m - a) as usize, &q, &q);
    base.powu(a) * poly.eval(s.z3) * sign::<T>(idx.m as i64)
}

/// Polynomial in `(z1, z2, z3)` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrivariatePoly {
    pub terms: BTreeMap<(u32, u32, u32), GaussianRational>,
}

fn greal(q: BigRational) -> GaussianRational {
    grat(q, BigRational::zero())
}

impl TrivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial((0, 0, 0), c)
    }

    pub fn monomial(e: (u32, u32, u32), c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// `z1`, `z2` or `z3` for `k = 0, 1, 2`.
    pub fn var(k: usize) -> Self {
        let e = match k {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        Self::monomial(e, greal(rat(1)))
    }

    pub fn add_term(&mut self, e: (u32, u32, u32), c: GaussianRational) {
        let slot = self.terms.entry(e).or_insert_with(GaussianRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j, k)| i + j + k).max()
    }

    /// Every monomial has total degree `m`.
    pub fn is_homogeneous(&self, m: u32) -> bool {
        self.terms.keys().all(|(i, j, k)| i + j + k == m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, b1, c1), x) in &self.terms {
            for ((a2, b2, c2), y) in &other.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(greal(rat(1))), |acc, _| acc.mul(self))
    }

    pub fn eval<T: Real>(&self, z: [C<T>; 3]) -> C<T> {
        let mut acc = CompensatedSum::new();
        for ((i, j, k), c) in &self.terms {
            let c = Complex::new(T::from_rational(&c.re), T::from_rational(&c.im));
            acc.add(c * z[0].powu(*i) * z[1].powu(*j) * z[2].powu(*k));
        }
        acc.value()
    }

    pub fn eval_exact(&self, z: &[GaussianRational; 3]) -> GaussianRational {
        let pw = |b: &GaussianRational, e: u32| (0..e).fold(greal(rat(1)), |acc, _| acc * b);
        self.terms.iter().fold(GaussianRational::zero(), |acc, ((i, j, k), c)| {
            acc + c * pw(&z[0], *i) * pw(&z[1], *j) * pw(&z[2], *k)
        })
    }

    /// Monomials `(i, j, k, coefficient)` in key order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, u32, &GaussianRational)> {
        self.terms.iter().map(|((i, j, k), c)| (*i, *j, *k, c))
    }
}

/// `Σ_k ∂²/∂z_k²`, exactly.
pub fn laplacian_c3(p: &TrivariatePoly) -> TrivariatePoly {
    let mut out = TrivariatePoly::zero();
    for ((i, j, k), c) in &p.terms {
        if *i >= 2 {
            out.add_term((i - 2, *j, *k), c * greal(rat((i * (i - 1)) as i64)));
        }
        if *j >= 2 {
            out.add_term((*i, j - 2, *k), c * greal(rat((j * (j - 1)) as i64)));
        }
        if *k >= 2 {
            out.add_term((*i, *j, k - 2), c * greal(rat((k * (k - 1)) as i64)));
        }
    }
    out
}

/// The `m`-homogeneous harmonic polynomial whose restriction to the sphere is
/// [`csh_closed_form`]: each `z3^{k-2j}` of the parity expansion of the Jacobi
/// factor picks up `(z1²+z2²+z3²)^j`.
pub fn harmonic_polynomial(m: u32, n: i32) -> Result<TrivariatePoly> {
    let idx = PFMIndex::new(m, n);
    if idx.is_zero() {
        return Err(Error::Parameter(format!("|n| > m for {idx:?}")));
    }
    let a = n.unsigned_abs();
    let k = m - a;
    let q = rat(a as i64);
    let jac = jacobi_poly(k as usize, &q, &q);
    let r2 = TrivariatePoly::var(0).pow(2).add(&TrivariatePoly::var(1).pow(2)).add(&TrivariatePoly::var(2).pow(2));
    let mut radial = TrivariatePoly::zero();
    for (i, c) in jac.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = (k as usize - i) / 2;
        let term = TrivariatePoly::var(2).pow(i as u32).mul(&r2.pow(j as u32)).scale(&greal(c.clone()));
        radial = radial.add(&term);
    }
    let s1 = if n >= 0 { ratio(-1, 2) } else { ratio(1, 2) };
    let base = TrivariatePoly::var(0)
        .scale(&greal(s1))
        .add(&TrivariatePoly::var(1).scale(&grat(BigRational::zero(), ratio(1, 2))));
    let sgn = if m.is_multiple_of(2) { rat(1) } else { rat(-1) };
    Ok(base.pow(a).mul(&radial).scale(&greal(sgn)))
}

/// Maximum deviation of `∫_{𝕊²_ℝ} Q_n^{-m} conj(Q_q^{-p}) dx` (normalized
/// measure) from the diagonal closed form, over all modes with `m ≤ m_max`.
///
/// Integrates directly on the real sphere: Gauss–Legendre in `x3` times the
/// trapezoid rule in the azimuth, both exact for these degrees.
pub fn sphere_gram_check<T: Real>(m_max: u32) -> Result<T> {
    let radial = m_max as usize + 4;
    let angular = 4 * m_max as usize + 8;
    let (u, wu) = gauss_legendre_unit::<T>(radial);
    let mut pts = Vec::with_capacity(radial * angular);
    for (x, wx) in u.iter().zip(&wu) {
        let x3 = T::lit(2.0) * *x - T::one();
        let rho = (T::one() - x3 * x3).sqrt();
        for k in 0..angular {
            let phi = T::lit(2.0 * std::f64::consts::PI * k as f64 / angular as f64);
            let s = SpherePointC::real(rho * phi.cos(), rho * phi.sin(), x3)?;
            pts.push((s, *wx / T::lit(angular as f64)));
        }
    }
    let modes = PFMIndex::all_up_to(m_max);
    let vals: Vec<Vec<C<T>>> = modes
        .iter()
        .map(|idx| pts.iter().map(|(s, _)| spfm_eval(*idx, s)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let mut worst = T::zero();
    for (i, a) in modes.iter().enumerate() {
        for (j, b) in modes.iter().enumerate() {
            let mut acc = CompensatedSum::new();
            for (k, (_, w)) in pts.iter().enumerate() {
                acc.add(vals[i][k] * vals[j][k].conj() * *w);
            }
            let expect = if a == b { T::from_rational(&gram_closed_form(*a)) } else { T::zero() };
            worst = worst.max((acc.value() - Complex::new(expect, T::zero())).norm());
        }
    }
    Ok(worst)
}

/// `S⁻¹(i x1, i x2, x3)` for a point of the two-sheeted hyperboloid
/// `x3² - x1² - x2² = 1`.
pub fn hyperboloid_image<T: Real>(x: [T; 3]) -> Result<OmegaPoint<T>> {
    let r = x[2] * x[2] - x[0] * x[0] - x[1] * x[1] - T::one();
    if r.abs() > T::omega_eps() * T::lit(100.0) * (T::one() + x[2] * x[2]) {
        return Err(Error::Domain(format!("not on the hyperboloid: residual {r}")));
    }
    let s =
        SpherePointC::new(Complex::new(T::zero(), x[0]), Complex::new(T::zero(), x[1]), Complex::new(x[2], T::zero()))?;
    stereo_inv(&s)
}

/// Whether every lower-sheet sample maps to some `(z, z̄)` with `|z| < 1`.
pub fn hyperboloid_check<T: Real>(samples: &[[T; 3]], tol: T) -> Result<bool> {
    for x in samples {
        if x[2] > -T::one() + tol {
            return Err(Error::Domain("sample is not on the lower sheet".into()));
        }
        let p = hyperboloid_image(*x)?;
        let Some((z, w)) = p.coords() else { return Ok(false) };
        if (w - z.conj()).norm() > tol * (T::one() + z.norm()) || z.norm() >= T::one() {
            return Ok(false);
        }
    }
    Ok(true)
}
