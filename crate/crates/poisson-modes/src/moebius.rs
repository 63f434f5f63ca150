//! The Möbius group of Ω: maps `(z,w) ↦ (ψz, ιψ w)` and `(z,w) ↦ (ψw, ιψ z)`
//! with `ιψ(ζ) = 1/ψ(1/ζ)`, cross ratios, Laplacian invariance and the
//! pullback expansion of `P_0^{-m}`.

use std::fmt;

use num::{Complex, One, Zero};

use crate::error::{Error, Result};
use crate::pfm::{laplacian_zw, pfm_eval, ExtendedComplex, OmegaPoint, PFMIndex};
use crate::scalar::{binom_f, sign, Real, C};

/// `ζ ↦ (aζ+b)/(cζ+d)`, stored with determinant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMoebius<T> {
    pub a: C<T>,
    pub b: C<T>,
    pub c: C<T>,
    pub d: C<T>,
}

impl<T: Real> SphereMoebius<T> {
    pub fn new(a: C<T>, b: C<T>, c: C<T>, d: C<T>) -> Result<Self> {
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !(det.norm() > T::epsilon() * scale * scale) {
            return Err(Error::Parameter("singular Möbius matrix".into()));
        }
        let s = det.sqrt();
        Ok(SphereMoebius { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex::one(), Complex::zero());
        SphereMoebius { a: o, b: z, c: z, d: o }
    }

    pub fn det(&self) -> C<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, x: ExtendedComplex<T>) -> ExtendedComplex<T> {
        match x {
            ExtendedComplex::Infinity => {
                if self.c.is_zero() {
                    ExtendedComplex::Infinity
                } else {
                    (self.a / self.c).into()
                }
            }
            ExtendedComplex::Finite(z) => {
                let den = self.c * z + self.d;
                if den.is_zero() {
                    ExtendedComplex::Infinity
                } else {
                    ((self.a * z + self.b) / den).into()
                }
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        let m = SphereMoebius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        };
        let s = m.det().sqrt();
        SphereMoebius { a: m.a / s, b: m.b / s, c: m.c / s, d: m.d / s }
    }

    pub fn inverse(&self) -> Self {
        SphereMoebius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `ιψ(ζ) = 1/ψ(1/ζ)`.
    pub fn iota(&self) -> Self {
        SphereMoebius { a: self.d, b: self.c, c: self.b, d: self.a }
    }

    /// Equality as transformations: the normalized matrices agree up to sign.
    pub fn approx_eq(&self, o: &Self, tol: T) -> bool {
        let diff = |s: T| {
            (self.a - o.a * s).norm()
                + (self.b - o.b * s).norm()
                + (self.c - o.c * s).norm()
                + (self.d - o.d * s).norm()
        };
        diff(T::one()).min(diff(-T::one())) <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(z,w) ↦ (ψz, ιψ w)`
    Direct,
    /// `(z,w) ↦ (ψw, ιψ z)`
    Swapped,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap<T> {
    pub psi: SphereMoebius<T>,
    pub family: Family,
}

impl<T: Real> MoebiusMap<T> {
    pub fn new(psi: SphereMoebius<T>, family: Family) -> Self {
        MoebiusMap { psi, family }
    }

    pub fn identity() -> Self {
        Self::new(SphereMoebius::identity(), Family::Direct)
    }

    /// `𝓕(u,v) = (1/v, 1/u)`.
    pub fn flip() -> Self {
        let (o, z) = (Complex::one(), Complex::zero());
        Self::new(SphereMoebius::new(z, o, o, z).expect("invertible"), Family::Swapped)
    }

    /// `𝒮(u,v) = (v, u)`.
    pub fn swap() -> Self {
        Self::new(SphereMoebius::identity(), Family::Swapped)
    }

    /// `ρ_γ(u,v) = (γu, v/γ)`.
    pub fn rho(gamma: C<T>) -> Result<Self> {
        let (o, z) = (Complex::one(), Complex::zero());
        Ok(Self::new(SphereMoebius::new(gamma, z, z, o)?, Family::Direct))
    }

    /// `T_{z,w}(u,v) = ((z-u)/(1-wu), (w-v)/(1-zv))`, the involution exchanging `(z,w)` and `(0,0)`.
    pub fn t_zw(z: C<T>, w: C<T>) -> Result<Self> {
        OmegaPoint::finite(z, w)?;
        let o = Complex::one();
        Ok(Self::new(SphereMoebius::new(-o, z, -w, o)?, Family::Direct))
    }

    /// `T̃_{z,w} = T_{1/w,1/z} ∘ 𝓕`, for nonzero (possibly infinite) coordinates.
    pub fn t_tilde(z: ExtendedComplex<T>, w: ExtendedComplex<T>) -> Result<Self> {
        if z.is_zero() || w.is_zero() {
            return Err(Error::Domain("T̃ needs nonzero coordinates".into()));
        }
        OmegaPoint::new(z, w)?;
        let (a, b) = (w.recip().finite().expect("nonzero"), z.recip().finite().expect("nonzero"));
        Ok(Self::t_zw(a, b)?.compose(&Self::flip()))
    }

    pub fn apply(&self, p: &OmegaPoint<T>) -> Result<OmegaPoint<T>> {
        let (x, y) = match self.family {
            Family::Direct => (p.z(), p.w()),
            Family::Swapped => (p.w(), p.z()),
        };
        OmegaPoint::new(self.psi.apply(x), self.psi.iota().apply(y))
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        let inner = match self.family {
            Family::Direct => o.psi,
            Family::Swapped => o.psi.iota(),
        };
        let family = if self.family == o.family { Family::Direct } else { Family::Swapped };
        Self::new(self.psi.compose(&inner), family)
    }

    pub fn inverse(&self) -> Self {
        match self.family {
            Family::Direct => Self::new(self.psi.inverse(), Family::Direct),
            Family::Swapped => Self::new(self.psi.inverse().iota(), Family::Swapped),
        }
    }

    pub fn approx_eq(&self, o: &Self, tol: T) -> bool {
        self.family == o.family && self.psi.approx_eq(&o.psi, tol)
    }
}

impl<T: Real> fmt::Display for MoebiusMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |z: C<T>| ExtendedComplex::Finite(z);
        let fam = match self.family {
            Family::Direct => "direct",
            Family::Swapped => "swapped",
        };
        write!(f, "{},{},{},{} {fam}", e(self.psi.a), e(self.psi.b), e(self.psi.c), e(self.psi.d))
    }
}

/// `T = ρ_κ ∘ T_{α,β} ∘ 𝓕^σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm<T> {
    pub kappa: C<T>,
    pub alpha: C<T>,
    pub beta: C<T>,
    pub flipped: bool,
}

impl<T: Real> NormalForm<T> {
    pub fn to_map(&self) -> Result<MoebiusMap<T>> {
        let base = MoebiusMap::rho(self.kappa)?.compose(&MoebiusMap::t_zw(self.alpha, self.beta)?);
        Ok(if self.flipped { base.compose(&MoebiusMap::flip()) } else { base })
    }
}

/// Reads off `κ, α, β` from `ψ^{-1}(0)` and `ψ^{-1}(∞)`; `None` when one of them
/// is not available as a finite generator.
pub fn normal_form<T: Real>(t: &MoebiusMap<T>) -> Option<NormalForm<T>> {
    let SphereMoebius { a, b, c, d } = t.psi;
    match t.family {
        Family::Direct if !a.is_zero() && !d.is_zero() => {
            Some(NormalForm { kappa: -a / d, alpha: -b / a, beta: -c / d, flipped: false })
        }
        Family::Swapped if !b.is_zero() && !c.is_zero() => {
            Some(NormalForm { kappa: -b / c, alpha: -a / b, beta: -d / c, flipped: true })
        }
        _ => None,
    }
}

fn homogeneous<T: Real>(u: &ExtendedComplex<T>) -> (C<T>, C<T>) {
    match u {
        ExtendedComplex::Infinity => (Complex::one(), Complex::zero()),
        ExtendedComplex::Finite(z) => {
            let r = (T::one() + z.norm_sqr()).sqrt();
            (z / r, Complex::new(T::one() / r, T::zero()))
        }
    }
}

/// `[u1,u2,u3,u4] = (u1-u3)(u2-u4) / ((u1-u4)(u2-u3))`, with the limits at `∞`.
pub fn cross_ratio<T: Real>(u: [ExtendedComplex<T>; 4]) -> Result<ExtendedComplex<T>> {
    let h: Vec<_> = u.iter().map(homogeneous).collect();
    let dd = |i: usize, j: usize| h[i].0 * h[j].1 - h[j].0 * h[i].1;
    let num = dd(0, 2) * dd(1, 3);
    let den = dd(0, 3) * dd(1, 2);
    let eps = T::epsilon() * T::lit(16.0);
    match (num.norm() <= eps, den.norm() <= eps) {
        (true, true) => Err(Error::Indeterminate("cross ratio 0/0".into())),
        (_, true) => Ok(ExtendedComplex::Infinity),
        _ => Ok((num / den).into()),
    }
}

/// Whether some Möbius map of Ω sends `p1 ↦ q1` and `p2 ↦ q2`: the cross
/// ratios `[z, 1/w, u, 1/v]` of both pairs coincide.
pub fn two_point_transitive<T: Real>(
    p1: &OmegaPoint<T>,
    p2: &OmegaPoint<T>,
    q1: &OmegaPoint<T>,
    q2: &OmegaPoint<T>,
    tol: T,
) -> Result<bool> {
    let cr = |a: &OmegaPoint<T>, b: &OmegaPoint<T>| cross_ratio([a.z(), a.w().recip(), b.z(), b.w().recip()]);
    Ok(cr(p1, p2)?.chordal_distance(&cr(q1, q2)?) <= tol)
}

/// `max |Δ(F∘T) − (ΔF)∘T| / (1 + |(ΔF)∘T|)` over the samples.
pub fn laplace_invariance_residual<T, F>(t: &MoebiusMap<T>, f: F, samples: &[OmegaPoint<T>], h: T) -> Result<T>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    let mut worst = T::zero();
    for p in samples {
        let lhs = laplacian_zw(|q| f(&t.apply(q)?), p, h)?;
        let rhs = laplacian_zw(&f, &t.apply(p)?, h)?;
        worst = worst.max((lhs - rhs).norm() / (T::one() + rhs.norm()));
    }
    Ok(worst)
}

/// `P_0^{-m} ∘ T = Σ_j c_j B_j` with `B_j = P_j^{-m}` for the direct family and
/// `B_j = P_{-j}^{-m}` for the swapped one.
#[derive(Debug, Clone)]
pub struct PullbackExpansion<T> {
    pub m: u32,
    pub family: Family,
    /// `c_j` for `j = -m..=m`.
    pub coeffs: Vec<C<T>>,
    /// Relative residual of the identity on [`pullback_samples`].
    pub residual: T,
}

impl<T: Real> PullbackExpansion<T> {
    pub fn coeff(&self, j: i32) -> C<T> {
        self.coeffs[(j + self.m as i32) as usize]
    }

    pub fn eval(&self, p: &OmegaPoint<T>) -> C<T> {
        let m = self.m as i32;
        (-m..=m)
            .map(|j| {
                let n = if self.family == Family::Direct { j } else { -j };
                self.coeff(j) * pfm_eval(PFMIndex::new(self.m, n), p)
            })
            .fold(Complex::zero(), |a, b| a + b)
    }
}

/// 50 fixed points of the bidisk of radius 0.7.
pub fn pullback_samples<T: Real>() -> Vec<OmegaPoint<T>> {
    (0..50)
        .map(|k| {
            let k = k as f64;
            let r1 = 0.7 * ((k * 0.618_033_988_75).fract());
            let r2 = 0.7 * ((k * 0.414_213_562_37 + 0.3).fract());
            let z = Complex::from_polar(T::lit(r1), T::lit(k * 2.399_963));
            let w = Complex::from_polar(T::lit(r2), T::lit(k * 1.1 + 0.5));
            OmegaPoint::finite(z, w).expect("bidisk point")
        })
        .collect()
}

/// Coefficients `(-1)^{|j|} C(m+|j|,|j|)/C(m,|j|) · P_{-j}^{-m}(ψ^{-1}(0), 1/ψ^{-1}(∞))`.
pub fn pullback_expand<T: Real>(m: u32, t: &MoebiusMap<T>) -> Result<PullbackExpansion<T>> {
    let inv = t.psi.inverse();
    let anchor = OmegaPoint::new(inv.apply(ExtendedComplex::zero()), inv.apply(ExtendedComplex::Infinity).recip())?;
    let mi = m as i64;
    let coeffs = (-(m as i32)..=m as i32)
        .map(|j| {
            let a = j.unsigned_abs() as i64;
            let r = sign::<T>(a) * binom_f::<T>(mi + a, a) / binom_f::<T>(mi, a);
            pfm_eval(PFMIndex::new(m, -j), &anchor) * r
        })
        .collect();
    let mut out = PullbackExpansion { m, family: t.family, coeffs, residual: T::zero() };
    let idx = PFMIndex::new(m, 0);
    for p in pullback_samples::<T>() {
        let lhs = pfm_eval(idx, &t.apply(&p)?);
        out.residual = out.residual.max((lhs - out.eval(&p)).norm() / (T::one() + lhs.norm()));
    }
    Ok(out)
}

/// Scalars of `ρ_γ ∘ 𝒮^τ ∘ A = B ∘ T` with `A ∈ {T_{u,v}, T̃_{u,v}}` and
/// `B ∈ {T_{u',v'}, T̃_{u',v'}}`, `(u',v') = T(u,v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceScalars<T> {
    pub gamma: C<T>,
    pub tau: u8,
    /// Whether `A` (resp. `B`) is the tilde map.
    pub source_tilde: bool,
    pub target_tilde: bool,
}

fn interchanger<T: Real>(p: &OmegaPoint<T>, tilde: bool) -> Result<MoebiusMap<T>> {
    if tilde {
        MoebiusMap::t_tilde(p.z(), p.w())
    } else {
        let (z, w) = p.coords().ok_or_else(|| Error::Domain("T_{u,v} needs finite coordinates".into()))?;
        MoebiusMap::t_zw(z, w)
    }
}

/// `γ, τ` from the map `B∘T∘A⁻¹`, which fixes the origin and is therefore
/// `ρ_γ` or `ρ_γ∘𝒮`.
pub fn invariance_scalars_via<T: Real>(
    t: &MoebiusMap<T>,
    uv: &OmegaPoint<T>,
    source_tilde: bool,
    target_tilde: bool,
) -> Result<InvarianceScalars<T>> {
    let image = t.apply(uv)?;
    let a = interchanger(uv, source_tilde)?;
    let b = interchanger(&image, target_tilde)?;
    let l = b.compose(t).compose(&a.inverse());
    let SphereMoebius { a: la, b: lb, c: lc, d: ld } = l.psi;
    let scale = la.norm().max(ld.norm());
    if lb.norm() > T::lit(1e3) * T::epsilon() * scale || lc.norm() > T::lit(1e3) * T::epsilon() * scale {
        return Err(Error::Numeric("conjugated map does not fix the origin".into()));
    }
    let tau = if l.family == Family::Direct { 0 } else { 1 };
    Ok(InvarianceScalars { gamma: la / ld, tau, source_tilde, target_tilde })
}

/// The explicit scalars for finite `u, v, u', v'`: `γ = κ(αv-1)/(1-βu)`, `τ = 0`
/// if `T = ρ_κ∘T_{α,β}`, and `γ = κ(α-u)/(v-β)`, `τ = 1` if `T = ρ_κ∘T_{α,β}∘𝓕`.
/// Falls back to [`invariance_scalars_via`] when `T` has no such normal form
/// and for the cases involving `T̃`.
pub fn invariance_scalars<T: Real>(t: &MoebiusMap<T>, uv: &OmegaPoint<T>) -> Result<InvarianceScalars<T>> {
    let image = t.apply(uv)?;
    let source_tilde = uv.coords().is_none();
    let target_tilde = image.coords().is_none();
    if let (Some((u, v)), Some(_), Some(nf)) = (uv.coords(), image.coords(), normal_form(t)) {
        let o = Complex::<T>::one();
        let (num, den) = if nf.flipped { (nf.alpha - u, v - nf.beta) } else { (nf.alpha * v - o, o - nf.beta * u) };
        if !den.is_zero() && !num.is_zero() {
            let tau = if nf.flipped { 1 } else { 0 };
            return Ok(InvarianceScalars {
                gamma: nf.kappa * num / den,
                tau,
                source_tilde: false,
                target_tilde: false,
            });
        }
    }
    invariance_scalars_via(t, uv, source_tilde, target_tilde)
}

/// `max` chordal distance between `ρ_γ∘𝒮^τ∘A(p)` and `B∘T(p)` over the samples.
pub fn invariance_residual<T: Real>(
    t: &MoebiusMap<T>,
    uv: &OmegaPoint<T>,
    s: &InvarianceScalars<T>,
    samples: &[OmegaPoint<T>],
) -> Result<T> {
    let a = interchanger(uv, s.source_tilde)?;
    let b = interchanger(&t.apply(uv)?, s.target_tilde)?;
    let mut left = MoebiusMap::rho(s.gamma)?;
    if s.tau == 1 {
        left = left.compose(&MoebiusMap::swap());
    }
    let left = left.compose(&a);
    let right = b.compose(t);
    let mut worst = T::zero();
    for p in samples {
        worst = worst.max(left.apply(p)?.chordal_distance(&right.apply(p)?));
    }
    Ok(worst)
}

/// Which of the maps `T_{z,w}`, `T̃_{z,w}`, `ρ_γ(∘𝒮)`, `ρ_γ∘𝓕(∘𝒮)` a map
/// exchanging `p` and the origin is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interchange<T> {
    Tzw,
    TTilde,
    Rho(C<T>),
    RhoSwap(C<T>),
    RhoFlip(C<T>),
    RhoFlipSwap(C<T>),
}

pub fn classify_interchange<T: Real>(t: &MoebiusMap<T>, p: &OmegaPoint<T>, tol: T) -> Result<Interchange<T>> {
    let origin = OmegaPoint::origin();
    if t.apply(p)?.chordal_distance(&origin) > tol || t.apply(&origin)?.chordal_distance(p) > tol {
        return Err(Error::Parameter("map does not exchange the point with the origin".into()));
    }
    if p.z().is_zero() && p.w().is_zero() {
        let SphereMoebius { a, d, .. } = t.psi;
        let g = a / d;
        return Ok(if t.family == Family::Direct { Interchange::Rho(g) } else { Interchange::RhoSwap(g) });
    }
    if p.z().is_infinite() && p.w().is_infinite() {
        // ρ_γ∘𝓕 has ψ(ζ) = γ/ζ
        let SphereMoebius { b, c, .. } = t.psi;
        let g = b / c;
        return Ok(if t.family == Family::Swapped { Interchange::RhoFlip(g) } else { Interchange::RhoFlipSwap(g) });
    }
    if let Some((z, w)) = p.coords() {
        if MoebiusMap::t_zw(z, w)?.approx_eq(t, tol) {
            return Ok(Interchange::Tzw);
        }
    }
    if !p.z().is_zero() && !p.w().is_zero() && MoebiusMap::t_tilde(p.z(), p.w())?.approx_eq(t, tol) {
        return Ok(Interchange::TTilde);
    }
    Err(Error::Numeric("no interchange map matches".into()))
}
