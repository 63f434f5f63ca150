//! The inner product `⟨F,G⟩_Ω` over the rotated diagonal `{(z, -z̄)}`, Gram
//! matrices, Schauder coefficients and truncated decompositions.

use std::collections::BTreeMap;

use num::{Complex, Zero};

use crate::error::{Error, Result};
use crate::exact::binom;
use crate::numeric::{gauss_legendre_unit, CompensatedSum};
use crate::pfm::{pfm_eval, OmegaPoint, PFMIndex};
use crate::scalar::{binom_f, Real, C};

pub const DEFAULT_RADIAL_ORDER: usize = 64;
pub const DEFAULT_ANGULAR_ORDER: usize = 256;

/// Product rule on the rotated diagonal: Gauss–Legendre in `u = s/(1+s)`,
/// `s = |z|²`, times the uniform trapezoid rule in `arg z`. Total mass one.
#[derive(Debug, Clone)]
pub struct SphereQuadrature<T> {
    pub radial_nodes: Vec<T>,
    pub radial_weights: Vec<T>,
    pub angular: usize,
}

impl<T: Real> SphereQuadrature<T> {
    pub fn new(radial: usize, angular: usize) -> Result<Self> {
        if radial < 1 || angular < 4 {
            return Err(Error::Parameter(format!("orders too small: R={radial}, A={angular}")));
        }
        let (radial_nodes, radial_weights) = gauss_legendre_unit(radial);
        Ok(SphereQuadrature { radial_nodes, radial_weights, angular })
    }

    pub fn radial_order(&self) -> usize {
        self.radial_nodes.len()
    }

    /// Quadrature nodes on the rotated diagonal with their weights.
    pub fn nodes(&self) -> Vec<(OmegaPoint<T>, T)> {
        let a = T::lit(self.angular as f64);
        let mut out = Vec::with_capacity(self.radial_nodes.len() * self.angular);
        for (u, wr) in self.radial_nodes.iter().zip(&self.radial_weights) {
            let r = (*u / (T::one() - *u)).sqrt();
            for k in 0..self.angular {
                let t = T::lit(2.0 * std::f64::consts::PI * k as f64) / a;
                let z = Complex::from_polar(r, t);
                let p = OmegaPoint::finite(z, -z.conj()).expect("rotated diagonal lies in Ω");
                out.push((p, *wr / a));
            }
        }
        out
    }
}

impl<T: Real> Default for SphereQuadrature<T> {
    fn default() -> Self {
        Self::new(DEFAULT_RADIAL_ORDER, DEFAULT_ANGULAR_ORDER).expect("default orders are valid")
    }
}

/// `⟨F, G⟩_Ω = ∫ F(z,-z̄) conj(G(z,-z̄)) dμ`.
pub fn inner_product<T, F, G>(f: F, g: G, q: &SphereQuadrature<T>) -> Result<C<T>>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
    G: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    let mut acc = CompensatedSum::new();
    for (p, w) in q.nodes() {
        acc.add(f(&p)? * g(&p)?.conj() * w);
    }
    Ok(acc.value())
}

/// `C(m,|n|) / ((2m+1) C(m+|n|,|n|))`, the squared norm of `P_n^{-m}`.
pub fn gram_closed_form(idx: PFMIndex) -> num::BigRational {
    if idx.is_zero() {
        return num::BigRational::zero();
    }
    let (m, a) = (idx.m as i64, idx.n.unsigned_abs() as i64);
    binom(m, a) / (crate::exact::rat(2 * m + 1) * binom(m + a, a))
}

/// Numeric Gram entries `⟨P_n^{-m}, P_q^{-p}⟩_Ω` for all modes with `m, p ≤ m_max`.
pub fn gram_matrix<T: Real>(m_max: u32, q: &SphereQuadrature<T>) -> Vec<(PFMIndex, PFMIndex, C<T>)> {
    let modes = PFMIndex::all_up_to(m_max);
    let nodes = q.nodes();
    let values: Vec<Vec<C<T>>> =
        modes.iter().map(|idx| nodes.iter().map(|(p, _)| pfm_eval(*idx, p)).collect()).collect();
    let mut out = Vec::with_capacity(modes.len() * modes.len());
    for (i, a) in modes.iter().enumerate() {
        for (j, b) in modes.iter().enumerate() {
            let mut acc = CompensatedSum::new();
            for (k, (_, w)) in nodes.iter().enumerate() {
                acc.add(values[i][k] * values[j][k].conj() * *w);
            }
            out.push((*a, *b, acc.value()));
        }
    }
    out
}

/// Deviation of each numeric Gram entry from the diagonal closed form.
pub fn gram_deviations<T: Real>(m_max: u32, q: &SphereQuadrature<T>) -> Vec<(PFMIndex, PFMIndex, T)> {
    gram_matrix(m_max, q)
        .into_iter()
        .map(|(a, b, v)| {
            let expect = if a == b { T::from_rational(&gram_closed_form(a)) } else { T::zero() };
            (a, b, (v - Complex::new(expect, T::zero())).norm())
        })
        .collect()
}

/// Maximum of [`gram_deviations`].
pub fn gram_check<T: Real>(m_max: u32, q: &SphereQuadrature<T>) -> T {
    gram_deviations(m_max, q).into_iter().fold(T::zero(), |acc, (_, _, d)| acc.max(d))
}

fn schauder_scale<T: Real>(idx: PFMIndex) -> T {
    let (m, a) = (idx.m as i64, idx.n.unsigned_abs() as i64);
    T::lit((2 * m + 1) as f64) * binom_f::<T>(m + a, a) / binom_f::<T>(m, a)
}

/// `c_{n,m} = (2m+1) C(m+|n|,|n|)/C(m,|n|) · ⟨F, P_n^{-m}⟩_Ω`.
pub fn schauder_coefficient<T, F>(f: F, idx: PFMIndex, q: &SphereQuadrature<T>) -> Result<C<T>>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    if idx.is_zero() {
        return Err(Error::Parameter(format!("|n| > m for {idx:?}")));
    }
    Ok(inner_product(f, |p| Ok(pfm_eval(idx, p)), q)? * schauder_scale::<T>(idx))
}

/// Truncated expansion `Σ c_{n,m} P_n^{-m}` with its residual diagnostics.
#[derive(Debug, Clone)]
pub struct CoefficientTable<T> {
    pub max_m: u32,
    pub radial_order: usize,
    pub angular_order: usize,
    pub entries: BTreeMap<PFMIndex, C<T>>,
    /// Maximum pointwise reconstruction error on [`residual_grid`].
    pub residual: T,
}

impl<T: Real> CoefficientTable<T> {
    pub fn get(&self, m: u32, n: i32) -> C<T> {
        self.entries.get(&PFMIndex::new(m, n)).copied().unwrap_or_else(Complex::zero)
    }
}

/// A fixed set of 100 points on the rotated diagonal.
pub fn residual_grid<T: Real>() -> Vec<OmegaPoint<T>> {
    let mut out = Vec::with_capacity(100);
    for i in 0..10 {
        let r = T::lit(0.2 * (i + 1) as f64);
        for j in 0..10 {
            let t = T::lit(2.0 * std::f64::consts::PI * j as f64 / 10.0 + 0.1);
            let z = Complex::from_polar(r, t);
            out.push(OmegaPoint::finite(z, -z.conj()).expect("rotated diagonal lies in Ω"));
        }
    }
    out
}

/// All coefficients with `m ≤ m_max`.
pub fn decompose<T, F>(f: F, m_max: u32, q: &SphereQuadrature<T>) -> Result<CoefficientTable<T>>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    let nodes = q.nodes();
    let fv: Vec<C<T>> = nodes.iter().map(|(p, _)| f(p)).collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    for idx in PFMIndex::all_up_to(m_max) {
        let mut acc = CompensatedSum::new();
        for ((p, w), v) in nodes.iter().zip(&fv) {
            acc.add(*v * pfm_eval(idx, p).conj() * *w);
        }
        entries.insert(idx, acc.value() * schauder_scale::<T>(idx));
    }
    let mut table = CoefficientTable {
        max_m: m_max,
        radial_order: q.radial_order(),
        angular_order: q.angular,
        entries,
        residual: T::zero(),
    };
    let mut worst = T::zero();
    for p in residual_grid::<T>() {
        worst = worst.max((f(&p)? - reconstruct(&table, &p)).norm());
    }
    table.residual = worst;
    Ok(table)
}

/// `Σ c_{n,m} P_n^{-m}(pt)` over the table.
pub fn reconstruct<T: Real>(table: &CoefficientTable<T>, pt: &OmegaPoint<T>) -> C<T> {
    let mut acc = CompensatedSum::new();
    for (idx, c) in &table.entries {
        acc.add(*c * pfm_eval(*idx, pt));
    }
    acc.value()
}
