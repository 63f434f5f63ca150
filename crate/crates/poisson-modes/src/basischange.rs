//! Exact two-way basis change between the functions `f_{p,q}` and the modes
//! `P_n^{-m}`, and the double binomial sum that drives it.

use std::collections::BTreeMap;

use num::{BigRational, Complex, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom, parity, rat};
use crate::numeric::CompensatedSum;
use crate::pfm::{OmegaPoint, PFMIndex};
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    Pfm(PFMIndex),
    F { p: u32, q: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisChangeRow {
    pub source: BasisIndex,
    pub terms: Vec<(BasisIndex, BigRational)>,
}

/// `P_n^{-m} = Σ_j (-1)^n C(m,|n|+j) C(m+|n|+j, j) f_{j,j+n}` (mirrored for `n < 0`).
pub fn pfm_in_f(m: u32, n: i32) -> BasisChangeRow {
    let idx = PFMIndex::new(m, n);
    let mut terms = Vec::new();
    if !idx.is_zero() {
        let a = n.unsigned_abs();
        let (mi, ai) = (m as i64, a as i64);
        for j in 0..=(m - a) {
            let ji = j as i64;
            let c = parity(ai) * binom(mi, ai + ji) * binom(mi + ai + ji, ji);
            let target = if n >= 0 { BasisIndex::F { p: j, q: j + a } } else { BasisIndex::F { p: j + a, q: j } };
            terms.push((target, c));
        }
    }
    BasisChangeRow { source: BasisIndex::Pfm(idx), terms }
}

/// `a_{s,m,n} = (-1)^s C(m,s) C(2m-s,n)^{-1} (2m-2s+1)/(2m-s+1)`.
pub fn a_coeff(s: u32, m: u32, n: u32) -> BigRational {
    let (s, m, n) = (s as i64, m as i64, n as i64);
    parity(s) * binom(m, s) / binom(2 * m - s, n) * rat(2 * m - 2 * s + 1) / rat(2 * m - s + 1)
}

/// `f_{p,q}` as a finite mode combination:
/// `f_{n,m} = (-1)^{m-n} Σ_{s≤n} a_{s,m,n} P_{m-n}^{-(m-s)}` for `n ≤ m`, mirrored for `p > q`.
pub fn f_in_pfm(p: u32, q: u32) -> BasisChangeRow {
    let (lo, hi) = (p.min(q), p.max(q));
    let k = (hi - lo) as i32;
    let mode_n = if p <= q { k } else { -k };
    let sgn = parity((hi - lo) as i64);
    let terms = (0..=lo).map(|s| (BasisIndex::Pfm(PFMIndex::new(hi - s, mode_n)), &sgn * a_coeff(s, hi, lo))).collect();
    BasisChangeRow { source: BasisIndex::F { p, q }, terms }
}

/// The double sum of the combinatorial identity, which equals `δ_{n,d}` for `0 ≤ d ≤ n ≤ m`.
pub fn cid_sum(m: u32, n: u32, d: u32) -> BigRational {
    let (m, n, d) = (m as i64, n as i64, d as i64);
    let mut total = BigRational::zero();
    for s in 0..=n {
        let outer = parity(s) * binom(m, s) / binom(2 * m - s, n) * rat(2 * m - 2 * s + 1) / rat(2 * m - s + 1);
        let mut inner = BigRational::zero();
        for t in 0..=d.min(s) {
            inner += parity(t) * binom(s, t) * binom(m - s, d - t + m - n) * binom(m - s, d - t);
        }
        total += outer * inner;
    }
    total
}

/// Whether the identity holds for every `0 ≤ d ≤ n ≤ m`.
pub fn cid_check(m: u32) -> bool {
    (0..=m).all(|n| (0..=n).all(|d| cid_sum(m, n, d) == if n == d { BigRational::one() } else { BigRational::zero() }))
}

/// `(cases, failures)` over all `m ≤ max_m`, computed in parallel.
pub fn cid_sweep(max_m: u32) -> (usize, usize) {
    use rayon::prelude::*;
    let triples: Vec<(u32, u32, u32)> =
        (0..=max_m).flat_map(|m| (0..=m).flat_map(move |n| (0..=n).map(move |d| (m, n, d)))).collect();
    let failures = triples
        .par_iter()
        .filter(|&&(m, n, d)| cid_sum(m, n, d) != if n == d { BigRational::one() } else { BigRational::zero() })
        .count();
    (triples.len(), failures)
}

/// `|a_{s,m,n}| ≤ 1`, `|a_{s,m,n}| ≤ C(m-s,n-s)` and `Σ_s C(m-s,n-s)|a_{s,m,n}| = 1`.
pub fn a_bound_check(m: u32) -> bool {
    let one = BigRational::one();
    (0..=m).all(|n| {
        let mut total = BigRational::zero();
        for s in 0..=n {
            let a = a_coeff(s, m, n).abs();
            let c = binom((m - s) as i64, (n - s) as i64);
            if a > one || a > c {
                return false;
            }
            total += c * a;
        }
        total == one
    })
}

fn accumulate(acc: &mut BTreeMap<BasisIndex, BigRational>, key: BasisIndex, c: BigRational) {
    let slot = acc.entry(key).or_insert_with(BigRational::zero);
    *slot += c;
}

/// `f_in_pfm ∘ pfm_in_f` maps the mode to itself.
pub fn roundtrip_mode(idx: PFMIndex) -> bool {
    let mut acc = BTreeMap::new();
    for (f, c) in pfm_in_f(idx.m, idx.n).terms {
        let BasisIndex::F { p, q } = f else { return false };
        for (target, a) in f_in_pfm(p, q).terms {
            accumulate(&mut acc, target, &c * a);
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc.len() == 1 && acc.get(&BasisIndex::Pfm(idx)) == Some(&BigRational::one())
}

/// [`roundtrip_mode`] for every mode with `m ≤ m_max`.
pub fn roundtrip_check(m_max: u32) -> bool {
    PFMIndex::all_up_to(m_max).into_iter().all(roundtrip_mode)
}

/// Numeric value of a row `Σ c_i g_i` at a point.
pub fn eval_row<T: Real>(row: &BasisChangeRow, pt: &OmegaPoint<T>) -> C<T> {
    let mut acc = CompensatedSum::new();
    for (target, c) in &row.terms {
        let v = match target {
            BasisIndex::Pfm(idx) => crate::pfm::pfm_eval(*idx, pt),
            BasisIndex::F { p, q } => crate::pfm::f_pq_eval(*p, *q, pt),
        };
        acc.add(v * T::from_rational(c));
    }
    acc.value()
}

/// Coefficient `b_{p,q}` of `F` in the `f_{p,q}` expansion, from a double
/// trapezoid rule on the torus `|z| = r1`, `|w| = r2`.
///
/// The `w` grid sits half a step off the `z` grid so `1 + zw` never vanishes
/// at a node when `r1 = r2 = 1` and `nodes` is even.
pub fn b_coeff_numeric<T, F>(f: F, p: u32, q: u32, r1: T, r2: T, nodes: usize) -> Result<C<T>>
where
    T: Real,
    F: Fn(&OmegaPoint<T>) -> Result<C<T>>,
{
    if r1 <= T::zero() || r2 <= T::zero() || nodes == 0 {
        return Err(Error::Parameter("radii must be positive and nodes nonzero".into()));
    }
    let one = Complex::new(T::one(), T::zero());
    let tau = T::lit(2.0 * std::f64::consts::PI);
    let nn = T::lit(nodes as f64);
    let mut acc = CompensatedSum::new();
    for j in 0..nodes {
        let th = tau * T::lit(j as f64) / nn;
        let ez = Complex::from_polar(T::one(), th);
        let z = ez * r1;
        for k in 0..nodes {
            let ph = tau * (T::lit(k as f64) + T::lit(0.5)) / nn;
            let ew = Complex::from_polar(T::one(), ph);
            let w = ew * r2;
            let s = one + z * w;
            let pt = if p < q {
                crate::pfm::OmegaPoint::new(z.into(), div_ext(w, s))?
            } else {
                crate::pfm::OmegaPoint::new(div_ext(z, s), w.into())?
            };
            let v = f(&pt)?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Numeric("non-finite integrand".into()));
            }
            acc.add(v * ez.powu(p).inv() * ew.powu(q).inv());
        }
    }
    Ok(acc.value() / (nn * nn) / (r1.powi(p as i32) * r2.powi(q as i32)))
}

fn div_ext<T: Real>(a: C<T>, b: C<T>) -> crate::pfm::ExtendedComplex<T> {
    if b.is_zero() {
        crate::pfm::ExtendedComplex::Infinity
    } else {
        (a / b).into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::pfm::pfm_eval;

    fn f(p: u32, q: u32) -> BasisIndex {
        BasisIndex::F { p, q }
    }

    fn pm(m: u32, n: i32) -> BasisIndex {
        BasisIndex::Pfm(PFMIndex::new(m, n))
    }

    #[test]
    fn pfm_in_f_examples() {
        assert_eq!(pfm_in_f(0, 0).terms, vec![(f(0, 0), rat(1))]);
        assert_eq!(pfm_in_f(1, 1).terms, vec![(f(0, 1), rat(-1))]);
        assert_eq!(pfm_in_f(1, 0).terms, vec![(f(0, 0), rat(1)), (f(1, 1), rat(2))]);
        assert!(pfm_in_f(1, 2).terms.is_empty());
    }

    #[test]
    fn f_in_pfm_examples() {
        assert_eq!(f_in_pfm(0, 0).terms, vec![(pm(0, 0), rat(1))]);
        assert_eq!(f_in_pfm(1, 1).terms, vec![(pm(1, 0), ratio(1, 2)), (pm(0, 0), ratio(-1, 2))]);
        assert_eq!(f_in_pfm(0, 1).terms, vec![(pm(1, 1), rat(-1))]);
        assert_eq!(f_in_pfm(1, 0).terms, vec![(pm(1, -1), rat(-1))]);
    }

    #[test]
    fn cid_examples() {
        assert!(cid_check(0));
        assert_eq!(cid_sum(2, 1, 0), rat(0));
        assert_eq!(cid_sum(2, 1, 1), rat(1));
        for m in 0..=10 {
            assert!(cid_check(m), "m={m}");
        }
    }

    #[test]
    fn a_bounds() {
        assert_eq!(a_coeff(0, 1, 1), ratio(1, 2));
        assert_eq!(a_coeff(1, 1, 1), ratio(-1, 2));
        for m in 0..=15 {
            assert!(a_bound_check(m), "m={m}");
        }
    }

    #[test]
    fn roundtrip() {
        assert!(roundtrip_check(0));
        assert!(roundtrip_check(3));
        assert_eq!(PFMIndex::all_up_to(3).len(), 16);
    }

    #[test]
    fn rows_evaluate_consistently() {
        let pt = OmegaPoint::finite(Complex::new(0.3, -0.1), Complex::new(0.2, 0.4)).unwrap();
        for idx in PFMIndex::all_up_to(5) {
            let v = eval_row(&pfm_in_f(idx.m, idx.n), &pt);
            let e = pfm_eval(idx, &pt);
            assert!((v - e).norm() < 1e-11 * (1.0 + e.norm()), "{idx:?}");
        }
        for p in 0..4 {
            for q in 0..4 {
                let v = eval_row(&f_in_pfm(p, q), &pt);
                let e = crate::pfm::f_pq_eval(p, q, &pt);
                assert!((v - e).norm() < 1e-12, "({p},{q})");
            }
        }
    }

    #[test]
    fn b_coefficients() {
        let f11 = |p: &OmegaPoint<f64>| Ok(crate::pfm::f_pq_eval(1, 1, p));
        for p in 0..=2 {
            for q in 0..=2 {
                let b = b_coeff_numeric(f11, p, q, 1.0, 1.0, 64).unwrap();
                let expect = if (p, q) == (1, 1) { 1.0 } else { 0.0 };
                assert!((b - Complex::new(expect, 0.0)).norm() < 1e-10, "({p},{q})");
            }
        }
        let one = |_: &OmegaPoint<f64>| Ok(Complex::new(1.0, 0.0));
        assert!((b_coeff_numeric(one, 0, 0, 1.0, 1.0, 16).unwrap() - 1.0).norm() < 1e-14);
        let p11 = |p: &OmegaPoint<f64>| Ok(pfm_eval(PFMIndex::new(1, 1), p));
        assert!((b_coeff_numeric(p11, 0, 1, 1.0, 1.0, 64).unwrap() + 1.0).norm() < 1e-10);
    }
}
