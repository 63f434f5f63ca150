//! Jacobi polynomials with exact monomial coefficients.

use num::{BigRational, Complex, One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, is_integer, pochhammer, rat, ratio, GammaProduct, SqrtPiScaled};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiPoly {
    pub degree: usize,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// Monomial coefficients, constant term first.
    pub coeffs: Vec<BigRational>,
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `P_k^{(α,β)}`, expanded from the terminating ₂F₁ in `(1-x)/2`.
///
/// The binomial prefactor is absorbed term by term, so negative integer `α`
/// is allowed.
pub fn jacobi_poly(k: usize, alpha: &BigRational, beta: &BigRational) -> JacobiPoly {
    let kf = BigRational::from_integer(factorial(k as u64));
    let half_one_minus_x = [ratio(1, 2), ratio(-1, 2)];
    let mut power = vec![BigRational::one()];
    let mut coeffs = vec![BigRational::zero(); k + 1];
    let top = rat(k as i64) + alpha + beta + rat(1);
    for j in 0..=k {
        let c = pochhammer(&(alpha + rat(j as i64 + 1)), (k - j) as u64) / &kf
            * pochhammer(&rat(-(k as i64)), j as u64)
            * pochhammer(&top, j as u64)
            / BigRational::from_integer(factorial(j as u64));
        for (i, p) in power.iter().enumerate() {
            coeffs[i] += &c * p;
        }
        power = poly_mul(&power, &half_one_minus_x);
    }
    JacobiPoly { degree: k, alpha: alpha.clone(), beta: beta.clone(), coeffs }
}

impl JacobiPoly {
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval<T: Real>(&self, x: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, c| acc * x + T::from_rational(c))
    }

    pub fn eval_real<T: Real>(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x + T::from_rational(c))
    }
}

fn is_half_integer(q: &BigRational) -> bool {
    is_integer(&(q * rat(2)))
}

/// `𝒜_{α,β,k}`: the weighted norm `∫(1-x)^α(1+x)^β P_k² dx`.
///
/// Exact when `α+β` is an integer; other half-integer pairs would need `√2`.
pub fn orthogonality_constant(alpha: &BigRational, beta: &BigRational, k: usize) -> Result<SqrtPiScaled> {
    let m1 = rat(-1);
    if alpha <= &m1 || beta <= &m1 || !is_half_integer(alpha) || !is_half_integer(beta) {
        return Err(Error::Parameter(format!("need α, β > -1 half-integers, got ({alpha}, {beta})")));
    }
    let s = alpha + beta;
    if !is_integer(&s) {
        return Err(Error::Parameter("α+β must be an integer for an exact constant".into()));
    }
    let kk = rat(k as i64);
    let e = crate::exact::to_i64(&s).unwrap_or(0) + 1;
    let pow2 = if e >= 0 { rat(2).pow(e as i32) } else { ratio(1, 2).pow((-e) as i32) };
    let mut g = GammaProduct::new().num(&kk + alpha + rat(1)).num(&kk + beta + rat(1));
    let mut lead = pow2 / BigRational::from_integer(factorial(k as u64));
    if k == 0 {
        g.push(&s + rat(2), -1);
    } else {
        g.push(&kk + &s + rat(1), -1);
        lead /= rat(2 * k as i64) + &s + rat(1);
    }
    Ok(SqrtPiScaled::rational(lead) * g.evaluate()?)
}

/// `P_k^{(α,β)}(x) = (-1)^k P_k^{(β,α)}(-x)`, coefficientwise.
pub fn symmetry_check(k: usize, alpha: &BigRational, beta: &BigRational) -> bool {
    let p = jacobi_poly(k, alpha, beta);
    let q = jacobi_poly(k, beta, alpha);
    p.coeffs.iter().zip(&q.coeffs).enumerate().all(
        |(i, (a, b))| {
            if (k + i).is_multiple_of(2) {
                a == b
            } else {
                a == &-b
            }
        },
    )
}

/// `|P_k^{(α,β)}(x)| ≤ (α+1)_k/k!` on the samples, for `α ≥ β ≥ -1/2`.
pub fn bound_check(k: usize, alpha: &BigRational, beta: &BigRational, samples: &[f64]) -> Result<bool> {
    if !(alpha >= beta && beta >= &ratio(-1, 2)) {
        return Err(Error::Parameter(format!("need α ≥ β ≥ -1/2, got ({alpha}, {beta})")));
    }
    if samples.iter().any(|x| x.abs() > 1.0) {
        return Err(Error::Parameter("samples must lie in [-1, 1]".into()));
    }
    let p = jacobi_poly(k, alpha, beta);
    let bound =
        f64::from_rational(&(pochhammer(&(alpha + rat(1)), k as u64) / BigRational::from_integer(factorial(k as u64))));
    Ok(samples.iter().all(|&x| p.eval_real(x).abs() <= bound * (1.0 + 1e-12)))
}

/// Exact `∫_{-1}^{1} (1-x)^α (1+x)^β p(x) dx` for integer `α, β ≥ 0`.
pub fn weighted_integral(alpha: u32, beta: u32, p: &[BigRational]) -> BigRational {
    let mut w = vec![BigRational::one()];
    for _ in 0..alpha {
        w = poly_mul(&w, &[rat(1), rat(-1)]);
    }
    for _ in 0..beta {
        w = poly_mul(&w, &[rat(1), rat(1)]);
    }
    poly_mul(&w, p)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(BigRational::zero(), |acc, (i, c)| acc + c * ratio(2, i as i64 + 1))
}

#[cfg(test)]
pub(crate) fn mul_polys(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    poly_mul(a, b)
}
