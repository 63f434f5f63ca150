//! Exact rational, Gaussian-rational and `√π`-scaled arithmetic with the
//! combinatorial primitives (binomials, Pochhammer symbols, Gamma and Beta at
//! integers and half-integers).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num::integer::Integer;
use num::{BigInt, BigRational, Complex, One, Signed, Zero};

use crate::error::{Error, Result};

pub type GaussianRational = Complex<BigRational>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn grat(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial `a(a-1)…(a-k+1)/k!` for integer `a`.
pub fn binomial(a: i64, k: u64) -> BigRational {
    if a >= 0 && (a as u64) < k {
        return BigRational::zero();
    }
    binomial_q(&rat(a), k)
}

/// Binomial with a signed lower index; negative `k` gives zero.
pub fn binom(a: i64, k: i64) -> BigRational {
    if k < 0 {
        BigRational::zero()
    } else {
        binomial(a, k as u64)
    }
}

/// Generalized binomial with rational upper index.
pub fn binomial_q(a: &BigRational, k: u64) -> BigRational {
    let mut num = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        num *= &x;
        x -= BigRational::one();
    }
    num / BigRational::from_integer(factorial(k))
}

/// Rising factorial `(a)_k`.
pub fn pochhammer(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += BigRational::one();
    }
    acc
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn is_nonpositive_integer(q: &BigRational) -> bool {
    is_integer(q) && !q.is_positive()
}

pub(crate) fn to_i64(q: &BigRational) -> Option<i64> {
    use num::ToPrimitive;
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn parity(k: i64) -> BigRational {
    if k.is_even() {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `coeff · π^(pi_half_power/2)`.
#[derive(Debug, Clone)]
pub struct SqrtPiScaled {
    pub coeff: BigRational,
    pub pi_half_power: i64,
}

impl SqrtPiScaled {
    pub fn rational(coeff: BigRational) -> Self {
        SqrtPiScaled { coeff, pi_half_power: 0 }
    }

    pub fn sqrt_pi() -> Self {
        SqrtPiScaled { coeff: BigRational::one(), pi_half_power: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The rational value, if the power of π vanishes (or the value is zero).
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() || self.pi_half_power == 0 {
            Some(self.coeff.clone())
        } else {
            None
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_half_power != other.pi_half_power {
            return Err(Error::MixedPiPower);
        }
        Ok(SqrtPiScaled { coeff: &self.coeff + &other.coeff, pi_half_power: self.pi_half_power })
    }

    pub fn to_f64(&self) -> f64 {
        crate::scalar::rational_to_f64(&self.coeff) * std::f64::consts::PI.powf(self.pi_half_power as f64 / 2.0)
    }
}

impl PartialEq for SqrtPiScaled {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.coeff == other.coeff && self.pi_half_power == other.pi_half_power
    }
}

impl Mul for SqrtPiScaled {
    type Output = SqrtPiScaled;
    fn mul(self, rhs: Self) -> Self {
        SqrtPiScaled { coeff: self.coeff * rhs.coeff, pi_half_power: self.pi_half_power + rhs.pi_half_power }
    }
}

impl Div for SqrtPiScaled {
    type Output = SqrtPiScaled;
    fn div(self, rhs: Self) -> Self {
        SqrtPiScaled { coeff: self.coeff / rhs.coeff, pi_half_power: self.pi_half_power - rhs.pi_half_power }
    }
}

impl fmt::Display for SqrtPiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_half_power {
            0 => write!(f, "{}", self.coeff),
            p => write!(f, "{}·π^({}/2)", self.coeff, p),
        }
    }
}

/// Γ(two_a/2) for `two_a ≥ 1`.
pub fn gamma_half_int(two_a: u64) -> SqrtPiScaled {
    assert!(two_a >= 1, "gamma_half_int needs a positive argument");
    if two_a.is_multiple_of(2) {
        SqrtPiScaled::rational(BigRational::from_integer(factorial(two_a / 2 - 1)))
    } else {
        let k = (two_a - 1) / 2;
        SqrtPiScaled { coeff: pochhammer(&ratio(1, 2), k), pi_half_power: 1 }
    }
}

/// B(two_a/2, two_b/2) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_half_int(two_a: u64, two_b: u64) -> SqrtPiScaled {
    gamma_half_int(two_a) * gamma_half_int(two_b) / gamma_half_int(two_a + two_b)
}

/// Γ at an integer or half-integer argument.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaValue {
    Finite(SqrtPiScaled),
    /// Simple pole at `-k`, carrying the residue `(-1)^k/k!`.
    Pole {
        residue: BigRational,
    },
}

pub fn gamma_exact(a: &BigRational) -> Result<GammaValue> {
    let two_a = a * rat(2);
    if !is_integer(&two_a) {
        return Err(Error::Parameter(format!("Γ({a}) is not at a half-integer")));
    }
    if is_integer(a) {
        let k = to_i64(a).ok_or_else(|| Error::Parameter(format!("Γ({a}) out of range")))?;
        if k <= 0 {
            let j = (-k) as u64;
            return Ok(GammaValue::Pole { residue: parity(-k) / BigRational::from_integer(factorial(j)) });
        }
        return Ok(GammaValue::Finite(SqrtPiScaled::rational(BigRational::from_integer(factorial(k as u64 - 1)))));
    }
    // a = 1/2 + k
    let k = to_i64(&(a - ratio(1, 2))).ok_or_else(|| Error::Parameter(format!("Γ({a}) out of range")))?;
    let coeff = if k >= 0 { pochhammer(&ratio(1, 2), k as u64) } else { pochhammer(a, (-k) as u64).recip() };
    Ok(GammaValue::Finite(SqrtPiScaled { coeff, pi_half_power: 1 }))
}

/// A formal product `Π Γ(x_i)^{e_i}`, evaluated exactly.
///
/// Factors whose arguments differ by integers are reduced against each other
/// through Pochhammer symbols. Poles are tracked by order, as if every argument
/// were shifted by the same infinitesimal.
#[derive(Debug, Clone, Default)]
pub struct GammaProduct {
    factors: BTreeMap<BigRational, i64>,
}

impl GammaProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, x: BigRational) -> Self {
        self.push(x, 1);
        self
    }

    pub fn den(mut self, x: BigRational) -> Self {
        self.push(x, -1);
        self
    }

    pub fn push(&mut self, x: BigRational, e: i64) {
        let slot = self.factors.entry(x).or_insert(0);
        *slot += e;
    }

    /// Exponents with zeros removed.
    pub fn exponents(&self) -> impl Iterator<Item = (&BigRational, i64)> {
        self.factors.iter().filter(|(_, e)| **e != 0).map(|(x, e)| (x, *e))
    }

    pub fn evaluate(&self) -> Result<SqrtPiScaled> {
        let mut classes: BTreeMap<BigRational, Vec<(BigRational, i64)>> = BTreeMap::new();
        for (x, e) in self.exponents() {
            let frac = x - BigRational::from_integer(x.floor().to_integer());
            classes.entry(frac).or_default().push((x.clone(), e));
        }
        let half = ratio(1, 2);
        let mut value = SqrtPiScaled::rational(BigRational::one());
        let mut pole_order = 0i64;
        for (frac, members) in classes {
            if frac.is_zero() || frac == half {
                for (x, e) in members {
                    match gamma_exact(&x)? {
                        GammaValue::Finite(g) => value = value * pow_spi(g, e),
                        GammaValue::Pole { residue } => {
                            pole_order += e;
                            value = value * pow_spi(SqrtPiScaled::rational(residue), e);
                        }
                    }
                }
            } else {
                let r = members.iter().map(|(x, _)| x.clone()).min().expect("nonempty class");
                let mut net = 0i64;
                for (x, e) in members {
                    let k = to_i64(&(&x - &r)).expect("integer offset") as u64;
                    net += e;
                    value = value * pow_spi(SqrtPiScaled::rational(pochhammer(&r, k)), e);
                }
                if net != 0 {
                    return Err(Error::Parameter(format!("Γ({r}) does not cancel")));
                }
            }
        }
        match pole_order.cmp(&0) {
            std::cmp::Ordering::Greater => Err(Error::Pole(format!("net pole order {pole_order}"))),
            std::cmp::Ordering::Less => Ok(SqrtPiScaled::rational(BigRational::zero())),
            std::cmp::Ordering::Equal => Ok(value),
        }
    }
}

fn pow_spi(g: SqrtPiScaled, e: i64) -> SqrtPiScaled {
    let mut acc = SqrtPiScaled::rational(BigRational::one());
    for _ in 0..e.unsigned_abs() {
        acc = if e > 0 { acc * g.clone() } else { acc / g.clone() };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(2, 3), rat(0));
        assert_eq!(binomial(-2, 1), rat(-2));
        assert_eq!(binom(4, -1), rat(0));
    }

    #[test]
    fn negative_upper_index() {
        for m in 0..8i64 {
            for n in 0..8u64 {
                assert_eq!(binomial(-m - 1, n), parity(n as i64) * binomial(m + n as i64, n));
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ratio(7, 3), 0), rat(1));
        assert_eq!(pochhammer(&rat(-3), 2), rat(6));
        assert_eq!(pochhammer(&rat(1), 4), rat(24));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_half_int(6), SqrtPiScaled::rational(rat(2)));
        assert_eq!(gamma_half_int(1), SqrtPiScaled::sqrt_pi());
        assert_eq!(gamma_half_int(3), SqrtPiScaled { coeff: ratio(1, 2), pi_half_power: 1 });
        assert_eq!(gamma_half_int(1) * gamma_half_int(1), SqrtPiScaled { coeff: rat(1), pi_half_power: 2 });
        for two_a in 1..30 {
            assert_eq!(
                gamma_half_int(two_a + 2),
                SqrtPiScaled::rational(ratio(two_a as i64, 2)) * gamma_half_int(two_a)
            );
        }
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_half_int(2, 2), SqrtPiScaled::rational(rat(1)));
        assert_eq!(beta_half_int(4, 4), SqrtPiScaled::rational(ratio(1, 6)));
        assert_eq!(beta_half_int(1, 1), SqrtPiScaled { coeff: rat(1), pi_half_power: 2 });
    }

    #[test]
    fn beta_binomial() {
        for n in 0..15u64 {
            for k in 0..=n {
                let b = beta_half_int(2 * (n - k + 1), 2 * (k + 1));
                let v = SqrtPiScaled::rational(rat(n as i64 + 1) * binomial(n as i64, k)) * b;
                assert_eq!(v, SqrtPiScaled::rational(rat(1)));
            }
        }
    }

    #[test]
    fn odd_powers_multiply_to_pi() {
        let a = gamma_half_int(5);
        let b = gamma_half_int(7);
        assert_eq!((a * b).pi_half_power, 2);
    }

    #[test]
    fn mixed_addition_rejected() {
        let a = gamma_half_int(1);
        let b = gamma_half_int(2);
        assert_eq!(a.try_add(&b), Err(Error::MixedPiPower));
        assert!(a.try_add(&a).is_ok());
    }

    #[test]
    fn negative_half_integer_gamma() {
        // Γ(-1/2) = -2√π
        assert_eq!(
            gamma_exact(&ratio(-1, 2)).unwrap(),
            GammaValue::Finite(SqrtPiScaled { coeff: rat(-2), pi_half_power: 1 })
        );
        assert!(matches!(gamma_exact(&rat(0)).unwrap(), GammaValue::Pole { .. }));
    }

    #[test]
    fn gamma_product_cancellation() {
        // Γ(1/3 + 2)/Γ(1/3) = (1/3)(4/3)
        let g = GammaProduct::new().num(ratio(7, 3)).den(ratio(1, 3));
        assert_eq!(g.evaluate().unwrap().as_rational().unwrap(), ratio(4, 9));
        // Γ(-3)/Γ(-1): residues (-1)^3/3! over (-1)/1! = 1/6
        let g = GammaProduct::new().num(rat(-3)).den(rat(-1));
        assert_eq!(g.evaluate().unwrap().as_rational().unwrap(), ratio(1, 6));
        let g = GammaProduct::new().num(rat(-3));
        assert!(matches!(g.evaluate(), Err(Error::Pole(_))));
        let g = GammaProduct::new().den(rat(-3)).num(rat(4));
        assert!(g.evaluate().unwrap().is_zero());
    }
}
