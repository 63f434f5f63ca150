//! Terminating generalized hypergeometric series in exact arithmetic, and the
//! identities that reduce the double binomial sum to a Kronecker delta.

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    binom, factorial, is_nonpositive_integer, parity, pochhammer, rat, ratio, to_i64, GammaProduct, GaussianRational,
};

#[derive(Debug, Clone, PartialEq)]
pub struct TerminatingPFQ {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub argument: GaussianRational,
}

impl TerminatingPFQ {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>, argument: GaussianRational) -> Result<Self> {
        let s = TerminatingPFQ { upper, lower, argument };
        let n = s.termination_index()?;
        for b in &s.lower {
            if is_nonpositive_integer(b) && (-to_i64(b).unwrap_or(i64::MIN)) < n as i64 {
                return Err(Error::Parameter(format!("lower parameter {b} vanishes before term {n}")));
            }
        }
        Ok(s)
    }

    /// Series at `z = 1` from integer parameter lists.
    pub fn at_one(upper: &[BigRational], lower: &[BigRational]) -> Result<Self> {
        Self::new(upper.to_vec(), lower.to_vec(), GaussianRational::new(rat(1), rat(0)))
    }

    /// Degree of the polynomial: the smallest `-a_i` over non-positive integer upper parameters.
    pub fn termination_index(&self) -> Result<u64> {
        self.upper
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .filter_map(to_i64)
            .map(|a| (-a) as u64)
            .min()
            .ok_or_else(|| Error::NonTerminating(format!("{:?}", self.upper)))
    }

    pub fn eval(&self) -> Result<GaussianRational> {
        eval_terminating(self)
    }
}

/// Exact value `Σ_{k≤n} Π(a_i)_k / Π(b_j)_k · z^k/k!`.
pub fn eval_terminating(series: &TerminatingPFQ) -> Result<GaussianRational> {
    let n = series.termination_index()?;
    let mut sum = GaussianRational::zero();
    let mut term = GaussianRational::one();
    for k in 0..=n {
        sum += term.clone();
        if k == n {
            break;
        }
        let kk = rat(k as i64);
        let mut num = BigRational::one();
        for a in &series.upper {
            num *= a + &kk;
        }
        let mut den = rat(k as i64 + 1);
        for b in &series.lower {
            den *= b + &kk;
        }
        if den.is_zero() {
            return Err(Error::Parameter(format!("lower parameter vanishes at term {}", k + 1)));
        }
        term = term * series.argument.clone() * (num / den);
    }
    Ok(sum)
}

/// Real value of a terminating series at `z = 1`.
pub fn eval_at_one(upper: &[BigRational], lower: &[BigRational]) -> Result<BigRational> {
    Ok(TerminatingPFQ::at_one(upper, lower)?.eval()?.re)
}

/// `₂F₁(-k, b; c; 1) = (c-b)_k/(c)_k`.
pub fn chu_vandermonde_check(k: u64, b: &BigRational, c: &BigRational) -> Result<bool> {
    let lhs = eval_at_one(&[-rat(k as i64), b.clone()], std::slice::from_ref(c))?;
    let rhs = pochhammer(&(c - b), k) / pochhammer(c, k);
    Ok(lhs == rhs)
}

/// `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b))`.
pub fn gauss_sum_check(a_neg: i64, b: &BigRational, c: &BigRational) -> Result<bool> {
    if a_neg > 0 {
        return Err(Error::Parameter(format!("a = {a_neg} must be non-positive")));
    }
    let a = rat(a_neg);
    let lhs = eval_at_one(&[a.clone(), b.clone()], std::slice::from_ref(c))?;
    let rhs = GammaProduct::new().num(c.clone()).num(c - &a - b).den(c - &a).den(c - b).evaluate()?;
    Ok(rhs.as_rational().is_some_and(|r| r == lhs))
}

/// Reduction of a series with upper `c+shift` and lower `c` to a finite sum of
/// series without that pair.
pub fn shift_reduce_check(series: &TerminatingPFQ, shift: u64) -> Result<bool> {
    let sh = rat(shift as i64);
    let (iu, il) = series
        .upper
        .iter()
        .enumerate()
        .find_map(|(i, a)| series.lower.iter().position(|b| &(b + &sh) == a).map(|j| (i, j)))
        .ok_or_else(|| Error::Parameter(format!("no upper parameter equals a lower parameter plus {shift}")))?;
    let c = series.lower[il].clone();
    let a: Vec<BigRational> =
        series.upper.iter().enumerate().filter(|(i, _)| *i != iu).map(|(_, x)| x.clone()).collect();
    let b: Vec<BigRational> =
        series.lower.iter().enumerate().filter(|(j, _)| *j != il).map(|(_, x)| x.clone()).collect();

    let lhs = series.eval()?;
    let mut rhs = GaussianRational::zero();
    let mut zj = GaussianRational::one();
    for j in 0..=shift {
        let mut coef = binom(shift as i64, j as i64);
        for x in &a {
            coef *= pochhammer(x, j);
        }
        if !coef.is_zero() {
            for y in &b {
                coef /= pochhammer(y, j);
            }
            coef /= pochhammer(&c, j);
            let jj = rat(j as i64);
            let sub = TerminatingPFQ::new(
                a.iter().map(|x| x + &jj).collect(),
                b.iter().map(|y| y + &jj).collect(),
                series.argument.clone(),
            )?;
            rhs += zj.clone() * sub.eval()? * coef;
        }
        zj *= series.argument.clone();
    }
    Ok(lhs == rhs)
}

/// `r₀..r₅` with `Σ r = 0`; `α_{lmn} = 1/2 + r_l + r_m + r_n`, `β_{mn} = 1 + r_m - r_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct WhippleParams {
    pub r: [BigRational; 6],
}

impl WhippleParams {
    pub fn alpha(&self, l: usize, m: usize, n: usize) -> BigRational {
        ratio(1, 2) + &self.r[l] + &self.r[m] + &self.r[n]
    }

    pub fn beta(&self, m: usize, n: usize) -> BigRational {
        rat(1) + &self.r[m] - &self.r[n]
    }

    fn alpha_of(&self, t: &[usize]) -> BigRational {
        self.alpha(t[0], t[1], t[2])
    }

    /// `Fp(u; v, w)`: the ₃F₂ in the Whipple normalization, `1/Γ` at poles read as zero.
    pub fn fp(&self, u: usize, v: usize, w: usize) -> Result<BigRational> {
        let rest: Vec<usize> = (0..6).filter(|i| ![u, v, w].contains(i)).collect();
        let pre = [self.alpha_of(&rest), self.beta(v, u), self.beta(w, u)];
        if pre.iter().any(is_nonpositive_integer) {
            return Ok(BigRational::zero());
        }
        let mut g = GammaProduct::new();
        for x in pre {
            g.push(x, -1);
        }
        let pre =
            g.evaluate()?.as_rational().ok_or_else(|| Error::Parameter("Whipple prefactor is not rational".into()))?;
        let upper: Vec<BigRational> = rest.iter().map(|&x| self.alpha(v, w, x)).collect();
        let lower = [self.beta(v, u), self.beta(w, u)];
        Ok(pre * eval_at_one(&upper, &lower)?)
    }

    /// `Rp(u)²` as a Gamma product over the ten triples avoiding `u`.
    pub fn rp_squared(&self, u: usize) -> GammaProduct {
        let others: Vec<usize> = (0..6).filter(|&i| i != u).collect();
        let mut g = GammaProduct::new();
        for i in 0..5 {
            for j in i + 1..5 {
                for k in j + 1..5 {
                    let t = [others[i], others[j], others[k]];
                    let a = self.alpha_of(&t);
                    if is_nonpositive_integer(&a) {
                        let comp: Vec<usize> = (0..6).filter(|x| !t.contains(x)).collect();
                        g.push(self.alpha_of(&comp), -1);
                    } else {
                        g.push(a, 1);
                    }
                }
            }
        }
        g
    }
}

/// Solve for the `r` that realize `α_{145}=a, α_{245}=b, α_{345}=c, β_{40}=e, β_{50}=f`.
pub fn whipple_solve(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    e: &BigRational,
    f: &BigRational,
) -> WhippleParams {
    let one = rat(1);
    let half = ratio(1, 2);
    let r0 = (a + b + c - rat(2) * e - rat(2) * f + ratio(5, 2)) / rat(3);
    let r4 = e - &one + &r0;
    let r5 = f - &one + &r0;
    let big = &r4 + &r5;
    let r1 = a - &half - &big;
    let r2 = b - &half - &big;
    let r3 = c - &half - &big;
    WhippleParams { r: [r0, r1, r2, r3, r4, r5] }
}

/// `₃F₂(a,b,c;e,f;1) = Γ(f)Γ(s)/(Γ(f-a)Γ(e+f-b-c)) · ₃F₂(a,e-b,e-c;e,e+f-b-c;1)`, `s = e+f-a-b-c`.
pub fn cor335_check(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    e: &BigRational,
    f: &BigRational,
) -> Result<bool> {
    let lhs = eval_at_one(&[a.clone(), b.clone(), c.clone()], &[e.clone(), f.clone()])?;
    let g = GammaProduct::new().num(f.clone()).num(e + f - a - b - c).den(f - a).den(e + f - b - c).evaluate()?;
    let g = g.as_rational().ok_or_else(|| Error::Parameter("Gamma quotient is not rational".into()))?;
    let series = eval_at_one(&[a.clone(), e - b, e - c], &[e.clone(), e + f - b - c]);
    let rhs = match series {
        Ok(v) => g * v,
        Err(_) if g.is_zero() => {
            return Err(Error::Pole("vanishing Gamma prefactor against a divergent series".into()));
        }
        Err(err) => return Err(err),
    };
    Ok(lhs == rhs)
}

fn raynal_params(m: i64, n: i64, d: i64, s: i64) -> Result<WhippleParams> {
    if !(s >= 0 && d >= 0 && n >= d + s && m >= n) {
        return Err(Error::Parameter(format!("need m ≥ n ≥ d+s, d,s ≥ 0; got ({m},{n},{d},{s})")));
    }
    Ok(whipple_solve(&rat(-s), &rat(-d - m + n), &rat(-d), &rat(1 - d + m - s), &rat(1 - d + n - s)))
}

/// `Rp(5)/Rp(0)` from the ratio of squared Gamma products, halving exponents.
pub fn rp_ratio(w: &WhippleParams) -> Result<BigRational> {
    let mut g = w.rp_squared(5);
    for (x, e) in w.rp_squared(0).exponents() {
        g.push(x.clone(), -e);
    }
    let mut half = GammaProduct::new();
    for (x, e) in g.exponents() {
        if e % 2 != 0 {
            return Err(Error::Parameter(format!("Γ({x}) appears to an odd power in Rp(5)²/Rp(0)²")));
        }
        half.push(x.clone(), e / 2);
    }
    half.evaluate()?.as_rational().ok_or_else(|| Error::Parameter("Rp ratio is not rational".into()))
}

/// `Fp(0;4,5) = (-1)^{d-n+s} · Rp(5)/Rp(0) · Fp(5;3,4)`.
pub fn raynal_check(m: i64, n: i64, d: i64, s: i64) -> Result<bool> {
    let w = raynal_params(m, n, d, s)?;
    let lhs = w.fp(0, 4, 5)?;
    let rhs = parity(d - n + s) * rp_ratio(&w)? * w.fp(5, 3, 4)?;
    Ok(lhs == rhs)
}

/// Squared form: `Rp(0)² Fp(0;4,5)² = Rp(5)² Fp(5;3,4)²`.
pub fn raynal_squared_check(m: i64, n: i64, d: i64, s: i64) -> Result<bool> {
    let w = raynal_params(m, n, d, s)?;
    let l = w.fp(0, 4, 5)?;
    let r = w.fp(5, 3, 4)?;
    let mut g = w.rp_squared(5);
    for (x, e) in w.rp_squared(0).exponents() {
        g.push(x.clone(), -e);
    }
    let q = g.evaluate()?.as_rational().ok_or_else(|| Error::Parameter("Rp² ratio is not rational".into()))?;
    Ok(&l * &l == q * &r * &r)
}

/// `Σ_t (-1)^t C(s,t) C(m-s, d-t+m-n) C(m-s, d-t)`.
pub fn t_sum(m: i64, n: i64, d: i64, s: i64) -> BigRational {
    (0..=d.min(s))
        .map(|t| parity(t) * binom(s, t) * binom(m - s, d - t + m - n) * binom(m - s, d - t))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn fact(n: i64) -> BigRational {
    BigRational::from_integer(factorial(n as u64))
}

/// Right-hand side of the single-₃F₂ closed form of [`t_sum`], valid for `n ≥ d`, `n ≥ s`.
pub fn l1_rhs(m: i64, n: i64, d: i64, s: i64) -> Result<BigRational> {
    let pre = parity(d - n + s) * binom(m - s, n - s) * binom(n, d) * fact(s) * fact(2 * m - s + 1)
        / (fact(n) * fact(2 * m - n + 1));
    if pre.is_zero() {
        return Ok(pre);
    }
    Ok(pre * eval_at_one(&[rat(s - n), rat(2 * m - n - s + 1), rat(m - d + 1)], &[rat(2 * m - n + 2), rat(m - n + 1)])?)
}

/// Checks the t-sum against its ₃F₂ closed form exactly.
pub fn verify_l1(m: i64, n: i64, d: i64, s: i64) -> Result<bool> {
    if !(m >= n && n >= d && d >= 0 && n >= s && s >= 0) {
        return Err(Error::Parameter(format!("need m ≥ n ≥ d ≥ 0 and n ≥ s ≥ 0; got ({m},{n},{d},{s})")));
    }
    Ok(t_sum(m, n, d, s) == l1_rhs(m, n, d, s)?)
}

/// The branch `n ≥ d+s` of the t-sum.
pub fn t1_rhs(m: i64, n: i64, d: i64, s: i64) -> Result<BigRational> {
    let pre = binom(m - s, n - d - s) * binom(m - s, d);
    if pre.is_zero() {
        return Ok(pre);
    }
    Ok(pre * eval_at_one(&[rat(-s), rat(-d - m + n), rat(-d)], &[rat(m - s - d + 1), rat(n - d - s + 1)])?)
}

/// The branch `n ≤ d+s` of the t-sum.
pub fn t2_rhs(m: i64, n: i64, d: i64, s: i64) -> Result<BigRational> {
    let pre = parity(d + s - n) * binom(s, n - d) * binom(m - s, n - s);
    if pre.is_zero() {
        return Ok(pre);
    }
    Ok(pre * eval_at_one(&[rat(s - n), rat(d - n), rat(s - m)], &[rat(d + s - n + 1), rat(m - n + 1)])?)
}

/// Exhaustive sweep of [`verify_l1`] and the two branch forms for every tuple with `m ≤ max_m`.
/// Returns `(cases, failures)`.
pub fn l1_sweep(max_m: i64) -> (usize, usize) {
    use rayon::prelude::*;
    let tuples: Vec<(i64, i64, i64, i64)> = (0..=max_m)
        .flat_map(|m| (0..=m).flat_map(move |n| (0..=n).flat_map(move |d| (0..=n).map(move |s| (m, n, d, s)))))
        .collect();
    let failures = tuples
        .par_iter()
        .filter(|&&(m, n, d, s)| {
            let lhs = t_sum(m, n, d, s);
            let mut ok = verify_l1(m, n, d, s).unwrap_or(false);
            if n >= d + s {
                ok &= t1_rhs(m, n, d, s).is_ok_and(|v| v == lhs);
            }
            if n <= d + s {
                ok &= t2_rhs(m, n, d, s).is_ok_and(|v| v == lhs);
            }
            !ok
        })
        .count();
    (tuples.len(), failures)
}

/// Every tuple of the Raynal family with `m ≤ max_m`, checked in ratio and squared form.
pub fn raynal_sweep(max_m: i64) -> (usize, usize) {
    use rayon::prelude::*;
    let tuples: Vec<(i64, i64, i64, i64)> = (0..=max_m)
        .flat_map(|m| (0..=m).flat_map(move |n| (0..=n).flat_map(move |d| (0..=n - d).map(move |s| (m, n, d, s)))))
        .collect();
    let failures = tuples
        .par_iter()
        .filter(|&&(m, n, d, s)| {
            !(raynal_check(m, n, d, s).unwrap_or(false) && raynal_squared_check(m, n, d, s).unwrap_or(false))
        })
        .count();
    (tuples.len(), failures)
}

/// [`cor335_check`] over the `n ≤ d+s` branch parameters
/// `(s-n, s-m, d-n; m-n+1, d+s-n+1)` for all `m ≤ max_m`.
pub fn cor335_sweep(max_m: i64) -> (usize, usize) {
    use rayon::prelude::*;
    let tuples: Vec<(i64, i64, i64, i64)> = (0..=max_m)
        .flat_map(|m| (0..=m).flat_map(move |n| (0..=n).flat_map(move |d| (n - d..=n).map(move |s| (m, n, d, s)))))
        .collect();
    let failures = tuples
        .par_iter()
        .filter(|&&(m, n, d, s)| {
            !cor335_check(&rat(s - n), &rat(s - m), &rat(d - n), &rat(m - n + 1), &rat(d + s - n + 1)).unwrap_or(false)
        })
        .count();
    (tuples.len(), failures)
}
