//! Small numerical kernels: compensated summation, Gauss–Legendre nodes and the
//! mixed-derivative stencil.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num::Complex;

use crate::scalar::Real;

/// Neumaier-compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T: Real> {
    re: (T, T),
    im: (T, T),
}

fn neumaier_step<T: Real>((sum, comp): (T, T), x: T) -> (T, T) {
    let t = sum + x;
    let comp = if sum.abs() >= x.abs() { comp + ((sum - t) + x) } else { comp + ((x - t) + sum) };
    (t, comp)
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        CompensatedSum { re: (T::zero(), T::zero()), im: (T::zero(), T::zero()) }
    }

    pub fn add(&mut self, x: Complex<T>) {
        self.re = neumaier_step(self.re, x.re);
        self.im = neumaier_step(self.im, x.im);
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.add(Complex::new(other.re.0, other.im.0));
        self.add(Complex::new(other.re.1, other.im.1));
        self
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

/// Unevaluated sum `hi + lo` carrying about twice the working precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFold<T> {
    pub hi: T,
    pub lo: T,
}

impl<T: Real> TwoFold<T> {
    pub fn new(x: T) -> Self {
        TwoFold { hi: x, lo: T::zero() }
    }

    fn renorm(s: T, e: T) -> Self {
        let hi = s + e;
        TwoFold { hi, lo: e - (hi - s) }
    }

    pub fn value(self) -> T {
        self.hi + self.lo
    }
}

impl<T: Real> Neg for TwoFold<T> {
    type Output = Self;
    fn neg(self) -> Self {
        TwoFold { hi: -self.hi, lo: -self.lo }
    }
}

impl<T: Real> Add for TwoFold<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.hi + o.hi;
        let bb = s - self.hi;
        let e = (self.hi - (s - bb)) + (o.hi - bb);
        Self::renorm(s, e + self.lo + o.lo)
    }
}

impl<T: Real> Sub for TwoFold<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + -o
    }
}

impl<T: Real> Mul for TwoFold<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl<T: Real> Div for TwoFold<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * Self::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Self::new(q2);
        let q3 = r.hi / o.hi;
        Self::renorm(q1, q2) + Self::new(q3)
    }
}

/// Complex number with [`TwoFold`] parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFoldC<T> {
    pub re: TwoFold<T>,
    pub im: TwoFold<T>,
}

impl<T: Real> TwoFoldC<T> {
    pub fn new(z: Complex<T>) -> Self {
        TwoFoldC { re: TwoFold::new(z.re), im: TwoFold::new(z.im) }
    }

    pub fn real(x: TwoFold<T>) -> Self {
        TwoFoldC { re: x, im: TwoFold::new(T::zero()) }
    }

    pub fn value(self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }

    pub fn scale(self, x: TwoFold<T>) -> Self {
        TwoFoldC { re: self.re * x, im: self.im * x }
    }

    pub fn powu(self, k: u32) -> Self {
        (0..k).fold(TwoFoldC::real(TwoFold::new(T::one())), |acc, _| acc * self)
    }
}

impl<T: Real> Add for TwoFoldC<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        TwoFoldC { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Real> Sub for TwoFoldC<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        TwoFoldC { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Real> Mul for TwoFoldC<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        TwoFoldC { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl<T: Real> Div for TwoFoldC<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.re * o.re + o.im * o.im;
        let n = self * TwoFoldC { re: o.re, im: -o.im };
        TwoFoldC { re: n.re / d, im: n.im / d }
    }
}

/// Gauss–Legendre nodes and weights on `[0, 1]`; the weights sum to one.
pub fn gauss_legendre_unit<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 1.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = T::lit(0.5 * (1.0 - x));
        weights[i] = T::lit(w);
        nodes[n - 1 - i] = T::lit(0.5 * (1.0 + x));
        weights[n - 1 - i] = T::lit(w);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Fourth-order central-difference weights at offsets `-2..=2`.
pub const STENCIL: [f64; 5] = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];

/// `∂²f/∂x∂y` for a function holomorphic in each variable, via the tensor stencil.
pub fn mixed_derivative<T, F, E>(f: F, x: Complex<T>, y: Complex<T>, h: T) -> Result<Complex<T>, E>
where
    T: Real,
    F: Fn(Complex<T>, Complex<T>) -> Result<Complex<T>, E>,
{
    let mut acc = CompensatedSum::new();
    for (i, ci) in STENCIL.iter().enumerate() {
        if *ci == 0.0 {
            continue;
        }
        let dx = Complex::new(h * T::lit(i as f64 - 2.0), T::zero());
        for (j, cj) in STENCIL.iter().enumerate() {
            if *cj == 0.0 {
                continue;
            }
            let dy = Complex::new(h * T::lit(j as f64 - 2.0), T::zero());
            acc.add(f(x + dx, y + dy)? * T::lit(ci * cj));
        }
    }
    Ok(acc.value() / (h * h))
}
