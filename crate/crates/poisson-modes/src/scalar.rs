//! Floating-point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};

use num::traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use num::{BigRational, Complex};

/// Real scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Distance from `zw = 1` below which a point counts as outside Ω.
    fn omega_eps() -> Self;

    /// Default step for the mixed-derivative stencil.
    fn default_step() -> Self;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits the scalar type")
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::lit(rational_to_f64(q))
    }
}

impl Real for f64 {
    fn omega_eps() -> Self {
        1e-12
    }
    fn default_step() -> Self {
        1e-4
    }
}

impl Real for f32 {
    fn omega_eps() -> Self {
        1e-6
    }
    fn default_step() -> Self {
        1e-2
    }
}

pub type C<T> = Complex<T>;

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    use num::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

/// Integer power of a complex number, negative exponents allowed.
pub(crate) fn cpow<T: Real>(z: C<T>, k: i64) -> C<T> {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        z.powu((-k) as u32).inv()
    }
}

/// `n!/(k!(n-k)!)` in floating point, zero outside `0..=n`.
pub(crate) fn binom_f<T: Real>(n: i64, k: i64) -> T {
    if k < 0 || n < 0 || k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    T::lit(acc.round())
}

pub(crate) fn sign<T: Real>(k: i64) -> T {
    if k.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}
