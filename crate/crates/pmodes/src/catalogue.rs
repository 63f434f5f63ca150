//! Built-in functions on Ω for `decompose`.

use num::Complex;
use poisson_modes::pfm::{f_pq_eval, pfm_eval};
use poisson_modes::{OmegaPoint, PFMIndex, Result};

use crate::CliError;

type C = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogueFn {
    /// `f_{p,q}`
    F(u32, u32),
    /// `P_n^{-m}`
    Pfm(u32, i32),
    /// `1/(1-zw)`
    Geom,
    /// `exp(zw/(1-zw))`
    Exp,
    /// `exp(z/(1-zw))`
    ExpZ,
}

fn pair<A: std::str::FromStr, B: std::str::FromStr>(s: &str) -> Option<(A, B)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

impl CatalogueFn {
    pub fn parse(spec: &str) -> std::result::Result<Self, CliError> {
        let bad = || CliError::Parse(format!("unknown function '{spec}'; try f:p,q  pfm:m,n  geom  exp  expz"));
        match spec.trim() {
            "geom" => Ok(CatalogueFn::Geom),
            "exp" => Ok(CatalogueFn::Exp),
            "expz" => Ok(CatalogueFn::ExpZ),
            s => {
                if let Some(rest) = s.strip_prefix("f:") {
                    let (p, q) = pair(rest).ok_or_else(bad)?;
                    Ok(CatalogueFn::F(p, q))
                } else if let Some(rest) = s.strip_prefix("pfm:") {
                    let (m, n) = pair(rest).ok_or_else(bad)?;
                    Ok(CatalogueFn::Pfm(m, n))
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn eval(&self, p: &OmegaPoint<f64>) -> Result<C> {
        let one = C::new(1.0, 0.0);
        // u = zw, computed in the chart at ∞ when |zw| > 1
        let (u, inverted) = match p.coords() {
            Some((z, w)) if (z * w).norm() <= 1.0 => (z * w, false),
            _ => {
                let (x, y) = p.invert().coords().expect("inverted point is finite");
                (x * y, true)
            }
        };
        Ok(match *self {
            CatalogueFn::F(a, b) => f_pq_eval(a, b, p),
            CatalogueFn::Pfm(m, n) => pfm_eval(PFMIndex::new(m, n), p),
            CatalogueFn::Geom => {
                if inverted {
                    u / (u - one)
                } else {
                    one / (one - u)
                }
            }
            CatalogueFn::Exp => {
                if inverted {
                    (one / (u - one)).exp()
                } else {
                    (u / (one - u)).exp()
                }
            }
            CatalogueFn::ExpZ => {
                if inverted {
                    let (b, _) = p.invert().coords().expect("inverted point is finite");
                    (b / (u - one)).exp()
                } else {
                    let (z, _) = p.coords().expect("finite point");
                    (z / (one - u)).exp()
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use poisson_modes::ExtendedComplex;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn parsing() {
        assert_eq!(CatalogueFn::parse("f:1,1").unwrap(), CatalogueFn::F(1, 1));
        assert_eq!(CatalogueFn::parse("pfm:2,-1").unwrap(), CatalogueFn::Pfm(2, -1));
        assert_eq!(CatalogueFn::parse("geom").unwrap(), CatalogueFn::Geom);
        assert!(CatalogueFn::parse("sin").is_err());
        assert!(CatalogueFn::parse("f:1").is_err());
    }

    #[test]
    fn charts_agree() {
        for f in [CatalogueFn::Geom, CatalogueFn::Exp, CatalogueFn::ExpZ] {
            let near = OmegaPoint::finite(c(1e8, 0.0), c(0.3, 0.1)).unwrap();
            let far = OmegaPoint::new(ExtendedComplex::Infinity, c(0.3, 0.1).into()).unwrap();
            let (a, b) = (f.eval(&near).unwrap(), f.eval(&far).unwrap());
            assert!((a - b).norm() < 1e-6, "{f:?}: {a} {b}");
            let p = OmegaPoint::finite(c(1.5, 0.5), c(0.9, -0.4)).unwrap();
            let q = OmegaPoint::finite(c(0.5, 0.5), c(0.9, -0.4)).unwrap();
            assert!(f.eval(&p).unwrap().is_finite() && f.eval(&q).unwrap().is_finite());
        }
        let p = OmegaPoint::finite(c(2.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((CatalogueFn::Geom.eval(&p).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((CatalogueFn::ExpZ.eval(&p).unwrap() - c((-2.0f64).exp(), 0.0)).norm() < 1e-15);
    }
}
