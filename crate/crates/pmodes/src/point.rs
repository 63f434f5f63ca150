//! Parsing of complex numbers (`re+imi`, `inf`), points and matrices.

use num::Complex;
use poisson_modes::{ExtendedComplex, OmegaPoint, SpherePointC};

use crate::CliError;

fn parse_real(s: &str) -> Result<f64, CliError> {
    s.trim().parse::<f64>().map_err(|_| CliError::Parse(format!("bad number '{s}'")))
}

/// Index of the sign separating real and imaginary parts, skipping exponent signs.
fn split_index(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len()).rev().find(|&i| (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E'))
}

pub fn parse_complex(s: &str) -> Result<Complex<f64>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CliError::Parse("empty number".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(parse_real(s)?, 0.0));
    };
    let imag = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => parse_real(t),
    };
    match split_index(body) {
        Some(k) => Ok(Complex::new(parse_real(&body[..k])?, imag(&body[k..])?)),
        None => Ok(Complex::new(0.0, imag(body)?)),
    }
}

pub fn parse_extended(s: &str) -> Result<ExtendedComplex<f64>, CliError> {
    match s.trim() {
        "inf" | "∞" => Ok(ExtendedComplex::Infinity),
        t => Ok(parse_complex(t)?.into()),
    }
}

fn parts(s: &str, n: usize) -> Result<Vec<&str>, CliError> {
    let v: Vec<&str> = s.split(',').collect();
    if v.len() != n {
        return Err(CliError::Parse(format!("expected {n} comma-separated values in '{s}'")));
    }
    Ok(v)
}

pub fn parse_omega_point(s: &str) -> Result<OmegaPoint<f64>, CliError> {
    let v = parts(s, 2)?;
    Ok(OmegaPoint::new(parse_extended(v[0])?, parse_extended(v[1])?)?)
}

pub fn parse_sphere_point(s: &str) -> Result<SpherePointC<f64>, CliError> {
    let v = parts(s, 3)?;
    Ok(SpherePointC::new(parse_complex(v[0])?, parse_complex(v[1])?, parse_complex(v[2])?)?)
}

pub fn parse_matrix(s: &str) -> Result<[Complex<f64>; 4], CliError> {
    let v = parts(s, 4)?;
    Ok([parse_complex(v[0])?, parse_complex(v[1])?, parse_complex(v[2])?, parse_complex(v[3])?])
}
