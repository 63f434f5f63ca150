//! Verification suites behind `pmodes verify`.

use poisson_modes::basischange::{a_bound_check, cid_sweep, roundtrip_mode};
use poisson_modes::hypergeom::{cor335_sweep, l1_sweep, raynal_sweep};
use poisson_modes::pfm::eigen_residual;
use poisson_modes::quadrature::gram_deviations;
use poisson_modes::sampling::{random_bidisk_point, random_omega_point, random_sphere_point, rng};
use poisson_modes::sphere::{csh_closed_form, harmonic_polynomial, laplacian_c3, spfm_eval};
use poisson_modes::zonal::{zonal_pullback, zonal_sum};
use poisson_modes::{PFMIndex, SphereQuadrature};
use serde_json::{json, Value};

use crate::CliError;

pub const SUITES: [&str; 8] = ["cid", "l1", "whipple", "gram", "eigen", "basis", "zonal", "csh"];

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    pub max_error: f64,
}

impl Report {
    fn exact(suite: &str, (cases, failures): (usize, usize)) -> Self {
        Report { suite: suite.into(), cases, failures, max_error: 0.0 }
    }

    pub fn to_json(&self) -> Value {
        json!({"suite": self.suite, "cases": self.cases, "failures": self.failures, "max_error": self.max_error})
    }
}

pub struct SuiteConfig {
    pub max_m: u32,
    pub tol: Option<f64>,
    pub seed: u64,
    pub quadrature: SphereQuadrature<f64>,
}

fn default_tol(suite: &str) -> f64 {
    match suite {
        "gram" | "zonal" | "csh" => 1e-10,
        "eigen" => 1e-5,
        _ => 0.0,
    }
}

pub fn run(suite: &str, cfg: &SuiteConfig) -> Result<Report, CliError> {
    let m = cfg.max_m;
    let tol = cfg.tol.unwrap_or_else(|| default_tol(suite));
    let numeric = |cases: usize, errors: Vec<f64>| Report {
        suite: suite.into(),
        cases,
        failures: errors.iter().filter(|e| !(**e <= tol)).count(),
        max_error: errors.iter().fold(0.0, |a: f64, b| a.max(*b)),
    };
    Ok(match suite {
        "cid" => Report::exact(suite, cid_sweep(m)),
        "l1" => Report::exact(suite, l1_sweep(m as i64)),
        "whipple" => {
            let (c1, f1) = raynal_sweep(m as i64);
            let (c2, f2) = cor335_sweep(m as i64);
            Report::exact(suite, (c1 + c2, f1 + f2))
        }
        "gram" => {
            let errs: Vec<f64> = gram_deviations(m, &cfg.quadrature).into_iter().map(|(_, _, d)| d).collect();
            numeric(errs.len(), errs)
        }
        "eigen" => {
            let mut r = rng(cfg.seed);
            let pts: Vec<_> = (0..100).map(|_| random_bidisk_point(&mut r, 0.7)).collect();
            let errs = PFMIndex::all_up_to(m)
                .into_iter()
                .map(|idx| eigen_residual(idx, &pts, 1e-3))
                .collect::<poisson_modes::Result<Vec<f64>>>()?;
            numeric(errs.len(), errs)
        }
        "basis" => {
            let modes = PFMIndex::all_up_to(m);
            let failures = modes.iter().filter(|idx| !roundtrip_mode(**idx)).count()
                + (0..=m).filter(|k| !a_bound_check(*k)).count();
            Report::exact(suite, (modes.len() + m as usize + 1, failures))
        }
        "zonal" => {
            let mut r = rng(cfg.seed);
            let pairs: Vec<(poisson_modes::OmegaPoint<f64>, _)> =
                (0..100).map(|_| (random_omega_point(&mut r), random_omega_point(&mut r))).collect();
            let mut errs = Vec::new();
            for k in 0..=m {
                for (p1, p2) in &pairs {
                    let a = zonal_sum(k, p1, p2);
                    let b = zonal_pullback(k, p1, p2)?;
                    errs.push((a - b).norm() / (1.0 + b.norm()));
                }
            }
            numeric(errs.len(), errs)
        }
        "csh" => {
            let mut r = rng(cfg.seed);
            let pts: Vec<_> = (0..100).map(|_| random_sphere_point::<f64>(&mut r)).collect();
            let mut errs = Vec::new();
            let mut exact_failures = 0;
            for idx in PFMIndex::all_up_to(m) {
                let h = harmonic_polynomial(idx.m, idx.n)?;
                if !laplacian_c3(&h).is_zero() || !h.is_homogeneous(idx.m) {
                    exact_failures += 1;
                }
                for s in &pts {
                    let a = spfm_eval(idx, s)?;
                    let b = csh_closed_form(idx, s);
                    let c = h.eval([s.z1, s.z2, s.z3]);
                    let scale = 1.0 + a.norm();
                    errs.push(((a - b).norm().max((b - c).norm()) / scale).max(0.0));
                }
            }
            let mut rep = numeric(errs.len(), errs);
            rep.failures += exact_failures;
            rep
        }
        other => return Err(CliError::Parse(format!("unknown suite '{other}'"))),
    })
}

/// Runs every suite; the combined report sums cases and failures.
pub fn run_all(cfg: &SuiteConfig) -> Result<(Report, Vec<Report>), CliError> {
    let reports = SUITES.iter().map(|s| run(s, cfg)).collect::<Result<Vec<_>, _>>()?;
    let total = Report {
        suite: "all".into(),
        cases: reports.iter().map(|r| r.cases).sum(),
        failures: reports.iter().map(|r| r.failures).sum(),
        max_error: reports.iter().fold(0.0, |a, r| a.max(r.max_error)),
    };
    Ok((total, reports))
}
