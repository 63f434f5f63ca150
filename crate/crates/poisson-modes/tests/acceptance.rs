//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num::Complex;
use poisson_modes::basischange::{a_bound_check, cid_sweep, roundtrip_check};
use poisson_modes::hypergeom::{l1_sweep, raynal_sweep};
use poisson_modes::moebius::{laplace_invariance_residual, pullback_expand};
use poisson_modes::pfm::{eigen_residual, f_pq_eval, pfm_eval};
use poisson_modes::quadrature::{decompose, gram_deviations, gram_matrix};
use poisson_modes::sampling::{random_bidisk_point, random_moebius, random_omega_point, random_sphere_point, rng};
use poisson_modes::sphere::{
    harmonic_polynomial, hyperboloid_check, hyperboloid_image, laplacian_c3, spfm_eval, stereo, stereo_inv,
};
use poisson_modes::zonal::{zonal_invariance_residual, zonal_pullback, zonal_sphere, zonal_sum};
use poisson_modes::{ExtendedComplex, OmegaPoint, PFMIndex, SphereQuadrature};

type C = Complex<f64>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn cid() -> Outcome {
    let start = Instant::now();
    let (cases, failures) = cid_sweep(25);
    let t = start.elapsed();
    check(failures == 0 && t < Duration::from_secs(60), format!("{cases} triples, {failures} failures, {:.2?}", t))
}

fn l1() -> Outcome {
    let (cases, failures) = l1_sweep(12);
    check(failures == 0, format!("{cases} tuples, {failures} failures"))
}

fn raynal() -> Outcome {
    let (cases, failures) = raynal_sweep(10);
    check(failures == 0, format!("{cases} tuples, {failures} failures"))
}

fn gram() -> Outcome {
    let q = SphereQuadrature::<f64>::new(64, 256).map_err(|e| e.to_string())?;
    let dev = gram_deviations(6, &q).into_iter().fold(0.0f64, |a, (_, _, d)| a.max(d));
    let p01 = PFMIndex::new(1, 0);
    let v = gram_matrix(1, &q)
        .into_iter()
        .find(|(a, b, _)| *a == p01 && *b == p01)
        .map(|(_, _, v)| v)
        .ok_or("missing entry")?;
    let third = (v - 1.0 / 3.0).norm();
    check(dev <= 1e-10 && third <= 1e-12, format!("max deviation {dev:.2e}, |<P0^-1,P0^-1> - 1/3| = {third:.2e}"))
}

fn eigen() -> Outcome {
    let mut r = rng(SEED);
    let pts: Vec<OmegaPoint<f64>> = (0..100).map(|_| random_bidisk_point(&mut r, 0.8)).collect();
    let mut worst = 0.0f64;
    for idx in PFMIndex::all_up_to(6) {
        worst = worst.max(eigen_residual(idx, &pts, 1e-3).map_err(|e| e.to_string())?);
    }
    check(worst < 1e-5, format!("max relative residual {worst:.2e}"))
}

fn basis_change() -> Outcome {
    let rt = roundtrip_check(12);
    let bounds = (0..=15).all(a_bound_check);
    check(rt && bounds, format!("round trip m<=12: {rt}, coefficient bounds m<=15: {bounds}"))
}

fn schauder() -> Outcome {
    let q = SphereQuadrature::<f64>::new(64, 256).map_err(|e| e.to_string())?;
    let max_m = 4;
    let t = decompose(|p| Ok(f_pq_eval(1, 1, p)), max_m, &q).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (idx, c) in &t.entries {
        let want = match (idx.m, idx.n) {
            (1, 0) => 0.5,
            (0, 0) => -0.5,
            _ => 0.0,
        };
        worst = worst.max((c - want).norm());
    }
    let f11 = worst;
    for target in PFMIndex::all_up_to(max_m) {
        let t = decompose(|p| Ok(pfm_eval(target, p)), max_m, &q).map_err(|e| e.to_string())?;
        for (idx, c) in &t.entries {
            let want = if *idx == target { 1.0 } else { 0.0 };
            worst = worst.max((c - want).norm());
        }
    }
    check(worst <= 1e-9, format!("f_(1,1) error {f11:.2e}, worst over f_(1,1) and single modes m<=4 {worst:.2e}"))
}

fn csh() -> Outcome {
    let mut r = rng(SEED);
    let pts: Vec<_> = (0..100).map(|_| random_sphere_point::<f64>(&mut r)).collect();
    let mut non_harmonic = 0;
    let mut worst = 0.0f64;
    for idx in PFMIndex::all_up_to(10) {
        let h = harmonic_polynomial(idx.m, idx.n).map_err(|e| e.to_string())?;
        if !laplacian_c3(&h).is_zero() || !h.is_homogeneous(idx.m) {
            non_harmonic += 1;
        }
        for s in &pts {
            let q = spfm_eval(idx, s).map_err(|e| e.to_string())?;
            worst = worst.max((h.eval([s.z1, s.z2, s.z3]) - q).norm() / (1.0 + q.norm()));
        }
    }
    check(
        non_harmonic == 0 && worst <= 1e-10,
        format!("{non_harmonic} non-harmonic, max relative restriction error {worst:.2e}"),
    )
}

fn stereographic() -> Outcome {
    let mut r = rng(SEED);
    let pts: Vec<OmegaPoint<f64>> = (0..1000).map(|_| random_omega_point(&mut r)).collect();
    let charts = pts.iter().filter(|p| p.coords().is_none()).count();
    let mut fwd = 0.0f64;
    let mut back = 0.0f64;
    for p in &pts {
        let s = stereo(p);
        let q = stereo_inv(&s).map_err(|e| e.to_string())?;
        fwd = fwd.max(q.chordal_distance(p));
        let s2 = stereo(&q);
        back = back.max(s2.distance(&s) / (1.0 + s.distance(&stereo(&OmegaPoint::origin()))));
    }
    let mut lower = Vec::new();
    let mut upper_ok = true;
    for k in 0..50 {
        let (t, phi) = (0.05 * k as f64, 0.7 * k as f64);
        let (x1, x2, x3) = (t.sinh() * phi.cos(), t.sinh() * phi.sin(), t.cosh());
        lower.push([x1, x2, -x3]);
        if k > 0 {
            let p = hyperboloid_image([x1, x2, x3]).map_err(|e| e.to_string())?;
            upper_ok &= match p.coords() {
                Some((z, w)) => z.norm() > 1.0 && (w - z.conj()).norm() <= 1e-12 * z.norm(),
                None => false,
            };
        }
    }
    let lower_ok = hyperboloid_check(&lower, 1e-12).map_err(|e| e.to_string())?;
    check(
        fwd <= 1e-12 && back <= 1e-12 && charts > 0 && lower_ok && upper_ok,
        format!("{charts} infinite-chart points, errors {fwd:.2e}/{back:.2e}, lower sheet {lower_ok}, upper sheet {upper_ok}"),
    )
}

fn sphere_grid() -> Vec<ExtendedComplex<f64>> {
    let mut g = vec![ExtendedComplex::Infinity, ExtendedComplex::zero()];
    for k in 0..48 {
        let theta = std::f64::consts::PI * (k as f64 + 0.5) / 48.0;
        let z = C::from_polar((theta / 2.0).tan(), 2.399_963 * k as f64);
        g.push(z.into());
    }
    g
}

fn zonal() -> Outcome {
    let mut r = rng(SEED);
    let pairs: Vec<(OmegaPoint<f64>, OmegaPoint<f64>)> =
        (0..100).map(|_| (random_omega_point(&mut r), random_omega_point(&mut r))).collect();
    let mut cross = 0.0f64;
    let mut diag = 0.0f64;
    for m in 0..=8 {
        for (p1, p2) in &pairs {
            let a = zonal_sum(m, p1, p2);
            let b = zonal_pullback(m, p1, p2).map_err(|e| e.to_string())?;
            cross = cross.max((a - b).norm() / (1.0 + b.norm()));
            diag = diag.max((zonal_sum(m, p1, p1) - (2 * m + 1) as f64).norm());
        }
    }
    let short: Vec<_> = pairs[..20].to_vec();
    let mut inv = 0.0f64;
    for _ in 0..50 {
        let t = random_moebius(&mut r);
        for m in 0..=8 {
            inv = inv.max(zonal_invariance_residual(m, &t, &short).map_err(|e| e.to_string())?);
        }
    }
    let grid = sphere_grid();
    let mut excess = f64::NEG_INFINITY;
    for m in 0..=10u32 {
        for z in &grid {
            for u in &grid {
                let v = zonal_sphere(m, *z, *u).map_err(|e| e.to_string())?;
                excess = excess.max(v.abs() - (2 * m + 1) as f64);
            }
        }
    }
    check(
        cross <= 1e-10 && diag <= 1e-10 && inv < 1e-9 && excess <= 1e-9,
        format!("sum/pullback {cross:.2e}, definiteness {diag:.2e}, invariance {inv:.2e}, max |Z|-(2m+1) {excess:.2e}"),
    )
}

fn pullback() -> Outcome {
    let mut r = rng(SEED);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let t = random_moebius(&mut r);
        for m in 0..=6 {
            worst = worst.max(pullback_expand(m, &t).map_err(|e| e.to_string())?.residual);
        }
    }
    check(worst < 1e-9, format!("max relative residual {worst:.2e}"))
}

fn laplace_invariance() -> Outcome {
    let mut r = rng(SEED);
    let mut worst = 0.0f64;
    for k in 0..10u32 {
        let t = random_moebius(&mut r);
        let idx = PFMIndex::new(1 + k % 5, (k as i32 % 3) - 1);
        let samples: Vec<OmegaPoint<f64>> = (0..20)
            .map(|_| random_bidisk_point(&mut r, 0.6))
            .filter(|p| t.apply(p).is_ok_and(|q| q.coords().is_some()))
            .collect();
        let f = |p: &OmegaPoint<f64>| Ok(pfm_eval(idx, p));
        worst = worst.max(laplace_invariance_residual(&t, f, &samples, 1e-3).map_err(|e| e.to_string())?);
    }
    check(worst < 1e-5, format!("max relative residual {worst:.2e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("combinatorial identity, m <= 25", cid),
        ("L1/T1/T2 sums, m <= 12", l1),
        ("Raynal relation, m <= 10", raynal),
        ("Gram matrix, m <= 6", gram),
        ("eigenfunction residual, m <= 6", eigen),
        ("basis-change round trip", basis_change),
        ("Schauder decomposition", schauder),
        ("complex spherical harmonics, m <= 10", csh),
        ("stereographic round trip", stereographic),
        ("zonal harmonics", zonal),
        ("pullback expansion, m <= 6", pullback),
        ("Laplacian Möbius invariance", laplace_invariance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2}. {name}: {detail} [{:.1?}]", i + 1, start.elapsed());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
