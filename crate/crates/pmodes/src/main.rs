//! `pmodes`: evaluate, verify and decompose Poisson Fourier modes from the command line.

mod catalogue;
mod output;
mod point;
mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigRational, Complex, Zero};
use poisson_modes::basischange::{f_in_pfm, pfm_in_f, BasisIndex};
use poisson_modes::pfm::{f_pq_eval, pfm_eval};
use poisson_modes::quadrature::{decompose, gram_matrix, DEFAULT_ANGULAR_ORDER, DEFAULT_RADIAL_ORDER};
use poisson_modes::sphere::{csh_closed_form, harmonic_polynomial};
use poisson_modes::zonal::{zonal_disk, zonal_pullback, zonal_sphere};
use poisson_modes::{Family, MoebiusMap, PFMIndex, SphereMoebius, SphereQuadrature};
use serde_json::{json, Value};

use catalogue::CatalogueFn;
use output::{render, Format};
use point::{parse_complex, parse_extended, parse_matrix, parse_omega_point, parse_sphere_point};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Failure(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) | CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(s) => write!(f, "invalid argument: {s}"),
            CliError::Domain(s) => write!(f, "domain error: {s}"),
            CliError::Failure(s) => write!(f, "{s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl From<poisson_modes::Error> for CliError {
    fn from(e: poisson_modes::Error) -> Self {
        use poisson_modes::Error as E;
        match e {
            E::Domain(_) | E::Indeterminate(_) => CliError::Domain(e.to_string()),
            E::Parameter(_) | E::NonTerminating(_) | E::Pole(_) | E::MixedPiPower => CliError::Parse(e.to_string()),
            E::Numeric(_) => CliError::Failure(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "pmodes", version, about = "Poisson Fourier modes on Ω = {(z,w) : zw ≠ 1}")]
struct Cli {
    /// Gauss–Legendre order in the radial variable.
    #[arg(long, global = true, default_value_t = DEFAULT_RADIAL_ORDER)]
    radial_order: usize,
    /// Trapezoid order in the angle.
    #[arg(long, global = true, default_value_t = DEFAULT_ANGULAR_ORDER)]
    angular_order: usize,
    /// Tolerance override for numeric checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for random sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a mode, a monomial f_{p,q}, a spherical mode or a zonal function.
    #[command(subcommand)]
    Eval(EvalTarget),
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = ["cid", "l1", "whipple", "gram", "eigen", "basis", "zonal", "csh", "all"])]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
    },
    /// Expand a catalogue function in modes.
    Decompose {
        /// f:p,q | pfm:m,n | geom | exp | expz
        #[arg(long = "f")]
        function: String,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        /// Write the coefficient table here and print only the residual.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// Emit the Gram matrix or the basis-change coefficients.
    Table {
        kind: TableKind,
        #[arg(long, visible_alias = "max-m", default_value_t = 4)]
        m: u32,
    },
    /// Zonal function Z_m(p1, p2).
    Zonal(ZonalArgs),
    /// Apply a Möbius automorphism of Ω.
    Transform {
        /// Matrix entries a,b,c,d.
        #[arg(long, allow_hyphen_values = true)]
        psi: String,
        #[arg(long, value_enum, default_value_t = FamilyArg::Direct)]
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand)]
enum EvalTarget {
    /// P_n^{-m}(z,w)
    Pfm {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i32,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// f_{p,q}(z,w) = z^p w^q / (1-zw)^{max(p,q)}
    F {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Q_n^{-m}(z1,z2,z3) on the complex sphere.
    Csh {
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i32,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Print the harmonic polynomial instead of a value.
        #[arg(long)]
        polynomial: bool,
    },
    /// Z_m(p1, p2)
    Zonal(ZonalArgs),
}

#[derive(Args)]
struct ZonalArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, allow_hyphen_values = true)]
    p1: String,
    #[arg(long, allow_hyphen_values = true)]
    p2: String,
    /// Treat p1, p2 as single coordinates on the sphere or the disk.
    #[arg(long, value_enum)]
    restrict: Option<Restrict>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Restrict {
    Sphere,
    Disk,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Gram,
    #[value(alias = "basis")]
    BasisChange,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Direct,
    Swapped,
}

fn complex_json(v: Complex<f64>) -> Value {
    json!({"re": v.re + 0.0, "im": v.im + 0.0})
}

fn quadrature(cli: &Cli) -> Result<SphereQuadrature<f64>, CliError> {
    if cli.radial_order < 4 || cli.angular_order < 4 {
        return Err(CliError::Parse("quadrature orders must be at least 4".into()));
    }
    if matches!(cli.tol, Some(t) if !(t > 0.0)) {
        return Err(CliError::Parse("tolerance must be positive".into()));
    }
    Ok(SphereQuadrature::new(cli.radial_order, cli.angular_order)?)
}

fn zonal_value(a: &ZonalArgs) -> Result<Value, CliError> {
    Ok(match a.restrict {
        None => complex_json(zonal_pullback(a.m, &parse_omega_point(&a.p1)?, &parse_omega_point(&a.p2)?)?),
        Some(Restrict::Sphere) => {
            json!({"re": zonal_sphere(a.m, parse_extended(&a.p1)?, parse_extended(&a.p2)?)?, "im": 0.0})
        }
        Some(Restrict::Disk) => {
            json!({"re": zonal_disk(a.m, parse_complex(&a.p1)?, parse_complex(&a.p2)?)?, "im": 0.0})
        }
    })
}

fn rational_string(q: &BigRational) -> String {
    q.to_string()
}

fn eval(target: &EvalTarget) -> Result<Value, CliError> {
    Ok(match target {
        EvalTarget::Pfm { m, n, point } => complex_json(pfm_eval(PFMIndex::new(*m, *n), &parse_omega_point(point)?)),
        EvalTarget::F { p, q, point } => complex_json(f_pq_eval(*p, *q, &parse_omega_point(point)?)),
        EvalTarget::Csh { m, n, point, polynomial } => {
            if *polynomial {
                let h = harmonic_polynomial(*m, *n)?;
                let terms: Vec<Value> = h
                    .entries()
                    .map(|(i, j, k, c)| {
                        json!({"i": i, "j": j, "k": k, "re": rational_string(&c.re), "im": rational_string(&c.im)})
                    })
                    .collect();
                Value::Array(terms)
            } else {
                let point = point.as_deref().ok_or_else(|| CliError::Parse("--point is required".into()))?;
                let s = parse_sphere_point(point)?;
                if n.unsigned_abs() > *m {
                    complex_json(Complex::zero())
                } else {
                    complex_json(csh_closed_form(PFMIndex::new(*m, *n), &s))
                }
            }
        }
        EvalTarget::Zonal(a) => zonal_value(a)?,
    })
}

fn verify(cli: &Cli, suite: &str, max_m: u32) -> Result<Value, CliError> {
    let cfg = suites::SuiteConfig { max_m, tol: cli.tol, seed: cli.seed, quadrature: quadrature(cli)? };
    let (total, parts) = if suite == "all" {
        suites::run_all(&cfg)?
    } else {
        let r = suites::run(suite, &cfg)?;
        (r.clone(), vec![])
    };
    let failures = total.failures;
    let value = if suite == "all" {
        match cli.format {
            Format::Json => {
                let mut v = total.to_json();
                v["suites"] = Value::Array(parts.iter().map(suites::Report::to_json).collect());
                v
            }
            Format::Csv => Value::Array(parts.iter().chain([&total]).map(suites::Report::to_json).collect()),
        }
    } else {
        total.to_json()
    };
    if failures > 0 {
        print!("{}", render(&value, cli.format)?);
        return Err(CliError::Failure(format!("{failures} failing case(s) in suite '{suite}'")));
    }
    Ok(value)
}

fn decompose_cmd(cli: &Cli, spec: &str, max_m: u32, out: Option<&std::path::Path>) -> Result<Value, CliError> {
    let f = CatalogueFn::parse(spec)?;
    let q = quadrature(cli)?;
    let table = decompose(|p| f.eval(p), max_m, &q)?;
    let entries: Vec<Value> =
        table.entries.iter().map(|(idx, c)| json!({"m": idx.m, "n": idx.n, "re": c.re, "im": c.im})).collect();
    match cli.format {
        Format::Csv if out.is_none() => return Ok(Value::Array(entries)),
        _ => {}
    }
    let doc = json!({"max_m": table.max_m, "entries": entries, "residual": table.residual});
    match out {
        Some(path) => {
            std::fs::write(path, serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(json!({"residual": table.residual}))
        }
        None => Ok(doc),
    }
}

fn table_cmd(cli: &Cli, kind: TableKind, m: u32) -> Result<Value, CliError> {
    Ok(match kind {
        TableKind::Gram => {
            let q = quadrature(cli)?;
            let rows = gram_matrix(m, &q)
                .into_iter()
                .map(|(a, b, v)| json!({"m": a.m, "n": a.n, "p": b.m, "q": b.n, "re": v.re, "im": v.im}))
                .collect();
            Value::Array(rows)
        }
        TableKind::BasisChange => {
            let mut rows = Vec::new();
            for idx in PFMIndex::all_up_to(m) {
                for (t, c) in pfm_in_f(idx.m, idx.n).terms {
                    if let BasisIndex::F { p, q } = t {
                        rows.push(json!({"direction": "pfm_to_f", "m": idx.m, "n": idx.n, "p": p, "q": q, "coeff": rational_string(&c)}));
                    }
                }
            }
            for p in 0..=m {
                for q in 0..=m {
                    for (t, c) in f_in_pfm(p, q).terms {
                        if let BasisIndex::Pfm(idx) = t {
                            rows.push(json!({"direction": "f_to_pfm", "m": idx.m, "n": idx.n, "p": p, "q": q, "coeff": rational_string(&c)}));
                        }
                    }
                }
            }
            Value::Array(rows)
        }
    })
}

fn transform(psi: &str, family: FamilyArg, point: &str) -> Result<Value, CliError> {
    let [a, b, c, d] = parse_matrix(psi)?;
    let family = match family {
        FamilyArg::Direct => Family::Direct,
        FamilyArg::Swapped => Family::Swapped,
    };
    let t = MoebiusMap::new(SphereMoebius::new(a, b, c, d)?, family);
    let image = t.apply(&parse_omega_point(point)?)?;
    Ok(json!({"z": image.z().to_string(), "w": image.w().to_string()}))
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    quadrature(cli)?;
    match &cli.command {
        Command::Eval(t) => eval(t),
        Command::Verify { suite, max_m } => verify(cli, suite, *max_m),
        Command::Decompose { function, max_m, output } => decompose_cmd(cli, function, *max_m, output.as_deref()),
        Command::Table { kind, m } => table_cmd(cli, *kind, *m),
        Command::Zonal(a) => zonal_value(a),
        Command::Transform { psi, family, point } => transform(psi, *family, point),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|v| render(&v, cli.format)) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("pmodes: {e}");
            ExitCode::from(e.code())
        }
    }
}
