//! Command-line front end.
//!
//! Subcommands: `eval`, `sweep`, `optimize`, `certify`, `oracle`.  Exit
//! codes: 0 success, 2 domain error, 3 unwritable output path, 4 no
//! optimizer exists, 5 a certificate failed, 6 a certificate ran out of
//! depth.  `GABOR_BOUNDS_EPS` overrides the default series tolerance used
//! by `eval`, `sweep` and `oracle`.

use crate::bounds::bounds_for_with_eps;
use crate::certify::{
    builtin_certificates, prove, record, sanity_negative_certificate, Status,
};
use crate::optimize::{
    find_critical_gamma_cutoff_m2, find_critical_point, ExtremumKind, Quantity,
};
use crate::oracle::{compare_with_eps, family_tolerance};
use crate::series::DEFAULT_EPS;
use crate::window::{BoundsValue, LatticeShape, WindowFamily, WindowSpec};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_UNWRITABLE: i32 = 3;
pub const EXIT_NO_OPTIMIZER: i32 = 4;
pub const EXIT_CERT_FAILED: i32 = 5;
pub const EXIT_CERT_DEPTH: i32 = 6;

#[derive(Parser)]
#[command(name = "gabor-bounds", version, about = "Sharp Gabor frame bounds on rectangular lattices of integer density")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form bounds at one parameter point.
    Eval(EvalArgs),
    /// Tabulate bounds over a shape or decay range.
    Sweep(SweepArgs),
    /// Locate the optimal lattice shape (or decay parameter) for a quantity.
    Optimize(OptimizeArgs),
    /// Run the built-in inequality certificates.
    Certify(CertifyArgs),
    /// Cross-check the closed forms against the discrete frame operator.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct WindowArgs {
    /// Window family: sech | cutoff1 | cutoff2 | onesided | twosided.
    #[arg(long)]
    family: String,
    /// Lattice density (an integer).
    #[arg(long)]
    n: u32,
    /// Shape parameter eta; the lattice is (eta/n) Z x (1/eta) Z.
    #[arg(long)]
    eta: Option<f64>,
    /// Time step a (alternative to --eta; eta = n a).
    #[arg(long)]
    a: Option<f64>,
    /// Decay parameter of the window.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

impl WindowArgs {
    fn window(&self) -> Result<WindowSpec> {
        WindowSpec::new(self.family.parse()?, self.gamma)
    }

    fn shape(&self) -> Result<LatticeShape> {
        match (self.eta, self.a) {
            (Some(e), None) => LatticeShape::new(self.n, e),
            (None, Some(a)) => LatticeShape::from_time_step(self.n, a),
            (Some(_), Some(_)) => {
                Err(Error::Domain("give either --eta or --a, not both".into()))
            }
            (None, None) => Err(Error::Domain("one of --eta or --a is required".into())),
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    window: WindowArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Window family: sech | cutoff1 | cutoff2 | onesided | twosided.
    #[arg(long)]
    family: String,
    /// Comma-separated list of densities.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Sweep range lower end in eta.
    #[arg(long)]
    eta_lo: Option<f64>,
    /// Sweep range upper end in eta.
    #[arg(long)]
    eta_hi: Option<f64>,
    /// Sweep range lower end in gamma (cut-off families).
    #[arg(long)]
    gamma_lo: Option<f64>,
    /// Sweep range upper end in gamma (cut-off families).
    #[arg(long)]
    gamma_hi: Option<f64>,
    /// Number of grid points (at least 2).
    #[arg(long)]
    steps: usize,
    /// Fixed decay for eta sweeps.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Fixed time step for gamma sweeps.
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    /// Output file; CSV sweeps over several densities write one file each,
    /// with `_n<density>` inserted before the extension.
    #[arg(long)]
    output: PathBuf,
    /// csv | json.
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Window family: sech | cutoff2 | onesided | twosided (cutoff1 has no optimum).
    #[arg(long)]
    family: String,
    /// Lattice density.
    #[arg(long)]
    n: u32,
    /// lower | upper | kappa.
    #[arg(long)]
    quantity: String,
    /// Decay parameter.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Time step (cutoff2 optimizes gamma at fixed a).
    #[arg(long, default_value_t = 1.0)]
    a: f64,
}

#[derive(Args)]
struct CertifyArgs {
    /// Only run certificates whose name contains this substring.
    #[arg(long)]
    filter: Option<String>,
    /// Write the JSON result records here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Override the subdivision depth cap.
    #[arg(long)]
    max_depth: Option<u32>,
    /// Append a deliberately false certificate (exercises the failure path).
    #[arg(long, default_value_t = false)]
    sanity_negative: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Signal-length budget for the discrete model.
    #[arg(long, default_value_t = 2048)]
    l: usize,
    /// Also write the report JSON here.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Parse `std::env::args` and run; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Run with explicit arguments (first element is the program name).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with success exit
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let eps = match std::env::var("GABOR_BOUNDS_EPS") {
        Ok(s) => match s.parse::<f64>() {
            Ok(v) if v > 0.0 => v,
            _ => {
                eprintln!("error: GABOR_BOUNDS_EPS must be a positive number, got `{s}`");
                return EXIT_DOMAIN;
            }
        },
        Err(_) => DEFAULT_EPS,
    };
    let outcome = match cli.command {
        Command::Eval(a) => cmd_eval(&a, eps),
        Command::Sweep(a) => cmd_sweep(&a, eps),
        Command::Optimize(a) => cmd_optimize(&a),
        Command::Certify(a) => cmd_certify(&a),
        Command::Oracle(a) => cmd_oracle(&a, eps),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::NoOptimizer(_) => EXIT_NO_OPTIMIZER,
        Error::Io(_) => EXIT_UNWRITABLE,
        _ => EXIT_DOMAIN,
    }
}

fn fmt_sig(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.14e}")
    } else {
        "inf".to_string()
    }
}

fn print_bounds(b: &BoundsValue) {
    println!("A           = {}", fmt_sig(b.lower));
    println!("B           = {}", fmt_sig(b.upper));
    println!("kappa       = {}", fmt_sig(b.kappa));
    println!("trunc_bound = {}", fmt_sig(b.trunc_bound));
    if b.degenerate {
        println!("degenerate  = true (no frame: lower bound vanishes)");
    }
}

fn cmd_eval(args: &EvalArgs, eps: f64) -> Result<i32> {
    let window = args.window.window()?;
    let shape = args.window.shape()?;
    let b = bounds_for_with_eps(&window, &shape, eps)?;
    print_bounds(&b);
    Ok(EXIT_OK)
}

// -- sweep ---------------------------------------------------------------

#[derive(Serialize)]
struct SweepRow {
    x: f64,
    #[serde(rename = "A")]
    lower: f64,
    #[serde(rename = "B")]
    upper: f64,
    kappa: f64,
    trunc_bound: f64,
}

#[derive(Serialize)]
struct SweepDoc<'a> {
    family: WindowFamily,
    gamma: f64,
    parameter: &'a str,
    sweeps: Vec<SweepBlock>,
}

#[derive(Serialize)]
struct SweepBlock {
    n: u32,
    rows: Vec<SweepRow>,
}

fn grid(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::Domain("sweep needs at least 2 steps".into()));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::Domain(format!("invalid sweep range [{lo}, {hi}]")));
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

fn csv_kappa(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        "inf".to_string()
    }
}

fn sweep_rows(
    family: WindowFamily,
    gamma: f64,
    a: f64,
    n: u32,
    xs: &[f64],
    in_gamma: bool,
    eps: f64,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let b = if in_gamma {
            let w = WindowSpec::new(family, x)?;
            bounds_for_with_eps(&w, &LatticeShape::from_time_step(n, a)?, eps)?
        } else {
            let w = WindowSpec::new(family, gamma)?;
            bounds_for_with_eps(&w, &LatticeShape::new(n, x)?, eps)?
        };
        rows.push(SweepRow {
            x,
            lower: b.lower,
            upper: b.upper,
            kappa: b.kappa,
            trunc_bound: b.trunc_bound,
        });
    }
    Ok(rows)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn csv_path_for(base: &Path, n: u32, multiple: bool) -> PathBuf {
    if !multiple {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}_n{n}.{ext}"))
}

fn cmd_sweep(args: &SweepArgs, eps: f64) -> Result<i32> {
    let family: WindowFamily = args.family.parse()?;
    if args.n.is_empty() {
        return Err(Error::Domain("sweep needs at least one density via --n".into()));
    }
    let (xs, in_gamma, label) = match (args.eta_lo, args.eta_hi, args.gamma_lo, args.gamma_hi) {
        (Some(lo), Some(hi), None, None) => (grid(lo, hi, args.steps)?, false, "eta"),
        (None, None, Some(lo), Some(hi)) => (grid(lo, hi, args.steps)?, true, "gamma"),
        _ => {
            return Err(Error::Domain(
                "give exactly one range: --eta-lo/--eta-hi or --gamma-lo/--gamma-hi".into(),
            ))
        }
    };
    match args.format.as_str() {
        "csv" => {
            let multiple = args.n.len() > 1;
            for &n in &args.n {
                let rows = sweep_rows(family, args.gamma, args.a, n, &xs, in_gamma, eps)?;
                let mut out = format!("{label},A,B,kappa,trunc_bound\n");
                for r in rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        r.x,
                        r.lower,
                        r.upper,
                        csv_kappa(r.kappa),
                        r.trunc_bound
                    );
                }
                write_file(&csv_path_for(&args.output, n, multiple), &out)?;
            }
        }
        "json" => {
            let mut sweeps = Vec::new();
            for &n in &args.n {
                sweeps.push(SweepBlock {
                    n,
                    rows: sweep_rows(family, args.gamma, args.a, n, &xs, in_gamma, eps)?,
                });
            }
            let doc = SweepDoc { family, gamma: args.gamma, parameter: label, sweeps };
            let body = serde_json::to_string_pretty(&doc).expect("sweep serialization");
            write_file(&args.output, &body)?;
        }
        other => return Err(Error::Domain(format!("unknown format `{other}`"))),
    }
    Ok(EXIT_OK)
}

// -- optimize --------------------------------------------------------------

fn cmd_optimize(args: &OptimizeArgs) -> Result<i32> {
    let family: WindowFamily = args.family.parse()?;
    let quantity: Quantity = args.quantity.parse()?;
    let window = WindowSpec::new(family, args.gamma)?;
    let kind_name = |k: ExtremumKind| match k {
        ExtremumKind::Max => "max",
        ExtremumKind::Min => "min",
    };
    match family {
        WindowFamily::CutoffM2 => {
            let cp = find_critical_gamma_cutoff_m2(quantity, args.n, args.a)?;
            println!("gamma_star = {}", fmt_sig(cp.eta_star));
            println!("a = {}, b = {}", fmt_sig(args.a), fmt_sig(1.0 / (args.n as f64 * args.a)));
            println!("residual = {:e}", cp.residual);
            println!("bracket = [{}, {}]", fmt_sig(cp.bracket.0), fmt_sig(cp.bracket.1));
            println!("kind = {}", kind_name(cp.kind));
        }
        WindowFamily::CutoffM1 => {
            return Err(Error::NoOptimizer(
                "the support-1/b cut-off degenerates: the box limit gamma -> 0 is optimal".into(),
            ));
        }
        _ => {
            let cp = find_critical_point(&window, quantity, args.n)?;
            println!("eta_star = {}", fmt_sig(cp.eta_star));
            println!(
                "a = {}, b = {}",
                fmt_sig(cp.eta_star / args.n as f64),
                fmt_sig(1.0 / cp.eta_star)
            );
            println!("residual = {:e}", cp.residual);
            println!("bracket = [{}, {}]", fmt_sig(cp.bracket.0), fmt_sig(cp.bracket.1));
            println!("kind = {}", kind_name(cp.kind));
        }
    }
    Ok(EXIT_OK)
}

// -- certify ----------------------------------------------------------------

fn cmd_certify(args: &CertifyArgs) -> Result<i32> {
    let mut certs = builtin_certificates();
    if args.sanity_negative {
        certs.push(sanity_negative_certificate());
    }
    if let Some(f) = &args.filter {
        certs.retain(|c| c.name.contains(f.as_str()));
        if certs.is_empty() {
            return Err(Error::Domain(format!("no certificate matches filter `{f}`")));
        }
    }
    let mut records = Vec::new();
    let mut any_failed = false;
    let mut any_depth = false;
    for mut cert in certs {
        if let Some(d) = args.max_depth {
            cert.max_depth = d;
        }
        let result = prove(&cert)?;
        match result.status {
            Status::Failed => any_failed = true,
            Status::DepthExceeded => any_depth = true,
            Status::Proved => {}
        }
        eprintln!(
            "{:32} {:?} ({} leaves)",
            cert.name, result.status, result.leaves_checked
        );
        records.push(record(&cert, &result));
    }
    let body = serde_json::to_string_pretty(&records).expect("certificate serialization");
    match &args.output {
        Some(path) => write_file(path, &body)?,
        None => println!("{body}"),
    }
    Ok(if any_failed {
        EXIT_CERT_FAILED
    } else if any_depth {
        EXIT_CERT_DEPTH
    } else {
        EXIT_OK
    })
}

// -- oracle -----------------------------------------------------------------

fn cmd_oracle(args: &OracleArgs, eps: f64) -> Result<i32> {
    let window = args.window.window()?;
    let shape = args.window.shape()?;
    let report = compare_with_eps(&window, &shape, args.l, eps)?;
    let body = serde_json::to_string_pretty(&report).expect("report serialization");
    println!("{body}");
    if let Some(path) = &args.output {
        write_file(path, &body)?;
    }
    let tol = family_tolerance(window.family);
    let ok = if report.closed_lower > 0.0 {
        report.rel_err_lower <= tol && report.rel_err_upper <= tol
    } else {
        // degenerate closed form: only the upper bound is comparable
        report.rel_err_upper <= tol
    };
    Ok(if ok { EXIT_OK } else { EXIT_DOMAIN })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantity_and_family_parsing() {
        assert_eq!("kappa".parse::<Quantity>().unwrap(), Quantity::ConditionNumber);
        assert!("middle".parse::<Quantity>().is_err());
        assert_eq!("sech".parse::<WindowFamily>().unwrap(), WindowFamily::Sech);
    }

    #[test]
    fn csv_paths_for_multi_density_sweeps() {
        let p = csv_path_for(Path::new("out/sweep.csv"), 5, true);
        assert_eq!(p, Path::new("out/sweep_n5.csv"));
        let q = csv_path_for(Path::new("data.csv"), 2, false);
        assert_eq!(q, Path::new("data.csv"));
    }

    #[test]
    fn grids_are_inclusive_and_validated() {
        let g = grid(1.0, 2.0, 3).unwrap();
        assert_eq!(g, vec![1.0, 1.5, 2.0]);
        assert!(grid(1.0, 2.0, 1).is_err());
        assert!(grid(2.0, 1.0, 5).is_err());
    }
}
