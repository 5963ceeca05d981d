use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use zetabound::bounds::{
    audit_constants, comparison_bounds, constants, default_audit_grid, theorem_bounds, theorem_bounds_relaxed,
    BoundParams, StepStatus,
};
use zetabound::explicit_formula::{formula_sides, FormulaParams};
use zetabound::primes::{reference_margins, sieve_mangoldt, ReferenceInequality};
use zetabound::zeros::{load_zeros, ZeroFormat};
use zetabound::zeta::EvalConfig;
use zetabound_cli::config::FileConfig;
use zetabound_cli::fetch::fetch_zeros;
use zetabound_cli::report::{emit_report, render, ReportFormat};
use zetabound_cli::scan::{parse_quantities, run_scan, Quantity, ScanConfig, Spacing, Tally};

const EXIT_OK: u8 = 0;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_FAIL: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_ERROR: u8 = 1;

#[derive(Debug, Parser)]
#[command(name = "zetabound", version, about = "Certified bounds for zeta and zeta'/zeta on the line Re s = 1")]
struct Cli {
    /// JSON file with the same keys as the flags; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print lambda0, A0, Euler's gamma and log zeta(3/2).
    Constants {
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Evaluate the packaged bounds at one height.
    Bounds(BoundsArgs),
    /// Scan a range of heights and compare computed values with the bounds.
    Verify(VerifyArgs),
    /// Re-derive the packaged constants on a grid of heights.
    Audit {
        #[arg(long = "T")]
        height: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Zero-table utilities.
    Zeros {
        #[command(subcommand)]
        command: ZerosCommand,
    },
    /// Prime-sum checks.
    Primes {
        #[command(subcommand)]
        command: PrimesCommand,
    },
    /// Term-by-term evaluation of the smoothed explicit formula.
    ExplicitFormula(FormulaArgs),
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    t: Option<f64>,
    #[arg(long = "T")]
    height: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// logderiv, invzeta, zeta, logzeta or all
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    compare: bool,
    #[arg(long)]
    prec: Option<u32>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Log-spaced grid (linear otherwise).
    #[arg(long)]
    log: bool,
    #[arg(long = "T")]
    height: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long)]
    prec: Option<u32>,
    /// Allow t below 10^6 (observational records).
    #[arg(long)]
    relaxed: bool,
    /// logderiv, invzeta, zeta, logzeta, a comma list, or all
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Debug, Subcommand)]
enum ZerosCommand {
    /// Count, height and counting-function residual of a zero file.
    Stats {
        #[arg(long)]
        file: Option<PathBuf>,
        /// plain or commented
        #[arg(long)]
        zero_format: Option<String>,
    },
    /// Download a plain-text zero list and normalize it.
    Fetch {
        #[arg(long)]
        url: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sha256: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum PrimesCommand {
    /// Check a reference prime-sum inequality at x.
    Check {
        #[arg(long)]
        x: Option<f64>,
        /// ramare or rosser
        #[arg(long)]
        which: Option<String>,
        #[arg(long)]
        prec: Option<u32>,
    },
}

#[derive(Debug, Args)]
struct FormulaArgs {
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    zeros: Option<PathBuf>,
    #[arg(long)]
    prec: Option<u32>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Error(String),
}

type Outcome = Result<u8, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn fail(e: impl std::fmt::Display) -> Failure {
    Failure::Error(e.to_string())
}

/// Flag value, else config value, else default.
struct Merge<'a> {
    file: &'a FileConfig,
}

impl Merge<'_> {
    fn f64(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>, Failure> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.file.f64(key).map_err(Failure::Usage),
        }
    }

    fn need_f64(&self, flag: Option<f64>, key: &str) -> Result<f64, Failure> {
        self.f64(flag, key)?.ok_or_else(|| Failure::Usage(format!("--{key} is required")))
    }

    fn u64(&self, flag: Option<u64>, key: &str, default: u64) -> Result<u64, Failure> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.file.u64(key).map_err(Failure::Usage)?.unwrap_or(default)),
        }
    }

    fn string(&self, flag: Option<String>, key: &str) -> Result<Option<String>, Failure> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.file.string(key).map_err(Failure::Usage),
        }
    }

    fn path(&self, flag: Option<PathBuf>, key: &str) -> Result<Option<PathBuf>, Failure> {
        Ok(self.string(flag.map(|p| p.display().to_string()), key)?.map(PathBuf::from))
    }

    fn bool(&self, flag: bool, key: &str) -> Result<bool, Failure> {
        Ok(flag || self.file.bool(key).map_err(Failure::Usage)?)
    }

    fn prec(&self, flag: Option<u32>, default: u32) -> Result<u32, Failure> {
        let p = self.u64(flag.map(u64::from), "prec", default as u64)?;
        if !(16..=4096).contains(&p) {
            return usage(format!("--prec {p} outside [16, 4096]"));
        }
        Ok(p as u32)
    }
}

fn cmd_constants(m: &Merge, prec: Option<u32>) -> Outcome {
    let prec = m.prec(prec, 128)?;
    let c = constants(prec);
    println!("lambda0        {}", c.lambda0);
    println!("A0             {}", c.a0);
    println!("euler_gamma    {}", c.euler_gamma);
    println!("log_zeta(3/2)  {}", c.log_zeta_32);
    Ok(EXIT_OK)
}

fn bound_params(m: &Merge, height: Option<f64>, delta: Option<f64>, prec: u32) -> Result<BoundParams, Failure> {
    let height = m.f64(height, "T")?.unwrap_or(3e12);
    let delta = m.f64(delta, "delta")?.unwrap_or(1e-5);
    if !(delta > 0.0 && delta < 1.0) {
        return usage(format!("--delta {delta} outside (0, 1)"));
    }
    BoundParams::new(height, delta, prec).map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_bounds(m: &Merge, a: BoundsArgs) -> Outcome {
    let prec = m.prec(a.prec, 128)?;
    let t = m.need_f64(a.t, "t")?;
    let params = bound_params(m, a.height, a.delta, prec)?;
    let which = m.string(a.which, "which")?.unwrap_or_else(|| "all".into());
    let quantities = parse_quantities(&which).map_err(Failure::Usage)?;
    let compare = m.bool(a.compare, "compare")?;
    let c = constants(prec);
    let b = if t >= 1e6 {
        theorem_bounds(t, &params, &c)
    } else {
        eprintln!("note: t = {t:e} is below 10^6; values are observational");
        theorem_bounds_relaxed(t, &params, &c)
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    println!("t = {t:e}, T = {:e}, delta = {:e}, E_delta(T) = {}", params.height, params.delta, params.e_delta);
    for q in &quantities {
        let v = match q {
            Quantity::Logderiv => &b.logderiv,
            Quantity::InvZeta => &b.inv_zeta,
            Quantity::Zeta => &b.zeta,
            Quantity::LogZeta => &b.log_zeta,
        };
        println!("{:<10} {}", q.name(), v);
    }
    if compare {
        println!("{:<20} {:<9} {:<40} {:>9} {:>11} in_window", "comparison", "quantity", "value", "from", "to");
        for cb in comparison_bounds(t, prec).map_err(fail)? {
            println!(
                "{:<20} {:<9} {:<40} {:>9.3e} {:>11.5e} {}",
                cb.name,
                format!("{:?}", cb.quantity).to_lowercase(),
                cb.value.to_string(),
                cb.valid_from,
                cb.valid_to,
                cb.in_window
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(m: &Merge, a: VerifyArgs) -> Outcome {
    let d = ScanConfig::default();
    let which = m.string(a.which, "which")?.unwrap_or_else(|| "all".into());
    let log = m.bool(a.log, "log")?;
    let cfg = ScanConfig {
        t_min: m.need_f64(a.t_min, "t-min")?,
        t_max: m.need_f64(a.t_max, "t-max")?,
        steps: m.u64(a.steps.map(|s| s as u64), "steps", d.steps as u64)? as usize,
        spacing: if log { Spacing::Log } else { Spacing::Linear },
        height: m.f64(a.height, "T")?.unwrap_or(d.height),
        delta: m.f64(a.delta, "delta")?.unwrap_or(d.delta),
        prec: m.prec(a.prec, d.prec)?,
        zeros_path: m.path(a.zeros, "zeros")?,
        quantities: parse_quantities(&which).map_err(Failure::Usage)?,
        relaxed: m.bool(a.relaxed, "relaxed")?,
    };
    let format: ReportFormat = m.string(a.format, "format")?.unwrap_or_else(|| "csv".into()).parse().map_err(Failure::Usage)?;
    let out = m.path(a.out, "out")?;
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let records = run_scan(&cfg).map_err(fail)?;
    match &out {
        Some(p) => emit_report(&records, format, p).map_err(fail)?,
        None => print!("{}", render(&records, format).map_err(fail)?),
    }
    for r in records.iter().filter(|r| r.reason.is_some()) {
        eprintln!("t = {:e} {}: {} ({})", r.t, r.quantity, r.verdict, r.reason.as_deref().unwrap_or(""));
    }
    let tally = Tally::of(&records);
    eprintln!(
        "records {}  certified_ok {}  certified_violation {}  undecided {}",
        records.len(),
        tally.ok,
        tally.violation,
        tally.undecided
    );
    Ok(tally.exit_code())
}

fn cmd_audit(m: &Merge, height: Option<f64>, delta: Option<f64>, grid: Option<usize>, prec: Option<u32>) -> Outcome {
    let prec = m.prec(prec, 128)?;
    let params = bound_params(m, height, delta, prec)?;
    let points = m.u64(grid.map(|g| g as u64), "grid", 200)? as usize;
    let report = audit_constants(&params, &default_audit_grid(points), &constants(prec)).map_err(fail)?;
    for s in &report.steps {
        println!(
            "{:<18} {:<9} points {:>6}  worst margin {:>12.5e} at {:>10.4e}  {}",
            s.name, s.status, s.points, s.worst_margin, s.worst_at, s.detail
        );
    }
    if report.passed() {
        println!("audit passed");
        Ok(EXIT_OK)
    } else if report.failed() {
        println!("audit FAILED: {}", report.failure().unwrap_or_default());
        Ok(EXIT_FAIL)
    } else {
        let open: Vec<_> = report.steps.iter().filter(|s| s.status == StepStatus::Undecided).map(|s| s.name).collect();
        println!("audit undecided: {}", open.join(", "));
        Ok(EXIT_UNDECIDED)
    }
}

fn zero_format(s: Option<String>) -> Result<ZeroFormat, Failure> {
    s.as_deref().unwrap_or("commented").parse().map_err(Failure::Usage)
}

fn cmd_zeros_stats(m: &Merge, file: Option<PathBuf>, fmt: Option<String>) -> Outcome {
    let file = m.path(file, "file")?.ok_or_else(|| Failure::Usage("--file is required".into()))?;
    let fmt = zero_format(m.string(fmt, "zero-format")?)?;
    let table = load_zeros(&file, fmt).map_err(fail)?;
    let (excess, at) = table.rvm_deviation(200);
    println!("source               {}", table.source);
    println!("count                {}", table.len());
    println!("gamma_max            {}", table.gamma_max);
    println!("claimed_complete_to  {}", table.claimed_complete_to);
    println!("accuracy             {:e}", table.accuracy);
    println!("rvm worst excess     {excess:.4} at H = {at:.4} (negative: within slack)");
    Ok(EXIT_OK)
}

fn cmd_zeros_fetch(m: &Merge, url: Option<String>, out: Option<PathBuf>, sha: Option<String>) -> Outcome {
    let url = m.string(url, "url")?.ok_or_else(|| Failure::Usage("--url is required".into()))?;
    let out = m.path(out, "out")?.ok_or_else(|| Failure::Usage("--out is required".into()))?;
    let sha = m.string(sha, "sha256")?;
    let n = fetch_zeros(&url, &out, sha.as_deref()).map_err(fail)?;
    println!("wrote {n} ordinates to {}", out.display());
    Ok(EXIT_OK)
}

fn cmd_primes_check(m: &Merge, x: Option<f64>, which: Option<String>, prec: Option<u32>) -> Outcome {
    let prec = m.prec(prec, 128)?;
    let x = m.need_f64(x, "x")?;
    let which: ReferenceInequality =
        m.string(which, "which")?.ok_or_else(|| Failure::Usage("--which is required".into()))?.parse().map_err(Failure::Usage)?;
    if !(x >= 2.0 && x <= 1e9) {
        return usage(format!("--x {x} outside [2, 10^9]"));
    }
    let table = sieve_mangoldt(x.floor() as u64).map_err(fail)?;
    let margin = reference_margins(&table, &[x], which, prec).map_err(fail)?.remove(0);
    println!("x = {x:e}  margin {margin}");
    Ok(if margin.is_positive() {
        EXIT_OK
    } else if margin.is_negative() {
        EXIT_FAIL
    } else {
        EXIT_UNDECIDED
    })
}

fn cmd_formula(m: &Merge, a: FormulaArgs) -> Outcome {
    let prec = m.prec(a.prec, 128)?;
    let t = m.need_f64(a.t, "t")?;
    let alpha = m.f64(a.alpha, "alpha")?.unwrap_or(1.0);
    let zeros = m.path(a.zeros, "zeros")?.ok_or_else(|| Failure::Usage("--zeros is required".into()))?;
    let p = match (m.f64(a.x, "x")?, m.f64(a.y, "y")?) {
        (Some(x), Some(y)) => FormulaParams::at(x, y, alpha, t, prec),
        (None, None) => FormulaParams::balanced(alpha, t, &constants(prec).lambda0, prec),
        _ => return usage("give both --x and --y, or neither"),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let table = load_zeros(&zeros, ZeroFormat::Commented).map_err(fail)?;
    let primes = sieve_mangoldt(p.n_max().max(2)).map_err(fail)?;
    let sides = formula_sides(&p, &table, &primes, &EvalConfig::with_prec(prec)).map_err(fail)?;
    println!("s = {} + {}i, x = {}, y = {}", alpha, t, p.x, p.y);
    for (name, v) in [
        ("lhs", &sides.lhs),
        ("zero_term", &sides.zero_term),
        ("trivial_term", &sides.trivial_term),
        ("pole_term", &sides.pole_term),
        ("prime_term", &sides.prime_term),
    ] {
        println!("{name:<14} {v}");
    }
    println!("{:<14} {}", "rhs", sides.rhs());
    println!("{:<14} {}", "residual", sides.residual());
    println!("{:<14} {}", "tail_budget", sides.zero_tail_budget);
    let margin = sides.margin();
    println!("{:<14} {}", "margin", margin);
    Ok(if margin.is_positive() {
        EXIT_OK
    } else if margin.is_negative() {
        EXIT_FAIL
    } else {
        EXIT_UNDECIDED
    })
}

fn run(cli: Cli) -> Outcome {
    let file = match &cli.config {
        Some(p) => FileConfig::load(Path::new(p)).map_err(Failure::Usage)?,
        None => FileConfig::default(),
    };
    let m = Merge { file: &file };
    match cli.command {
        Command::Constants { prec } => cmd_constants(&m, prec),
        Command::Bounds(a) => cmd_bounds(&m, a),
        Command::Verify(a) => cmd_verify(&m, a),
        Command::Audit { height, delta, grid, prec } => cmd_audit(&m, height, delta, grid, prec),
        Command::Zeros { command: ZerosCommand::Stats { file, zero_format } } => cmd_zeros_stats(&m, file, zero_format),
        Command::Zeros { command: ZerosCommand::Fetch { url, out, sha256 } } => cmd_zeros_fetch(&m, url, out, sha256),
        Command::Primes { command: PrimesCommand::Check { x, which, prec } } => cmd_primes_check(&m, x, which, prec),
        Command::ExplicitFormula(a) => cmd_formula(&m, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
