//! Command-line front end of the `levysup` binary.
//!
//! Every subcommand prints rows with the columns
//! `kind,alpha,t,u,analytic,mc_est,mc_se,ci_low,ci_high,bound,pass`, as CSV
//! (default) or as one JSON object per line. Numbers are rounded to nine
//! significant digits; absent fields are empty in CSV and `null` in JSON.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 convergence
//! failure, 4 a verification row did not pass.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::levy_model::MarginalLaw;
use crate::mc_engine::{estimate_all, estimate_sup_tails, McConfig, McEstimate};
use crate::sup_calc::SupCalc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

/// Slack for supremum-tail comparisons against Monte Carlo.
pub const TAIL_SLACK: f64 = 0.01;
/// Slack for expected-supremum comparisons against Monte Carlo.
pub const ESUP_SLACK: f64 = 0.015;

#[derive(Debug, Parser)]
#[command(
    name = "levysup",
    version,
    about = "Supremum functionals of one-sided stable Levy processes"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    SnStable,
    SpStable,
    Brownian,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::SnStable => "sn-stable",
            Kind::SpStable => "sp-stable",
            Kind::Brownian => "brownian",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expected supremum from the time-integral formula.
    #[command(allow_negative_numbers = true)]
    Esup(ModelArgs),
    /// Supremum tail probability at each level.
    #[command(allow_negative_numbers = true)]
    Suptail(TailArgs),
    /// Check the factor-alpha tail law against Monte Carlo and the upper bound.
    #[command(allow_negative_numbers = true)]
    VerifyTheorem(TheoremArgs),
    /// Check the expected-supremum formula against Monte Carlo.
    #[command(allow_negative_numbers = true)]
    VerifyProp(PropArgs),
    /// Raw Monte Carlo estimates.
    #[command(allow_negative_numbers = true)]
    Mc(McArgs),
    /// Analytic supremum tails over a grid of alpha and u.
    #[command(allow_negative_numbers = true)]
    Table(TableArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Stability index in (1, 2]; required for stable kinds.
    #[arg(long)]
    alpha: Option<f64>,
    /// Brownian volatility; Var B(t) = 2 vol^2 t.
    #[arg(long, default_value_t = 1.0)]
    vol: f64,
    /// Horizon.
    #[arg(long)]
    t: f64,
}

#[derive(Debug, Args)]
struct TailArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated levels.
    #[arg(long, value_delimiter = ',', required = true)]
    u: Vec<f64>,
}

#[derive(Debug, Args)]
struct SimArgs {
    #[arg(long, default_value_t = 100_000)]
    paths: usize,
    #[arg(long, default_value_t = 10_000)]
    steps: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    t: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    u: Vec<f64>,
    #[command(flatten)]
    sim: SimArgs,
    /// Absolute allowance for grid discretization.
    #[arg(long, default_value_t = TAIL_SLACK)]
    slack: f64,
}

#[derive(Debug, Args)]
struct PropArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    sim: SimArgs,
    #[arg(long, default_value_t = ESUP_SLACK)]
    slack: f64,
}

#[derive(Debug, Args)]
struct McArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Optional comma-separated levels for tail estimates.
    #[arg(long, value_delimiter = ',')]
    u: Vec<f64>,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value_t = Kind::SnStable)]
    kind: Kind,
    /// Comma-separated stability indices (ignored for brownian).
    #[arg(long, value_delimiter = ',', default_value = "1.2,1.5,1.8,2")]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    vol: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2,4")]
    u: Vec<f64>,
}

/// One output row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupReport {
    pub kind: String,
    pub alpha: f64,
    pub t: f64,
    pub u: Option<f64>,
    pub analytic: Option<f64>,
    pub mc_est: Option<f64>,
    pub mc_se: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub bound: Option<f64>,
    pub pass: Option<bool>,
}

pub const CSV_HEADER: &str = "kind,alpha,t,u,analytic,mc_est,mc_se,ci_low,ci_high,bound,pass";

impl SupReport {
    fn new(kind: &str, alpha: f64, t: f64, u: Option<f64>) -> Self {
        SupReport {
            kind: kind.to_string(),
            alpha,
            t,
            u,
            analytic: None,
            mc_est: None,
            mc_se: None,
            ci_low: None,
            ci_high: None,
            bound: None,
            pass: None,
        }
    }

    fn with_mc(mut self, mc: &McEstimate) -> Self {
        self.mc_est = Some(mc.estimate);
        self.mc_se = Some(mc.std_error);
        self.ci_low = Some(mc.ci99.0);
        self.ci_high = Some(mc.ci99.1);
        self
    }

    /// Copy with every number rounded to nine significant digits.
    fn rounded(&self) -> Self {
        let r = |x: Option<f64>| x.map(round9);
        SupReport {
            kind: self.kind.clone(),
            alpha: round9(self.alpha),
            t: round9(self.t),
            u: r(self.u),
            analytic: r(self.analytic),
            mc_est: r(self.mc_est),
            mc_se: r(self.mc_se),
            ci_low: r(self.ci_low),
            ci_high: r(self.ci_high),
            bound: r(self.bound),
            pass: self.pass,
        }
    }

    pub fn to_csv(&self) -> String {
        let r = self.rounded();
        let num = |x: Option<f64>| x.map(fmt_number).unwrap_or_default();
        let pass = r.pass.map(|p| p.to_string()).unwrap_or_default();
        [
            r.kind.clone(),
            fmt_number(r.alpha),
            fmt_number(r.t),
            num(r.u),
            num(r.analytic),
            num(r.mc_est),
            num(r.mc_se),
            num(r.ci_low),
            num(r.ci_high),
            num(r.bound),
            pass,
        ]
        .join(",")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rounded()).expect("report serializes")
    }
}

/// Round to nine significant digits.
pub fn round9(x: f64) -> f64 {
    if x.is_finite() {
        format!("{x:.8e}").parse().unwrap_or(x)
    } else {
        x
    }
}

fn fmt_number(x: f64) -> String {
    // serde_json prints the shortest representation that round-trips.
    serde_json::to_string(&x).unwrap_or_default()
}

enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn model(args: &ModelArgs) -> CliResult<(MarginalLaw, f64)> {
    Ok(match args.kind {
        Kind::Brownian => (MarginalLaw::brownian(args.vol)?, 2.0),
        kind => {
            let alpha = args
                .alpha
                .ok_or_else(|| Failure::Usage(format!("--alpha is required for --kind {}", kind.name())))?;
            let m = if kind == Kind::SnStable {
                MarginalLaw::spectrally_negative(alpha)?
            } else {
                MarginalLaw::spectrally_positive(alpha)?
            };
            (m, alpha)
        }
    })
}

fn esup_analytic(calc: &SupCalc, m: &MarginalLaw, t: f64) -> crate::Result<f64> {
    if m.spectral_sign() < 0 {
        calc.esup_spectrally_negative(m, t)
    } else {
        calc.esup_spectrally_positive(m, t)
    }
}

/// Analytic tail and, for spectrally negative stable models, the upper bound.
fn tail_analytic(calc: &SupCalc, m: &MarginalLaw, t: f64, u: f64) -> crate::Result<(f64, Option<f64>)> {
    match *m {
        MarginalLaw::SpectrallyNegativeStable { alpha } => Ok((
            calc.sup_tail_stable_negative(alpha, t, u)?,
            Some(calc.albin_upper_bound(alpha, t, u)?),
        )),
        _ => Ok((calc.sup_tail_spectrally_positive(m, t, u)?, None)),
    }
}

fn mc_config(sim: &SimArgs, t: f64) -> crate::Result<McConfig> {
    McConfig::new(sim.paths, sim.steps, sim.seed, t)
}

fn execute(command: &Command) -> CliResult<Vec<SupReport>> {
    let calc = SupCalc::from_env()?;
    let mut rows = Vec::new();
    match command {
        Command::Esup(a) => {
            let (m, alpha) = model(a)?;
            let mut row = SupReport::new(a.kind.name(), alpha, a.t, None);
            row.analytic = Some(esup_analytic(&calc, &m, a.t)?);
            rows.push(row);
        }
        Command::Suptail(a) => {
            let (m, alpha) = model(&a.model)?;
            for &u in &a.u {
                let (value, bound) = tail_analytic(&calc, &m, a.model.t, u)?;
                let mut row = SupReport::new(a.model.kind.name(), alpha, a.model.t, Some(u));
                row.analytic = Some(value);
                row.bound = bound;
                rows.push(row);
            }
        }
        Command::VerifyTheorem(a) => {
            let m = MarginalLaw::spectrally_negative(a.alpha)?;
            let analytic =
                a.u.iter()
                    .map(|&u| tail_analytic(&calc, &m, a.t, u))
                    .collect::<crate::Result<Vec<_>>>()?;
            let mc = estimate_sup_tails(&m, &mc_config(&a.sim, a.t)?, &a.u)?;
            for ((&u, (value, bound)), est) in a.u.iter().zip(analytic).zip(mc) {
                let bound = bound.expect("spectrally negative rows carry a bound");
                let mut row = SupReport::new(Kind::SnStable.name(), a.alpha, a.t, Some(u)).with_mc(&est);
                row.analytic = Some(value);
                row.bound = Some(bound);
                row.pass = Some(est.agrees_with(value, a.slack) && est.estimate <= bound + 3.0 * est.std_error);
                rows.push(row);
            }
        }
        Command::VerifyProp(a) => {
            let (m, alpha) = model(&a.model)?;
            let t = a.model.t;
            let analytic = esup_analytic(&calc, &m, t)?;
            let closed = match m {
                MarginalLaw::SpectrallyNegativeStable { alpha } => Some(calc.esup_stable_negative_closed(alpha, t)?),
                _ => None,
            };
            let (est, _) = estimate_all(&m, &mc_config(&a.sim, t)?, &[])?;
            let mut row = SupReport::new(a.model.kind.name(), alpha, t, None).with_mc(&est);
            row.analytic = Some(analytic);
            row.pass = Some(est.agrees_with(analytic, a.slack));
            rows.push(row);
            if let Some(closed) = closed {
                let mut row = SupReport::new("sn-stable-closed", alpha, t, None).with_mc(&est);
                row.analytic = Some(closed);
                row.pass = Some(est.agrees_with(closed, a.slack));
                rows.push(row);
            }
        }
        Command::Mc(a) => {
            let (m, alpha) = model(&a.model)?;
            let t = a.model.t;
            let (esup, tails) = estimate_all(&m, &mc_config(&a.sim, t)?, &a.u)?;
            rows.push(SupReport::new(a.model.kind.name(), alpha, t, None).with_mc(&esup));
            for (&u, est) in a.u.iter().zip(tails) {
                rows.push(SupReport::new(a.model.kind.name(), alpha, t, Some(u)).with_mc(&est));
            }
        }
        Command::Table(a) => {
            let alphas: Vec<f64> = if a.kind == Kind::Brownian {
                vec![2.0]
            } else {
                a.alpha.clone()
            };
            for &alpha in &alphas {
                let margs = ModelArgs {
                    kind: a.kind,
                    alpha: Some(alpha),
                    vol: a.vol,
                    t: a.t,
                };
                let (m, alpha) = model(&margs)?;
                for &u in &a.u {
                    let (value, bound) = tail_analytic(&calc, &m, a.t, u)?;
                    let mut row = SupReport::new(a.kind.name(), alpha, a.t, Some(u));
                    row.analytic = Some(value);
                    row.bound = bound;
                    rows.push(row);
                }
            }
        }
    }
    Ok(rows)
}

fn write_rows(out: &mut dyn Write, rows: &[SupReport], format: Format) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
        Format::Json => {
            for r in rows {
                writeln!(out, "{}", r.to_json())?;
            }
        }
    }
    out.flush()
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(rows) => {
            if let Err(e) = write_rows(out, &rows, cli.format) {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return EXIT_USAGE;
            }
            if rows.iter().any(|r| r.pass == Some(false)) {
                EXIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Domain(_) => EXIT_DOMAIN,
                Error::Convergence { .. } | Error::TailBound(_) => EXIT_CONVERGENCE,
            }
        }
    }
}
