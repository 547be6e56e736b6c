//! `sumsetlab` command-line front end.
//!
//! Exit status: 0 when everything checked holds, 1 when a statement or
//! lemma is violated (the witness is in the report), 2 on bad invocation.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumsetlab::analytic::{check_lemma, Grid, LemmaConfig, LemmaId, LemmaReport};
use sumsetlab::exponents::{cube_upper_exponent, ConstantKind};
use sumsetlab::supconv::prekopa_weights;
use sumsetlab::verify::{run_campaign, search_min_ratio, CampaignConfig, Mode, Statement, REPORT_VERSION};

use output::{Format, Rendered};

/// Environment variable overriding the worker thread count.
const THREADS_ENV: &str = "SUMSETLAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "sumsetlab", version, about = "Sumset inequality verification toolkit")]
struct Cli {
    /// Output format on standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Also write the report here (JSON, or CSV with --format csv).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a sharp exponent or constant with its defining residual.
    Constants(ConstantsArgs),
    /// Grid-check analytic lemmas.
    Lemmas(LemmasArgs),
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Local search for small log-margins over subsets of a cube.
    Search(SearchArgs),
    /// Discretized Prékopa-Leindler weights.
    Prekopa(PrekopaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Which {
    CubeUpper,
    Tau,
    QHypercube,
    COfP,
    Conjugate,
    R,
}

#[derive(Args, Debug, Serialize)]
struct ConstantsArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct LemmasArgs {
    /// Lemma id, or `all`.
    #[arg(long, default_value = "all")]
    which: String,
    /// Points per axis (integer) or spacing on unit axes (decimal).
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    draws: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ModeArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    statement: String,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Number of random instances.
    #[arg(long)]
    count: Option<u64>,
    /// Required in random mode.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest coordinate of the sampling box.
    #[arg(long = "box")]
    box_max: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
struct SearchArgs {
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Defaults to log(nm+1)/(n log(m+1)).
    #[arg(long)]
    p: Option<f64>,
    /// Number of descents.
    #[arg(long, default_value_t = 16)]
    budget: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct PrekopaArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    lambda: f64,
}

#[derive(Serialize)]
struct ConstantOut {
    version: &'static str,
    value: f64,
    formula: String,
    residual: f64,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampled_sign_changes: Option<usize>,
}

#[derive(Serialize)]
struct LemmaSuite {
    version: &'static str,
    pass: bool,
    min_margin: f64,
    reports: Vec<LemmaReport>,
}

#[derive(Serialize)]
struct PrekopaOut {
    version: &'static str,
    sum: f64,
    weights: Vec<f64>,
}

fn need<T>(v: Option<T>, flag: &str, which: &str) -> anyhow::Result<T> {
    v.with_context(|| format!("--which {which} needs --{flag}"))
}

fn constants(a: &ConstantsArgs) -> anyhow::Result<Rendered> {
    let name = serde_json::to_value(a.which)?.as_str().unwrap_or_default().to_string();
    let kind = match a.which {
        Which::CubeUpper => ConstantKind::CubeUpper { n: need(a.n, "n", &name)?, m: need(a.m, "m", &name)? },
        Which::Tau => ConstantKind::Tau { m: need(a.m, "m", &name)? },
        Which::QHypercube => ConstantKind::QHypercube { n: need(a.n, "n", &name)? },
        Which::COfP => ConstantKind::COfP { p: need(a.p, "p", &name)? },
        Which::Conjugate => ConstantKind::Conjugate { p: need(a.p, "p", &name)? },
        Which::R => ConstantKind::ROfN { n: need(a.n, "n", &name)? },
    };
    let c = kind.compute()?;
    let text = format!("{} = {}\nformula: {}\nresidual: {:e}\n", name, c.value, c.formula, c.residual);
    let out = ConstantOut {
        version: REPORT_VERSION,
        value: c.value,
        formula: c.formula,
        residual: c.residual,
        tolerance: c.tolerance,
        sampled_sign_changes: c.sampled_sign_changes,
    };
    Rendered::new("constants", a, out, text, true)
}

fn lemmas(a: &LemmasArgs) -> anyhow::Result<Rendered> {
    let cfg = LemmaConfig {
        grid: a.grid.as_deref().map(str::parse::<Grid>).transpose()?,
        n_max: a.n_max,
        p: a.p,
        draws: a.draws,
        seed: a.seed,
    };
    let ids: Vec<LemmaId> =
        if a.which == "all" { LemmaId::ALL.to_vec() } else { vec![a.which.parse()?] };
    let reports = ids.iter().map(|&id| check_lemma(id, &cfg)).collect::<Result<Vec<_>, _>>()?;
    let text = output::lemma_text(&reports);
    if let [single] = reports.as_slice() {
        let pass = single.pass;
        return Rendered::new("lemmas", a, single.clone(), text, pass);
    }
    let pass = reports.iter().all(|r| r.pass);
    let min_margin = reports.iter().map(|r| r.min_margin).fold(f64::INFINITY, f64::min);
    Rendered::new("lemmas", a, LemmaSuite { version: REPORT_VERSION, pass, min_margin, reports }, text, pass)
}

fn verify(a: &VerifyArgs) -> anyhow::Result<Rendered> {
    let statement: Statement = a.statement.parse()?;
    let mode = match a.mode {
        ModeArg::Exhaustive => {
            if a.count.is_some() || a.seed.is_some() {
                bail!("--count and --seed only apply to --mode random");
            }
            Mode::Exhaustive
        }
        ModeArg::Random => Mode::Random {
            count: a.count.unwrap_or(1000),
            seed: a.seed.context("--mode random needs an explicit --seed")?,
        },
    };
    let cfg = CampaignConfig {
        statement,
        n: a.n,
        m: a.m,
        d: a.d,
        k: a.k,
        p: a.p,
        mode,
        box_max: a.box_max,
    };
    let report = run_campaign(&cfg)?;
    let text = output::campaign_text(&report);
    let pass = report.pass();
    Rendered::new("verify", a, report, text, pass)
}

fn search(a: &SearchArgs) -> anyhow::Result<Rendered> {
    let p = match a.p {
        Some(p) => p,
        None => cube_upper_exponent(a.n, a.m)?,
    };
    let report = search_min_ratio(a.n, a.m, a.d, p, a.budget, a.seed)?;
    let text = output::campaign_text(&report);
    let pass = report.pass();
    Rendered::new("search", a, report, text, pass)
}

fn prekopa(a: &PrekopaArgs) -> anyhow::Result<Rendered> {
    let weights = prekopa_weights(a.k, a.lambda)?;
    let sum = weights.iter().sum();
    let text = weights.iter().enumerate().map(|(j, w)| format!("p_{j} = {w}\n")).collect::<String>()
        + &format!("sum = {sum}\n");
    Rendered::new("prekopa", a, PrekopaOut { version: REPORT_VERSION, sum, weights }, text, true)
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_ENV} must be a positive integer"))?;
        if n == 0 {
            bail!("{THREADS_ENV} must be a positive integer");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    let rendered = match &cli.command {
        Command::Constants(a) => constants(a)?,
        Command::Lemmas(a) => lemmas(a)?,
        Command::Verify(a) => verify(a)?,
        Command::Search(a) => search(a)?,
        Command::Prekopa(a) => prekopa(a)?,
    };
    print!("{}", rendered.render(cli.format)?);
    if let Some(path) = &cli.out {
        let file_format = if cli.format == Format::Csv { Format::Csv } else { Format::Json };
        std::fs::write(path, rendered.render(file_format)?)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(rendered.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
