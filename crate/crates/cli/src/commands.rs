use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use alphacap::generate::random_rows;
use alphacap::oracle::DEFAULT_MAX_POINTS;
use alphacap::solvers::{DEFAULT_EPSILON, DEFAULT_MAX_ITER};
use alphacap::{
    correct_decoding_exponent, grid_capacity, Algorithm, Alpha, Channel64, GridSpec, InitSpec,
    SolverConfig, SolverError, SolverResult, Termination,
};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{parse_init, ChannelArgs};
use crate::output::{align, cell, sig12, to_json, write_file, write_trace, RunRecord, Units};

/// How a command finished, mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Converged,
    IterationLimit,
}

impl Outcome {
    fn from_runs<'a>(runs: impl IntoIterator<Item = &'a Termination>) -> Self {
        if runs.into_iter().any(|t| *t == Termination::MaxIterations) {
            Outcome::IterationLimit
        } else {
            Outcome::Converged
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Stop once successive objective values differ by less than this.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,

    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
}

impl SolverArgs {
    fn config(&self, alpha: f64) -> Result<SolverConfig<f64>> {
        let cfg = SolverConfig::new(Alpha::new(alpha)?)
            .with_epsilon(self.epsilon)
            .with_max_iter(self.max_iter);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgorithmArg {
    Arimoto,
    Jo,
    Csiszar,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Arimoto => Algorithm::Arimoto,
            AlgorithmArg::Jo => Algorithm::JitsumatsuOohama,
            AlgorithmArg::Csiszar => Algorithm::Csiszar,
        }
    }
}

struct Run {
    result: SolverResult<f64>,
    wall_time_ms: f64,
}

/// Runs a solver, keeping the partial result when the iteration guard trips.
fn run(
    alg: Algorithm,
    w: &Channel64,
    cfg: &SolverConfig<f64>,
    init: &InitSpec<f64>,
) -> Result<Run> {
    if alg != Algorithm::Arimoto && !cfg.alpha.is_above_one() {
        bail!(
            "{alg} requires alpha in (1, inf), got {}",
            cfg.alpha.value()
        );
    }
    let start = Instant::now();
    let result = match alg.solve(w, cfg, init) {
        Ok(r) => r,
        Err(SolverError::MaxIterationsExceeded { partial, .. }) => *partial,
        Err(SolverError::Input(e)) => return Err(e.into()),
    };
    Ok(Run {
        result,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn record(
    alg: Algorithm,
    init: &InitSpec<f64>,
    cfg: &SolverConfig<f64>,
    digest: &str,
    run: &Run,
    units: Units,
) -> RunRecord {
    RunRecord {
        algorithm: alg.name(),
        alpha: cfg.alpha.value(),
        channel_digest: digest.to_owned(),
        epsilon: cfg.epsilon,
        init: init.name(),
        iterations: run.result.iterations,
        termination: run.result.termination.as_str(),
        units,
        value: units.convert(run.result.value),
        wall_time_ms: run.wall_time_ms,
    }
    .rounded()
}

fn warn_if_limited(outcome: Outcome, limit: usize) {
    if outcome == Outcome::IterationLimit {
        eprintln!("warning: iteration limit {limit} reached before convergence");
    }
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[arg(long, value_enum)]
    pub algorithm: AlgorithmArg,

    #[arg(long)]
    pub alpha: f64,

    #[command(flatten)]
    pub channel: ChannelArgs,

    #[command(flatten)]
    pub solver: SolverArgs,

    /// uniform-x, uniform-xy, product, or a joint-distribution file.
    /// Defaults to uniform-x for arimoto and product otherwise.
    #[arg(long, value_name = "INIT")]
    pub init: Option<String>,

    /// Write the objective trace as `k,F` CSV.
    #[arg(long, value_name = "PATH")]
    pub trace: Option<PathBuf>,

    /// Report the value in bits.
    #[arg(long)]
    pub bits: bool,
}

pub fn capacity(args: &CapacityArgs) -> Result<Outcome> {
    let alg = Algorithm::from(args.algorithm);
    let cfg = args.solver.config(args.alpha)?;
    let loaded = args.channel.load()?;
    let init = parse_init(args.init.as_deref(), alg.default_init())?;
    let r = run(alg, &loaded.channel, &cfg, &init)?;
    if let Some(path) = &args.trace {
        write_trace(path, &r.result.trace)?;
    }
    let rec = record(
        alg,
        &init,
        &cfg,
        &loaded.digest,
        &r,
        Units::from_flag(args.bits),
    );
    print!("{}", to_json(&rec));
    let outcome = Outcome::from_runs([&r.result.termination]);
    warn_if_limited(outcome, cfg.max_iter);
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// The five (algorithm, initialization) rows of the reference comparison.
    Table1,
}

impl Preset {
    fn configurations(self) -> Vec<(Algorithm, InitSpec<f64>)> {
        match self {
            Preset::Table1 => vec![
                (Algorithm::Arimoto, InitSpec::UniformX),
                (Algorithm::JitsumatsuOohama, InitSpec::UniformXY),
                (
                    Algorithm::JitsumatsuOohama,
                    InitSpec::ProductUniformXChannel,
                ),
                (Algorithm::Csiszar, InitSpec::UniformXY),
                (Algorithm::Csiszar, InitSpec::ProductUniformXChannel),
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,

    #[arg(long, value_delimiter = ',', default_value = "1.03,1.5,2.0,5.0")]
    pub alphas: Vec<f64>,

    #[command(flatten)]
    pub solver: SolverArgs,

    #[arg(long, value_enum, default_value = "table1")]
    pub preset: Preset,

    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,

    /// Directory for one `k,F` trace CSV per run.
    #[arg(long, value_name = "DIR")]
    pub traces_dir: Option<PathBuf>,

    #[arg(long)]
    pub bits: bool,
}

pub fn compare(args: &CompareArgs) -> Result<Outcome> {
    if args.alphas.is_empty() {
        bail!("--alphas needs at least one value");
    }
    let loaded = args.channel.load()?;
    let configs = args.preset.configurations();
    let cfgs = args
        .alphas
        .iter()
        .map(|&a| {
            let cfg = args.solver.config(a)?;
            cfg.alpha.require_above_one()?;
            Ok(cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = (0..configs.len())
        .flat_map(|c| (0..cfgs.len()).map(move |a| (c, a)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(c, a)| run(configs[c].0, &loaded.channel, &cfgs[a], &configs[c].1))
        .collect::<Result<Vec<_>>>()?;

    if let Some(dir) = &args.traces_dir {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (&(c, a), r) in jobs.iter().zip(&runs) {
            let (alg, init) = &configs[c];
            let name = format!(
                "{}_{}_alpha{}.csv",
                alg.name(),
                init.name(),
                cfgs[a].alpha.value()
            );
            write_trace(&dir.join(name), &r.result.trace)?;
        }
    }

    let units = Units::from_flag(args.bits);
    let mut out = String::new();
    match args.format {
        Format::Csv => {
            out.push_str("algorithm,init,alpha,value,iterations,termination\n");
            for (&(c, a), r) in jobs.iter().zip(&runs) {
                let (alg, init) = &configs[c];
                writeln!(
                    out,
                    "{},{},{},{:.9},{},{}",
                    alg.name(),
                    init.name(),
                    cfgs[a].alpha.value(),
                    units.convert(r.result.value),
                    r.result.iterations,
                    r.result.termination.as_str()
                )
                .unwrap();
            }
        }
        Format::Text => {
            let mut rows = vec![std::iter::once("algorithm / init".to_owned())
                .chain(cfgs.iter().map(|c| format!("alpha={}", c.alpha.value())))
                .collect::<Vec<_>>()];
            for (c, (alg, init)) in configs.iter().enumerate() {
                let mut row = vec![format!("{} / {}", alg.name(), init.name())];
                for a in 0..cfgs.len() {
                    let r = &runs[c * cfgs.len() + a].result;
                    row.push(cell(units.convert(r.value), r.iterations));
                }
                rows.push(row);
            }
            out = align(&rows);
        }
    }
    print!("{out}");
    let outcome = Outcome::from_runs(runs.iter().map(|r| &r.result.termination));
    warn_if_limited(outcome, args.solver.max_iter);
    Ok(outcome)
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,

    /// Rate in nats.
    #[arg(long)]
    pub rate: f64,

    #[arg(long, default_value_t = 200)]
    pub rho_grid: usize,

    #[arg(long, value_enum, default_value = "arimoto")]
    pub algorithm: AlgorithmArg,

    #[command(flatten)]
    pub solver: SolverArgs,

    /// Write the sweep as `rho,min_e0` CSV.
    #[arg(long, value_name = "PATH")]
    pub sweep: Option<PathBuf>,
}

#[derive(Serialize)]
struct ExponentRecord {
    algorithm: &'static str,
    channel_digest: String,
    exponent: f64,
    rate: f64,
    rho_grid: usize,
    rho_star: f64,
    units: Units,
}

pub fn exponent(args: &ExponentArgs) -> Result<Outcome> {
    if args.rho_grid < 2 {
        bail!("--rho-grid must be at least 2, got {}", args.rho_grid);
    }
    let loaded = args.channel.load()?;
    let alg = Algorithm::from(args.algorithm);
    // alpha is replaced per grid point; 2 only satisfies validation
    let cfg = args.solver.config(2.0)?;
    let res = match correct_decoding_exponent(args.rate, &loaded.channel, &cfg, args.rho_grid, alg)
    {
        Ok(r) => r,
        Err(SolverError::MaxIterationsExceeded { limit, .. }) => {
            eprintln!("error: a sweep point hit the iteration limit {limit}; no exponent reported");
            return Ok(Outcome::IterationLimit);
        }
        Err(SolverError::Input(e)) => return Err(e.into()),
    };
    if let Some(path) = &args.sweep {
        let mut csv = String::from("rho,min_e0\n");
        for p in &res.sweep {
            writeln!(csv, "{},{}", p.rho, p.min_e0).unwrap();
        }
        write_file(path, csv.as_bytes())?;
    }
    let rec = ExponentRecord {
        algorithm: alg.name(),
        channel_digest: loaded.digest,
        exponent: sig12(res.exponent),
        rate: sig12(res.rate),
        rho_grid: args.rho_grid,
        rho_star: sig12(res.rho_star),
        units: Units::Nats,
    };
    print!("{}", to_json(&rec));
    Ok(Outcome::Converged)
}

#[derive(Debug, Args)]
pub struct GenChannelArgs {
    #[arg(long)]
    pub rows: usize,

    #[arg(long)]
    pub cols: usize,

    #[arg(long)]
    pub seed: u64,
}

pub fn gen_channel(args: &GenChannelArgs) -> Result<Outcome> {
    let rows = random_rows(args.rows, args.cols, args.seed)?;
    let mut out = String::new();
    for row in rows {
        let fields: Vec<String> = row.iter().map(f64::to_string).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    print!("{out}");
    Ok(Outcome::Converged)
}

/// Environment variable overriding the oracle's point budget.
pub const MAX_GRID_ENV: &str = "ALPHACAP_MAX_GRID";

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,

    #[arg(long)]
    pub alpha: f64,

    #[arg(long, default_value_t = 0.002)]
    pub step: f64,

    /// Search a ten times finer grid around the coarse maximizer.
    #[arg(long)]
    pub refine: bool,
}

#[derive(Serialize)]
struct OracleRecord {
    alpha: f64,
    argmax: Vec<f64>,
    channel_digest: String,
    points_evaluated: u64,
    refine: bool,
    step: f64,
    units: Units,
    value: f64,
}

fn max_grid_points() -> Result<u64> {
    match std::env::var(MAX_GRID_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("{MAX_GRID_ENV} must be a positive integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_MAX_POINTS),
    }
}

pub fn oracle(args: &OracleArgs) -> Result<Outcome> {
    let loaded = args.channel.load()?;
    let alpha = Alpha::new(args.alpha)?;
    let grid = GridSpec::new(args.step, args.refine).with_max_points(max_grid_points()?);
    let g = grid_capacity(&loaded.channel, alpha, &grid)?;
    let rec = OracleRecord {
        alpha: sig12(args.alpha),
        argmax: g.argmax.probs().iter().copied().map(sig12).collect(),
        channel_digest: loaded.digest,
        points_evaluated: g.points_evaluated,
        refine: args.refine,
        step: sig12(args.step),
        units: Units::Nats,
        value: sig12(g.value),
    };
    print!("{}", to_json(&rec));
    Ok(Outcome::Converged)
}
