//! `gneiting` — evaluate, certify and report on Gneiting-type kernels.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gneiting::config::RunConfig;
use gneiting::linalg::{sym_eig_extremes, SymMatrix};
use gneiting::models::{counterexample_2x2, spd_report, Clause};
use gneiting::spaces::{sample_distinct, DEFAULT_MIN_SEPARATION};
use gneiting::suite::{self, DEFAULT_SEED};
use gneiting::validation::{certify, gram, CertifyOptions};
use gneiting::{Error, KernelModel, Mode, ProductPoint, Space};
use serde::Serialize;

const DEFAULT_GRID_POINTS: usize = 11;
/// Upper end of the default evaluation axis for unbounded spaces.
const UNBOUNDED_AXIS_END: f64 = 10.0;
const DEFAULT_N: usize = 30;
const DEFAULT_TRIALS: usize = 100;

#[derive(Parser)]
#[command(
    name = "gneiting",
    version,
    about = "Gneiting-type kernels on products of metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run description (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    mode: Option<Mode>,
    #[arg(long, global = true)]
    filter: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the model on the config grid (default: 11 points per axis).
    Eval,
    /// Gram matrix on sampled (or given) points.
    Gram {
        /// JSON list of points to use instead of sampling.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Also write the points as CSV here.
        #[arg(long)]
        points_out: Option<PathBuf>,
    },
    /// Seeded Gram-eigenvalue trials; exits 1 if any trial fails.
    Certify {
        /// Embed the two-point counterexample of this clause in every trial.
        #[arg(long)]
        clause: Option<Clause>,
    },
    /// Strict positive definiteness conditions of the model.
    Report,
    /// Two points whose Gram matrix is singular because of a violated clause.
    Counterexample {
        #[arg(long)]
        clause: Option<Clause>,
    },
    /// The regression suite; exits 1 if any criterion fails.
    Suite,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Failure of a command, carrying its exit code.
enum Failure {
    /// A certification ran but did not pass.
    Certification,
    Lib(Error),
    Io(String),
    /// The reader went away (e.g. `| head`); not an error.
    BrokenPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::BrokenPipe;
        }
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => e.into(),
            other => Failure::Io(format!("{other:?}")),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn exit_code(error: &Error) -> u8 {
    match error {
        Error::Config(_)
        | Error::Parameter(_)
        | Error::Argument(_)
        | Error::Construction(_)
        | Error::Precondition(_) => 2,
        Error::Domain(_) => 3,
        Error::Sampling { .. } | Error::Numeric(_) | Error::Trial { .. } => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) | Err(Failure::BrokenPipe) => ExitCode::SUCCESS,
        Err(Failure::Certification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    };
    let result = match &cli.command {
        Command::Suite => cmd_suite(cli, &mut out),
        command => {
            let config = load_config(cli)?;
            let model = config.model.build()?;
            match command {
                Command::Eval => cmd_eval(cli, &config, &model, &mut out),
                Command::Gram { points, points_out } => cmd_gram(
                    cli,
                    &config,
                    &model,
                    points.as_deref(),
                    points_out.as_deref(),
                    &mut out,
                ),
                Command::Certify { clause } => cmd_certify(cli, &config, &model, *clause, &mut out),
                Command::Report => cmd_report(cli, &model, &mut out),
                Command::Counterexample { clause } => {
                    cmd_counterexample(cli, &config, &model, *clause, &mut out)
                }
                Command::Suite => unreachable!("handled above"),
            }
        }
    };
    out.flush()?;
    result
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("this command needs --config".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(RunConfig::from_json(&text)?)
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn default_axis(space: &Space) -> Vec<f64> {
    if let Space::Discrete { .. } = space {
        return vec![0.0, 1.0];
    }
    let end = space.diameter_bound().unwrap_or(UNBOUNDED_AXIS_END);
    let last = (DEFAULT_GRID_POINTS - 1) as f64;
    (0..DEFAULT_GRID_POINTS)
        .map(|i| end * i as f64 / last)
        .collect()
}

const AXIS_NAMES: [&str; 3] = ["t", "u", "v"];

fn cmd_eval(
    cli: &Cli,
    config: &RunConfig,
    model: &KernelModel,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let axes = match &config.grid {
        Some(grid) => grid.clone(),
        None => model.spaces().factors().iter().map(default_axis).collect(),
    };
    if axes.len() != model.arity() {
        return Err(Error::Config(format!(
            "grid has {} axes, model reads {}",
            axes.len(),
            model.arity()
        ))
        .into());
    }
    let mut rows = vec![Vec::new()];
    for axis in &axes {
        rows = rows
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    #[derive(Serialize)]
    struct Row<'a> {
        distances: &'a [f64],
        value: f64,
    }
    let format = cli.format.unwrap_or(Format::Csv);
    let mut writer = csv::Writer::from_writer(&mut *out);
    if format == Format::Csv {
        let mut header: Vec<&str> = AXIS_NAMES[..model.arity()].to_vec();
        header.push("value");
        writer.write_record(header)?;
    }
    let mut values = Vec::with_capacity(rows.len());
    for d in &rows {
        let value = model.eval(d)?;
        match format {
            Format::Csv => {
                writer.write_record(d.iter().chain([&value]).map(|v| v.to_string()))?;
            }
            Format::Json => values.push(Row {
                distances: d,
                value,
            }),
        }
    }
    writer.flush()?;
    drop(writer);
    if format == Format::Json {
        json_line(out, &values)?;
    }
    Ok(())
}

fn write_matrix(
    out: &mut dyn Write,
    rows: impl Iterator<Item = Vec<f64>>,
    n: usize,
) -> Result<(), Failure> {
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(out);
    writer.write_record(["n".to_string(), n.to_string()])?;
    for row in rows {
        writer.write_record(row.iter().map(|v| v.to_string()))?;
    }
    writer.flush()?;
    Ok(())
}

fn write_points(path: &Path, model: &KernelModel, points: &[ProductPoint]) -> Result<(), Failure> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(model.spaces().coordinate_names())?;
    for p in points {
        writer.write_record(model.spaces().flatten(p))?;
    }
    writer.flush()?;
    Ok(())
}

fn seed(cli: &Cli, config: &RunConfig) -> u64 {
    cli.seed.or(config.seed).unwrap_or(DEFAULT_SEED)
}

fn cmd_gram(
    cli: &Cli,
    config: &RunConfig,
    model: &KernelModel,
    points_path: Option<&Path>,
    points_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let points: Vec<ProductPoint> = match points_path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(Error::from)?
        }
        None => {
            let n = cli.n.or(config.n).unwrap_or(DEFAULT_N);
            let min_sep = config.min_sep.unwrap_or(DEFAULT_MIN_SEPARATION);
            sample_distinct(model.spaces(), n, seed(cli, config), min_sep)?
        }
    };
    let a: SymMatrix = gram(model, &points)?;
    if let Some(path) = points_out {
        write_points(path, model, &points)?;
    }
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => write_matrix(out, a.rows().map(<[f64]>::to_vec), a.n()),
        Format::Json => {
            let (min_eig, max_eig) = sym_eig_extremes(&a)?;
            #[derive(Serialize)]
            struct GramJson<'a> {
                n: usize,
                min_eig: f64,
                max_eig: f64,
                matrix: &'a SymMatrix,
            }
            json_line(
                out,
                &GramJson {
                    n: a.n(),
                    min_eig,
                    max_eig,
                    matrix: &a,
                },
            )
        }
    }
}

fn cmd_certify(
    cli: &Cli,
    config: &RunConfig,
    model: &KernelModel,
    clause: Option<Clause>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let mode = cli.mode.or(config.mode).unwrap_or(Mode::Psd);
    let n = cli.n.or(config.n).unwrap_or(DEFAULT_N);
    let trials = cli.trials.or(config.trials).unwrap_or(DEFAULT_TRIALS);
    let mut opts = CertifyOptions::new(mode, n, trials, seed(cli, config));
    if let Some(min_sep) = config.min_sep {
        opts.min_sep = min_sep;
    }
    opts.embed = config.embed.clone();
    if let Some(clause) = clause.or(config.clause) {
        if !opts.embed.is_empty() {
            return Err(Error::Config("give either \"embed\" or a clause, not both".into()).into());
        }
        opts.embed = counterexample_2x2(model, clause)?.points;
    }
    let cert = certify(model, &opts)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            for r in &cert.reports {
                json_line(out, r)?;
            }
            json_line(out, &serde_json::json!({ "summary": &cert }))?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            for r in &cert.reports {
                writer.serialize(r)?;
            }
            writer.flush()?;
            eprintln!(
                "{}/{} trials passed; worst min_eig {:e} (trial {})",
                cert.passed, cert.trials, cert.worst_min_eig, cert.worst_trial
            );
        }
    }
    if cert.pass {
        Ok(())
    } else {
        Err(Failure::Certification)
    }
}

fn cmd_report(cli: &Cli, model: &KernelModel, out: &mut dyn Write) -> Result<(), Failure> {
    let report = spd_report(model)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(out, &report),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            writer.write_record(["entry", "applies", "hypothesis", "holds", "detail"])?;
            for e in &report.entries {
                for h in &e.hypotheses {
                    let (applies, holds) = (e.applies.to_string(), h.holds.to_string());
                    writer.write_record([
                        e.id,
                        &applies,
                        &h.name,
                        &holds,
                        h.detail.as_deref().unwrap_or(""),
                    ])?;
                }
            }
            writer.flush()?;
            drop(writer);
            writeln!(out, "# verdict {}", report.verdict)?;
            Ok(())
        }
    }
}

fn cmd_counterexample(
    cli: &Cli,
    config: &RunConfig,
    model: &KernelModel,
    clause: Option<Clause>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let clause = match clause.or(config.clause) {
        Some(c) => c,
        None => spd_report(model)?
            .violations
            .first()
            .map(|v| v.clause)
            .ok_or_else(|| Error::Precondition(format!("{model} violates no necessary clause")))?,
    };
    let cex = counterexample_2x2(model, clause)?;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(out, &cex),
        Format::Csv => write_matrix(out, cex.matrix.iter().map(|r| r.to_vec()), 2),
    }
}

fn cmd_suite(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let summary = suite::run(cli.seed.unwrap_or(DEFAULT_SEED), cli.filter.as_deref())?;
    match cli.format {
        Some(Format::Json) => json_line(out, &summary)?,
        Some(Format::Csv) => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            for c in &summary.criteria {
                writer.serialize(c)?;
            }
            writer.flush()?;
        }
        None => {
            for c in &summary.criteria {
                writeln!(out, "{c}")?;
            }
            let verdict = if summary.pass { "PASS" } else { "FAIL" };
            writeln!(
                out,
                "{verdict}: {} criteria, seed {}",
                summary.criteria.len(),
                summary.seed
            )?;
        }
    }
    if summary.pass {
        Ok(())
    } else {
        Err(Failure::Certification)
    }
}
