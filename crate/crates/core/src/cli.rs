//! Command-line front end: `fit`, `compare`, `sample`, `tabulate`,
//! `hazard`, `lrtest` and `check`.
//!
//! Reports are JSON (`schema_version` "1") on stdout; `sample`, `tabulate`
//! and `hazard` stream CSV unless another format is requested. Exit codes:
//! 0 success, 1 usage, 2 data, 3 convergence/estimation failure.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::run_audit;
use crate::density::{AlphaParam, LocScaleBasn2, LocScaleParams};
use crate::error::BasnError;
use crate::inference::{compare_models, fit_model, lr_test_normal_vs_basn2, Dataset, FitResult, Method, Model};
use crate::lifetime::Hbasn2;
use crate::sampling::{sample_locscale, SampleConfig};

pub const SCHEMA_VERSION: &str = "1";
/// Seed used by `sample` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;
/// Upper bound on rows produced by a grid command.
pub const MAX_GRID_POINTS: usize = 10_000_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "basn", version, about = "Balakrishnan alpha-skew-normal distributions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Mle,
    Mom,
}

#[derive(Debug, Args, Serialize)]
pub struct DataArgs {
    /// CSV file with one numeric column (header row optional)
    #[arg(long)]
    pub data: PathBuf,
    /// Column name, required when the file has several columns
    #[arg(long)]
    pub column: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct DistArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one model to a data column
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "basn2")]
        model: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Mle)]
        method: MethodArg,
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
    /// Fit several models and rank them by AIC
    Compare {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated model list
        #[arg(long, default_value = "basn2,normal,laplace,logistic,sn,asn")]
        models: String,
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
    /// Draw a reproducible BASN2 sample
    Sample {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
    /// Tabulate pdf and cdf on a grid
    Tabulate {
        #[command(flatten)]
        dist: DistArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
    /// Tabulate the half-BASN2 lifetime pdf, survival and hazard
    Hazard {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
    /// Likelihood-ratio test of normal against BASN2
    Lrtest {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
    /// Normalization and constant self-audit
    Check {
        #[arg(long, value_enum)]
        output_format: Option<OutputFormat>,
    },
}

/// A failed command: exit code plus message.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            kind: "usage",
            message: msg.into(),
        }
    }

    fn data(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_DATA,
            kind: "data",
            message: msg.into(),
        }
    }
}

impl From<BasnError> for CliError {
    fn from(e: BasnError) -> Self {
        let (code, kind) = match e {
            BasnError::Domain(_) => (EXIT_USAGE, "usage"),
            BasnError::Data(_) => (EXIT_DATA, "data"),
            BasnError::Estimation(_) => (EXIT_CONVERGENCE, "estimation"),
            BasnError::Convergence(_) | BasnError::NotPositiveDefinite { .. } => (EXIT_CONVERGENCE, "convergence"),
        };
        CliError {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::data(format!("i/o error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

// ------------------------------------------------------------------ ingest

fn is_number(s: &str) -> bool {
    s.trim().parse::<f64>().is_ok()
}

/// Reads one numeric column from a CSV file. A first row with any
/// non-numeric cell is taken as the header.
pub fn ingest_csv(path: &Path, column: Option<&str>) -> std::result::Result<Dataset, BasnError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| BasnError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = rdr.records().enumerate().peekable();

    let header: Option<Vec<String>> = match rows.peek() {
        Some((_, Ok(rec))) if !rec.iter().all(is_number) => {
            let h = rec.iter().map(|s| s.trim().to_string()).collect();
            rows.next();
            Some(h)
        }
        _ => None,
    };
    let width = header.as_ref().map(Vec::len);
    let col = match (column, &header) {
        (Some(name), Some(h)) => h
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| BasnError::Data(format!("column '{name}' not found; header is {h:?}")))?,
        (Some(name), None) => {
            return Err(BasnError::Data(format!("column '{name}' requested but the file has no header row")))
        }
        (None, Some(h)) if h.len() > 1 => {
            return Err(BasnError::Data(format!("file has {} columns {h:?}; choose one with --column", h.len())))
        }
        (None, _) => 0,
    };

    let mut values = Vec::new();
    for (i, rec) in rows {
        let line = i + 1;
        let rec = rec.map_err(|e| BasnError::Data(format!("line {line}: {e}")))?;
        if rec.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        if width.is_none() && column.is_none() && rec.len() > 1 {
            return Err(BasnError::Data(format!(
                "line {line}: {} columns but no header; a single column is expected",
                rec.len()
            )));
        }
        let cell = rec
            .get(col)
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .ok_or_else(|| BasnError::Data(format!("line {line}: empty cell")))?;
        let v: f64 = cell
            .parse()
            .map_err(|_| BasnError::Data(format!("line {line}: non-numeric value '{cell}'")))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(BasnError::Data(format!("{}: column is empty", path.display())));
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "data".into());
    Dataset::new(name, values)
}

// ------------------------------------------------------------------- grids

/// Grid points `from, from + step, ...` up to `to` (inclusive, within
/// rounding). `from == to` gives one point.
pub fn grid_points(from: f64, to: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(CliError::usage("grid bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(CliError::usage(format!("--step must be positive, got {step}")));
    }
    if from > to {
        return Err(CliError::usage(format!("--from ({from}) must not exceed --to ({to})")));
    }
    let count = ((to - from) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(CliError::usage(format!("grid has {count} points, limit is {MAX_GRID_POINTS}")));
    }
    Ok((0..count).map(|i| from + step * i as f64).collect())
}

// ----------------------------------------------------------------- reports

fn report(command: &str, inputs: Value, results: Value, findings: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "findings": findings,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v.is_nan() {
        "NaN".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn fit_table(out: &mut dyn Write, fit: &FitResult) -> io::Result<()> {
    writeln!(out, "model      {}", fit.model)?;
    writeln!(out, "method     {}", fit.method)?;
    for (name, v) in fit.params.iter() {
        writeln!(out, "{name:<10} {}", fmt_num(v))?;
    }
    writeln!(out, "loglik     {}", fmt_num(fit.loglik))?;
    writeln!(out, "aic        {}", fmt_num(fit.aic))?;
    writeln!(out, "bic        {}", fmt_num(fit.bic))?;
    writeln!(out, "converged  {}", fit.converged)?;
    if let Some(v) = fit.vcov {
        writeln!(out, "vcov (alpha, mu, sigma)")?;
        for row in v {
            writeln!(out, "  {} {} {}", fmt_num(row[0]), fmt_num(row[1]), fmt_num(row[2]))?;
        }
    }
    Ok(())
}

fn write_json(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn write_rows(
    out: &mut dyn Write,
    format: OutputFormat,
    command: &str,
    inputs: Value,
    header: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
) -> CliResult<()> {
    match format {
        OutputFormat::Csv | OutputFormat::Table => {
            let sep = if format == OutputFormat::Csv { "," } else { "\t" };
            writeln!(out, "{}", header.join(sep))?;
            for r in rows {
                let cells: Vec<String> = r.into_iter().map(fmt_num).collect();
                writeln!(out, "{}", cells.join(sep))?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = rows
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.into_iter().map(|v| json!(v))).collect()))
                .collect();
            write_json(out, &report(command, inputs, json!({ "rows": rows }), json!([])))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- commands

fn parse_models(list: &str) -> CliResult<Vec<Model>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Model>().map_err(|_| CliError::usage(format!("unknown model '{}'", s.trim()))))
        .collect()
}

fn locscale(d: &DistArgs) -> CliResult<LocScaleParams> {
    AlphaParam::new(d.alpha)?;
    Ok(LocScaleParams::new(d.alpha, d.mu, d.sigma)?)
}

/// Runs a parsed command, writing its output to `out`.
pub fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Fit {
            data,
            model,
            method,
            output_format,
        } => {
            let model: Model = model.parse().map_err(|_| CliError::usage(format!("unknown model '{model}'")))?;
            let method = match method {
                MethodArg::Mle => Method::Mle,
                MethodArg::Mom => Method::Mom,
            };
            if method == Method::Mom && model != Model::Basn2 {
                return Err(CliError::usage("--method mom is only available for --model basn2"));
            }
            let ds = ingest_csv(&data.data, data.column.as_deref())?;
            let fit = fit_model(&ds, model, method)?;
            let inputs = json!({
                "data": data.data, "column": data.column, "n": ds.len(),
                "model": model, "method": method,
            });
            match output_format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => write_json(out, &report("fit", inputs, to_value(&fit), json!([])))?,
                _ => fit_table(out, &fit)?,
            }
            if !fit.converged {
                return Err(CliError {
                    code: EXIT_CONVERGENCE,
                    kind: "convergence",
                    message: format!("{model} fit did not converge: {}", fit.notes.join("; ")),
                });
            }
            Ok(())
        }
        Command::Compare {
            data,
            models,
            output_format,
        } => {
            let models = parse_models(&models)?;
            if models.is_empty() {
                return Err(CliError::usage("--models is empty"));
            }
            let ds = ingest_csv(&data.data, data.column.as_deref())?;
            let rep = compare_models(&ds, &models)?;
            let inputs = json!({ "data": data.data, "column": data.column, "n": ds.len(), "models": models });
            match output_format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => write_json(out, &report("compare", inputs, to_value(&rep), json!([])))?,
                _ => {
                    writeln!(out, "rank\tmodel\tk\tloglik\taic\tbic")?;
                    for row in &rep.rows {
                        match &row.fit {
                            Some(f) => writeln!(
                                out,
                                "{}\t{}\t{}\t{}\t{}\t{}",
                                row.rank.unwrap_or(0),
                                row.model,
                                f.k,
                                fmt_num(f.loglik),
                                fmt_num(f.aic),
                                fmt_num(f.bic)
                            )?,
                            None => writeln!(out, "-\t{}\tfailed: {}", row.model, row.error.as_deref().unwrap_or(""))?,
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Sample {
            dist,
            n,
            seed,
            output_format,
        } => {
            let p = locscale(&dist)?;
            let seed = seed.unwrap_or(DEFAULT_SEED);
            let cfg = SampleConfig::new(n, seed).map_err(|e| CliError::usage(e.to_string()))?;
            let draws = sample_locscale(p, cfg)?;
            let inputs = json!({ "alpha": p.alpha, "mu": p.mu, "sigma": p.sigma, "n": n, "seed": seed });
            write_rows(
                out,
                output_format.unwrap_or(OutputFormat::Csv),
                "sample",
                inputs,
                &["y"],
                draws.into_iter().map(|v| vec![v]),
            )
        }
        Command::Tabulate {
            dist,
            grid,
            output_format,
        } => {
            let p = locscale(&dist)?;
            let xs = grid_points(grid.from, grid.to, grid.step)?;
            let d = LocScaleBasn2::new(p);
            let inputs = json!({
                "alpha": p.alpha, "mu": p.mu, "sigma": p.sigma,
                "from": grid.from, "to": grid.to, "step": grid.step,
            });
            write_rows(
                out,
                output_format.unwrap_or(OutputFormat::Csv),
                "tabulate",
                inputs,
                &["z", "pdf", "cdf"],
                xs.into_iter().map(|z| vec![z, d.pdf(z), d.cdf(z)]),
            )
        }
        Command::Hazard {
            alpha,
            grid,
            output_format,
        } => {
            let h = Hbasn2::new(AlphaParam::new(alpha)?);
            let ts = grid_points(grid.from, grid.to, grid.step)?;
            if grid.from < 0.0 {
                return Err(CliError::usage("lifetime grid must start at t >= 0"));
            }
            let mut rows = Vec::with_capacity(ts.len());
            for t in ts {
                rows.push(vec![t, h.pdf(t)?, h.survival(t)?, h.hazard(t)?.rate]);
            }
            let inputs = json!({ "alpha": alpha, "from": grid.from, "to": grid.to, "step": grid.step });
            write_rows(
                out,
                output_format.unwrap_or(OutputFormat::Csv),
                "hazard",
                inputs,
                &["t", "pdf", "survival", "hazard"],
                rows.into_iter(),
            )
        }
        Command::Lrtest { data, output_format } => {
            let ds = ingest_csv(&data.data, data.column.as_deref())?;
            let lr = lr_test_normal_vs_basn2(&ds)?;
            let inputs = json!({ "data": data.data, "column": data.column, "n": ds.len() });
            match output_format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => write_json(out, &report("lrtest", inputs, to_value(&lr), json!([])))?,
                _ => {
                    writeln!(out, "statistic      {}", fmt_num(lr.statistic))?;
                    writeln!(out, "critical_1pct  {}", fmt_num(lr.critical_1pct))?;
                    writeln!(out, "reject_null    {}", lr.reject_null)?;
                }
            }
            Ok(())
        }
        Command::Check { output_format } => {
            let rep = run_audit()?;
            match output_format.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => write_json(
                    out,
                    &report(
                        "check",
                        json!({}),
                        json!({ "all_passed": rep.all_passed(), "checks": rep.checks }),
                        to_value(&rep.findings),
                    ),
                )?,
                _ => {
                    for c in &rep.checks {
                        writeln!(
                            out,
                            "{}  {}  (error {:.3e}, tolerance {:.1e})",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.error,
                            c.tolerance
                        )?;
                    }
                    for f in &rep.findings {
                        writeln!(out, "FINDING  {}: printed {}, computed {}; {}", f.topic, f.printed, f.computed, f.note)?;
                    }
                }
            }
            if rep.all_passed() {
                Ok(())
            } else {
                Err(CliError {
                    code: EXIT_CONVERGENCE,
                    kind: "check",
                    message: "self-check failed".into(),
                })
            }
        }
    }
}

fn wants_json(args: &[OsString]) -> bool {
    let words: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let explicit = words
        .windows(2)
        .find(|w| w[0] == "--output-format")
        .map(|w| w[1].as_str())
        .or_else(|| words.iter().find_map(|w| w.strip_prefix("--output-format=")));
    match explicit {
        Some(f) => f == "json",
        None => !words.iter().any(|w| w == "sample" || w == "tabulate" || w == "hazard"),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let json_errors = wants_json(&args);
    let command = args.get(1).map(|a| a.to_string_lossy().into_owned()).unwrap_or_default();
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error ({}): {}", e.kind, e.message);
            if json_errors && e.kind != "convergence" && e.kind != "check" {
                let v = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "error": { "kind": e.kind, "message": e.message, "exit_code": e.code },
                });
                let _ = write_json(out, &v);
            }
            e.code
        }
    }
}
