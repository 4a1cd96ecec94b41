//! Batch front end: load a scenario or study file, run one analysis and
//! write a deterministic report.
//!
//! JSON reports embed the run configuration. CSV reports written to a file
//! get a `<output>.meta.json` sidecar carrying it instead.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use multivendor_core::disruption::{simulate_horizon, summarize_risk};
use multivendor_core::optionality::{
    jensen_gap, portfolio_simulate, spread_curve, vendor_option_value,
};
use multivendor_core::rng::derive_seed;
use multivendor_core::{
    audit_plan, load_document, load_study, marginal_value, solve, sweep_subsets, PlanStatus,
    VERSION,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

mod csv_out;

pub use csv_out::emit_csv;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Check a scenario or study file and list every violation
    Validate,
    /// Minimum-cost shipment plan
    Solve,
    /// Minimum cost of every supplier subset
    Sweep,
    /// Monte Carlo cost distribution under supplier disruptions
    Simulate,
    /// Convex-payoff study: Jensen gap, spread curve, portfolio, vendors
    Payoff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "multivendor",
    version,
    about = "Multivendor supply cost and risk analyses"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Scenario file, or study file for `payoff`
    #[arg(long)]
    pub input: PathBuf,
    /// Report path; standard output when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub periods: u64,
    #[arg(long, default_value_t = 1)]
    pub min_subset_size: usize,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input: input.into(),
            output: None,
            format: Format::Json,
            seed: 0,
            trials: 10_000,
            periods: 1,
            min_subset_size: 1,
        }
    }

    fn report_config(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input.display().to_string(),
            "format": self.format,
            "seed": self.seed,
            "trials": self.trials,
            "periods": self.periods,
            "min_subset_size": self.min_subset_size,
            "version": VERSION,
        })
    }
}

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    /// Parse, validation or usage error.
    pub const INVALID: u8 = 1;
    pub const INFEASIBLE: u8 = 2;
    /// A solver result failed its own audit.
    pub const INTERNAL: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Core(#[from] multivendor_core::Error),
    #[error("no rows to write")]
    EmptyRows,
    #[error("row {row} has {len} fields, header has {expected}")]
    Ragged {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("plan audit failed: {}", .0.join("; "))]
    Audit(Vec<String>),
}

impl CliError {
    fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Audit(_) => exit::INTERNAL,
            _ => exit::INVALID,
        }
    }
}

/// Run one command, writing reports to `cfg.output` or `stdout` and
/// diagnostics to `stderr`. Returns the process exit status.
pub fn run_with(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    match dispatch(cfg, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            match &e {
                CliError::Core(multivendor_core::Error::Validation(v)) => {
                    for line in v {
                        let _ = writeln!(stderr, "{line}");
                    }
                }
                other => {
                    let _ = writeln!(stderr, "error: {other}");
                }
            }
            e.exit_code()
        }
    }
}

pub fn run(cfg: &RunConfig) -> u8 {
    run_with(cfg, &mut io::stdout().lock(), &mut io::stderr().lock())
}

fn dispatch(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<u8, CliError> {
    if cfg.trials < 1 || cfg.periods < 1 {
        return Err(CliError::Usage(
            "--trials and --periods must be at least 1".into(),
        ));
    }
    let text = fs::read_to_string(&cfg.input).map_err(|e| CliError::io(&cfg.input, e))?;
    let mut sink = Sink { cfg, stdout };
    match cfg.command {
        Command::Validate => validate(&text, &mut sink, stderr),
        Command::Solve => solve_cmd(&text, &mut sink),
        Command::Sweep => sweep_cmd(&text, &mut sink),
        Command::Simulate => simulate_cmd(&text, &mut sink),
        Command::Payoff => payoff_cmd(&text, &mut sink),
    }
}

/// Where reports go.
struct Sink<'a> {
    cfg: &'a RunConfig,
    stdout: &'a mut dyn Write,
}

impl Sink<'_> {
    fn write(&mut self, bytes: &[u8]) -> Result<(), CliError> {
        match &self.cfg.output {
            Some(path) => fs::write(path, bytes).map_err(|e| CliError::io(path, e)),
            None => self
                .stdout
                .write_all(bytes)
                .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
        }
    }

    /// JSON report with the run configuration under `config`.
    fn json(&mut self, mut report: Value) -> Result<(), CliError> {
        report
            .as_object_mut()
            .expect("reports are JSON objects")
            .insert("config".into(), self.cfg.report_config());
        self.write(&pretty(&report))
    }

    /// CSV report plus a `.meta.json` sidecar when writing to a file.
    fn csv(&mut self, header: &[&str], rows: &[Vec<String>], extra: Value) -> Result<(), CliError> {
        let mut buf = Vec::new();
        emit_csv(header, rows, &mut buf)?;
        self.write(&buf)?;
        if let Some(path) = &self.cfg.output {
            let mut meta = json!({ "config": self.cfg.report_config() });
            if let (Some(m), Value::Object(extra)) = (meta.as_object_mut(), extra) {
                m.extend(extra);
            }
            let side = sidecar(path, "meta.json");
            fs::write(&side, pretty(&meta)).map_err(|e| CliError::io(&side, e))?;
        }
        Ok(())
    }
}

fn pretty(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("JSON values always serialize");
    out.push(b'\n');
    out
}

/// `report.csv` -> `report.csv.<suffix>`
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn num(x: f64) -> String {
    x.to_string()
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn is_study(text: &str) -> bool {
    serde_json::from_str::<Value>(text)
        .ok()
        .and_then(|v| v.as_object().map(|o| o.contains_key("payoff")))
        .unwrap_or(false)
}

fn validate(text: &str, sink: &mut Sink, stderr: &mut dyn Write) -> Result<u8, CliError> {
    let outcome = if is_study(text) {
        load_study(text).map(|_| ())
    } else {
        load_document(text).map(|_| ())
    };
    match outcome {
        Ok(()) => {
            sink.write(b"valid\n")?;
            Ok(exit::OK)
        }
        Err(multivendor_core::Error::Validation(v)) => {
            let mut report = String::new();
            for line in &v {
                report.push_str(line);
                report.push('\n');
                let _ = writeln!(stderr, "{line}");
            }
            sink.write(report.as_bytes())?;
            Ok(exit::INVALID)
        }
        Err(e) => Err(e.into()),
    }
}

fn solve_cmd(text: &str, sink: &mut Sink) -> Result<u8, CliError> {
    let s = load_document(text)?.scenario;
    let plan = solve(&s);
    let problems = audit_plan(&s, &plan);
    if !problems.is_empty() {
        return Err(CliError::Audit(problems));
    }
    match sink.cfg.format {
        Format::Json => sink.json(json!({
            "status": plan.status,
            "z": plan.z,
            "shipments": plan.shipments,
        }))?,
        Format::Csv => {
            let status = plan.status.as_str().to_string();
            let z = opt_num(plan.z);
            let mut rows: Vec<Vec<String>> = plan
                .shipments
                .iter()
                .map(|x| {
                    vec![
                        status.clone(),
                        z.clone(),
                        x.supplier.clone(),
                        x.item.clone(),
                        x.demand.clone(),
                        x.units.to_string(),
                    ]
                })
                .collect();
            if rows.is_empty() {
                rows.push(vec![
                    status,
                    z,
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
            }
            sink.csv(
                &["status", "z", "supplier", "item", "demand", "units"],
                &rows,
                json!({}),
            )?;
        }
    }
    Ok(match plan.status {
        PlanStatus::Optimal => exit::OK,
        PlanStatus::Infeasible => exit::INFEASIBLE,
    })
}

fn sweep_cmd(text: &str, sink: &mut Sink) -> Result<u8, CliError> {
    let s = load_document(text)?.scenario;
    let result = sweep_subsets(&s, sink.cfg.min_subset_size)?;
    match sink.cfg.format {
        Format::Json => {
            let entries: Vec<Value> = result
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "suppliers": e.suppliers,
                        "size": e.size(),
                        "status": e.status,
                        "z": e.z,
                    })
                })
                .collect();
            // null: the remaining vendors cannot meet demand
            let marginal: Option<serde_json::Map<String, Value>> = result.baseline_z.map(|_| {
                s.suppliers
                    .iter()
                    .map(|x| {
                        let v = marginal_value(&s, &x.name).expect("baseline is feasible");
                        (
                            x.name.clone(),
                            if v.is_finite() { json!(v) } else { Value::Null },
                        )
                    })
                    .collect()
            });
            sink.json(json!({
                "baseline_z": result.baseline_z,
                "entries": entries,
                "marginal_value": marginal,
            }))?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = result
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.suppliers.join(","),
                        e.size().to_string(),
                        e.status.as_str().to_string(),
                        opt_num(e.z),
                    ]
                })
                .collect();
            sink.csv(
                &["subset", "size", "status", "z"],
                &rows,
                json!({ "baseline_z": result.baseline_z }),
            )?;
        }
    }
    Ok(exit::OK)
}

fn simulate_cmd(text: &str, sink: &mut Sink) -> Result<u8, CliError> {
    let doc = load_document(text)?;
    let dm = doc
        .disruption
        .ok_or_else(|| CliError::Usage("scenario has no `disruption` section".into()))?;
    let cfg = sink.cfg;
    let dist = simulate_horizon(&doc.scenario, &dm, cfg.periods, cfg.trials, cfg.seed)?;
    let summary = summarize_risk(&dist)?;
    match cfg.format {
        Format::Json => sink.json(json!({
            "summary": summary,
            "periods": dist.periods,
            "infeasible_periods": dist.infeasible_periods,
            "costs": dist.costs,
        }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = dist
                .costs
                .iter()
                .enumerate()
                .map(|(t, &c)| vec![t.to_string(), num(c)])
                .collect();
            sink.csv(
                &["trial", "cost"],
                &rows,
                json!({
                    "summary": summary,
                    "periods": dist.periods,
                    "infeasible_periods": dist.infeasible_periods,
                }),
            )?;
        }
    }
    Ok(exit::OK)
}

/// Sub-seeds so the study's analyses do not share random streams.
const JENSEN_STREAM: u64 = 0;
const CURVE_STREAM: u64 = 1;
const PORTFOLIO_STREAM: u64 = 2;
const VENDOR_STREAM: u64 = 3;

fn payoff_cmd(text: &str, sink: &mut Sink) -> Result<u8, CliError> {
    let study = load_study(text)?;
    let cfg = sink.cfg;
    let seed = |stream| derive_seed(cfg.seed, &[stream]);
    let curve = spread_curve(
        &study.function,
        &study.distribution,
        &study.scales,
        cfg.trials,
        seed(CURVE_STREAM),
    )?;
    match cfg.format {
        Format::Json => {
            let gap = jensen_gap(
                &study.function,
                &study.distribution,
                cfg.trials,
                seed(JENSEN_STREAM),
            )?;
            let portfolio = study
                .portfolio
                .map(|pf| portfolio_simulate(&pf, cfg.trials, seed(PORTFOLIO_STREAM)))
                .transpose()?;
            let vendors = if study.vendors.is_empty() {
                None
            } else {
                Some(vendor_option_value(
                    &study.vendors,
                    cfg.trials,
                    seed(VENDOR_STREAM),
                )?)
            };
            sink.json(json!({
                "description": study.description,
                "function": study.function,
                "distribution": study.distribution,
                "jensen_gap": gap,
                "curve": curve,
                "portfolio": portfolio.map(|p| json!({ "parameters": study.portfolio, "outcome": p })),
                "vendors": vendors.map(|v| json!({ "models": study.vendors, "value": v })),
            }))?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = curve
                .iter()
                .map(|p| {
                    vec![
                        num(p.sigma),
                        num(p.expected.value),
                        num(p.expected.stderr()),
                    ]
                })
                .collect();
            sink.csv(
                &["sigma", "expected_payoff", "mc_stderr"],
                &rows,
                json!({ "description": study.description }),
            )?;
        }
    }
    Ok(exit::OK)
}
