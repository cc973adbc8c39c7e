//! Command-line front end.
//!
//! Three subcommands: `construct` writes a MUM set, `verify` runs the
//! coincidence and entropy bounds over a seeded ensemble, and
//! `entangle-scan` sweeps isotropic states through the separability
//! criterion. Exit codes: 0 success, 1 falsified bound, 2 usage or
//! configuration error, 3 numerical failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{MumError, Result};
use crate::fbasis::build_f_family;
use crate::mum::{admissible_t_interval, build_mum_set_from_family, efficiency_from_t, MumSet, SCHEMA_VERSION};
use crate::par::{configure_threads_from_env, Execution};
use crate::states::StateSpec;
use crate::tol::Tolerances;
use crate::verify::{
    entangle_scan, gamma_grid, verify_ensemble, verify_state, BoundPlan, Ensemble, ScanRow, VerifyRecord, RENYI_ALPHAS,
    TSALLIS_ALPHAS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mumkit",
    version,
    about = "Mutually unbiased measurements: construction, uncertainty bounds, entanglement detection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a MUM set and check every axiom.
    Construct(CommonArgs),
    /// Check the coincidence and entropic bounds on a seeded ensemble.
    Verify(VerifyArgs),
    /// Sweep isotropic states through the separability criterion.
    EntangleScan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Local dimension.
    #[arg(long)]
    pub d: usize,
    /// Number of measurements (defaults to d+1).
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Parameter t, or "max" for the largest admissible value.
    #[arg(long, default_value = "max")]
    pub t: String,
    /// Tolerance override KEY=VALUE (repeatable).
    #[arg(long = "tolerance", value_name = "KEY=VALUE")]
    pub tolerance: Vec<String>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Run samples on one thread.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Entropy orders; values >= 2 (or "inf") feed the Rényi bound, values <= 2 the Tsallis bound.
    #[arg(long = "alpha", value_delimiter = ',')]
    pub alpha: Vec<String>,
    /// Detector efficiency for the inefficiency bound (repeatable).
    #[arg(long, value_delimiter = ',')]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = EnsembleArg::Cycle)]
    pub ensemble: EnsembleArg,
    /// Single state instead of an ensemble: inline StateSpec JSON or a path to one.
    #[arg(long)]
    pub state: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Measurement counts to sweep (defaults to 2..=d+1).
    #[arg(long = "Ms", value_delimiter = ',')]
    pub ms: Vec<usize>,
    /// Number of evenly spaced γ points on [0, 1].
    #[arg(long, default_value_t = 21)]
    pub gamma_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleArg {
    Pure,
    Mixed,
    CompletelyMixed,
    Cycle,
}

impl From<EnsembleArg> for Ensemble {
    fn from(e: EnsembleArg) -> Self {
        match e {
            EnsembleArg::Pure => Ensemble::Pure,
            EnsembleArg::Mixed => Ensemble::Mixed,
            EnsembleArg::CompletelyMixed => Ensemble::CompletelyMixed,
            EnsembleArg::Cycle => Ensemble::Cycle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Construct,
    Verify,
    EntangleScan,
}

/// Fully resolved run parameters, echoed into every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    pub d: usize,
    /// Measurement counts; one entry except for scans.
    pub m: Vec<usize>,
    /// `"max"` or a decimal value as given.
    pub t: String,
    /// Orders as strings so that `inf` survives JSON.
    pub alpha_grid: Vec<String>,
    pub eta: Vec<f64>,
    pub gamma_points: usize,
    pub samples: usize,
    pub seed: u64,
    pub ensemble: EnsembleArg,
    pub state: Option<StateSpec>,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

/// Result of running one command: the document to emit, a short summary
/// for stderr, and the exit code.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub body: String,
    pub summary: String,
}

fn usage(msg: impl Into<String>) -> MumError {
    MumError::InvalidArgument(msg.into())
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("tolerance override {item:?} is not KEY=VALUE")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("tolerance value {v:?} is not a number")))?;
        map.insert(k.trim().to_string(), v);
    }
    Tolerances::with_overrides(&map)?;
    Ok(map)
}

fn parse_alpha(s: &str) -> Result<f64> {
    let s = s.trim();
    if matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
        return Ok(f64::INFINITY);
    }
    let a: f64 = s.parse().map_err(|_| usage(format!("order {s:?} is not a number")))?;
    if a.is_nan() || a <= 0.0 {
        return Err(usage(format!("order must be positive, got {a}")));
    }
    Ok(a)
}

fn parse_state(raw: &str) -> Result<StateSpec> {
    let text = if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw)?
    };
    Ok(serde_json::from_str(&text)?)
}

impl RunConfig {
    fn base(kind: CommandKind, c: &CommonArgs) -> Result<Self> {
        Ok(Self {
            command: kind,
            d: c.d,
            m: c.m.into_iter().collect(),
            t: c.t.trim().to_string(),
            alpha_grid: Vec::new(),
            eta: Vec::new(),
            gamma_points: 0,
            samples: 0,
            seed: 0,
            ensemble: EnsembleArg::Cycle,
            state: None,
            tolerance_overrides: parse_overrides(&c.tolerance)?,
            output: c.output.clone(),
            format: c.format,
            threads: None,
        })
    }

    pub fn from_command(cmd: &Command) -> Result<Self> {
        match cmd {
            Command::Construct(c) => Self::base(CommandKind::Construct, c),
            Command::Verify(v) => {
                let mut cfg = Self::base(CommandKind::Verify, &v.common)?;
                cfg.alpha_grid = v.alpha.iter().map(|s| s.trim().to_string()).collect();
                cfg.eta = v.eta.clone();
                cfg.samples = v.samples;
                cfg.seed = v.seed;
                cfg.ensemble = v.ensemble;
                cfg.state = v.state.as_deref().map(parse_state).transpose()?;
                Ok(cfg)
            }
            Command::EntangleScan(s) => {
                let mut cfg = Self::base(CommandKind::EntangleScan, &s.common)?;
                if !s.ms.is_empty() {
                    cfg.m = s.ms.clone();
                }
                cfg.gamma_points = s.gamma_points;
                Ok(cfg)
            }
        }
    }

    pub fn tolerances(&self) -> Result<Tolerances> {
        Tolerances::with_overrides(&self.tolerance_overrides)
    }

    fn default_m(&self) -> Result<usize> {
        match self.m.as_slice() {
            [] => Ok(self.d + 1),
            [m] => Ok(*m),
            _ => Err(usage("exactly one measurement count expected")),
        }
    }

    /// Splits the α grid into Rényi (α ≥ 2) and Tsallis (α ≤ 2) orders.
    fn alpha_split(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        if self.alpha_grid.is_empty() {
            return Ok((RENYI_ALPHAS.to_vec(), TSALLIS_ALPHAS.to_vec()));
        }
        let alphas = self
            .alpha_grid
            .iter()
            .map(|s| parse_alpha(s))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            alphas.iter().copied().filter(|&a| a >= 2.0).collect(),
            alphas.iter().copied().filter(|&a| a <= 2.0).collect(),
        ))
    }
}

/// Builds the set named by `d`, `t`, `m`.
fn build_set(d: usize, t: &str, m: usize) -> Result<MumSet> {
    if d < 2 {
        return Err(usage(format!("dimension must be at least 2, got {d}")));
    }
    let family = build_f_family(d)?;
    let t = if t.eq_ignore_ascii_case("max") {
        admissible_t_interval(&family)?.1
    } else {
        t.parse::<f64>()
            .map_err(|_| usage(format!("t must be a number or \"max\", got {t:?}")))?
    };
    build_mum_set_from_family(&family, t, m)
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    library_version: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    payload: T,
}

fn envelope<T: Serialize>(config: &RunConfig, payload: T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Envelope {
        schema_version: SCHEMA_VERSION,
        library_version: crate::VERSION,
        config,
        payload,
    })?)
}

/// Decimal rendering with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn csv_header(config: &RunConfig) -> Result<String> {
    Ok(format!(
        "# schema_version={SCHEMA_VERSION}\n# library_version={}\n# config={}\n",
        crate::VERSION,
        serde_json::to_string(config)?
    ))
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn cmd_construct(config: &RunConfig) -> Result<CommandOutput> {
    if config.format != Format::Json {
        return Err(usage("construct writes JSON only"));
    }
    let tol = config.tolerances()?;
    let set = build_set(config.d, &config.t, config.default_m()?)?;
    let residuals = set.residuals()?;
    let passes = residuals.passes(&tol);

    let family = build_f_family(config.d)?;
    let (lo, hi) = admissible_t_interval(&family)?;
    let kappa_max = efficiency_from_t(config.d, lo).max(efficiency_from_t(config.d, hi));

    let mut doc = set.to_document();
    doc.library_version = Some(crate::VERSION.to_string());
    doc.config = Some(serde_json::to_value(config)?);
    doc.residuals = Some(residuals);

    let summary = format!(
        "d={} M={} t={} kappa={} t_interval=[{}, {}] kappa_max={} max_residual={:e} axioms={}",
        set.dim(),
        set.len(),
        set.t(),
        set.kappa(),
        lo,
        hi,
        kappa_max,
        residuals.max_residual(),
        if passes { "pass" } else { "FAIL" }
    );
    Ok(CommandOutput {
        exit_code: if passes { EXIT_OK } else { EXIT_FALSIFIED },
        body: serde_json::to_string_pretty(&doc)?,
        summary,
    })
}

#[derive(Serialize)]
struct VerifyPayload<'a> {
    summary: VerifySummary,
    records: &'a [VerifyRecord],
}

#[derive(Debug, Clone, Serialize)]
struct VerifySummary {
    d: usize,
    m: usize,
    kappa: f64,
    states: usize,
    checks: usize,
    failures: usize,
    min_coincidence_margin: f64,
    min_entropy_margin: f64,
}

fn verify_csv(config: &RunConfig, records: &[VerifyRecord]) -> Result<String> {
    let mut out = csv_header(config)?;
    out.push_str("kind,seed,stream,d,M,family,alpha,eta,kappa,purity,bound,observed,margin,satisfied\n");
    let kind = |s: &StateSpec| {
        serde_json::to_value(s.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
    };
    for r in records {
        let k = kind(&r.state).unwrap_or_default();
        let c = &r.coincidence;
        // The coincidence row reports "observed" as the sum of indices.
        let _ = writeln!(
            out,
            "{k},{},{},{},{},coincidence,,,{},{},{},{},{},{}",
            r.state.seed,
            r.state.stream,
            c.d,
            c.m,
            fmt_f64(c.kappa),
            fmt_f64(c.purity),
            fmt_f64(c.bound),
            fmt_f64(c.total),
            fmt_f64(c.margin),
            c.satisfied
        );
        for b in &r.bounds {
            let _ = writeln!(
                out,
                "{k},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.state.seed,
                r.state.stream,
                b.d,
                b.m,
                b.family.name(),
                fmt_f64(b.alpha_value()),
                b.eta.map(fmt_f64).unwrap_or_default(),
                fmt_f64(b.kappa),
                fmt_f64(b.purity),
                fmt_f64(b.bound_value),
                fmt_f64(b.observed_average_entropy),
                fmt_f64(b.margin()),
                b.satisfied
            );
        }
    }
    Ok(out)
}

pub fn cmd_verify(config: &RunConfig, exec: Execution) -> Result<CommandOutput> {
    let tol = config.tolerances()?;
    let set = build_set(config.d, &config.t, config.default_m()?)?;
    let (renyi_alphas, tsallis_alphas) = config.alpha_split()?;
    for &eta in &config.eta {
        if !(0.0..=1.0).contains(&eta) {
            return Err(usage(format!("eta must lie in [0, 1], got {eta}")));
        }
    }
    let plan = BoundPlan {
        renyi_alphas,
        tsallis_alphas,
        shannon: true,
        etas: config.eta.clone(),
    };
    let records = match &config.state {
        Some(spec) => {
            if spec.kind.is_bipartite() {
                return Err(usage("verify takes a single-system state"));
            }
            if spec.d != config.d {
                return Err(usage(format!(
                    "state dimension {} differs from --d {}",
                    spec.d, config.d
                )));
            }
            vec![verify_state(&set, spec, &plan, &tol)?]
        }
        None => {
            if config.samples == 0 {
                return Err(usage("samples must be positive"));
            }
            verify_ensemble(
                &set,
                config.ensemble.into(),
                config.samples,
                config.seed,
                &plan,
                &tol,
                exec,
            )?
        }
    };

    let checks = records.iter().map(|r| 1 + r.bounds.len()).sum();
    let failures: Vec<&VerifyRecord> = records.iter().filter(|r| !r.satisfied()).collect();
    let summary = VerifySummary {
        d: set.dim(),
        m: set.len(),
        kappa: set.kappa(),
        states: records.len(),
        checks,
        failures: failures.len(),
        min_coincidence_margin: records
            .iter()
            .map(|r| r.coincidence.margin)
            .fold(f64::INFINITY, f64::min),
        min_entropy_margin: records
            .iter()
            .flat_map(|r| r.bounds.iter().map(|b| b.margin()))
            .fold(f64::INFINITY, f64::min),
    };
    let body = match config.format {
        Format::Json => envelope(
            config,
            VerifyPayload {
                summary: summary.clone(),
                records: &records,
            },
        )?,
        Format::Csv => verify_csv(config, &records)?,
    };
    let mut text = format!(
        "d={} M={} kappa={} states={} checks={} failures={} min_coincidence_margin={:e} min_entropy_margin={:e}",
        summary.d,
        summary.m,
        summary.kappa,
        summary.states,
        summary.checks,
        summary.failures,
        summary.min_coincidence_margin,
        summary.min_entropy_margin
    );
    for r in failures.iter().take(10) {
        let families: Vec<&str> = r
            .bounds
            .iter()
            .filter(|b| !b.satisfied)
            .map(|b| b.family.name())
            .chain((!r.coincidence.satisfied).then_some("coincidence"))
            .collect();
        let _ = write!(
            text,
            "\ncounterexample: {} ({})",
            serde_json::to_string(&r.state)?,
            families.join(", ")
        );
    }
    Ok(CommandOutput {
        exit_code: if failures.is_empty() { EXIT_OK } else { EXIT_FALSIFIED },
        body,
        summary: text,
    })
}

#[derive(Serialize)]
struct ScanPayload<'a> {
    rows: &'a [ScanRow],
    max_closed_form_deviation: f64,
}

fn scan_csv(config: &RunConfig, rows: &[ScanRow]) -> Result<String> {
    let mut out = csv_header(config)?;
    out.push_str("d,M,kappa,gamma,threshold,J_measured,J_closed_form,bound_separable,entangled,known_entangled,note\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.d,
            r.m,
            fmt_f64(r.kappa),
            fmt_f64(r.gamma),
            fmt_f64(r.threshold),
            fmt_f64(r.j_measured),
            fmt_f64(r.j_closed_form),
            fmt_f64(r.bound_separable),
            r.entangled,
            r.known_entangled,
            csv_text(r.note.as_deref().unwrap_or(""))
        );
    }
    Ok(out)
}

pub fn cmd_entangle_scan(config: &RunConfig, exec: Execution) -> Result<CommandOutput> {
    let tol = config.tolerances()?;
    let d = config.d;
    let ms: Vec<usize> = if config.m.is_empty() {
        (2..=d + 1).collect()
    } else {
        config.m.clone()
    };
    let max_m = *ms.iter().max().expect("nonempty");
    if ms.contains(&0) || max_m > d + 1 {
        return Err(usage(format!("measurement counts must lie in 1..={}", d + 1)));
    }
    if config.gamma_points == 0 {
        return Err(usage("gamma grid needs at least one point"));
    }
    let base = build_set(d, &config.t, d + 1)?;
    let rows = entangle_scan(&base, &ms, &gamma_grid(config.gamma_points), &tol, exec)?;
    let deviation = rows
        .iter()
        .map(|r| (r.j_measured - r.j_closed_form).abs())
        .fold(0.0, f64::max);
    let body = match config.format {
        Format::Json => envelope(
            config,
            ScanPayload {
                rows: &rows,
                max_closed_form_deviation: deviation,
            },
        )?,
        Format::Csv => scan_csv(config, &rows)?,
    };
    let mut summary = format!(
        "d={d} kappa={} rows={} max |J_measured - J_closed_form| = {deviation:e}",
        base.kappa(),
        rows.len()
    );
    if base.kappa() - 1.0 / (d as f64) < 1e-12 {
        summary.push_str("\nwarning: trivial efficiency, no detection possible");
    }
    for &m in &ms {
        let first = rows.iter().find(|r| r.m == m && r.entangled).map(|r| r.gamma);
        let missed = rows
            .iter()
            .filter(|r| r.m == m && r.known_entangled && !r.entangled)
            .count();
        let _ = write!(
            summary,
            "\nM={m}: threshold 1/M = {:.6}, first flagged gamma = {}, entangled but undetected grid points = {missed}",
            1.0 / m as f64,
            first.map_or("none".to_string(), |g| format!("{g:.6}"))
        );
    }
    Ok(CommandOutput {
        exit_code: if deviation <= tol.bound {
            EXIT_OK
        } else {
            EXIT_FALSIFIED
        },
        body,
        summary,
    })
}

pub fn exit_code_for(err: &MumError) -> i32 {
    match err {
        MumError::NoConvergence { .. } => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<CommandOutput> {
    let mut config = RunConfig::from_command(&cli.command)?;
    config.threads = configure_threads_from_env().map_err(usage)?;
    let sequential = match &cli.command {
        Command::Construct(c) => c.sequential,
        Command::Verify(v) => v.common.sequential,
        Command::EntangleScan(s) => s.common.sequential,
    };
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match config.command {
        CommandKind::Construct => cmd_construct(&config),
        CommandKind::Verify => cmd_verify(&config, exec),
        CommandKind::EntangleScan => cmd_entangle_scan(&config, exec),
    }
}

/// Parses `args`, runs the command, writes its output, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let output_path = match &cli.command {
        Command::Construct(c) => c.output.clone(),
        Command::Verify(v) => v.common.output.clone(),
        Command::EntangleScan(s) => s.common.output.clone(),
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &output_path {
                Some(path) => std::fs::write(path, &out.body),
                None => {
                    println!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            eprintln!("{}", out.summary);
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("mumkit").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn construct_defaults_to_complete_set_at_max_t() {
        let cli = parse(&["construct", "--d", "3"]);
        let out = execute(&cli).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["povms"].as_array().unwrap().len(), 4);
        assert_eq!(v["config"]["t"], "max");
    }

    #[test]
    fn construct_trivial_and_out_of_range() {
        let out = execute(&parse(&["construct", "--d", "2", "--t", "0"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["kappa"], 0.5);

        let err = execute(&parse(&["construct", "--d", "2", "--M", "4"])).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_USAGE);
        let err = execute(&parse(&["construct", "--d", "2", "--t", "abc"])).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_USAGE);
    }

    #[test]
    fn tolerance_overrides_are_validated() {
        assert!(execute(&parse(&["construct", "--d", "2", "--tolerance", "axiom=1e-6"])).is_ok());
        assert!(execute(&parse(&["construct", "--d", "2", "--tolerance", "nope=1"])).is_err());
        assert!(execute(&parse(&["construct", "--d", "2", "--tolerance", "axiom"])).is_err());
    }

    #[test]
    fn alpha_grid_split() {
        let mut cfg = RunConfig::from_command(&parse(&["verify", "--d", "2", "--alpha", "0.5,2,inf"]).command).unwrap();
        assert_eq!(cfg.alpha_split().unwrap(), (vec![2.0, f64::INFINITY], vec![0.5, 2.0]));
        cfg.alpha_grid = vec!["-1".into()];
        assert!(cfg.alpha_split().is_err());
    }

    #[test]
    fn single_state_verify() {
        let cli = parse(&[
            "verify",
            "--d",
            "3",
            "--state",
            r#"{"kind":"pure_random","d":3,"seed":4}"#,
        ]);
        let out = execute(&cli).unwrap();
        assert_eq!(out.exit_code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["records"].as_array().unwrap().len(), 1);
        assert_eq!(v["config"]["state"]["seed"], 4);

        let bad = parse(&[
            "verify",
            "--d",
            "3",
            "--state",
            r#"{"kind":"isotropic","d":3,"params":[0.5]}"#,
        ]);
        assert!(execute(&bad).is_err());
    }

    #[test]
    fn numerical_failures_map_to_exit_three() {
        let err = MumError::NoConvergence {
            sweeps: 100,
            residual: 1e-3,
        };
        assert_eq!(exit_code_for(&err), EXIT_NUMERICAL);
        assert_eq!(exit_code_for(&MumError::InvalidArgument("x".into())), EXIT_USAGE);
    }

    #[test]
    fn fmt_uses_seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        let x = std::f64::consts::PI / 7.0;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
    }
}
