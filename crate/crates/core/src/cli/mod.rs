//! The pipeline behind the `apoly` binary: knot jobs, the per-command JSON
//! reports, the result cache and the batch runner.
//!
//! Exit codes: 0 success, 2 input error, 3 budget exceeded, 4 internal
//! anomaly.

mod args;
mod cache;
mod config;

use std::path::Path;
use std::time::Duration;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use crate::ajspec::{aj_compare, parse_operator, specialize_q1, AjReport, Specialized};
use crate::charvar::{build_rep_system, RepSystem, SystemDump};
use crate::elim::{a_polynomial, APolyResult, CertifyOptions, ElimError, Strategy, Verdict, DEFAULT_SEED};
use crate::knotio::{
    bundled_knots, filled_presentation, parse_braid, parse_dt, parse_pd, wirtinger, FillingSpec, KnotDiagram,
    KnotIoError,
};
use crate::newton::{newton_polygon, SlopeReport};
use crate::su2::{boundary_point, find_su2, min_cross_distance, BoundaryPoint, SU2Rep};

pub use args::{main_with_args, Cli, Command, JobArgs};
pub use cache::ResultCache;
pub use config::{Config, CONFIG_ENV};

pub const DEFAULT_BUDGET_SECONDS: u64 = 300;
/// Boundary points closer than this count as equal in `su2scan`.
pub const DISTINCT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("elimination exceeded its budget of {budget_seconds} s")]
    Timeout { budget_seconds: u64, partial: Box<TimeoutReport> },
    #[error("{0}")]
    Anomaly(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Timeout { .. } => 3,
            CliError::Anomaly(_) => 4,
        }
    }
}

impl From<KnotIoError> for CliError {
    fn from(e: KnotIoError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Dt,
    Pd,
    Braid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotInput {
    pub format: InputFormat,
    pub code: String,
}

impl KnotInput {
    pub fn dt(code: &str) -> Self {
        KnotInput { format: InputFormat::Dt, code: code.to_string() }
    }

    /// Whitespace and separators made canonical, so equivalent spellings
    /// share a cache entry.
    pub fn normalized_code(&self) -> String {
        match self.format {
            InputFormat::Pd => self.code.chars().filter(|c| !c.is_whitespace()).collect(),
            InputFormat::Dt | InputFormat::Braid => {
                self.code.replace(',', " ").split_whitespace().collect::<Vec<_>>().join(" ")
            }
        }
    }

    pub fn diagram(&self) -> Result<KnotDiagram, KnotIoError> {
        match self.format {
            InputFormat::Dt => parse_dt(&self.code),
            InputFormat::Pd => parse_pd(&self.code),
            InputFormat::Braid => parse_braid(&self.code),
        }
    }

    pub fn rep_system(&self) -> Result<RepSystem, CliError> {
        let (pres, periph) = wirtinger(&self.diagram()?);
        build_rep_system(&pres, &periph).map_err(|e| CliError::Anomaly(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobOptions {
    pub strategy: Strategy,
    pub budget_seconds: u64,
    pub seed: u64,
    pub tol: f64,
    pub samples: usize,
}

impl Default for JobOptions {
    fn default() -> Self {
        let c = CertifyOptions::default();
        JobOptions {
            strategy: Strategy::Auto,
            budget_seconds: DEFAULT_BUDGET_SECONDS,
            seed: DEFAULT_SEED,
            tol: c.tol,
            samples: c.samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotJob {
    pub name: String,
    pub input: KnotInput,
    pub options: JobOptions,
}

impl KnotJob {
    pub fn new(name: &str, input: KnotInput) -> Self {
        KnotJob { name: name.to_string(), input, options: JobOptions::default() }
    }
}

/// Printed on exit code 3.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeoutReport {
    pub input: KnotInput,
    pub error: String,
    pub budget_seconds: u64,
    pub strategy: Strategy,
}

/// `apoly` output: the input echoed, then the A-polynomial fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ApolyReport {
    pub input: KnotInput,
    #[serde(flatten)]
    pub result: APolyResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopesReport {
    pub input: KnotInput,
    pub nontrivial: SlopeReport,
    pub full: SlopeReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Found,
    NotFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillingScan {
    pub filling: FillingSpec,
    pub status: ScanStatus,
    /// Non-cyclic representations only.
    pub representations: Vec<SU2Rep>,
    pub boundary_points: Vec<BoundaryPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Su2ScanReport {
    pub input: KnotInput,
    pub attempts: usize,
    pub fillings: Vec<FillingScan>,
    /// Smallest distance between boundary points of different fillings.
    pub min_cross_distance: Option<String>,
    /// Every pair of boundary points from different fillings is farther
    /// apart than `DISTINCT_TOL`.
    pub distinct: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AjCheckReport {
    pub input: KnotInput,
    pub operator: String,
    pub specialized: Specialized,
    #[serde(flatten)]
    pub report: AjReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BatchStatus {
    Ok,
    Timeout,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub name: String,
    pub input: KnotInput,
    pub status: BatchStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l1_power: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nontrivial_part: Option<crate::mpoly::SparsePoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub jobs: Vec<BatchEntry>,
    pub finished: usize,
    pub timeouts: usize,
    pub errors: usize,
    /// Finished non-trivial knots whose verdict is not `NonTrivial`.
    pub trivial_verdicts: Vec<String>,
}

/// Runs `compute` unless `cache` already holds a record for `key`; returns
/// the compact JSON, byte-identical between a fresh run and a cache hit.
pub fn cached_json<K, T, F>(cache: Option<&ResultCache>, key: &K, compute: F) -> Result<String, CliError>
where
    K: Serialize,
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T, CliError>,
{
    let k = ResultCache::key(key);
    if let Some(hit) = cache.and_then(|c| c.get(&k)) {
        if serde_json::from_str::<T>(&hit).is_ok() {
            return Ok(hit);
        }
    }
    let json = serde_json::to_string(&compute()?).expect("report serializes");
    if let Some(c) = cache {
        c.put(&k, &json).map_err(|e| CliError::Anomaly(format!("cache write: {e}")))?;
    }
    Ok(json)
}

#[derive(Serialize)]
struct CacheKey<'a, E: Serialize> {
    command: &'static str,
    format: InputFormat,
    code: String,
    options: &'a JobOptions,
    extra: E,
}

fn cache_key<'a, E: Serialize>(command: &'static str, job: &'a KnotJob, extra: E) -> CacheKey<'a, E> {
    CacheKey { command, format: job.input.format, code: job.input.normalized_code(), options: &job.options, extra }
}

pub fn cmd_apoly(job: &KnotJob) -> Result<ApolyReport, CliError> {
    let sys = job.input.rep_system()?;
    let o = &job.options;
    if o.budget_seconds == 0 {
        return Err(CliError::Input("budget must be positive".into()));
    }
    let opts = CertifyOptions { samples: o.samples, tol: o.tol, seed: o.seed };
    match a_polynomial(&sys, o.strategy, Duration::from_secs(o.budget_seconds), opts) {
        Ok(result) => Ok(ApolyReport { input: job.input.clone(), result }),
        Err(ElimError::EliminationTimeout(_)) => Err(CliError::Timeout {
            budget_seconds: o.budget_seconds,
            partial: Box::new(TimeoutReport {
                input: job.input.clone(),
                error: "EliminationTimeout".into(),
                budget_seconds: o.budget_seconds,
                strategy: o.strategy,
            }),
        }),
        Err(e) => Err(CliError::Anomaly(e.to_string())),
    }
}

pub fn cmd_apoly_json(job: &KnotJob, cache: Option<&ResultCache>) -> Result<String, CliError> {
    cached_json(cache, &cache_key("apoly", job, ()), || cmd_apoly(job))
}

pub fn dump_system(input: &KnotInput) -> Result<SystemDump, CliError> {
    Ok(input.rep_system()?.dump())
}

fn slope_report(p: &crate::mpoly::SparsePoly) -> Result<SlopeReport, CliError> {
    let poly = newton_polygon(p).map_err(|e| CliError::Anomaly(e.to_string()))?;
    Ok(SlopeReport::from(&poly))
}

pub fn slopes_of(apoly: &ApolyReport) -> Result<SlopesReport, CliError> {
    Ok(SlopesReport {
        input: apoly.input.clone(),
        nontrivial: slope_report(&apoly.result.nontrivial_part)?,
        full: slope_report(&apoly.result.full)?,
    })
}

pub fn cmd_slopes(job: &KnotJob) -> Result<SlopesReport, CliError> {
    slopes_of(&cmd_apoly(job)?)
}

pub fn cmd_slopes_json(job: &KnotJob, cache: Option<&ResultCache>) -> Result<String, CliError> {
    cached_json(cache, &cache_key("slopes", job, ()), || {
        let apoly: ApolyReport = parse_cached(&cmd_apoly_json(job, cache)?)?;
        slopes_of(&apoly)
    })
}

fn parse_cached<T: DeserializeOwned>(json: &str) -> Result<T, CliError> {
    serde_json::from_str(json).map_err(|e| CliError::Anomaly(format!("bad cached record: {e}")))
}

/// `r = +-1, +-2, +-1/2` and `1/n` for `n <= 4`, without repeats.
pub fn default_fillings() -> Vec<FillingSpec> {
    let mut out: Vec<FillingSpec> = Vec::new();
    let pairs = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (1, 3), (1, 4)];
    for (p, q) in pairs {
        let f = FillingSpec::new(p, q).expect("coprime");
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out
}

/// Comma-separated slopes, each `p/q` or `p`.
pub fn parse_fillings(text: &str) -> Result<Vec<FillingSpec>, CliError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.parse().map_err(CliError::from)).collect()
}

pub fn cmd_su2scan(job: &KnotJob, fillings: &[FillingSpec], attempts: usize) -> Result<Su2ScanReport, CliError> {
    let (pres, periph) = wirtinger(&job.input.diagram()?);
    let mut scans = Vec::new();
    for &f in fillings {
        let filled = filled_presentation(&pres, &periph, f)?;
        let reps: Vec<SU2Rep> = find_su2(&filled, attempts, job.options.tol, job.options.seed)
            .into_iter()
            .filter(|r| r.non_cyclic)
            .collect();
        let mut points = Vec::new();
        for r in &reps {
            points.push(boundary_point(r, &periph, f).map_err(|e| CliError::Anomaly(e.to_string()))?);
        }
        let status = if reps.is_empty() { ScanStatus::NotFound } else { ScanStatus::Found };
        scans.push(FillingScan { filling: f, status, representations: reps, boundary_points: points });
    }
    let all: Vec<BoundaryPoint> = scans.iter().flat_map(|s| s.boundary_points.iter().copied()).collect();
    let min = min_cross_distance(&all);
    Ok(Su2ScanReport {
        input: job.input.clone(),
        attempts,
        fillings: scans,
        min_cross_distance: min.map(|(d, _, _)| format!("{d:.17e}")),
        distinct: min.is_none_or(|(d, _, _)| d > DISTINCT_TOL),
    })
}

pub fn cmd_su2scan_json(
    job: &KnotJob,
    fillings: &[FillingSpec],
    attempts: usize,
    cache: Option<&ResultCache>,
) -> Result<String, CliError> {
    let extra: Vec<String> = fillings.iter().map(|f| f.to_string()).collect();
    cached_json(cache, &cache_key("su2scan", job, (extra, attempts)), || cmd_su2scan(job, fillings, attempts))
}

pub fn ajcheck_of(operator: &str, apoly: &ApolyReport) -> Result<AjCheckReport, CliError> {
    let op = parse_operator(operator).map_err(|e| CliError::Input(e.to_string()))?;
    let specialized = specialize_q1(&op).map_err(|e| CliError::Input(e.to_string()))?;
    let report = aj_compare(&specialized.poly, &apoly.result);
    Ok(AjCheckReport { input: apoly.input.clone(), operator: operator.trim().to_string(), specialized, report })
}

pub fn cmd_ajcheck(operator_file: &Path, job: &KnotJob) -> Result<AjCheckReport, CliError> {
    let text = read_operator(operator_file)?;
    ajcheck_of(&text, &cmd_apoly(job)?)
}

fn read_operator(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn cmd_ajcheck_json(operator_file: &Path, job: &KnotJob, cache: Option<&ResultCache>) -> Result<String, CliError> {
    let text = read_operator(operator_file)?;
    // parse errors are input errors even on a warm cache
    parse_operator(&text).map_err(|e| CliError::Input(e.to_string()))?;
    cached_json(cache, &cache_key("ajcheck", job, text.trim()), || {
        let apoly: ApolyReport = parse_cached(&cmd_apoly_json(job, cache)?)?;
        ajcheck_of(&text, &apoly)
    })
}

/// The bundled table of prime knots up to 8 crossings as DT jobs.
pub fn table_jobs(options: &JobOptions) -> Vec<KnotJob> {
    bundled_knots()
        .into_iter()
        .map(|(name, code)| KnotJob { name: name.to_string(), input: KnotInput::dt(code), options: options.clone() })
        .collect()
}

/// Runs `cmd_apoly` on every job with at most `workers` jobs at a time.
pub fn run_batch(jobs: &[KnotJob], workers: usize, cache: Option<&ResultCache>) -> BatchReport {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let entries: Vec<BatchEntry> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let mut e = BatchEntry {
                    name: job.name.clone(),
                    input: job.input.clone(),
                    status: BatchStatus::Ok,
                    verdict: None,
                    l1_power: None,
                    nontrivial_part: None,
                    message: None,
                };
                match cmd_apoly_json(job, cache).and_then(|j| parse_cached::<ApolyReport>(&j)) {
                    Ok(r) => {
                        e.verdict = Some(r.result.verdict);
                        e.l1_power = Some(r.result.l_minus_one_power);
                        e.nontrivial_part = Some(r.result.nontrivial_part);
                    }
                    Err(err) => {
                        e.status = if matches!(err, CliError::Timeout { .. }) {
                            BatchStatus::Timeout
                        } else {
                            BatchStatus::Error
                        };
                        e.message = Some(err.to_string());
                    }
                }
                e
            })
            .collect()
    });
    let count = |s: BatchStatus| entries.iter().filter(|e| e.status == s).count();
    let trivial_verdicts = entries
        .iter()
        .filter(|e| e.status == BatchStatus::Ok && e.verdict != Some(Verdict::NonTrivial))
        .filter(|e| !e.input.normalized_code().is_empty())
        .map(|e| e.name.clone())
        .collect();
    BatchReport {
        finished: count(BatchStatus::Ok),
        timeouts: count(BatchStatus::Timeout),
        errors: count(BatchStatus::Error),
        jobs: entries,
        trivial_verdicts,
    }
}
