//! Command-line parsing. Knot and option flags are global, so
//! `apoly --dt "4 6 2"` (no subcommand) runs `apoly`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::{
    cmd_ajcheck_json, cmd_apoly_json, cmd_slopes_json, cmd_su2scan_json, default_fillings, dump_system, parse_fillings,
    run_batch, table_jobs, CliError, Config, InputFormat, JobOptions, KnotInput, KnotJob, ResultCache,
};
use crate::elim::Strategy;
use crate::su2::DEFAULT_ATTEMPTS;

#[derive(Debug, Parser)]
#[command(name = "apoly", version, about = "A-polynomials of knots from diagram codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub job: JobArgs,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Dowker-Thistlethwaite code, e.g. "4 6 2"; "" is the unknot.
    #[arg(long, global = true, conflicts_with_all = ["pd", "braid"])]
    pub dt: Option<String>,
    /// Planar diagram code, e.g. "X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]".
    #[arg(long, global = true, conflicts_with = "braid")]
    pub pd: Option<String>,
    /// Braid word as signed generator indices, e.g. "1 1 1".
    #[arg(long, global = true)]
    pub braid: Option<String>,
    /// groebner, resultant_tower or auto.
    #[arg(long, global = true)]
    pub strategy: Option<Strategy>,
    #[arg(long, global = true)]
    pub budget_seconds: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Sample points per factor during certification.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Print the polynomial system instead of eliminating.
    #[arg(long, global = true)]
    pub dump_system: bool,
    /// Compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the A-polynomial.
    Apoly,
    /// Boundary slopes from the Newton polygon.
    Slopes,
    /// Search for non-cyclic SU(2) representations of Dehn fillings.
    Su2scan {
        /// Comma-separated slopes `p/q`; defaults to +-1, +-2, +-1/2, 1/3, 1/4.
        #[arg(long, allow_hyphen_values = true)]
        fillings: Option<String>,
        #[arg(long)]
        attempts: Option<usize>,
    },
    /// Compare the q = 1 specialization of an operator with the A-polynomial.
    Ajcheck {
        /// File holding the operator text.
        operator_file: PathBuf,
    },
    /// Run the bundled table of prime knots up to 8 crossings.
    Batch {
        #[arg(long)]
        workers: Option<usize>,
        /// Comma-separated knot names to keep, e.g. "3_1,4_1".
        #[arg(long)]
        only: Option<String>,
    },
}

impl JobArgs {
    fn options(&self, cfg: &Config) -> JobOptions {
        let d = JobOptions::default();
        JobOptions {
            strategy: self.strategy.or(cfg.strategy).unwrap_or(d.strategy),
            budget_seconds: self.budget_seconds.or(cfg.budget_seconds).unwrap_or(d.budget_seconds),
            seed: self.seed.or(cfg.seed).unwrap_or(d.seed),
            tol: self.tol.or(cfg.tol).unwrap_or(d.tol),
            samples: self.samples.or(cfg.samples).unwrap_or(d.samples),
        }
    }

    fn input(&self) -> Result<KnotInput, CliError> {
        let pick = |f: InputFormat, c: &Option<String>| c.as_ref().map(|c| KnotInput { format: f, code: c.clone() });
        pick(InputFormat::Dt, &self.dt)
            .or_else(|| pick(InputFormat::Pd, &self.pd))
            .or_else(|| pick(InputFormat::Braid, &self.braid))
            .ok_or_else(|| CliError::Input("one of --dt, --pd, --braid is required".into()))
    }

    fn job(&self, cfg: &Config) -> Result<KnotJob, CliError> {
        let input = self.input()?;
        let options = self.options(cfg);
        if options.budget_seconds == 0 {
            return Err(CliError::Input("--budget-seconds must be positive".into()));
        }
        Ok(KnotJob { name: input.normalized_code(), input, options })
    }
}

fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("serializes")
    } else {
        serde_json::to_string(value).expect("serializes")
    }
}

/// Re-indents a compact record; key order is preserved.
fn render_str(json: &str, pretty: bool) -> String {
    if !pretty {
        return json.to_string();
    }
    let v: serde_json::Value = serde_json::from_str(json).expect("valid JSON");
    render(&v, true)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = Config::from_env()?;
    let pretty = cli.job.pretty;
    let cache_dir = cli.job.cache_dir.clone().or(cfg.cache_dir.clone());
    let cache = match cache_dir {
        Some(d) => Some(ResultCache::new(&d).map_err(|e| CliError::Input(format!("cache dir {}: {e}", d.display())))?),
        None => None,
    };
    let cache = cache.as_ref();
    let command = cli.command.as_ref().unwrap_or(&Command::Apoly);
    if cli.job.dump_system {
        return Ok(render(&dump_system(&cli.job.input()?)?, pretty));
    }
    let json = match command {
        Command::Apoly => cmd_apoly_json(&cli.job.job(&cfg)?, cache)?,
        Command::Slopes => cmd_slopes_json(&cli.job.job(&cfg)?, cache)?,
        Command::Su2scan { fillings, attempts } => {
            let fillings = match fillings {
                Some(f) => parse_fillings(f)?,
                None => default_fillings(),
            };
            let attempts = attempts.or(cfg.attempts).unwrap_or(DEFAULT_ATTEMPTS);
            cmd_su2scan_json(&cli.job.job(&cfg)?, &fillings, attempts, cache)?
        }
        Command::Ajcheck { operator_file } => cmd_ajcheck_json(operator_file, &cli.job.job(&cfg)?, cache)?,
        Command::Batch { workers, only } => {
            let mut jobs = table_jobs(&cli.job.options(&cfg));
            if let Some(only) = only {
                let keep: Vec<&str> = only.split(',').map(str::trim).collect();
                jobs.retain(|j| keep.contains(&j.name.as_str()));
            }
            let workers = workers.or(cfg.workers).unwrap_or_else(|| rayon::current_num_threads());
            serde_json::to_string(&run_batch(&jobs, workers, cache)).expect("serializes")
        }
    };
    Ok(render_str(&json, pretty))
}

/// Parses `args`, runs the command, prints the JSON and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(json) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{json}");
            0
        }
        Err(e) => {
            if let CliError::Timeout { partial, .. } = &e {
                println!("{}", render(partial, cli.job.pretty));
            }
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_subcommand_means_apoly() {
        let cli = Cli::try_parse_from(["apoly", "--dt", "4 6 2"]).unwrap();
        assert!(cli.command.is_none());
        assert_eq!(cli.job.input().unwrap(), KnotInput::dt("4 6 2"));
        let cli = Cli::try_parse_from(["apoly", "su2scan", "--fillings", "-1,1/2", "--braid", "1 1 1"]).unwrap();
        assert!(matches!(cli.command, Some(Command::Su2scan { .. })));
        assert_eq!(cli.job.input().unwrap().format, InputFormat::Braid);
        assert!(Cli::try_parse_from(["apoly", "--dt", "4 6 2", "--pd", "X[1,2,3,4]"]).is_err());
    }

    #[test]
    fn flags_override_config() {
        let cfg = Config::parse("budget_seconds = 10\nseed = 7").unwrap();
        let cli = Cli::try_parse_from(["apoly", "--dt", "", "--seed", "9"]).unwrap();
        let o = cli.job.options(&cfg);
        assert_eq!((o.budget_seconds, o.seed), (10, 9));
    }
}
