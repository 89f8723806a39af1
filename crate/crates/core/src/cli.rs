//! Command-line front end for the `cga-lab` binary.
//!
//! Exit codes: 0 on success, 1 when an experiment finished with incomplete
//! output, 2 for invalid flags or configs, 3 for I/O failures. Data goes to
//! standard output or files, diagnostics to standard error.

use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analytics::{pb_distribution, potential, predict_drift, sampling_variance};
use crate::engine::{FrequencyModel, StepRecord};
use crate::error::{Error, Result};
use crate::experiments::{
    header_line, resolve_k, run_experiment, ExperimentConfig, ExperimentKind,
};
use crate::fitness::{FitnessKind, UnitationFunction};
use crate::rng::{rng_from_seed, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCOMPLETE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "cga-lab", version, about = "Compact GA on OneMax and Cliff: runs, analytics, experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the cGA once and print a summary.
    Run(RunArgs),
    /// Final sampling variance after 100 sqrt(n) K + 100 K^2 iterations.
    VarianceExp(ExperimentArgs),
    /// Optimisation-time distribution on Cliff.
    RuntimeExp(ExperimentArgs),
    /// Empirical vs predicted drift near the cliff.
    DriftExp(ExperimentArgs),
    /// Normal-approximation drift prediction.
    Predict(PredictArgs),
    /// Poisson-binomial distribution of the one-count.
    Pb(PbArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub n: usize,
    /// Update strength: a number or a formula of n (log n, sqrt n, n^0.45, 2^7, ...).
    #[arg(long, default_value = "sqrt n")]
    pub k: String,
    #[arg(long, default_value = "cliff")]
    pub fitness: String,
    /// Seed, or `random`.
    #[arg(long, default_value_t = DEFAULT_SEED.to_string())]
    pub seed: String,
    #[arg(long, default_value = "100000000")]
    pub max_evals: String,
    /// Write every completed iteration to this CSV.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Key-value config file; flags override its entries.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub fitness: Option<String>,
    /// Comma-separated list.
    #[arg(long)]
    pub n: Option<String>,
    /// Comma-separated list of K values or formulas.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub runs: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub budget: Option<String>,
    #[arg(long)]
    pub output: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub samples: Option<String>,
    #[arg(long)]
    pub jobs: Option<String>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: String,
    #[arg(long, allow_hyphen_values = true)]
    pub potential: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub variance: f64,
    /// Defaults to floor(2n/3).
    #[arg(long)]
    pub threshold: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PbArgs {
    /// File of frequencies separated by whitespace or commas.
    #[arg(long, conflicts_with_all = ["n", "uniform"])]
    pub freqs: Option<PathBuf>,
    #[arg(long, requires = "uniform")]
    pub n: Option<usize>,
    #[arg(long, requires = "n", allow_hyphen_values = true)]
    pub uniform: Option<f64>,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(&a, out),
        Command::VarianceExp(a) => cmd_experiment(ExperimentKind::Variance, &a, err),
        Command::RuntimeExp(a) => cmd_experiment(ExperimentKind::Runtime, &a, err),
        Command::DriftExp(a) => cmd_experiment(ExperimentKind::Drift, &a, err),
        Command::Predict(a) => cmd_predict(&a, out),
        Command::Pb(a) => cmd_pb(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn parse_seed(s: &str) -> Result<u64> {
    if s.eq_ignore_ascii_case("random") {
        Ok(rand::random())
    } else {
        s.parse()
            .map_err(|_| Error::param(format!("invalid seed '{s}'")))
    }
}

fn parse_budget(s: &str) -> Result<u64> {
    let v: f64 = s
        .replace('_', "")
        .parse()
        .map_err(|_| Error::param(format!("invalid evaluation budget '{s}'")))?;
    if v < 2.0 || v.fract() != 0.0 || v > u64::MAX as f64 {
        return Err(Error::param(format!(
            "evaluation budget must be an integer >= 2 (got '{s}')"
        )));
    }
    Ok(v as u64)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |e| Error::io(path, e)
}

const TRACE_HEADER: &str = "t,potential_before,potential_after,variance_before,variance_after,ones_x,ones_y,event_class,delta_potential,optimum_sampled";

fn trace_line(r: &StepRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.t,
        r.potential_before,
        r.potential_after,
        r.variance_before,
        r.variance_after,
        r.ones_x,
        r.ones_y,
        r.event_class,
        r.delta_potential,
        r.optimum_sampled
    )
}

pub fn cmd_run(a: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let kind: FitnessKind = a.fitness.parse()?;
    let f = UnitationFunction::new(kind, a.n)?;
    let k = resolve_k(&a.k, a.n).map_err(|e| Error::param(e.to_string()))?;
    let seed = parse_seed(&a.seed)?;
    let budget = parse_budget(&a.max_evals)?;
    let mut model = FrequencyModel::new(a.n, k)?;
    let mut rng = rng_from_seed(seed);

    let result = match &a.trace {
        None => model.run(&f, &mut rng, budget)?,
        Some(path) => {
            let file = std::fs::File::create(path).map_err(io_err(path))?;
            let mut w = BufWriter::new(file);
            writeln!(w, "{}", header_line("trace", seed)).map_err(io_err(path))?;
            writeln!(w, "{TRACE_HEADER}").map_err(io_err(path))?;
            let mut failure = None;
            let result = model.run_observed(&f, &mut rng, budget, |rec| {
                if failure.is_none() {
                    if let Err(e) = writeln!(w, "{}", trace_line(rec)) {
                        failure = Some(e);
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(Error::io(path, e));
            }
            w.flush().map_err(io_err(path))?;
            result
        }
    };
    let _ = writeln!(
        out,
        "fitness={} n={} K={} seed={} evaluations={} censored={} iterations={} final_potential={} final_variance={}",
        kind,
        a.n,
        k,
        seed,
        result.evaluations,
        result.censored,
        result.iterations,
        result.final_potential,
        result.final_variance
    );
    Ok(EXIT_OK)
}

pub fn cmd_predict(a: &PredictArgs, out: &mut dyn Write) -> Result<i32> {
    let k = resolve_k(&a.k, a.n).map_err(|e| Error::param(e.to_string()))?;
    let threshold = a.threshold.unwrap_or(2 * a.n / 3);
    let p = predict_drift(a.potential, a.variance, k, threshold)?;
    let _ = writeln!(
        out,
        "potential={}\nvariance={}\nK={}\nthreshold={}\np_right={}\nprob_L={}\nprob_R={}\nprob_M={}\ndrift_M={}\ndrift_same_slope={}\ndrift_total={}\ncorrection_bound={}",
        p.potential,
        p.variance,
        p.k,
        p.threshold,
        p.p_right,
        p.prob_l,
        p.prob_r,
        p.prob_m,
        p.drift_m,
        p.drift_same_slope,
        p.drift_total,
        p.correction_bound
    );
    Ok(EXIT_OK)
}

fn read_frequencies(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::param(format!("not a number: '{s}'")))
        })
        .collect()
}

pub fn cmd_pb(a: &PbArgs, out: &mut dyn Write) -> Result<i32> {
    let freqs = match (&a.freqs, a.n, a.uniform) {
        (Some(path), _, _) => read_frequencies(path)?,
        (None, Some(n), Some(p)) => vec![p; n],
        _ => return Err(Error::param("give --freqs FILE or --n N --uniform P")),
    };
    let d = pb_distribution(&freqs)?;
    let probs: Vec<String> = d.probs().iter().map(|p| p.to_string()).collect();
    let _ = writeln!(
        out,
        "{}\nmean={}\nvariance={}\npotential={}\nsampling_variance={}",
        probs.join(" "),
        d.mean(),
        d.variance(),
        potential(&freqs),
        sampling_variance(&freqs)
    );
    Ok(EXIT_OK)
}

pub fn cmd_experiment(
    kind: ExperimentKind,
    a: &ExperimentArgs,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut cfg = match &a.config {
        Some(path) => ExperimentConfig::from_file(path, Some(kind))?,
        None => ExperimentConfig::new(kind),
    };
    let overrides = [
        ("fitness", &a.fitness),
        ("n", &a.n),
        ("k", &a.k),
        ("runs", &a.runs),
        ("seed", &a.seed),
        ("budget", &a.budget),
        ("output", &a.output),
        ("epsilon", &a.epsilon),
        ("samples", &a.samples),
        ("jobs", &a.jobs),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.progress = true;
    let report = run_experiment(&cfg)?;
    for f in &report.files {
        let _ = writeln!(err, "wrote {}", f.display());
    }
    let _ = writeln!(err, "{} rows", report.rows);
    if report.incomplete.is_empty() {
        Ok(EXIT_OK)
    } else {
        for note in &report.incomplete {
            let _ = writeln!(err, "incomplete: {note}");
        }
        Ok(EXIT_INCOMPLETE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["cga-lab"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn run_is_deterministic() {
        let args = ["run", "--n", "15", "--k", "128", "--fitness", "cliff", "--seed", "7"];
        let (c1, o1, _) = call(&args);
        let (c2, o2, _) = call(&args);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(o1, o2);
        assert!(o1.contains("seed=7"));
    }

    #[test]
    fn cliff_needs_multiple_of_three() {
        let (code, _, err) = call(&["run", "--n", "16", "--fitness", "cliff"]);
        assert_eq!(code, 2);
        assert!(err.contains("n must be divisible by 3"), "{err}");
    }

    #[test]
    fn huge_k_censors() {
        let (code, out, _) = call(&[
            "run", "--n", "4", "--k", "1e9", "--fitness", "onemax", "--max-evals", "100", "--seed",
            "3",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("evaluations="));
    }

    #[test]
    fn predict_at_threshold() {
        let (code, out, _) = call(&[
            "predict", "--n", "300", "--k", "100", "--potential", "200", "--variance", "25",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("p_right=0.5\n"), "{out}");
        let total: f64 = out
            .lines()
            .find_map(|l| l.strip_prefix("drift_total="))
            .unwrap()
            .parse()
            .unwrap();
        assert!((total + 0.01995).abs() < 1e-5);
        let (code, _, _) = call(&[
            "predict", "--n", "300", "--k", "100", "--potential", "200", "--variance", "0",
        ]);
        assert_eq!(code, 2);
    }

    #[test]
    fn pb_uniform() {
        let (code, out, _) = call(&["pb", "--n", "3", "--uniform", "0.5"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("0.125 0.375 0.375 0.125\n"));
        assert!(out.contains("mean=1.5\n"));
        assert!(out.contains("potential=1.5\n"));
        let (code, _, _) = call(&["pb", "--n", "3", "--uniform", "1.5"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(call(&["run"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["run", "--n", "15", "--k", "0"]).0, 2);
        assert_eq!(call(&["run", "--n", "15", "--max-evals", "1"]).0, 2);
        assert_eq!(call(&["runtime-exp", "--n", "15", "--k", "2^0", "--runs", "0"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn missing_config_is_io_error() {
        let (code, _, _) = call(&["runtime-exp", "--config", "/nonexistent/cfg.txt"]);
        assert_eq!(code, 3);
    }
}
