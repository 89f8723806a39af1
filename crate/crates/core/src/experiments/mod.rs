//! Seeded, parallel experiment protocols with CSV output.
//!
//! Every row draws from its own stream, derived from the config's base seed
//! and the row keys, so results do not depend on the worker count. Rows are
//! emitted in `(n, K, run)` order.

mod config;
mod drift;
mod runtime;
mod variance;

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

pub use config::{resolve_k, ExperimentConfig, ExperimentKind, KSpec};
pub use drift::{drift_experiment, drift_interval, DriftOutcome, DriftRow, P_RIGHT_EXACT_MAX_N};
pub use runtime::{reference_values, runtime_experiment, RuntimeRow};
pub use variance::{variance_experiment, variance_iterations, VarianceRow};

use crate::error::{Error, Result};

/// Version tag written at the top of every CSV.
pub const FORMAT_TAG: &str = "cga-lab v1";

/// A row of one of the experiment CSVs.
pub trait CsvRow {
    const HEADER: &'static str;
    fn to_csv(&self) -> String;
}

/// First line of an experiment CSV.
pub fn header_line(kind: &str, base_seed: u64) -> String {
    format!("# {FORMAT_TAG}, kind={kind}, base_seed={base_seed}, log_base=e")
}

/// Renders a complete CSV document.
pub fn render_csv<R: CsvRow>(kind: &str, base_seed: u64, rows: &[R]) -> String {
    let mut out = header_line(kind, base_seed);
    out.push('\n');
    out.push_str(R::HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(contents.as_bytes())
        .map_err(|e| Error::io(path, e))
}

pub fn write_csv<R: CsvRow>(path: &Path, kind: &str, base_seed: u64, rows: &[R]) -> Result<()> {
    write_file(path, &render_csv(kind, base_seed, rows))
}

/// Maps `work` over `items` on the configured number of workers, keeping
/// input order.
pub(crate) fn par_map<T, U, F>(jobs: Option<usize>, items: Vec<T>, work: F) -> Result<Vec<U>>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    let run = || items.into_par_iter().map(&work).collect::<Vec<U>>();
    match jobs {
        None => Ok(run()),
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {threads} workers: {e}")))?;
            Ok(pool.install(run))
        }
    }
}

/// Files written by [`run_experiment`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentReport {
    pub rows: usize,
    pub files: Vec<PathBuf>,
    /// Human-readable notes about incomplete output (e.g. drift snapshots
    /// that were never reached).
    pub incomplete: Vec<String>,
}

/// Runs the experiment described by `cfg` and writes its CSV(s).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let path = cfg.output_path.clone();
    match cfg.kind {
        ExperimentKind::Variance => {
            let rows = variance_experiment(cfg)?;
            write_csv(&path, cfg.kind.name(), cfg.base_seed, &rows)?;
            let incomplete = rows
                .iter()
                .filter(|r| r.iterations_executed < variance_iterations(r.n, r.k_value))
                .map(|r| {
                    format!(
                        "n={} K={} run={} capped at {} iterations",
                        r.n, r.k_value, r.run, r.iterations_executed
                    )
                })
                .collect();
            Ok(ExperimentReport {
                rows: rows.len(),
                files: vec![path],
                incomplete,
            })
        }
        ExperimentKind::Runtime => {
            let rows = runtime_experiment(cfg)?;
            write_csv(&path, cfg.kind.name(), cfg.base_seed, &rows)?;
            let meta = runtime::metadata_path(&path);
            write_file(&meta, &runtime::render_reference(cfg))?;
            Ok(ExperimentReport {
                rows: rows.len(),
                files: vec![path, meta],
                incomplete: Vec::new(),
            })
        }
        ExperimentKind::Drift => {
            let outcome = drift_experiment(cfg)?;
            write_csv(&path, cfg.kind.name(), cfg.base_seed, &outcome.rows)?;
            let incomplete = outcome
                .not_reached
                .iter()
                .map(|(n, k, id)| {
                    format!("n={n} K={k} snapshot {id}: drift interval not reached within horizon")
                })
                .collect();
            Ok(ExperimentReport {
                rows: outcome.rows.len(),
                files: vec![path],
                incomplete,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Pair(u32, f64);

    impl CsvRow for Pair {
        const HEADER: &'static str = "a,b";
        fn to_csv(&self) -> String {
            format!("{},{}", self.0, self.1)
        }
    }

    #[test]
    fn csv_layout() {
        let s = render_csv("runtime", 9, &[Pair(1, 0.5), Pair(2, 6726.0)]);
        assert_eq!(
            s,
            "# cga-lab v1, kind=runtime, base_seed=9, log_base=e\na,b\n1,0.5\n2,6726\n"
        );
    }

    #[test]
    fn par_map_keeps_order() {
        let out = par_map(Some(3), (0..100).collect(), |i: u64| i * i).unwrap();
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
        let out = par_map(None, vec![1, 2, 3], |i: u64| i + 1).unwrap();
        assert_eq!(out, vec![2, 3, 4]);
    }
}
