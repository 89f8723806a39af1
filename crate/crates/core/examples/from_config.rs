//! Runs an experiment described by a config file, e.g. one of `configs/`.
//!
//! ```text
//! cargo run --release --example from_config -- crates/core/configs/runtime_n15.conf
//! ```

use std::path::PathBuf;

use cga_lab::experiments::{run_experiment, ExperimentConfig};

fn main() -> cga_lab::Result<()> {
    let path: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/configs/runtime_n15.conf")));
    let mut cfg = ExperimentConfig::from_file(&path, None)?;
    cfg.progress = true;
    let report = run_experiment(&cfg)?;
    for f in &report.files {
        println!("wrote {}", f.display());
    }
    for note in &report.incomplete {
        eprintln!("incomplete: {note}");
    }
    Ok(())
}
