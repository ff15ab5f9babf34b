use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const SUBCOMMANDS: [&str; 7] = ["predict", "validate", "simulate", "sellke-sweep", "trajectories", "giant", "survival-curve"];

/// A desk-sized configuration with every optional section filled in.
pub const SMALL: &str = r#"{
  "model": { "poisson": { "n": 20000, "mean": 2.1 } },
  "states": { "n_I": 5 },
  "rates": { "beta": 1.0, "rho": 1.0 },
  "experiment": { "engine": "pairing", "reps": 40 },
  "rng": { "seed": 5 },
  "trajectories": { "points": 21 },
  "sellke": { "realisations": 3, "m_max": 30, "m_step": 3 },
  "survival": { "targets": [1.0, 2.0], "gnp": { "n": 20000, "eta": 0.1, "n_i": [2, 4] } },
  "giant": { "reps": 3 }
}"#;

pub fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

pub fn nearcrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearcrit")).args(args).output().expect("binary runs")
}

/// Runs `sub` with `--out` into `dir` and returns the written bytes.
pub fn run_to_file(dir: &Path, config: &Path, sub: &str, format: &str, threads: usize, tag: &str) -> (Output, Vec<u8>) {
    let out = dir.join(format!("{sub}-{format}-{threads}-{tag}.out"));
    let output = nearcrit(&[
        sub,
        "--config",
        config.to_str().unwrap(),
        "--format",
        format,
        "--threads",
        &threads.to_string(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let bytes = std::fs::read(&out).unwrap_or_default();
    (output, bytes)
}
