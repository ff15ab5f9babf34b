use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use nearcrit::config::Config;
use nearcrit::degree_model::{compute_criticality, validate_assumptions, DiagnosticStatus, PredictionReport};
use nearcrit::giant_component::verify_giant_law;
use nearcrit::harness::{figure_fs_scatter, gnp_survival, run_experiment, run_trajectories, survival_curve};
use nearcrit::sellke::write_sweep_csv;
use nearcrit::sir_dynamics::write_trajectories_csv;
use nearcrit::Error;

#[derive(Parser)]
#[command(name = "nearcrit", version, about = "SIR epidemics on random graphs with given degrees near criticality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides `rng.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides `experiment.reps`.
    #[arg(long, global = true)]
    reps: Option<usize>,
    /// Machine-readable output; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads, 0 for one per core. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Closed-form predictions for the configuration.
    Predict,
    /// Finite-n diagnostics of the regularity assumptions.
    Validate,
    /// Replicated epidemics with the configured engine.
    Simulate,
    /// Sellke final sizes over a grid of seed counts.
    SellkeSweep,
    /// Time-changed trajectories against their deterministic approximation.
    Trajectories,
    /// Giant component of the configuration model on the degree sequence.
    Giant,
    /// Small-outbreak probability against its prediction.
    SurvivalCurve,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidConfig(_) | Error::Json(_) => 2,
            e if e.is_precondition() => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Error::from(e).into()
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Where the machine output goes, and where the human summary goes so the two
/// never interleave.
struct Sinks {
    out: Box<dyn Write>,
    summary: Box<dyn Write>,
}

fn sinks(cli: &Cli) -> io::Result<Sinks> {
    Ok(match &cli.out {
        Some(p) => Sinks { out: Box::new(BufWriter::new(File::create(p)?)), summary: Box::new(io::stdout()) },
        None => Sinks { out: Box::new(io::stdout()), summary: Box::new(io::stderr()) },
    })
}

fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn write_table<T: Serialize>(w: &mut dyn Write, rows: &[T]) -> Outcome {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let path = cli.config.as_ref().ok_or_else(|| Failure { code: 2, message: "--config is required".into() })?;
    let mut config = Config::load(path)?;
    if let Some(seed) = cli.seed {
        config.rng.seed = seed;
    }
    if let Some(reps) = cli.reps {
        config.experiment.reps = reps;
    }
    config.check()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure { code: 1, message: e.to_string() })?;
    let mut io = sinks(cli)?;
    match cli.command {
        Command::Predict => predict(cli, &config, &mut io),
        Command::Validate => validate(cli, &config, &mut io),
        Command::Simulate => simulate(cli, &config, &mut io),
        Command::SellkeSweep => sellke_sweep(cli, &config, &mut io),
        Command::Trajectories => trajectories(cli, &config, &mut io),
        Command::Giant => giant(cli, &config, &mut io),
        Command::SurvivalCurve => survival(cli, &config, &mut io),
    }?;
    io.out.flush()?;
    Ok(())
}

fn predict(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let resolved = config.resolve(config.rng.seed)?;
    let report = PredictionReport::build(&resolved, &config.regime)?;
    writeln!(
        io.summary,
        "R0 = {:.6}  alpha = {:.6}  nu = {:.4} ({})  predicted size = {:.1}",
        report.r0, report.alpha, report.nu_proxy, report.regime, report.predicted_size
    )?;
    match cli.format {
        Format::Json => write_json(&mut io.out, &report),
        Format::Csv => write_table(&mut io.out, &[report]),
    }
}

fn validate(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let resolved = config.resolve(config.rng.seed)?;
    let diagnostics = validate_assumptions(&resolved);
    for d in &diagnostics {
        let status = match d.status {
            DiagnosticStatus::Pass => "pass",
            DiagnosticStatus::Warn => "warn",
            DiagnosticStatus::Fail => "FAIL",
        };
        writeln!(io.summary, "{:4} {:3} {} = {} {}", status, d.assumption, d.quantity, d.value, d.note)?;
    }
    match cli.format {
        Format::Json => write_json(&mut io.out, &json!({ "seed": config.rng.seed, "diagnostics": diagnostics }))?,
        Format::Csv => write_table(&mut io.out, &diagnostics)?,
    }
    let failed: Vec<&str> =
        diagnostics.iter().filter(|d| d.status == DiagnosticStatus::Fail).map(|d| d.assumption.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        io.out.flush()?;
        Err(Failure { code: 3, message: format!("assumption check failed: {}", failed.join(", ")) })
    }
}

#[derive(Serialize)]
struct OutcomeRow {
    replica: usize,
    final_size: u64,
    large: bool,
    duration: f64,
    time_scale: nearcrit::sir_dynamics::TimeScale,
    last_infection: f64,
    pairing_events: u64,
    z0_red: Option<u64>,
}

fn simulate(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let spec = config.experiment_spec(config.rng.seed)?;
    let result = run_experiment(&spec)?;
    writeln!(
        io.summary,
        "{} replicas, p_large = {:.4} ± {:.4}, large mean ratio = {}",
        result.outcomes.len(),
        result.p_large_hat.mean,
        result.p_large_hat.stderr,
        result.large_mean_ratio.map_or("n/a".into(), |e| format!("{:.4} ± {:.4}", e.mean, e.stderr))
    )?;
    if !result.failures.is_empty() {
        writeln!(io.summary, "{} replicas failed", result.failures.len())?;
    }
    match cli.format {
        Format::Json => write_json(
            &mut io.out,
            &json!({
                "seed": config.rng.seed,
                "config": config,
                "spec": result.spec,
                "prediction": result.prediction,
                "p_large_hat": result.p_large_hat,
                "p_small_hat": result.p_small_hat(),
                "ratio_kind": result.ratio_kind,
                "large_mean_ratio": result.large_mean_ratio,
                "degree_profile_tv": result.degree_profile_tv,
                "failures": result.failures,
                "outcomes": result.outcomes,
                "large": result.large,
            }),
        ),
        Format::Csv => {
            let rows: Vec<OutcomeRow> = result
                .outcomes
                .iter()
                .zip(&result.large)
                .enumerate()
                .map(|(replica, (o, &large))| OutcomeRow {
                    replica,
                    final_size: o.final_size,
                    large,
                    duration: o.duration,
                    time_scale: o.time_scale,
                    last_infection: o.last_infection,
                    pairing_events: o.pairing_events,
                    z0_red: o.z0_red,
                })
                .collect();
            write_table(&mut io.out, &rows)
        }
    }
}

fn sellke_sweep(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let section = config.sellke.clone().unwrap_or(nearcrit::config::SellkeSection {
        realisations: 20,
        m_grid: None,
        m_max: None,
        m_step: None,
    });
    let resolved = config.resolve(config.rng.seed)?;
    let grid = section.grid(resolved.n() as usize)?;
    let rows = figure_fs_scatter(&resolved, section.realisations, &grid, config.rng.seed)?;
    writeln!(io.summary, "{} realisations × {} seed counts = {} rows", section.realisations, grid.len(), rows.len())?;
    match cli.format {
        Format::Json => write_json(&mut io.out, &json!({ "seed": config.rng.seed, "config": config, "rows": rows })),
        Format::Csv => Ok(write_sweep_csv(&rows, &mut io.out)?),
    }
}

fn trajectories(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let resolved = config.resolve(config.rng.seed)?;
    let section = config.trajectories.clone().unwrap_or(nearcrit::config::Trajectories {
        grid: None,
        t_max: None,
        points: 201,
    });
    let grid = match (&section.grid, section.t_max) {
        (Some(g), _) => g.clone(),
        (None, t_max) => {
            let t_max = match t_max {
                Some(t) => t,
                None => {
                    let report = compute_criticality(&resolved, &config.regime)?;
                    2.0 * report.xi * report.alpha_bar
                }
            };
            let steps = section.points.saturating_sub(1).max(1);
            (0..section.points).map(|j| t_max * j as f64 / steps as f64).collect()
        }
    };
    let runs = run_trajectories(&resolved, &grid, config.experiment.reps, config.rng.seed);
    let sizes: Vec<u64> = runs.iter().map(|(o, _)| o.final_size).collect();
    writeln!(io.summary, "{} replicas on {} grid points, final sizes {:?}", runs.len(), grid.len(), sizes)?;
    match cli.format {
        Format::Json => {
            let replicas: Vec<_> = runs.iter().map(|(o, r)| json!({ "outcome": o, "record": r })).collect();
            write_json(&mut io.out, &json!({ "seed": config.rng.seed, "config": config, "replicas": replicas }))
        }
        Format::Csv => Ok(write_trajectories_csv(runs.iter().map(|(_, r)| r), &mut io.out)?),
    }
}

#[derive(Serialize)]
struct GiantRow {
    quantity: String,
    mean: f64,
    stderr: f64,
}

fn giant(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let degrees = config.degrees(config.rng.seed)?;
    let reps = config.giant.as_ref().and_then(|g| g.reps).unwrap_or(config.experiment.reps);
    let report = verify_giant_law(&degrees, reps, config.rng.seed)?;
    writeln!(
        io.summary,
        "alpha = {:.6}: v(C1)/(n alpha) = {:.4} ± {:.4} (predicted {:.4}), v(C2)/v(C1) = {:.4}",
        report.alpha,
        report.c1_over_nalpha.mean,
        report.c1_over_nalpha.stderr,
        report.predicted_c1_over_nalpha,
        report.c2_over_c1.mean
    )?;
    for w in &report.warnings {
        writeln!(io.summary, "warning: {w}")?;
    }
    match cli.format {
        Format::Json => write_json(&mut io.out, &json!({ "seed": config.rng.seed, "config": config, "report": report })),
        Format::Csv => {
            let mut rows = vec![
                GiantRow { quantity: "predicted_c1_over_nalpha".into(), mean: report.predicted_c1_over_nalpha, stderr: 0.0 },
                GiantRow { quantity: "c1_over_nalpha".into(), mean: report.c1_over_nalpha.mean, stderr: report.c1_over_nalpha.stderr },
                GiantRow { quantity: "c2_over_nalpha".into(), mean: report.c2_over_nalpha.mean, stderr: report.c2_over_nalpha.stderr },
                GiantRow { quantity: "e1_over_nalpha".into(), mean: report.e1_over_nalpha.mean, stderr: report.e1_over_nalpha.stderr },
                GiantRow { quantity: "c2_over_c1".into(), mean: report.c2_over_c1.mean, stderr: report.c2_over_c1.stderr },
            ];
            for d in &report.per_degree {
                rows.push(GiantRow { quantity: format!("degree_{}", d.k), mean: d.observed.mean, stderr: d.observed.stderr });
            }
            write_table(&mut io.out, &rows)
        }
    }
}

#[derive(Serialize)]
struct SurvivalTableRow {
    model: &'static str,
    target: Option<f64>,
    n_i: u64,
    x_i0: Option<u64>,
    alpha_x_i0: Option<f64>,
    gamma: Option<f64>,
    reps: usize,
    p_small_hat: f64,
    p_small_stderr: f64,
    p_small_predicted: f64,
    p_small_corrected: Option<f64>,
}

fn survival(cli: &Cli, config: &Config, io: &mut Sinks) -> Outcome {
    let section = config
        .survival
        .clone()
        .ok_or_else(|| Failure { code: 2, message: "survival-curve needs a survival section".into() })?;
    let spec = config.experiment_spec(config.rng.seed)?;
    let rows = if section.targets.is_empty() { Vec::new() } else { survival_curve(&spec, &section.targets, section.seeding)? };
    let gnp_rows: Vec<_> = section
        .gnp
        .iter()
        .flat_map(|g| {
            g.n_i.iter().map(|&n_i| {
                gnp_survival(
                    g.n,
                    g.eta,
                    n_i,
                    config.rates.beta,
                    config.rates.rho,
                    config.experiment.reps,
                    config.experiment.epsilon,
                    config.rng.seed,
                )
            })
        })
        .collect();
    for r in &rows {
        writeln!(
            io.summary,
            "alpha X_I0 = {:.3}: p_small = {:.4} ± {:.4}, predicted {:.4}, corrected {:.4}",
            r.alpha_x_i0, r.p_small_hat.mean, r.p_small_hat.stderr, r.p_small_predicted, r.p_small_corrected
        )?;
    }
    for r in &gnp_rows {
        writeln!(
            io.summary,
            "G(n,p) n_I = {}: p_small = {:.4} ± {:.4}, predicted {:.4}",
            r.n_i, r.p_small_hat.mean, r.p_small_hat.stderr, r.p_small_predicted
        )?;
    }
    match cli.format {
        Format::Json => write_json(
            &mut io.out,
            &json!({ "seed": config.rng.seed, "config": config, "spec": spec, "rows": rows, "gnp_rows": gnp_rows }),
        ),
        Format::Csv => {
            let mut table: Vec<SurvivalTableRow> = rows
                .iter()
                .map(|r| SurvivalTableRow {
                    model: "configuration",
                    target: Some(r.target),
                    n_i: r.n_i,
                    x_i0: Some(r.x_i0),
                    alpha_x_i0: Some(r.alpha_x_i0),
                    gamma: None,
                    reps: r.reps,
                    p_small_hat: r.p_small_hat.mean,
                    p_small_stderr: r.p_small_hat.stderr,
                    p_small_predicted: r.p_small_predicted,
                    p_small_corrected: Some(r.p_small_corrected),
                })
                .collect();
            table.extend(gnp_rows.iter().map(|r| SurvivalTableRow {
                model: "gnp",
                target: None,
                n_i: r.n_i,
                x_i0: None,
                alpha_x_i0: None,
                gamma: Some(r.gamma),
                reps: r.reps,
                p_small_hat: r.p_small_hat.mean,
                p_small_stderr: r.p_small_hat.stderr,
                p_small_predicted: r.p_small_predicted,
                p_small_corrected: None,
            }));
            write_table(&mut io.out, &table)
        }
    }
}
