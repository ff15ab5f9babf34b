//! A time-changed epidemic in the many-seeds regime against its scaling limit.

use nearcrit::degree_model::{compute_criticality, DegreeConfiguration, RegimeThresholds};
use nearcrit::graph_gen::{expand_counts, poisson_counts};
use nearcrit::harness::{run_trajectories, seed_for_nu};

fn main() -> nearcrit::Result<()> {
    let base = DegreeConfiguration::all_susceptible(&expand_counts(&poisson_counts(1_000_000, 2.02)), 1.0, 1.0)?;
    let config = seed_for_nu(&base, 100.0, 3)?;
    let report = compute_criticality(&config, &RegimeThresholds::default())?;
    let ab = report.alpha_bar;
    let ts: Vec<f64> = (0..=10).map(|j| report.xi * j as f64 / 10.0).collect();
    let grid: Vec<f64> = ts.iter().map(|t| t * ab).collect();
    let (outcome, record) = run_trajectories(&config, &grid, 1, 3).remove(0);
    let det = record.deterministic.as_ref().expect("no initial recovered");
    let scale = config.n() as f64 * ab * ab;
    println!("{:>6} {:>9} {:>9} {:>9}", "t", "X_I", "f_I", "f(t)");
    for (j, t) in ts.iter().enumerate() {
        println!("{t:6.3} {:9.4} {:9.4} {:9.4}", record.x_i[j] as f64 / scale, det.f_i[j] / scale, report.f(*t));
    }
    println!("duration / alpha_bar = {:.4}, xi = {:.4}", outcome.duration / ab, report.xi);
    Ok(())
}
