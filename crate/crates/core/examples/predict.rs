//! Closed-form quantities for Poisson(2.02) degrees with 40 initial infectives.

use nearcrit::degree_model::{DegreeConfiguration, PredictionReport, RegimeThresholds};
use nearcrit::graph_gen::{assign_initial_states, expand_counts, poisson_counts, states_to_config, SeedMode};
use nearcrit::rng::{stream, Purpose};

fn main() -> nearcrit::Result<()> {
    let degrees = expand_counts(&poisson_counts(1_000_000, 2.02));
    let states = assign_initial_states(&degrees, 40, 0, SeedMode::UniformRandom, None, &mut stream(7, Purpose::Seeds, 0))?;
    let config: DegreeConfiguration = states_to_config(&degrees, &states, 1.0, 1.0)?;
    let report = PredictionReport::build(&config, &RegimeThresholds::default())?;
    println!("R0          {:.5}", report.r0);
    println!("alpha       {:.5}", report.alpha);
    println!("nu          {:.4} ({})", report.nu_proxy, report.regime);
    println!("xi          {:.4}", report.xi);
    println!("kappa       {:.4}", report.kappa);
    println!("large size  {:.0}", report.predicted_size);
    if let (Some(p), Some(q)) = (report.p_small, report.p_small_corrected) {
        println!("P(small)    {p:.4} (corrected {q:.4})");
    }
    Ok(())
}
