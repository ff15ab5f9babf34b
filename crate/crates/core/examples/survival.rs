//! Probability of a small outbreak as the initial force of infection grows.

use nearcrit::degree_model::DegreeConfiguration;
use nearcrit::graph_gen::{expand_counts, poisson_counts};
use nearcrit::harness::{gnp_survival, survival_curve, Engine, ExperimentSpec, Population, SurvivalSeeding};

fn main() -> nearcrit::Result<()> {
    let base = DegreeConfiguration::all_susceptible(&expand_counts(&poisson_counts(1_000_000, 2.02)), 1.0, 1.0)?;
    let spec = ExperimentSpec::new(Population::Counts(base), Engine::Pairing, 500, 2);
    for seeding in [SurvivalSeeding::UniformRandom, SurvivalSeeding::SingleVertex] {
        for row in survival_curve(&spec, &[0.5, 1.0, 2.0, 4.0], seeding)? {
            println!(
                "{seeding:?} alpha X_I0 = {:.2}: {:.3} ± {:.3}, predicted {:.3}, corrected {:.3}",
                row.alpha_x_i0, row.p_small_hat.mean, row.p_small_hat.stderr, row.p_small_predicted, row.p_small_corrected
            );
        }
    }
    for n_i in [8, 17, 33] {
        let row = gnp_survival(1_000_000, 0.04, n_i, 1.0, 1.0, 500, 0.5, 2);
        println!("G(n,p) n_I = {n_i}: {:.3} ± {:.3}, predicted {:.3}", row.p_small_hat.mean, row.p_small_hat.stderr, row.p_small_predicted);
    }
    Ok(())
}
