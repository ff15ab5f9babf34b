//! The same epidemic through the four engines.

use nearcrit::degree_model::DegreeConfiguration;
use nearcrit::graph_gen::{sample_multigraph, VertexState};
use nearcrit::rng::{stream, Purpose};
use nearcrit::sellke::{sellke_final_size, SellkeDraw};
use nearcrit::sir_dynamics::{run_gillespie, run_pairing_dynamic, run_time_changed};

fn main() -> nearcrit::Result<()> {
    let config = DegreeConfiguration::new([(1, 300), (2, 300), (3, 399)].into(), [(3, 1)].into(), Default::default(), 1.0, 0.5)?;
    let (degrees, states) = config.expand();
    let seeds: Vec<u32> = (0..states.len() as u32).filter(|&v| states[v as usize] == VertexState::Infective).collect();
    let reps = 2000;
    let mut means = [0.0; 4];
    for r in 0..reps {
        let graph = sample_multigraph(&degrees, &mut stream(1, Purpose::Graph, r))?;
        let mut rng = stream(1, Purpose::Epidemic, r);
        means[0] += run_gillespie(&graph, &states, config.beta, config.rho, &mut rng).final_size as f64;
        means[1] += run_pairing_dynamic(&config, &mut rng).final_size as f64;
        means[2] += run_time_changed(&config, &mut rng, &[]).0.final_size as f64;
        let draw = SellkeDraw::with_leading(graph.n(), &seeds, config.rho, &mut stream(1, Purpose::Sellke, r));
        means[3] += sellke_final_size(&graph, &draw, seeds.len(), config.beta).new_infections as f64;
    }
    for (name, total) in ["gillespie", "pairing", "time-changed", "sellke"].iter().zip(means) {
        println!("{name:>12}: mean final size {:.2}", total / reps as f64);
    }
    Ok(())
}
