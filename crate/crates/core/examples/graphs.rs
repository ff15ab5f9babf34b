//! Random graphs with given degrees, Erdős–Rényi graphs and seed placement.

use nearcrit::giant_component::components;
use nearcrit::graph_gen::*;
use nearcrit::rng::{stream, Purpose};

fn main() -> nearcrit::Result<()> {
    let degrees = poisson_degrees(10_000, 2.5, &mut stream(1, Purpose::Degrees, 0));
    let multi = sample_multigraph(&degrees, &mut stream(1, Purpose::Graph, 0))?;
    let loops = multi.edges().iter().filter(|(a, b)| a == b).count();
    println!("multigraph: {} edges, {loops} loops, simple: {}", multi.num_edges(), multi.is_simple());

    let simple = sample_simple_graph(&[3; 20], &mut stream(1, Purpose::Graph, 1), DEFAULT_MAX_ATTEMPTS)?;
    println!("simple cubic graph on 20 vertices: {} edges", simple.num_edges());

    let gnp = sample_gnp(10_000, 2.5 / 10_000.0, &mut stream(1, Purpose::Graph, 2));
    println!("G(n,p): mean degree {:.3}, largest component {}", gnp.total_degree() as f64 / 1e4, components(&gnp).c1_vertices);

    let states = assign_initial_states(&degrees, 10, 5, SeedMode::HighestDegree, None, &mut stream(1, Purpose::Seeds, 0))?;
    let config = states_to_config(&degrees, &states, 1.0, 1.0)?;
    println!("seeded: n_I = {}, X_I0 = {}, n_R = {}", config.n_i(), config.x_i0(), config.n_r());

    let mut text = Vec::new();
    simple.write_edge_list(&mut text)?;
    println!("{}", String::from_utf8_lossy(&text).lines().take(3).collect::<Vec<_>>().join("\n"));
    Ok(())
}
