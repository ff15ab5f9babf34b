#![allow(dead_code)]

pub mod cli;
pub mod oracle;

use nearcrit::degree_model::{DegreeConfiguration, DegreeCounts};
use nearcrit::graph_gen::{sample_multigraph, VertexState};
use nearcrit::rng::{stream, Purpose};
use nearcrit::sellke::{sellke_final_size, SellkeDraw};
use nearcrit::sir_dynamics::run_gillespie;

pub fn config(s: &[(u32, u64)], i: &[(u32, u64)], r: &[(u32, u64)], beta: f64, rho: f64) -> DegreeConfiguration {
    let map = |xs: &[(u32, u64)]| xs.iter().copied().collect::<DegreeCounts>();
    DegreeConfiguration::new(map(s), map(i), map(r), beta, rho).expect("valid corpus config")
}

/// Small configurations (total degree ≤ 12) with named shapes.
pub fn corpus() -> Vec<(&'static str, DegreeConfiguration)> {
    vec![
        ("path of three, middle infective", config(&[(1, 2)], &[(2, 1)], &[], 1.0, 1.0)),
        ("single loop-forcing vertex", config(&[(2, 1)], &[(2, 1)], &[], 1.0, 1.0)),
        ("K4 degrees", config(&[(3, 3)], &[(3, 1)], &[], 1.0, 1.0)),
        ("K4 degrees, fast spread", config(&[(3, 3)], &[(3, 1)], &[], 3.0, 0.5)),
        ("2-regular hexagon degrees", config(&[(2, 5)], &[(2, 1)], &[], 1.0, 1.0)),
        ("mixed degrees", config(&[(1, 2), (2, 1), (3, 2)], &[(2, 1)], &[], 1.0, 1.0)),
        ("leaf seed into hub", config(&[(4, 1), (1, 3), (2, 1)], &[(1, 1)], &[], 2.0, 1.0)),
        ("two infectives", config(&[(2, 2), (3, 2)], &[(1, 2)], &[], 1.0, 1.0)),
        ("with recovered", config(&[(2, 2), (3, 1)], &[(2, 1)], &[(3, 1)], 1.0, 1.0)),
        ("no recovery", config(&[(1, 2), (2, 2), (3, 1)], &[(1, 1)], &[], 1.0, 0.0)),
        ("high degree seed", config(&[(1, 5)], &[(5, 1)], &[(2, 1)], 1.0, 2.0)),
        ("isolated and connected", config(&[(0, 2), (2, 2), (3, 2)], &[(2, 1)], &[], 0.7, 1.3)),
    ]
}

pub fn gillespie_size(config: &DegreeConfiguration, seed: u64, r: u64) -> u64 {
    let (degrees, states) = config.expand();
    let g = sample_multigraph(&degrees, &mut stream(seed, Purpose::Graph, r)).unwrap();
    run_gillespie(&g, &states, config.beta, config.rho, &mut stream(seed, Purpose::Epidemic, r)).final_size
}

pub fn sellke_size(config: &DegreeConfiguration, seed: u64, r: u64) -> u64 {
    let (degrees, states) = config.expand();
    let g = sample_multigraph(&degrees, &mut stream(seed, Purpose::Graph, r)).unwrap();
    let recovered: Vec<bool> = states.iter().map(|&s| s == VertexState::Recovered).collect();
    let seeds: Vec<u32> = (0..states.len() as u32).filter(|&v| states[v as usize].is_infective()).collect();
    let draw = SellkeDraw::with_leading(degrees.len(), &seeds, config.rho, &mut stream(seed, Purpose::Sellke, r));
    sellke_final_size(&g.isolate(&recovered), &draw, seeds.len(), config.beta).new_infections
}
