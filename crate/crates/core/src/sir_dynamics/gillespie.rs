use rand::Rng;

use super::{exp_time, EpidemicOutcome, TimeScale};
use crate::graph_gen::{Multigraph, VertexState};

const INACTIVE: u32 = u32::MAX;

/// Exact continuous-time SIR on a fixed graph. Every half-edge of an
/// infective whose mate belongs to a susceptible transmits at rate `beta`,
/// so parallel edges count with multiplicity and loops never transmit.
/// Once no such half-edge remains the outcome is fixed and the remaining
/// recoveries are fast-forwarded; with `rho == 0` the run ends there and
/// `duration` is the last infection time.
pub fn run_gillespie<R: Rng + ?Sized>(
    graph: &Multigraph,
    states: &[VertexState],
    beta: f64,
    rho: f64,
    rng: &mut R,
) -> EpidemicOutcome {
    assert_eq!(graph.n(), states.len(), "one state per vertex");
    assert!(beta > 0.0 && rho >= 0.0);
    let idx = graph.half_edge_index();
    let degrees = graph.degrees();
    let mut state = states.to_vec();
    let mut outcome = EpidemicOutcome::empty(TimeScale::Original);

    let mut infectives: Vec<u32> = Vec::new();
    let mut inf_pos = vec![INACTIVE; graph.n()];
    let mut active: Vec<u32> = Vec::new();
    let mut act_pos = vec![INACTIVE; idx.target.len()];

    let activate = |h: usize, active: &mut Vec<u32>, act_pos: &mut Vec<u32>| {
        act_pos[h] = active.len() as u32;
        active.push(h as u32);
    };
    let deactivate = |h: usize, active: &mut Vec<u32>, act_pos: &mut Vec<u32>| {
        let p = act_pos[h] as usize;
        let last = *active.last().expect("active half-edge");
        active.swap_remove(p);
        if last as usize != h {
            act_pos[last as usize] = p as u32;
        }
        act_pos[h] = INACTIVE;
    };

    for (v, s) in state.iter().enumerate() {
        if s.is_infective() {
            inf_pos[v] = infectives.len() as u32;
            infectives.push(v as u32);
            for h in idx.half_edges(v) {
                if state[idx.target[h] as usize].is_susceptible() {
                    activate(h, &mut active, &mut act_pos);
                }
            }
        }
    }

    let mut t = 0.0;
    while !infectives.is_empty() {
        if active.is_empty() {
            if rho > 0.0 {
                for j in (1..=infectives.len()).rev() {
                    t += exp_time(j as f64 * rho, rng);
                }
            }
            break;
        }
        let infect_rate = beta * active.len() as f64;
        let total = infect_rate + rho * infectives.len() as f64;
        t += exp_time(total, rng);
        if rng.random::<f64>() * total < infect_rate {
            let h = active[rng.random_range(0..active.len())] as usize;
            let w = idx.target[h] as usize;
            state[w] = VertexState::Infective;
            inf_pos[w] = infectives.len() as u32;
            infectives.push(w as u32);
            outcome.record_infection(degrees[w], t);
            outcome.pairing_events += 1;
            for g in idx.half_edges(w) {
                let x = idx.target[g] as usize;
                if x == w {
                    continue;
                }
                match state[x] {
                    VertexState::Infective => deactivate(idx.mate[g] as usize, &mut active, &mut act_pos),
                    VertexState::Susceptible => activate(g, &mut active, &mut act_pos),
                    VertexState::Recovered => {}
                }
            }
        } else {
            let p = rng.random_range(0..infectives.len());
            let u = infectives[p] as usize;
            let last = *infectives.last().unwrap();
            infectives.swap_remove(p);
            if last as usize != u {
                inf_pos[last as usize] = p as u32;
            }
            inf_pos[u] = INACTIVE;
            state[u] = VertexState::Recovered;
            for g in idx.half_edges(u) {
                if act_pos[g] != INACTIVE {
                    deactivate(g, &mut active, &mut act_pos);
                }
            }
        }
    }
    outcome.duration = if rho > 0.0 { t } else { outcome.last_infection };
    outcome
}
