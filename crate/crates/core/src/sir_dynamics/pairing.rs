use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::Rng;

use super::urn::DegreeUrn;
use super::{exp_time, EpidemicOutcome, TimeScale};
use crate::degree_model::DegreeConfiguration;

/// A red half-edge's scheduled pairing time, min-ordered.
#[derive(PartialEq)]
struct Clock {
    at: f64,
    id: u32,
}

impl Eq for Clock {}

impl Ord for Clock {
    fn cmp(&self, other: &Self) -> Ordering {
        other.at.total_cmp(&self.at).then(other.id.cmp(&self.id))
    }
}

impl PartialOrd for Clock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const GONE: u32 = u32::MAX;

/// Red free half-edges: a clock heap with lazy deletion plus a dense list for
/// uniform selection.
#[derive(Default)]
struct RedSet {
    heap: BinaryHeap<Clock>,
    live: Vec<u32>,
    pos: Vec<u32>,
}

impl RedSet {
    fn len(&self) -> usize {
        self.live.len()
    }

    fn insert(&mut self, at: f64) {
        let id = self.pos.len() as u32;
        self.pos.push(self.live.len() as u32);
        self.live.push(id);
        self.heap.push(Clock { at, id });
    }

    fn remove(&mut self, id: u32) {
        let p = self.pos[id as usize] as usize;
        let last = *self.live.last().expect("live red half-edge");
        self.live.swap_remove(p);
        if last != id {
            self.pos[last as usize] = p as u32;
        }
        self.pos[id as usize] = GONE;
    }

    fn pop_next(&mut self) -> Option<f64> {
        while let Some(Clock { at, id }) = self.heap.pop() {
            if self.pos[id as usize] != GONE {
                self.remove(id);
                return Some(at);
            }
        }
        None
    }

    fn remove_uniform<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let id = self.live[rng.random_range(0..self.live.len())];
        self.remove(id);
    }
}

/// Colours the free half-edges of a vertex infected at time `t` and returns
/// its recovery time. Red half-edges get their pairing times; black ones join
/// the inert pool.
fn infect<R: Rng + ?Sized>(t: f64, free: u32, beta: f64, rho: f64, red: &mut RedSet, inert: &mut u64, rng: &mut R) -> f64 {
    let tau = if rho > 0.0 { exp_time(rho, rng) } else { f64::INFINITY };
    for _ in 0..free {
        let e = exp_time(beta, rng);
        if e < tau {
            red.insert(t + e);
        } else {
            *inert += 1;
        }
    }
    t + tau
}

fn run<R: Rng + ?Sized>(config: &DegreeConfiguration, rng: &mut R, mut walk: Option<&mut Vec<u64>>) -> EpidemicOutcome {
    let (beta, rho) = (config.beta, config.rho);
    let mut urn = DegreeUrn::new(&config.susceptible);
    let mut red = RedSet::default();
    // Black infective and recovered free half-edges never initiate a pairing,
    // so only their number matters.
    let mut inert = config.x_r0();
    let mut outcome = EpidemicOutcome::empty(TimeScale::Original);
    let mut last_recovery = 0.0f64;
    for (&k, &c) in &config.infective {
        for _ in 0..c {
            last_recovery = last_recovery.max(infect(0.0, k, beta, rho, &mut red, &mut inert, rng));
        }
    }
    outcome.z0_red = Some(red.len() as u64);
    if let Some(w) = walk.as_deref_mut() {
        w.push(red.len() as u64);
    }

    while let Some(t) = red.pop_next() {
        let x_s = urn.half_edges();
        let others = x_s + red.len() as u64 + inert;
        let u = rng.random_range(0..others);
        if u < x_s {
            let k = urn.draw(rng);
            outcome.record_infection(k, t);
            last_recovery = last_recovery.max(infect(t, k - 1, beta, rho, &mut red, &mut inert, rng));
        } else if u < x_s + red.len() as u64 {
            red.remove_uniform(rng);
        } else {
            inert -= 1;
        }
        outcome.pairing_events += 1;
        if let Some(w) = walk.as_deref_mut() {
            w.push(red.len() as u64);
        }
    }
    outcome.duration = if rho > 0.0 { last_recovery } else { outcome.last_infection };
    outcome
}

/// Epidemic on a configuration model graph constructed while it spreads.
/// Each free half-edge of an infective draws an `Exp(beta)` pairing time and
/// is red if that precedes its owner's recovery. Red half-edges pair in time
/// order with a uniformly random other free half-edge; the run stops when no
/// red free half-edge remains.
pub fn run_pairing_dynamic<R: Rng + ?Sized>(config: &DegreeConfiguration, rng: &mut R) -> EpidemicOutcome {
    run(config, rng, None)
}

/// As [`run_pairing_dynamic`], also returning the red count after each
/// pairing (the first entry is `Z₀`).
pub fn run_pairing_dynamic_with_walk<R: Rng + ?Sized>(config: &DegreeConfiguration, rng: &mut R) -> (EpidemicOutcome, Vec<u64>) {
    let mut walk = Vec::new();
    let outcome = run(config, rng, Some(&mut walk));
    (outcome, walk)
}
