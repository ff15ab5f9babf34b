//! Sellke construction of the final size: one draw of infectious periods,
//! resistance thresholds and a vertex order gives the final outcome for every
//! number of initial infectives at once, monotonically in that number.

use std::io::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::graph_gen::{HalfEdgeIndex, Multigraph};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct SellkeDraw {
    /// `Tᵢ ~ Exp(ρ)`, or `+∞` when `ρ = 0`.
    pub infectious_periods: Vec<f64>,
    /// `Qᵢ ~ Exp(1)`.
    pub thresholds: Vec<f64>,
    /// The first `m` entries are the initial infectives for `m`.
    pub permutation: Vec<u32>,
}

impl SellkeDraw {
    pub fn sample<R: Rng + ?Sized>(n: usize, rho: f64, rng: &mut R) -> Self {
        let mut permutation: Vec<u32> = (0..n as u32).collect();
        permutation.shuffle(rng);
        Self::with_permutation(permutation, rho, rng)
    }

    /// A draw whose permutation starts with `first` (in random order) followed
    /// by the remaining vertices in random order.
    pub fn with_leading<R: Rng + ?Sized>(n: usize, first: &[u32], rho: f64, rng: &mut R) -> Self {
        let mut lead = first.to_vec();
        lead.shuffle(rng);
        let mut taken = vec![false; n];
        for &v in &lead {
            taken[v as usize] = true;
        }
        let mut rest: Vec<u32> = (0..n as u32).filter(|&v| !taken[v as usize]).collect();
        rest.shuffle(rng);
        lead.extend(rest);
        Self::with_permutation(lead, rho, rng)
    }

    fn with_permutation<R: Rng + ?Sized>(permutation: Vec<u32>, rho: f64, rng: &mut R) -> Self {
        let n = permutation.len();
        let infectious_periods = (0..n)
            .map(|_| if rho > 0.0 { rng.sample::<f64, _>(Exp1) / rho } else { f64::INFINITY })
            .collect();
        let thresholds = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        Self { infectious_periods, thresholds, permutation }
    }

    pub fn n(&self) -> usize {
        self.permutation.len()
    }
}

/// Exposure is summed in 64.64 fixed point so the sum, and therefore the
/// fixed point, does not depend on the order contributions arrive in.
/// `+∞` saturates.
fn fixed(x: f64) -> u128 {
    (x * 18_446_744_073_709_551_616.0) as u128
}

/// Incremental least-fixed-point solver shared by single evaluations and sweeps.
struct Solver<'a> {
    idx: HalfEdgeIndex,
    draw: &'a SellkeDraw,
    /// `Tⱼ` in fixed point.
    pressure: Vec<u128>,
    /// `Qᵢ / β` in fixed point.
    resistance: Vec<u128>,
    exposure: Vec<u128>,
    infected: Vec<bool>,
    total: u64,
    queue: Vec<u32>,
}

impl<'a> Solver<'a> {
    fn new(graph: &Multigraph, draw: &'a SellkeDraw, beta: f64) -> Self {
        assert_eq!(graph.n(), draw.n(), "draw must cover every vertex");
        assert!(beta > 0.0);
        let n = graph.n();
        Self {
            idx: graph.half_edge_index(),
            draw,
            pressure: draw.infectious_periods.iter().map(|&t| fixed(t)).collect(),
            resistance: draw.thresholds.iter().map(|&q| fixed(q / beta)).collect(),
            exposure: vec![0; n],
            infected: vec![false; n],
            total: 0,
            queue: Vec::new(),
        }
    }

    fn seed(&mut self, v: usize) {
        if !self.infected[v] {
            self.infected[v] = true;
            self.total += 1;
            self.queue.push(v as u32);
        }
    }

    /// Seeds are infected unconditionally; other vertices once `Qᵢ < β Σ Tⱼ`
    /// over infected neighbours (with multiplicity, own loops excluded).
    fn propagate(&mut self) {
        while let Some(j) = self.queue.pop() {
            let j = j as usize;
            let push = self.pressure[j];
            for h in self.idx.half_edges(j) {
                let i = self.idx.target[h] as usize;
                if i == j || self.infected[i] {
                    continue;
                }
                self.exposure[i] = self.exposure[i].saturating_add(push);
                if self.resistance[i] < self.exposure[i] {
                    self.infected[i] = true;
                    self.total += 1;
                    self.queue.push(i as u32);
                }
            }
        }
    }

    fn extend_to(&mut self, from: usize, to: usize) {
        for p in from..to {
            self.seed(self.draw.permutation[p] as usize);
        }
        self.propagate();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SellkeOutcome {
    /// Infected vertices that were not among the `m` seeds.
    pub new_infections: u64,
    pub infected: Vec<bool>,
}

pub fn sellke_final_size(graph: &Multigraph, draw: &SellkeDraw, m: usize, beta: f64) -> SellkeOutcome {
    assert!(m <= draw.n());
    let mut solver = Solver::new(graph, draw, beta);
    solver.extend_to(0, m);
    SellkeOutcome { new_infections: solver.total - m as u64, infected: solver.infected }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub m: u64,
    /// Total degree of the `m` seeds.
    pub x_i0: u64,
    /// All eventually infected vertices, seeds included.
    pub z: u64,
}

/// Final sizes for ascending seed counts on one draw, each step warm-started
/// from the previous infected set.
pub fn sellke_sweep(graph: &Multigraph, draw: &SellkeDraw, m_values: &[usize], beta: f64) -> Vec<SweepPoint> {
    assert!(m_values.windows(2).all(|w| w[0] <= w[1]), "m values must be ascending");
    let mut solver = Solver::new(graph, draw, beta);
    let mut done = 0usize;
    let mut x_i0 = 0u64;
    m_values
        .iter()
        .map(|&m| {
            assert!(m <= draw.n());
            x_i0 += draw.permutation[done..m].iter().map(|&v| graph.degrees()[v as usize] as u64).sum::<u64>();
            solver.extend_to(done, m);
            done = m;
            SweepPoint { m: m as u64, x_i0, z: solver.total }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub realisation_id: u64,
    pub m: u64,
    #[serde(rename = "X_I0")]
    pub x_i0: u64,
    #[serde(rename = "Z")]
    pub z: u64,
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
