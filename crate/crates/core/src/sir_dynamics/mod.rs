//! SIR epidemic engines. [`run_gillespie`] simulates on a fixed graph;
//! [`run_pairing_dynamic`] and [`run_time_changed`] reveal a configuration
//! model graph lazily while the epidemic spreads, so their cost scales with
//! the outbreak rather than with `n`.

mod gillespie;
mod gnp;
mod pairing;
mod time_changed;
mod urn;

use std::io::Write;

use rand::Rng;
use rand_distr::{Binomial, Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::degree_model::{DegreeConfiguration, DegreeCounts};
use crate::error::{Error, Result};

pub use gillespie::run_gillespie;
pub use gnp::gnp_final_size;
pub use pairing::{run_pairing_dynamic, run_pairing_dynamic_with_walk};
pub use time_changed::run_time_changed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeScale {
    Original,
    /// Rates multiplied by `(x − 1) / (β x_I)`; durations are `τ_end`.
    TimeChanged,
    /// Final size only, as from the Sellke construction.
    Untimed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpidemicOutcome {
    /// Initially susceptible vertices that were ever infected.
    pub final_size: u64,
    pub final_size_by_degree: DegreeCounts,
    pub duration: f64,
    pub time_scale: TimeScale,
    /// Time of the last susceptible-to-infective transition (0 if none).
    pub last_infection: f64,
    pub pairing_events: u64,
    /// Red free half-edges at time 0; pairing engine only.
    pub z0_red: Option<u64>,
}

impl EpidemicOutcome {
    pub(crate) fn empty(time_scale: TimeScale) -> Self {
        Self {
            final_size: 0,
            final_size_by_degree: DegreeCounts::new(),
            duration: 0.0,
            time_scale,
            last_infection: 0.0,
            pairing_events: 0,
            z0_red: None,
        }
    }

    pub(crate) fn record_infection(&mut self, k: u32, t: f64) {
        self.final_size += 1;
        *self.final_size_by_degree.entry(k).or_default() += 1;
        self.last_infection = t;
    }
}

/// `f_S`, `f_R`, `f_I` evaluated on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterministicTrajectories {
    pub f_s: Vec<f64>,
    pub f_r: Vec<f64>,
    pub f_i: Vec<f64>,
}

/// Counts sampled at grid times (right-continuous: the state after every
/// event at or before the grid time).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub grid: Vec<f64>,
    /// Degrees indexing the inner vectors of `s_k`.
    pub degrees: Vec<u32>,
    pub s_k: Vec<Vec<u64>>,
    pub x_s: Vec<u64>,
    pub x_i: Vec<u64>,
    pub x_r: Vec<u64>,
    pub deterministic: Option<DeterministicTrajectories>,
}

impl TrajectoryRecord {
    pub(crate) fn new(grid: &[f64], degrees: Vec<u32>) -> Self {
        Self {
            grid: grid.to_vec(),
            degrees,
            s_k: Vec::with_capacity(grid.len()),
            x_s: Vec::with_capacity(grid.len()),
            x_i: Vec::with_capacity(grid.len()),
            x_r: Vec::with_capacity(grid.len()),
            deterministic: None,
        }
    }

    pub(crate) fn recorded(&self) -> usize {
        self.x_s.len()
    }

    pub(crate) fn push(&mut self, s_k: &[u64], x_s: u64, x_i: u64, x_r: u64) {
        self.s_k.push(s_k.to_vec());
        self.x_s.push(x_s);
        self.x_i.push(x_i);
        self.x_r.push(x_r);
    }

    /// Records the current state at every remaining grid point strictly before `t`.
    pub(crate) fn fill_before(&mut self, t: f64, s_k: &[u64], x_s: u64, x_i: u64, x_r: u64) {
        while self.recorded() < self.grid.len() && self.grid[self.recorded()] < t {
            self.push(s_k, x_s, x_i, x_r);
        }
    }

    /// CSV with columns `t, X_S, X_I, X_R, f_S, f_I, f_R, S_<k>...`;
    /// deterministic columns are empty when not available.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(self.header())?;
        self.write_rows(&mut out, None)?;
        out.flush()?;
        Ok(())
    }

    fn header(&self) -> Vec<String> {
        let mut header: Vec<String> = ["t", "X_S", "X_I", "X_R", "f_S", "f_I", "f_R"].map(String::from).to_vec();
        header.extend(self.degrees.iter().map(|k| format!("S_{k}")));
        header
    }

    fn write_rows<W: Write>(&self, out: &mut csv::Writer<W>, replica: Option<u64>) -> Result<()> {
        for j in 0..self.grid.len() {
            let mut row: Vec<String> = replica.iter().map(u64::to_string).collect();
            row.extend([
                self.grid[j].to_string(),
                self.x_s[j].to_string(),
                self.x_i[j].to_string(),
                self.x_r[j].to_string(),
            ]);
            match &self.deterministic {
                Some(d) => row.extend([d.f_s[j], d.f_i[j], d.f_r[j]].map(|v| v.to_string())),
                None => row.extend([String::new(), String::new(), String::new()]),
            }
            row.extend(self.s_k[j].iter().map(u64::to_string));
            out.write_record(&row)?;
        }
        Ok(())
    }
}

/// Several records of the same configuration stacked into one table, with a
/// leading `replica` column.
pub fn write_trajectories_csv<'a, W: Write>(records: impl IntoIterator<Item = &'a TrajectoryRecord>, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header_done = false;
    for (r, rec) in records.into_iter().enumerate() {
        if !header_done {
            let mut header = vec!["replica".to_string()];
            header.extend(rec.header());
            out.write_record(&header)?;
            header_done = true;
        }
        rec.write_rows(&mut out, Some(r as u64))?;
    }
    out.flush()?;
    Ok(())
}

/// Deterministic approximations of the free half-edge counts under the
/// time-changed dynamics. Requires no initially recovered vertices.
pub fn deterministic_trajectories(config: &DegreeConfiguration, grid: &[f64]) -> Result<DeterministicTrajectories> {
    if config.n_r() > 0 {
        return Err(Error::UnsupportedInitialRecovered);
    }
    let total = config.total_degree() as f64;
    let ratio = config.rho / config.beta;
    let mut out = DeterministicTrajectories {
        f_s: Vec::with_capacity(grid.len()),
        f_r: Vec::with_capacity(grid.len()),
        f_i: Vec::with_capacity(grid.len()),
    };
    for &t in grid {
        let f_s: f64 = config.susceptible.iter().map(|(&k, &c)| k as f64 * c as f64 * (-(k as f64) * t).exp()).sum();
        let e = (-t).exp();
        let f_r = ratio * e * (1.0 - e) * total;
        out.f_s.push(f_s);
        out.f_r.push(f_r);
        out.f_i.push(e * e * total - f_s - f_r);
    }
    Ok(out)
}

/// Red half-edges contributed by a newly infected degree-`k` vertex: its
/// infectious period `τ ~ Exp(ρ)`, then `Binomial(k − 1, 1 − e^{−βτ})`.
pub fn sample_y<R: Rng + ?Sized>(k: u32, beta: f64, rho: f64, rng: &mut R) -> u32 {
    assert!(k >= 1, "degree must be positive");
    if rho == 0.0 {
        return k - 1;
    }
    let tau: f64 = rng.sample::<f64, _>(Exp1) / rho;
    let p = -(-beta * tau).exp_m1();
    Binomial::new((k - 1) as u64, p.clamp(0.0, 1.0)).expect("valid binomial").sample(rng) as u32
}

/// Exact moments of [`sample_y`]: `(E Y, E Y²)`.
pub fn y_moments(k: u32, beta: f64, rho: f64) -> (f64, f64) {
    let pi = beta / (beta + rho);
    let m = (k - 1) as f64;
    let second = (m * (2.0 * k as f64 - 3.0) * pi * pi + m * pi) / (1.0 + pi);
    (pi * m, second)
}

pub(crate) fn exp_time<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> f64 {
    rng.sample::<f64, _>(Exp1) / rate
}
