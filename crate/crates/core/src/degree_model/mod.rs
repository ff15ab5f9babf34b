//! Static model quantities: degree configurations, empirical moments,
//! criticality measures and the limiting predictions built from them.

mod criticality;
mod diagnostics;
mod quadrature;

pub use criticality::{
    compute_alpha, compute_criticality, compute_r0, predict_final_size,
    predict_small_outbreak_probability, psi_n, CriticalityReport, FinalSizePrediction,
    PredictionReport, Regime, RegimeThresholds,
};
pub use diagnostics::{validate_assumptions, Diagnostic, DiagnosticStatus};
pub use quadrature::adaptive_simpson;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-degree vertex counts.
pub type DegreeCounts = BTreeMap<u32, u64>;

/// Initial per-degree counts of susceptible, infective and recovered vertices
/// together with the per-edge infection rate `beta` and the recovery rate `rho`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeConfiguration {
    pub susceptible: DegreeCounts,
    #[serde(default)]
    pub infective: DegreeCounts,
    #[serde(default)]
    pub recovered: DegreeCounts,
    pub beta: f64,
    pub rho: f64,
}

fn strip_zeros(counts: DegreeCounts) -> DegreeCounts {
    counts.into_iter().filter(|&(_, c)| c > 0).collect()
}

impl DegreeConfiguration {
    pub fn new(
        susceptible: DegreeCounts,
        infective: DegreeCounts,
        recovered: DegreeCounts,
        beta: f64,
        rho: f64,
    ) -> Result<Self> {
        let config = Self {
            susceptible: strip_zeros(susceptible),
            infective: strip_zeros(infective),
            recovered: strip_zeros(recovered),
            beta,
            rho,
        };
        config.check()?;
        Ok(config)
    }

    /// Every vertex susceptible.
    pub fn all_susceptible(degrees: &[u32], beta: f64, rho: f64) -> Result<Self> {
        let mut counts = DegreeCounts::new();
        for &d in degrees {
            *counts.entry(d).or_default() += 1;
        }
        Self::new(counts, DegreeCounts::new(), DegreeCounts::new(), beta, rho)
    }

    /// Re-checks the invariants; useful after deserialisation.
    pub fn check(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidConfig(format!("beta must be positive, got {}", self.beta)));
        }
        if !(self.rho >= 0.0) || !self.rho.is_finite() {
            return Err(Error::InvalidConfig(format!("rho must be non-negative, got {}", self.rho)));
        }
        if self.n() == 0 {
            return Err(Error::InvalidConfig("configuration has no vertices".into()));
        }
        if self.total_degree() % 2 == 1 {
            return Err(Error::OddTotalDegree(self.total_degree()));
        }
        Ok(())
    }

    pub fn n_s(&self) -> u64 {
        self.susceptible.values().sum()
    }

    pub fn n_i(&self) -> u64 {
        self.infective.values().sum()
    }

    pub fn n_r(&self) -> u64 {
        self.recovered.values().sum()
    }

    pub fn n(&self) -> u64 {
        self.n_s() + self.n_i() + self.n_r()
    }

    /// `n_k` summed over the three states.
    pub fn degree_counts(&self) -> DegreeCounts {
        let mut out = DegreeCounts::new();
        for map in [&self.susceptible, &self.infective, &self.recovered] {
            for (&k, &c) in map {
                *out.entry(k).or_default() += c;
            }
        }
        out
    }

    /// `Σ_k k n_k`.
    pub fn total_degree(&self) -> u64 {
        self.x_s0() + self.x_i0() + self.x_r0()
    }

    pub fn x_s0(&self) -> u64 {
        weighted_sum(&self.susceptible, 1)
    }

    /// Total degree of the initially infective vertices.
    pub fn x_i0(&self) -> u64 {
        weighted_sum(&self.infective, 1)
    }

    pub fn x_r0(&self) -> u64 {
        weighted_sum(&self.recovered, 1)
    }

    pub fn d_i_max(&self) -> u32 {
        self.infective.keys().next_back().copied().unwrap_or(0)
    }

    pub fn d_s_max(&self) -> u32 {
        self.susceptible.keys().next_back().copied().unwrap_or(0)
    }

    /// Recovery-to-infection probability `pi = beta / (beta + rho)`.
    pub fn pi(&self) -> f64 {
        self.beta / (self.beta + self.rho)
    }

    /// Per-vertex degree list with states, susceptible vertices first, then
    /// infective, then recovered, each block in ascending degree order.
    pub fn expand(&self) -> (Vec<u32>, Vec<crate::graph_gen::VertexState>) {
        use crate::graph_gen::VertexState;
        let mut degrees = Vec::with_capacity(self.n() as usize);
        let mut states = Vec::with_capacity(self.n() as usize);
        for (map, state) in [
            (&self.susceptible, VertexState::Susceptible),
            (&self.infective, VertexState::Infective),
            (&self.recovered, VertexState::Recovered),
        ] {
            for (&k, &c) in map {
                for _ in 0..c {
                    degrees.push(k);
                    states.push(state);
                }
            }
        }
        (degrees, states)
    }

    pub fn moments(&self) -> Result<MomentSummary> {
        MomentSummary::from_config(self)
    }
}

fn weighted_sum(counts: &DegreeCounts, power: i32) -> u64 {
    counts.iter().map(|(&k, &c)| (k as u64).pow(power as u32) * c).sum()
}

/// Empirical factorial moments of the degree of a uniformly chosen
/// susceptible vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    /// `E D_S`.
    pub lambda: f64,
    /// `E D_S (D_S − 1)`.
    pub lambda2: f64,
    /// `E D_S (D_S − 1)(D_S − 2)`.
    pub lambda3: f64,
    /// `Σ_k k n_k / n` over all vertices.
    pub mean_total_degree: f64,
    /// `Σ_k k³ n_{S,k} / n_S`.
    pub third_moment_bound: f64,
}

impl MomentSummary {
    pub fn from_config(config: &DegreeConfiguration) -> Result<Self> {
        let n_s = config.n_s();
        if n_s == 0 {
            return Err(Error::NoSusceptibles);
        }
        let n_s = n_s as f64;
        let mut m = [0.0f64; 4];
        for (&k, &c) in &config.susceptible {
            let (k, c) = (k as f64, c as f64);
            m[0] += k * c;
            m[1] += k * (k - 1.0) * c;
            m[2] += k * (k - 1.0) * (k - 2.0) * c;
            m[3] += k * k * k * c;
        }
        Ok(Self {
            lambda: m[0] / n_s,
            lambda2: m[1] / n_s,
            lambda3: m[2] / n_s,
            mean_total_degree: config.total_degree() as f64 / config.n() as f64,
            third_moment_bound: m[3] / n_s,
        })
    }
}
