//! The JSON experiment document shared by every command-line subcommand.
//!
//! ```json
//! {
//!   "model": { "poisson": { "n": 1000000, "mean": 2.02 } },
//!   "states": { "n_I": 40, "n_R": 0, "mode": "uniform_random" },
//!   "rates": { "beta": 1.0, "rho": 1.0 },
//!   "experiment": { "engine": "pairing", "reps": 500, "epsilon": 0.5 },
//!   "rng": { "seed": 7 }
//! }
//! ```
//!
//! Degrees are given as per-degree counts (`{"degrees": {"counts": {"3": 500}}}`),
//! an inline per-vertex list (`{"degrees": {"list": [3, 3, 2]}}`), a sidecar
//! file of whitespace-separated per-vertex degrees (`{"degrees": {"file": "d.txt"}}`,
//! relative to the document), or a Poisson recipe.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::degree_model::{DegreeConfiguration, DegreeCounts, RegimeThresholds};
use crate::error::{Error, Result};
use crate::graph_gen::{assign_initial_states, expand_counts, poisson_counts, poisson_degrees, states_to_config, SeedMode};
use crate::harness::{Engine, ExperimentSpec, Population, SurvivalSeeding, DEFAULT_EPSILON};
use crate::rng::{stream, Purpose};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub model: Model,
    #[serde(default)]
    pub states: States,
    pub rates: Rates,
    #[serde(default)]
    pub experiment: Experiment,
    #[serde(default)]
    pub regime: RegimeThresholds,
    #[serde(default)]
    pub rng: RngSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectories: Option<Trajectories>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sellke: Option<SellkeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub survival: Option<Survival>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub giant: Option<Giant>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Model {
    Degrees(Degrees),
    Poisson(PoissonRecipe),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Degrees {
    Counts(DegreeCounts),
    List(Vec<u32>),
    File(PathBuf),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoissonSampling {
    /// Counts `round(n p_k)`, so the empirical moments sit on the Poisson ones.
    #[default]
    Counts,
    /// Independent Poisson degrees.
    Iid,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonRecipe {
    pub n: u64,
    pub mean: f64,
    #[serde(default)]
    pub sampling: PoissonSampling,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateMode {
    #[default]
    UniformRandom,
    HighestDegree,
    ByDegree,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ByDegree {
    #[serde(default)]
    pub infective: DegreeCounts,
    #[serde(default)]
    pub recovered: DegreeCounts,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct States {
    #[serde(rename = "n_I", default)]
    pub n_i: u64,
    #[serde(rename = "n_R", default)]
    pub n_r: u64,
    #[serde(default)]
    pub mode: StateMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub by_degree: Option<ByDegree>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rates {
    pub beta: f64,
    pub rho: f64,
}

fn default_reps() -> usize {
    100
}

fn default_epsilon() -> f64 {
    DEFAULT_EPSILON
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiment {
    #[serde(default)]
    pub engine: Engine,
    #[serde(default = "default_reps")]
    pub reps: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub pin_graph: bool,
}

impl Default for Experiment {
    fn default() -> Self {
        Self { engine: Engine::default(), reps: default_reps(), epsilon: default_epsilon(), pin_graph: false }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RngSection {
    #[serde(default)]
    pub seed: u64,
}

fn default_points() -> usize {
    201
}

/// Recording grid on the time-changed clock. Without `grid` or `t_max` the
/// grid spans `[0, 2 ξ ᾱ]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trajectories {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_realisations() -> usize {
    20
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SellkeSection {
    #[serde(default = "default_realisations")]
    pub realisations: usize,
    /// Explicit ascending seed counts; otherwise `m_step, 2 m_step, …, m_max`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_grid: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_step: Option<usize>,
}

impl SellkeSection {
    pub fn grid(&self, n: usize) -> Result<Vec<usize>> {
        let grid = match &self.m_grid {
            Some(g) => g.clone(),
            None => {
                let step = self.m_step.unwrap_or(1).max(1);
                let max = self.m_max.unwrap_or(1000).min(n);
                (1..=max / step).map(|j| j * step).collect()
            }
        };
        if grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidConfig("sellke.m_grid must be ascending".into()));
        }
        if grid.iter().any(|&m| m > n) {
            return Err(Error::InvalidConfig(format!("sellke.m_grid exceeds n = {n}")));
        }
        Ok(grid)
    }
}

/// Small-outbreak probability on `G(n, λ(1+η)/n)`, one row per seed count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GnpSurvival {
    pub n: u64,
    pub eta: f64,
    pub n_i: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Survival {
    /// `α X_I0` values.
    #[serde(default)]
    pub targets: Vec<f64>,
    #[serde(default)]
    pub seeding: SurvivalSeeding,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gnp: Option<GnpSurvival>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Giant {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,
}

impl Config {
    /// Parses a document; a `degrees.file` path is resolved against `base_dir`.
    pub fn from_json(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut config: Config = serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if let (Model::Degrees(Degrees::File(p)), Some(dir)) = (&mut config.model, base_dir) {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        config.check()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, path.parent())
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.rates.beta > 0.0) || !(self.rates.rho >= 0.0) {
            return bad(format!("rates need beta > 0 and rho >= 0, got {:?}", self.rates));
        }
        if let Model::Poisson(p) = &self.model {
            if p.n == 0 || !(p.mean >= 0.0) {
                return bad("poisson model needs n >= 1 and mean >= 0".into());
            }
        }
        match (self.states.mode, &self.states.by_degree) {
            (StateMode::ByDegree, None) => return bad("states.mode by_degree needs states.by_degree".into()),
            (StateMode::ByDegree, Some(b)) => {
                let n_i: u64 = b.infective.values().sum();
                let n_r: u64 = b.recovered.values().sum();
                if (self.states.n_i != 0 && self.states.n_i != n_i) || (self.states.n_r != 0 && self.states.n_r != n_r) {
                    return bad("states.n_I / n_R disagree with states.by_degree".into());
                }
            }
            (_, Some(_)) => return bad("states.by_degree is only used with mode by_degree".into()),
            _ => {}
        }
        if !(self.experiment.epsilon > 0.0 && self.experiment.epsilon < 1.0) {
            return bad(format!("experiment.epsilon {} outside (0, 1)", self.experiment.epsilon));
        }
        if self.experiment.reps == 0 {
            return bad("experiment.reps must be at least 1".into());
        }
        if let Some(t) = &self.trajectories {
            if t.points < 1 {
                return bad("trajectories.points must be at least 1".into());
            }
            if let Some(g) = &t.grid {
                if g.windows(2).any(|w| w[0] > w[1]) || g.iter().any(|x| !(*x >= 0.0)) {
                    return bad("trajectories.grid must be ascending and non-negative".into());
                }
            }
        }
        Ok(())
    }

    /// The per-vertex degree sequence; random recipes draw from stream 0 of
    /// the degree purpose.
    pub fn degrees(&self, master_seed: u64) -> Result<Vec<u32>> {
        Ok(match &self.model {
            Model::Degrees(Degrees::Counts(c)) => expand_counts(c),
            Model::Degrees(Degrees::List(l)) => l.clone(),
            Model::Degrees(Degrees::File(p)) => read_degree_file(p)?,
            Model::Poisson(PoissonRecipe { n, mean, sampling: PoissonSampling::Counts }) => {
                expand_counts(&poisson_counts(*n, *mean))
            }
            Model::Poisson(PoissonRecipe { n, mean, sampling: PoissonSampling::Iid }) => {
                poisson_degrees(*n as usize, *mean, &mut stream(master_seed, Purpose::Degrees, 0))
            }
        })
    }

    /// The initial configuration. Random seed placements draw from stream 0
    /// of the seed purpose, so the population is fixed for an experiment.
    pub fn resolve(&self, master_seed: u64) -> Result<DegreeConfiguration> {
        let (beta, rho) = (self.rates.beta, self.rates.rho);
        if let (Model::Degrees(Degrees::Counts(counts)), StateMode::ByDegree) = (&self.model, self.states.mode) {
            let by = self.states.by_degree.clone().unwrap_or_default();
            let mut susceptible = counts.clone();
            for (&k, &c) in by.infective.iter().chain(&by.recovered) {
                let slot = susceptible.entry(k).or_default();
                *slot = slot
                    .checked_sub(c)
                    .ok_or_else(|| Error::SpecMismatch(format!("too few vertices of degree {k}")))?;
            }
            return DegreeConfiguration::new(susceptible, by.infective, by.recovered, beta, rho);
        }
        let degrees = self.degrees(master_seed)?;
        let spec = self
            .states
            .by_degree
            .as_ref()
            .map(|b| DegreeConfiguration {
                susceptible: DegreeCounts::new(),
                infective: b.infective.clone(),
                recovered: b.recovered.clone(),
                beta,
                rho,
            });
        let (mode, n_i, n_r) = match self.states.mode {
            StateMode::UniformRandom => (SeedMode::UniformRandom, self.states.n_i, self.states.n_r),
            StateMode::HighestDegree => (SeedMode::HighestDegree, self.states.n_i, self.states.n_r),
            StateMode::ByDegree => {
                let b = spec.as_ref().expect("checked");
                (SeedMode::ByDegreeSpec, b.n_i(), b.n_r())
            }
        };
        let states = assign_initial_states(
            &degrees,
            n_i as usize,
            n_r as usize,
            mode,
            spec.as_ref(),
            &mut stream(master_seed, Purpose::Seeds, 0),
        )?;
        states_to_config(&degrees, &states, beta, rho)
    }

    /// The harness experiment with the population resolved up front.
    pub fn experiment_spec(&self, master_seed: u64) -> Result<ExperimentSpec> {
        let mut spec =
            ExperimentSpec::new(Population::Counts(self.resolve(master_seed)?), self.experiment.engine, self.experiment.reps, master_seed);
        spec.classification_epsilon = self.experiment.epsilon;
        spec.pin_graph = self.experiment.pin_graph;
        spec.thresholds = self.regime;
        Ok(spec)
    }
}

fn read_degree_file(path: &Path) -> Result<Vec<u32>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read degree file {}: {e}", path.display())))?;
    text.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|e| Error::InvalidConfig(format!("degree file {}: {t:?}: {e}", path.display()))))
        .collect()
}
