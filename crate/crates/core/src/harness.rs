//! Monte Carlo orchestration: replicate an engine, classify outbreaks as small
//! or large, and set the empirical results against the closed-form
//! predictions.
//!
//! Replica `r` of an experiment draws from stream `r` of every purpose, and
//! results are collected in replica order, so output does not depend on the
//! number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degree_model::{
    compute_alpha, compute_criticality, predict_small_outbreak_probability, DegreeConfiguration, PredictionReport,
    Regime, RegimeThresholds,
};
use crate::error::{Error, Result};
use crate::graph_gen::{assign_initial_states, expand_counts, poisson_counts, poisson_degrees, sample_multigraph, states_to_config, SeedMode, VertexState};
use crate::rng::{stream, Purpose};
use crate::sellke::{sellke_final_size, sellke_sweep, SellkeDraw, SweepRow};
use crate::sir_dynamics::{
    gnp_final_size, run_gillespie, run_pairing_dynamic, run_time_changed, EpidemicOutcome, TimeScale, TrajectoryRecord,
};
use crate::stats::{mean_stderr, proportion, total_variation, Estimate};

pub const DEFAULT_EPSILON: f64 = 0.5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Gillespie,
    #[default]
    Pairing,
    TimeChanged,
    Sellke,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeSource {
    /// I.i.d. Poisson degrees.
    Poisson { n: usize, mean: f64 },
    /// Degree counts proportional to the Poisson probabilities.
    PoissonCounts { n: u64, mean: f64 },
    List(Vec<u32>),
}

/// Where the initial population comes from. Generated degree sequences and
/// seed placements are drawn once per experiment (from stream 0 of the
/// degree and seed purposes); replicas differ in graph and epidemic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Population {
    Counts(DegreeConfiguration),
    Generated {
        degrees: DegreeSource,
        n_i: usize,
        n_r: usize,
        seeding: SeedMode,
        beta: f64,
        rho: f64,
    },
}

impl Population {
    pub fn resolve(&self, master_seed: u64) -> Result<DegreeConfiguration> {
        match self {
            Population::Counts(c) => Ok(c.clone()),
            Population::Generated { degrees, n_i, n_r, seeding, beta, rho } => {
                let degrees = match degrees {
                    DegreeSource::Poisson { n, mean } => {
                        poisson_degrees(*n, *mean, &mut stream(master_seed, Purpose::Degrees, 0))
                    }
                    DegreeSource::PoissonCounts { n, mean } => expand_counts(&poisson_counts(*n, *mean)),
                    DegreeSource::List(d) => d.clone(),
                };
                let states = assign_initial_states(
                    &degrees,
                    *n_i,
                    *n_r,
                    *seeding,
                    None,
                    &mut stream(master_seed, Purpose::Seeds, 0),
                )?;
                states_to_config(&degrees, &states, *beta, *rho)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub population: Population,
    pub engine: Engine,
    pub reps: usize,
    pub master_seed: u64,
    /// An outcome is large iff its final size exceeds this fraction of the
    /// predicted large-outbreak size.
    pub classification_epsilon: f64,
    /// Reuse one graph for every replica (graph-based engines only).
    #[serde(default)]
    pub pin_graph: bool,
    #[serde(default)]
    pub thresholds: RegimeThresholds,
}

impl ExperimentSpec {
    pub fn new(population: Population, engine: Engine, reps: usize, master_seed: u64) -> Self {
        Self {
            population,
            engine,
            reps,
            master_seed,
            classification_epsilon: DEFAULT_EPSILON,
            pin_graph: false,
            thresholds: RegimeThresholds::default(),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be at least 1".into()));
        }
        if !(self.classification_epsilon > 0.0 && self.classification_epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "classification epsilon {} outside (0, 1)",
                self.classification_epsilon
            )));
        }
        Ok(())
    }
}

/// Which normalisation `large_mean_ratio` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioKind {
    /// `Z / (n_S ᾱ)`.
    OverNsAlphaBar,
    /// `Z / sqrt(n_S X_I0)`.
    OverSqrtNsXi0,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateResult {
    pub spec: ExperimentSpec,
    pub config: DegreeConfiguration,
    /// Absent when the configuration admits no large-outbreak prediction
    /// (e.g. subcritical); every outcome is then classified small.
    pub prediction: Option<PredictionReport>,
    pub outcomes: Vec<EpidemicOutcome>,
    pub large: Vec<bool>,
    pub failures: Vec<(usize, String)>,
    pub p_large_hat: Estimate,
    pub ratio_kind: RatioKind,
    pub large_mean_ratio: Option<Estimate>,
    pub degree_profile_tv: Option<f64>,
}

impl AggregateResult {
    pub fn p_small_hat(&self) -> Estimate {
        Estimate { mean: 1.0 - self.p_large_hat.mean, stderr: self.p_large_hat.stderr }
    }
}

/// Vertex layout and the index list of the initial infectives.
struct Layout {
    degrees: Vec<u32>,
    states: Vec<VertexState>,
    seeds: Vec<u32>,
    recovered: Vec<bool>,
}

impl Layout {
    fn new(config: &DegreeConfiguration) -> Self {
        let (degrees, states) = config.expand();
        let seeds = (0..states.len() as u32).filter(|&v| states[v as usize].is_infective()).collect();
        let recovered = states.iter().map(|&s| s == VertexState::Recovered).collect();
        Self { degrees, states, seeds, recovered }
    }
}

fn sellke_outcome(layout: &Layout, infected: &[bool]) -> EpidemicOutcome {
    let mut out = EpidemicOutcome {
        final_size: 0,
        final_size_by_degree: Default::default(),
        duration: 0.0,
        time_scale: TimeScale::Untimed,
        last_infection: 0.0,
        pairing_events: 0,
        z0_red: None,
    };
    for (v, &hit) in infected.iter().enumerate() {
        if hit && layout.states[v].is_susceptible() {
            out.final_size += 1;
            *out.final_size_by_degree.entry(layout.degrees[v]).or_default() += 1;
        }
    }
    out
}

fn run_replica(
    spec: &ExperimentSpec,
    config: &DegreeConfiguration,
    layout: &Layout,
    pinned: Option<&crate::graph_gen::Multigraph>,
    r: u64,
) -> Result<EpidemicOutcome> {
    let seed = spec.master_seed;
    let mut epi = stream(seed, Purpose::Epidemic, r);
    let graph = || -> Result<crate::graph_gen::Multigraph> {
        match pinned {
            Some(g) => Ok(g.clone()),
            None => sample_multigraph(&layout.degrees, &mut stream(seed, Purpose::Graph, r)),
        }
    };
    Ok(match spec.engine {
        Engine::Pairing => run_pairing_dynamic(config, &mut epi),
        Engine::TimeChanged => run_time_changed(config, &mut epi, &[]).0,
        Engine::Gillespie => run_gillespie(&graph()?, &layout.states, config.beta, config.rho, &mut epi),
        Engine::Sellke => {
            let g = graph()?.isolate(&layout.recovered);
            let draw = SellkeDraw::with_leading(g.n(), &layout.seeds, config.rho, &mut stream(seed, Purpose::Sellke, r));
            sellke_outcome(layout, &sellke_final_size(&g, &draw, layout.seeds.len(), config.beta).infected)
        }
    })
}

/// Runs `spec.reps` replicas and aggregates them.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<AggregateResult> {
    spec.check()?;
    let config = spec.population.resolve(spec.master_seed)?;
    let prediction = PredictionReport::build(&config, &spec.thresholds).ok();
    let graph_engine = matches!(spec.engine, Engine::Gillespie | Engine::Sellke);
    let layout = if graph_engine { Layout::new(&config) } else { Layout { degrees: vec![], states: vec![], seeds: vec![], recovered: vec![] } };
    let pinned = if graph_engine && spec.pin_graph {
        Some(sample_multigraph(&layout.degrees, &mut stream(spec.master_seed, Purpose::Graph, u64::MAX))?)
    } else {
        None
    };
    let results: Vec<Result<EpidemicOutcome>> = (0..spec.reps as u64)
        .into_par_iter()
        .map(|r| run_replica(spec, &config, &layout, pinned.as_ref(), r))
        .collect();
    let mut outcomes = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (r, res) in results.into_iter().enumerate() {
        match res {
            Ok(o) => outcomes.push(o),
            Err(e) => failures.push((r, e.to_string())),
        }
    }
    aggregate(spec.clone(), config, prediction, outcomes, failures)
}

fn aggregate(
    spec: ExperimentSpec,
    config: DegreeConfiguration,
    prediction: Option<PredictionReport>,
    outcomes: Vec<EpidemicOutcome>,
    failures: Vec<(usize, String)>,
) -> Result<AggregateResult> {
    let cutoff = prediction.as_ref().map(|p| spec.classification_epsilon * p.predicted_size);
    let large: Vec<bool> = outcomes.iter().map(|o| cutoff.is_some_and(|c| o.final_size as f64 > c)).collect();
    let n_large = large.iter().filter(|&&l| l).count();
    let p_large_hat = proportion(n_large, outcomes.len());
    let ratio_kind = match prediction.as_ref().map(|p| p.regime) {
        Some(Regime::NuInfinite) => RatioKind::OverSqrtNsXi0,
        _ => RatioKind::OverNsAlphaBar,
    };
    let large_mean_ratio = prediction.as_ref().filter(|_| n_large > 0).map(|p| {
        let scale = match ratio_kind {
            RatioKind::OverNsAlphaBar => config.n_s() as f64 * p.alpha_bar,
            RatioKind::OverSqrtNsXi0 => (config.n_s() as f64 * config.x_i0() as f64).sqrt(),
        };
        let ratios: Vec<f64> =
            outcomes.iter().zip(&large).filter(|(_, &l)| l).map(|(o, _)| o.final_size as f64 / scale).collect();
        mean_stderr(&ratios)
    });
    let degree_profile_tv = degree_profile_check(&outcomes, &large, &config).ok();
    Ok(AggregateResult {
        spec,
        config,
        prediction,
        outcomes,
        large,
        failures,
        p_large_hat,
        ratio_kind,
        large_mean_ratio,
        degree_profile_tv,
    })
}

/// Total-variation distance between the pooled degree profile of the large
/// outbreaks and the size-biased susceptible degree law `k n_{S,k} / X_S0`.
pub fn degree_profile_check(outcomes: &[EpidemicOutcome], large: &[bool], config: &DegreeConfiguration) -> Result<f64> {
    let mut pooled = std::collections::BTreeMap::<u32, u64>::new();
    let mut total = 0u64;
    for (o, _) in outcomes.iter().zip(large).filter(|(_, &l)| l) {
        for (&k, &c) in &o.final_size_by_degree {
            *pooled.entry(k).or_default() += c;
            total += c;
        }
    }
    if total == 0 {
        return Err(Error::NoLargeOutbreaks);
    }
    let x_s0 = config.x_s0() as f64;
    let degrees: Vec<u32> = config.susceptible.keys().chain(pooled.keys()).copied().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let observed: Vec<f64> = degrees.iter().map(|k| pooled.get(k).copied().unwrap_or(0) as f64 / total as f64).collect();
    let predicted: Vec<f64> = degrees
        .iter()
        .map(|&k| k as f64 * config.susceptible.get(&k).copied().unwrap_or(0) as f64 / x_s0)
        .collect();
    Ok(total_variation(&observed, &predicted))
}

/// Time-changed runs with their recorded trajectories.
pub fn run_trajectories(
    config: &DegreeConfiguration,
    grid: &[f64],
    reps: usize,
    master_seed: u64,
) -> Vec<(EpidemicOutcome, TrajectoryRecord)> {
    (0..reps as u64)
        .into_par_iter()
        .map(|r| run_time_changed(config, &mut stream(master_seed, Purpose::Epidemic, r), grid))
        .collect()
}

/// How `survival_curve` places its seeds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurvivalSeeding {
    /// Uniformly random vertices of the base population become infective
    /// until their total degree best matches the target.
    #[default]
    UniformRandom,
    /// A single extra infective vertex whose degree carries the whole target.
    SingleVertex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurvivalRow {
    pub target: f64,
    pub n_i: u64,
    pub x_i0: u64,
    pub alpha: f64,
    pub alpha_x_i0: f64,
    pub nu: f64,
    pub regime: Regime,
    pub reps: usize,
    pub p_small_hat: Estimate,
    pub p_small_predicted: f64,
    pub p_small_corrected: f64,
}

/// The configuration whose `α·X_I0` best matches `target`, built from an
/// all-susceptible base.
pub fn seed_for_target(
    base: &DegreeConfiguration,
    target: f64,
    seeding: SurvivalSeeding,
    master_seed: u64,
) -> Result<DegreeConfiguration> {
    let alpha0 = compute_alpha(base)?;
    if !(alpha0 > 0.0) {
        return Err(Error::Subcritical { alpha: alpha0 });
    }
    let wanted = target / alpha0;
    let config = match seeding {
        SurvivalSeeding::SingleVertex => {
            let parity = base.total_degree() % 2;
            let mut d = wanted.round().max(1.0) as u32;
            if (d as u64 + parity) % 2 == 1 {
                d = if (d + 1) as f64 - wanted <= wanted - (d - 1) as f64 || d == 1 { d + 1 } else { d - 1 };
            }
            let mut infective = base.infective.clone();
            *infective.entry(d).or_default() += 1;
            DegreeConfiguration::new(base.susceptible.clone(), infective, base.recovered.clone(), base.beta, base.rho)?
        }
        SurvivalSeeding::UniformRandom => {
            let (degrees, states) = base.expand();
            let mut order: Vec<usize> = (0..degrees.len()).filter(|&v| states[v].is_susceptible() && degrees[v] > 0).collect();
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut stream(master_seed, Purpose::Seeds, 1));
            let mut chosen = 0usize;
            let mut acc = 0u64;
            while chosen < order.len() && (acc as f64) < wanted {
                let next = acc + degrees[order[chosen]] as u64;
                if (next as f64 - wanted).abs() > (wanted - acc as f64).abs() && chosen > 0 {
                    break;
                }
                acc = next;
                chosen += 1;
            }
            let mut states = states;
            for &v in &order[..chosen] {
                states[v] = VertexState::Infective;
            }
            states_to_config(&degrees, &states, base.beta, base.rho)?
        }
    };
    let achieved = compute_alpha(&config)? * config.x_i0() as f64;
    if target > 0.0 && ((achieved - target) / target).abs() > 0.1 {
        return Err(Error::TargetUnreachable { target });
    }
    Ok(config)
}

/// The smallest set of uniformly random initial infectives (drawn from the
/// susceptible vertices of `base`) for which `X_I0 / (n_S α²) ≥ nu_target`
/// while `α` stays positive. Seeding lowers `α`, so large targets are
/// reached with comparatively few seeds.
pub fn seed_for_nu(base: &DegreeConfiguration, nu_target: f64, master_seed: u64) -> Result<DegreeConfiguration> {
    let (degrees, states) = base.expand();
    let mut order: Vec<usize> = (0..degrees.len()).filter(|&v| states[v].is_susceptible() && degrees[v] > 0).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut stream(master_seed, Purpose::Seeds, 2));
    let build = |m: usize| -> Result<DegreeConfiguration> {
        let mut s = states.clone();
        for &v in &order[..m] {
            s[v] = VertexState::Infective;
        }
        states_to_config(&degrees, &s, base.beta, base.rho)
    };
    let nu_of = |c: &DegreeConfiguration| -> Result<Option<f64>> {
        let alpha = compute_alpha(c)?;
        Ok((alpha > 0.0).then(|| c.x_i0() as f64 / (c.n_s() as f64 * alpha * alpha)))
    };
    let (mut lo, mut hi) = (0usize, order.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        match nu_of(&build(mid)?)? {
            Some(nu) if nu >= nu_target => hi = mid,
            Some(_) => lo = mid + 1,
            None => hi = mid,
        }
    }
    let config = build(lo)?;
    match nu_of(&config)? {
        Some(nu) if nu >= nu_target => Ok(config),
        _ => Err(Error::TargetUnreachable { target: nu_target }),
    }
}

/// Empirical small-outbreak probability against `exp(−κ α X_I0)` and its
/// seed-degree-corrected version, one row per `α·X_I0` target. Infectives of
/// the population are returned to the susceptible pool before seeding.
pub fn survival_curve(spec: &ExperimentSpec, targets: &[f64], seeding: SurvivalSeeding) -> Result<Vec<SurvivalRow>> {
    spec.check()?;
    let mut base = spec.population.resolve(spec.master_seed)?;
    for (k, c) in std::mem::take(&mut base.infective) {
        *base.susceptible.entry(k).or_default() += c;
    }
    targets
        .iter()
        .map(|&target| {
            let config = seed_for_target(&base, target, seeding, spec.master_seed)?;
            let report = compute_criticality(&config, &spec.thresholds)?;
            let p_small_predicted = predict_small_outbreak_probability(&report, &config, false)?;
            let p_small_corrected = predict_small_outbreak_probability(&report, &config, true)?;
            let run = run_experiment(&ExperimentSpec { population: Population::Counts(config.clone()), ..spec.clone() })?;
            Ok(SurvivalRow {
                target,
                n_i: config.n_i(),
                x_i0: config.x_i0(),
                alpha: report.alpha,
                alpha_x_i0: report.alpha * config.x_i0() as f64,
                nu: report.nu,
                regime: report.regime,
                reps: spec.reps,
                p_small_hat: run.p_small_hat(),
                p_small_predicted,
                p_small_corrected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpSurvivalRow {
    pub n: u64,
    pub p: f64,
    pub n_i: u64,
    /// `1 − (β+ρ)/(λβ) + η − (1+η) n_I/n`, with `λ(1+η) = np` and `λ = (β+ρ)/β`.
    pub gamma: f64,
    pub reps: usize,
    pub p_small_hat: Estimate,
    pub p_small_predicted: f64,
}

/// Small-outbreak probability on `G(n, λ(1+η)/n)` with `λ = (β+ρ)/β`, large
/// meaning more than `epsilon · 2nγ` new infections.
#[allow(clippy::too_many_arguments)]
pub fn gnp_survival(
    n: u64,
    eta: f64,
    n_i: u64,
    beta: f64,
    rho: f64,
    reps: usize,
    epsilon: f64,
    master_seed: u64,
) -> GnpSurvivalRow {
    let lambda = (beta + rho) / beta;
    let p = lambda * (1.0 + eta) / n as f64;
    let gamma = 1.0 - (beta + rho) / (lambda * beta) + eta - (1.0 + eta) * n_i as f64 / n as f64;
    let cutoff = epsilon * 2.0 * n as f64 * gamma;
    let small = (0..reps as u64)
        .into_par_iter()
        .filter(|&r| (gnp_final_size(n, p, n_i, beta, rho, &mut stream(master_seed, Purpose::Epidemic, r)) as f64) <= cutoff)
        .count();
    GnpSurvivalRow {
        n,
        p,
        n_i,
        gamma,
        reps,
        p_small_hat: proportion(small, reps),
        p_small_predicted: (-(1.0 + 1.0 / lambda) * gamma * n_i as f64).exp(),
    }
}

/// Sellke sweeps over `m_grid` on `realisations` independent graphs and
/// draws. Seeds are the leading vertices of each draw's random order.
pub fn figure_fs_scatter(config: &DegreeConfiguration, realisations: usize, m_grid: &[usize], master_seed: u64) -> Result<Vec<SweepRow>> {
    let (degrees, _) = config.expand();
    let per: Vec<Result<Vec<SweepRow>>> = (0..realisations as u64)
        .into_par_iter()
        .map(|r| {
            let g = sample_multigraph(&degrees, &mut stream(master_seed, Purpose::Graph, r))?;
            let draw = SellkeDraw::sample(g.n(), config.rho, &mut stream(master_seed, Purpose::Sellke, r));
            Ok(sellke_sweep(&g, &draw, m_grid, config.beta)
                .into_iter()
                .map(|p| SweepRow { realisation_id: r, m: p.m, x_i0: p.x_i0, z: p.z })
                .collect())
        })
        .collect();
    let mut rows = Vec::with_capacity(realisations * m_grid.len());
    for part in per {
        rows.extend(part?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_model::DegreeCounts;

    fn regular(n: u64, k: u32, n_i: u64) -> DegreeConfiguration {
        DegreeConfiguration::new([(k, n - n_i)].into(), [(k, n_i)].into(), DegreeCounts::new(), 1.0, 0.5).unwrap()
    }

    #[test]
    fn no_infectives_no_large_outbreaks() {
        let spec = ExperimentSpec::new(Population::Counts(regular(1000, 3, 0)), Engine::Pairing, 1, 1);
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.p_large_hat.mean, 0.0);
        assert!(res.degree_profile_tv.is_none());
    }

    #[test]
    fn stderr_is_binomial() {
        let spec = ExperimentSpec::new(Population::Counts(regular(2000, 3, 5)), Engine::Pairing, 200, 2);
        let res = run_experiment(&spec).unwrap();
        let p = res.p_large_hat.mean;
        assert!((res.p_large_hat.stderr - (p * (1.0 - p) / 200.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn regular_graph_profile_is_exact() {
        let spec = ExperimentSpec::new(Population::Counts(regular(2000, 3, 5)), Engine::TimeChanged, 50, 3);
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.degree_profile_tv, Some(0.0));
    }

    #[test]
    fn only_small_outbreaks_is_an_error() {
        let c = regular(100, 3, 1);
        let outcomes = vec![EpidemicOutcome {
            final_size: 1,
            final_size_by_degree: [(3, 1)].into(),
            duration: 1.0,
            time_scale: TimeScale::Original,
            last_infection: 0.5,
            pairing_events: 1,
            z0_red: None,
        }];
        assert!(matches!(degree_profile_check(&outcomes, &[false], &c), Err(Error::NoLargeOutbreaks)));
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let spec = ExperimentSpec::new(
            Population::Generated {
                degrees: DegreeSource::Poisson { n: 3000, mean: 2.2 },
                n_i: 3,
                n_r: 0,
                seeding: SeedMode::UniformRandom,
                beta: 1.0,
                rho: 1.0,
            },
            Engine::Gillespie,
            40,
            4,
        );
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run_experiment(&spec).unwrap());
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run_experiment(&spec).unwrap());
        assert_eq!(one, four);
    }

    #[test]
    fn figure_rows_and_full_seeding() {
        let c = DegreeConfiguration::all_susceptible(&[1, 2, 3, 2, 1, 1], 1.0, 1.0).unwrap();
        let rows = figure_fs_scatter(&c, 3, &[1, 6], 5).unwrap();
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().filter(|r| r.m == 6).all(|r| r.z == 6));
    }

    #[test]
    fn single_vertex_seeding_hits_the_target() {
        let base = DegreeConfiguration::all_susceptible(&poisson_degrees(200_000, 2.05, &mut stream(6, Purpose::Degrees, 0)), 1.0, 1.0).unwrap();
        let c = seed_for_target(&base, 2.0, SurvivalSeeding::SingleVertex, 6).unwrap();
        assert_eq!(c.n_i(), 1);
        assert_eq!(c.total_degree() % 2, 0);
        let c = seed_for_target(&base, 1.0, SurvivalSeeding::UniformRandom, 6).unwrap();
        let achieved = compute_alpha(&c).unwrap() * c.x_i0() as f64;
        assert!((achieved - 1.0).abs() < 0.1, "{achieved}");
    }
}
