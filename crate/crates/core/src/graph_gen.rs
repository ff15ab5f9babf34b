//! Random graph constructions: the configuration-model multigraph obtained by
//! a uniform matching of half-edges, the uniform simple graph by rejection,
//! and the binomial / uniform-edge-count random graphs.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::degree_model::{DegreeConfiguration, DegreeCounts};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

/// Undirected multigraph with loops. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    degrees: Vec<u32>,
    /// Edges in construction order; loops are `(v, v)`.
    edges: Vec<(u32, u32)>,
    /// `half_edge_offsets[v]..half_edge_offsets[v + 1]` are the half-edges of `v`.
    half_edge_offsets: Vec<usize>,
}

/// Half-edge incidence: for every half-edge, the vertex at the other end and
/// the half-edge it is paired with. A loop at `v` occupies two half-edges of
/// `v`, each targeting `v`.
#[derive(Clone, Debug)]
pub struct HalfEdgeIndex {
    pub offsets: Vec<usize>,
    pub target: Vec<u32>,
    pub mate: Vec<u32>,
}

impl HalfEdgeIndex {
    pub fn half_edges(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.target[self.offsets[v]..self.offsets[v + 1]]
    }
}

fn prefix_sums(degrees: &[u32]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(degrees.len() + 1);
    let mut acc = 0usize;
    offsets.push(0);
    for &d in degrees {
        acc += d as usize;
        offsets.push(acc);
    }
    offsets
}

impl Multigraph {
    /// Builds a multigraph from an edge list; degrees are realised from it.
    pub fn from_edges(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut degrees = vec![0u32; n];
        for &(u, v) in &edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidConfig(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let half_edge_offsets = prefix_sums(&degrees);
        Ok(Self { n, degrees, edges, half_edge_offsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn half_edge_offsets(&self) -> &[usize] {
        &self.half_edge_offsets
    }

    pub fn total_degree(&self) -> usize {
        *self.half_edge_offsets.last().unwrap_or(&0)
    }

    pub fn half_edge_index(&self) -> HalfEdgeIndex {
        let total = self.total_degree();
        let mut cursor = self.half_edge_offsets.clone();
        let mut target = vec![0u32; total];
        let mut mate = vec![0u32; total];
        for &(u, v) in &self.edges {
            let hu = cursor[u as usize];
            cursor[u as usize] += 1;
            let hv = cursor[v as usize];
            cursor[v as usize] += 1;
            target[hu] = v;
            target[hv] = u;
            mate[hu] = hv as u32;
            mate[hv] = hu as u32;
        }
        HalfEdgeIndex { offsets: self.half_edge_offsets.clone(), target, mate }
    }

    /// The same vertex set with every edge touching a masked vertex removed.
    pub fn isolate(&self, mask: &[bool]) -> Multigraph {
        let edges = self.edges.iter().copied().filter(|&(u, v)| !mask[u as usize] && !mask[v as usize]).collect();
        Multigraph::from_edges(self.n, edges).expect("indices are in range")
    }

    /// No loops and no repeated edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
    }

    /// Text dump: header `n m`, then one `u v` line per edge in construction order.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {}", self.n, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::InvalidConfig("empty edge list".into()))??;
        let parse_pair = |line: &str| -> Result<(u64, u64)> {
            let mut it = line.split_whitespace().map(str::parse::<u64>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                _ => Err(Error::InvalidConfig(format!("malformed edge-list line: {line:?}"))),
            }
        };
        let (n, m) = parse_pair(&header)?;
        let mut edges = Vec::with_capacity(m as usize);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (u, v) = parse_pair(&line)?;
            edges.push((u as u32, v as u32));
        }
        if edges.len() as u64 != m {
            return Err(Error::InvalidConfig(format!("header announces {m} edges, found {}", edges.len())));
        }
        Self::from_edges(n as usize, edges)
    }
}

/// Uniform perfect matching of the half-edges: shuffle the half-edge array
/// once and pair consecutive entries.
pub fn sample_multigraph<R: Rng + ?Sized>(degrees: &[u32], rng: &mut R) -> Result<Multigraph> {
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return Err(Error::OddTotalDegree(total));
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(total as usize);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    stubs.shuffle(rng);
    let edges = stubs.chunks_exact(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
    Ok(Multigraph {
        n: degrees.len(),
        degrees: degrees.to_vec(),
        edges,
        half_edge_offsets: prefix_sums(degrees),
    })
}

/// Erdős–Gallai test for the existence of a simple graph with these degrees.
pub fn is_graphical(degrees: &[u32]) -> bool {
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return false;
    }
    let mut d: Vec<u64> = degrees.iter().map(|&x| x as u64).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    // suffix[i] = Σ_{j ≥ i} d_j, used with a moving pointer for Σ min(d_j, k).
    let mut lhs = 0u64;
    for k in 1..=n {
        lhs += d[k - 1];
        let rhs_tail: u64 = d[k..].iter().map(|&x| x.min(k as u64)).sum();
        if lhs > (k as u64) * (k as u64 - 1) + rhs_tail {
            return false;
        }
    }
    true
}

/// Uniform simple graph with the given degrees by rejection from the
/// configuration model.
pub fn sample_simple_graph<R: Rng + ?Sized>(degrees: &[u32], rng: &mut R, max_attempts: usize) -> Result<Multigraph> {
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return Err(Error::OddTotalDegree(total));
    }
    if !is_graphical(degrees) {
        return Err(Error::NotGraphical);
    }
    for _ in 0..max_attempts {
        let g = sample_multigraph(degrees, rng)?;
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::AttemptsExhausted(max_attempts))
}

/// Binomial random graph: every pair independently with probability `p`,
/// enumerated by geometric skips.
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Multigraph {
    assert!((0.0..=1.0).contains(&p), "edge probability out of range: {p}");
    let mut edges = Vec::new();
    if p >= 1.0 {
        for v in 1..n {
            for w in 0..v {
                edges.push((w as u32, v as u32));
            }
        }
    } else if p > 0.0 && n > 1 {
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.random();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as u32, v as u32));
            }
        }
    }
    Multigraph::from_edges(n, edges).expect("indices are in range")
}

/// Uniform simple graph with exactly `m` edges.
pub fn sample_gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Multigraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::InvalidConfig(format!("{m} edges exceed the {pairs} available pairs")));
    }
    let mut picked = rand::seq::index::sample(rng, pairs, m).into_vec();
    picked.sort_unstable();
    let edges = picked
        .into_iter()
        .map(|idx| {
            // idx enumerates pairs (w, v), w < v, row by row in v.
            let mut v = ((1.0 + (1.0 + 8.0 * idx as f64).sqrt()) / 2.0).floor() as usize;
            while v * (v - 1) / 2 > idx {
                v -= 1;
            }
            while (v + 1) * v / 2 <= idx {
                v += 1;
            }
            let w = idx - v * (v - 1) / 2;
            (w as u32, v as u32)
        })
        .collect();
    Multigraph::from_edges(n, edges)
}

/// I.i.d. Poisson(`mean`) degrees conditioned on an even total (the last
/// vertex is redrawn until the parity is even).
pub fn poisson_degrees<R: Rng + ?Sized>(n: usize, mean: f64, rng: &mut R) -> Vec<u32> {
    if n == 0 {
        return Vec::new();
    }
    if mean <= 0.0 {
        return vec![0; n];
    }
    let dist = Poisson::new(mean).expect("positive mean");
    let mut degrees: Vec<u32> = (0..n).map(|_| dist.sample(rng) as u32).collect();
    let mut total: u64 = degrees.iter().map(|&d| d as u64).sum();
    while total % 2 == 1 {
        total -= degrees[n - 1] as u64;
        degrees[n - 1] = dist.sample(rng) as u32;
        total += degrees[n - 1] as u64;
    }
    degrees
}

/// Degree counts `n_k = round(n · P(Poisson(mean) = k))`, with the most
/// common degree absorbing the rounding so the counts sum to `n`, and one
/// vertex moved up a degree if needed to make the total degree even.
pub fn poisson_counts(n: u64, mean: f64) -> DegreeCounts {
    let mut counts = DegreeCounts::new();
    if n == 0 {
        return counts;
    }
    let mut pk = (-mean).exp();
    let mut k = 0u32;
    let mut cumulative = 0.0;
    while cumulative < 1.0 - 1e-15 && k < 10_000 {
        let c = (n as f64 * pk).round() as u64;
        if c > 0 {
            counts.insert(k, c);
        }
        cumulative += pk;
        k += 1;
        pk *= mean / k as f64;
    }
    let mode = counts.iter().max_by_key(|&(_, &c)| c).map(|(&k, _)| k).unwrap_or(0);
    let total: u64 = counts.values().sum();
    let entry = counts.entry(mode).or_default();
    *entry = (*entry + n).saturating_sub(total);
    let degree: u64 = counts.iter().map(|(&k, &c)| k as u64 * c).sum();
    if degree % 2 == 1 {
        *counts.get_mut(&mode).expect("mode present") -= 1;
        *counts.entry(mode + 1).or_default() += 1;
    }
    counts.retain(|_, c| *c > 0);
    counts
}

/// Per-vertex degree list from counts, ascending.
pub fn expand_counts(counts: &DegreeCounts) -> Vec<u32> {
    counts.iter().flat_map(|(&k, &c)| std::iter::repeat_n(k, c as usize)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexState {
    Susceptible,
    Infective,
    Recovered,
}

impl VertexState {
    pub fn is_susceptible(self) -> bool {
        self == VertexState::Susceptible
    }

    pub fn is_infective(self) -> bool {
        self == VertexState::Infective
    }
}

/// How initial infectives (and recovered vertices) are placed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedMode {
    /// Uniformly random distinct vertices.
    #[default]
    UniformRandom,
    /// Exact per-degree counts taken from a configuration.
    ByDegreeSpec,
    /// The highest-degree vertices are infective (ties to the lowest index);
    /// recovered vertices uniform among the rest.
    HighestDegree,
}

pub fn assign_initial_states<R: Rng + ?Sized>(
    degrees: &[u32],
    n_i: usize,
    n_r: usize,
    mode: SeedMode,
    spec: Option<&DegreeConfiguration>,
    rng: &mut R,
) -> Result<Vec<VertexState>> {
    let n = degrees.len();
    let mut states = vec![VertexState::Susceptible; n];
    match mode {
        SeedMode::UniformRandom => {
            if n_i + n_r > n {
                return Err(Error::SpecMismatch(format!("{} seeds for {n} vertices", n_i + n_r)));
            }
            let chosen = rand::seq::index::sample(rng, n, n_i + n_r);
            for (j, v) in chosen.into_iter().enumerate() {
                states[v] = if j < n_i { VertexState::Infective } else { VertexState::Recovered };
            }
        }
        SeedMode::HighestDegree => {
            if n_i + n_r > n {
                return Err(Error::SpecMismatch(format!("{} seeds for {n} vertices", n_i + n_r)));
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
            for &v in &order[..n_i] {
                states[v] = VertexState::Infective;
            }
            let rest = &order[n_i..];
            for j in rand::seq::index::sample(rng, rest.len(), n_r) {
                states[rest[j]] = VertexState::Recovered;
            }
        }
        SeedMode::ByDegreeSpec => {
            let spec = spec.ok_or_else(|| Error::SpecMismatch("by-degree seeding needs a configuration".into()))?;
            let mut by_degree: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
            for (v, &d) in degrees.iter().enumerate() {
                by_degree.entry(d).or_default().push(v);
            }
            let mut wanted: std::collections::BTreeMap<u32, (u64, u64)> = Default::default();
            for (&k, &c) in &spec.infective {
                wanted.entry(k).or_default().0 += c;
            }
            for (&k, &c) in &spec.recovered {
                wanted.entry(k).or_default().1 += c;
            }
            for (&k, &(inf, rec)) in &wanted {
                let pool = by_degree.get(&k).map(Vec::as_slice).unwrap_or(&[]);
                let need = (inf + rec) as usize;
                if need > pool.len() {
                    return Err(Error::SpecMismatch(format!(
                        "degree {k}: {need} seeded vertices requested, {} available",
                        pool.len()
                    )));
                }
                for (j, idx) in rand::seq::index::sample(rng, pool.len(), need).into_iter().enumerate() {
                    states[pool[idx]] = if (j as u64) < inf { VertexState::Infective } else { VertexState::Recovered };
                }
            }
        }
    }
    Ok(states)
}

/// Per-degree state counts of a labelled population.
pub fn states_to_config(degrees: &[u32], states: &[VertexState], beta: f64, rho: f64) -> Result<DegreeConfiguration> {
    let mut maps = [DegreeCounts::new(), DegreeCounts::new(), DegreeCounts::new()];
    for (&d, &s) in degrees.iter().zip(states) {
        let idx = match s {
            VertexState::Susceptible => 0,
            VertexState::Infective => 1,
            VertexState::Recovered => 2,
        };
        *maps[idx].entry(d).or_default() += 1;
    }
    let [s, i, r] = maps;
    DegreeConfiguration::new(s, i, r, beta, rho)
}
