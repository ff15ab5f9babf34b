//! Connected components of (multi)graphs and a Monte Carlo check of the size
//! of the largest component just above the critical window.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degree_model::DegreeCounts;
use crate::graph_gen::{sample_multigraph, Multigraph};
use crate::rng::{stream, Purpose};
use crate::stats::{mean_stderr, Estimate};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    /// Vertex counts, descending.
    pub sizes: Vec<u64>,
    pub c1_vertices: u64,
    pub c2_vertices: u64,
    /// Loops count once, parallel edges by multiplicity.
    pub c1_edges: u64,
    pub c1_degree_profile: DegreeCounts,
}

/// Component label of every vertex, labels numbered in order of each
/// component's lowest vertex.
pub fn component_labels(graph: &Multigraph) -> Vec<u32> {
    const UNSEEN: u32 = u32::MAX;
    let idx = graph.half_edge_index();
    let mut label = vec![UNSEEN; graph.n()];
    let mut stack = Vec::new();
    let mut next = 0u32;
    for root in 0..graph.n() {
        if label[root] != UNSEEN {
            continue;
        }
        label[root] = next;
        stack.push(root as u32);
        while let Some(v) = stack.pop() {
            for &w in idx.neighbors(v as usize) {
                if label[w as usize] == UNSEEN {
                    label[w as usize] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// Ties for the largest component go to the one holding the lowest vertex.
pub fn components(graph: &Multigraph) -> ComponentSummary {
    let label = component_labels(graph);
    let count = label.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    let mut vertices = vec![0u64; count];
    for &l in &label {
        vertices[l as usize] += 1;
    }
    // max_by_key keeps the last maximum, so scan in reverse to keep the first.
    let c1 = (0..count).rev().max_by_key(|&c| vertices[c]);
    let mut sizes = vertices.clone();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let (c1_edges, c1_degree_profile) = match c1 {
        Some(c1) => {
            let edges = graph.edges().iter().filter(|&&(u, _)| label[u as usize] as usize == c1).count() as u64;
            let mut profile = DegreeCounts::new();
            for (v, &d) in graph.degrees().iter().enumerate() {
                if label[v] as usize == c1 {
                    *profile.entry(d).or_default() += 1;
                }
            }
            (edges, profile)
        }
        None => (0, DegreeCounts::new()),
    };
    ComponentSummary {
        c1_vertices: sizes.first().copied().unwrap_or(0),
        c2_vertices: sizes.get(1).copied().unwrap_or(0),
        sizes,
        c1_edges,
        c1_degree_profile,
    }
}

/// Degree-sequence quantities entering the giant-component law. Here `alpha`
/// is `Σ k(k−2) n_k / n` over all vertices, distinct from the epidemic `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GiantParameters {
    pub n: u64,
    pub alpha: f64,
    pub lambda: f64,
    pub gamma: f64,
}

impl GiantParameters {
    pub fn from_counts(counts: &DegreeCounts) -> Self {
        let n: u64 = counts.values().sum();
        let nf = n as f64;
        let sum = |f: &dyn Fn(f64) -> f64| counts.iter().map(|(&k, &c)| f(k as f64) * c as f64).sum::<f64>() / nf;
        Self {
            n,
            alpha: sum(&|k| k * (k - 2.0)),
            lambda: sum(&|k| k),
            gamma: sum(&|k| k * (k - 1.0) * (k - 2.0)),
        }
    }

    /// `2λ/γ`, the predicted limit of `v(C₁)/(nα)` and `e(C₁)/(nα)`.
    pub fn c1_ratio(&self) -> f64 {
        2.0 * self.lambda / self.gamma
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeRatio {
    pub k: u32,
    pub predicted: f64,
    pub observed: Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GiantLawReport {
    pub n: u64,
    pub alpha: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub reps: usize,
    pub predicted_c1_over_nalpha: f64,
    pub c1_over_nalpha: Estimate,
    pub c2_over_nalpha: Estimate,
    pub e1_over_nalpha: Estimate,
    pub c2_over_c1: Estimate,
    pub per_degree: Vec<DegreeRatio>,
    pub warnings: Vec<String>,
}

fn precondition_warnings(p: &GiantParameters, counts: &DegreeCounts) -> Vec<String> {
    let mut out = Vec::new();
    if p.alpha <= 0.0 {
        out.push(format!("alpha = {} is not positive", p.alpha));
    } else if (p.n as f64).cbrt() * p.alpha < 1.0 {
        out.push(format!("n^(1/3)·alpha = {:.3} is not large", (p.n as f64).cbrt() * p.alpha));
    }
    if counts.get(&1).copied().unwrap_or(0) == 0 {
        out.push("no vertices of degree 1".into());
    }
    if p.gamma <= 0.0 {
        out.push(format!("gamma = {} is not positive", p.gamma));
    }
    out
}

/// Samples `reps` configuration-model multigraphs with the given degrees and
/// compares the largest two components with the predicted scaling. Replica
/// `r` uses graph stream `r` of `master_seed`.
pub fn verify_giant_law(degrees: &[u32], reps: usize, master_seed: u64) -> crate::Result<GiantLawReport> {
    let mut counts = DegreeCounts::new();
    for &d in degrees {
        *counts.entry(d).or_default() += 1;
    }
    let p = GiantParameters::from_counts(&counts);
    let warnings = precondition_warnings(&p, &counts);
    let summaries: Vec<ComponentSummary> = (0..reps)
        .into_par_iter()
        .map(|r| {
            let g = sample_multigraph(degrees, &mut stream(master_seed, Purpose::Graph, r as u64))?;
            Ok(components(&g))
        })
        .collect::<crate::Result<_>>()?;
    let scale = p.n as f64 * p.alpha;
    let ratio = |f: &dyn Fn(&ComponentSummary) -> f64| mean_stderr(&summaries.iter().map(f).collect::<Vec<_>>());
    let per_degree = counts
        .iter()
        .map(|(&k, &c)| DegreeRatio {
            k,
            predicted: 2.0 * k as f64 * (c as f64 / p.n as f64) / p.gamma,
            observed: ratio(&|s| s.c1_degree_profile.get(&k).copied().unwrap_or(0) as f64 / scale),
        })
        .collect();
    Ok(GiantLawReport {
        n: p.n,
        alpha: p.alpha,
        lambda: p.lambda,
        gamma: p.gamma,
        reps,
        predicted_c1_over_nalpha: p.c1_ratio(),
        c1_over_nalpha: ratio(&|s| s.c1_vertices as f64 / scale),
        c2_over_nalpha: ratio(&|s| s.c2_vertices as f64 / scale),
        e1_over_nalpha: ratio(&|s| s.c1_edges as f64 / scale),
        c2_over_c1: ratio(&|s| s.c2_vertices as f64 / s.c1_vertices.max(1) as f64),
        per_degree,
        warnings,
    })
}
