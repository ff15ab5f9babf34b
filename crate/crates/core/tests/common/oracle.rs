//! Exact final-size law on small configuration models: enumerate every
//! perfect matching of the half-edges, then solve the embedded jump chain of
//! the epidemic on each distinct multigraph.

use std::collections::HashMap;

use nearcrit::degree_model::DegreeConfiguration;

fn matchings(stubs: &[u32], edges: &mut Vec<(u32, u32)>, out: &mut HashMap<Vec<(u32, u32)>, u64>) {
    if stubs.is_empty() {
        let mut key = edges.clone();
        key.sort_unstable();
        *out.entry(key).or_default() += 1;
        return;
    }
    let first = stubs[0];
    for j in 1..stubs.len() {
        let mut rest = stubs[1..].to_vec();
        let partner = rest.remove(j - 1);
        edges.push((first.min(partner), first.max(partner)));
        matchings(&rest, edges, out);
        edges.pop();
    }
}

struct Chain {
    /// `adj[v]` lists the other endpoint of every half-edge of `v`.
    adj: Vec<Vec<u32>>,
    beta: f64,
    rho: f64,
    memo: HashMap<(u32, u32), Vec<f64>>,
}

impl Chain {
    /// Distribution of further infections from the state (S, I) as bit masks.
    fn solve(&mut self, s: u32, i: u32) -> Vec<f64> {
        if let Some(d) = self.memo.get(&(s, i)) {
            return d.clone();
        }
        let n = self.adj.len();
        let mut pressure = vec![0u32; n];
        let mut infectives = 0u32;
        for u in 0..n {
            if i >> u & 1 == 1 {
                infectives += 1;
                for &w in &self.adj[u] {
                    if s >> w & 1 == 1 {
                        pressure[w as usize] += 1;
                    }
                }
            }
        }
        let active: u32 = pressure.iter().sum();
        let mut dist = vec![0.0; n + 1];
        if active == 0 {
            dist[0] = 1.0;
        } else {
            let total = self.beta * active as f64 + self.rho * infectives as f64;
            for w in 0..n {
                if pressure[w] > 0 {
                    let p = self.beta * pressure[w] as f64 / total;
                    let sub = self.solve(s & !(1 << w), i | 1 << w);
                    for (j, q) in sub.iter().enumerate().take(n) {
                        dist[j + 1] += p * q;
                    }
                }
            }
            if self.rho > 0.0 {
                for u in 0..n {
                    if i >> u & 1 == 1 {
                        let p = self.rho / total;
                        let sub = self.solve(s, i & !(1 << u));
                        for (j, q) in sub.iter().enumerate() {
                            dist[j] += p * q;
                        }
                    }
                }
            }
        }
        self.memo.insert((s, i), dist.clone());
        dist
    }
}

/// Exact law of the number of initially susceptible vertices ever infected,
/// indexed by that number, for the vertex layout of `config.expand()`.
pub fn exact_final_size(config: &DegreeConfiguration) -> Vec<f64> {
    let (degrees, states) = config.expand();
    let n = degrees.len();
    assert!(n <= 30);
    let stubs: Vec<u32> = degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v as u32, d as usize)).collect();
    let mut graphs = HashMap::new();
    matchings(&stubs, &mut Vec::new(), &mut graphs);
    let total: u64 = graphs.values().sum();
    let s0: u32 = states.iter().enumerate().filter(|(_, s)| s.is_susceptible()).map(|(v, _)| 1 << v).sum();
    let i0: u32 = states.iter().enumerate().filter(|(_, s)| s.is_infective()).map(|(v, _)| 1 << v).sum();
    let mut law = vec![0.0; n + 1];
    for (edges, weight) in graphs {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut chain = Chain { adj, beta: config.beta, rho: config.rho, memo: HashMap::new() };
        for (j, p) in chain.solve(s0, i0).into_iter().enumerate() {
            law[j] += weight as f64 / total as f64 * p;
        }
    }
    let support = config.n_s() as usize + 1;
    assert!(law[support..].iter().all(|&p| p.abs() < 1e-12));
    law.truncate(support);
    law
}
