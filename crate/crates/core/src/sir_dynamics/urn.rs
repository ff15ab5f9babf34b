use rand::Rng;

use crate::degree_model::DegreeCounts;

/// Susceptible vertices grouped by degree, sampled by free half-edge: class
/// `k` is drawn with probability `k·S(k) / X_S`. Backed by a Fenwick tree over
/// the degree classes present initially.
#[derive(Clone, Debug)]
pub(crate) struct DegreeUrn {
    degrees: Vec<u32>,
    counts: Vec<u64>,
    tree: Vec<u64>,
    total: u64,
}

impl DegreeUrn {
    pub fn new(susceptible: &DegreeCounts) -> Self {
        let (degrees, counts): (Vec<u32>, Vec<u64>) =
            susceptible.iter().filter(|&(_, &c)| c > 0).map(|(&k, &c)| (k, c)).unzip();
        let mut urn = Self { tree: vec![0; degrees.len() + 1], degrees, counts, total: 0 };
        for i in 0..urn.degrees.len() {
            urn.add(i, urn.degrees[i] as u64 * urn.counts[i]);
        }
        urn
    }

    fn add(&mut self, class: usize, w: u64) {
        self.total += w;
        let mut i = class + 1;
        while i < self.tree.len() {
            self.tree[i] += w;
            i += i & i.wrapping_neg();
        }
    }

    fn sub(&mut self, class: usize, w: u64) {
        self.total -= w;
        let mut i = class + 1;
        while i < self.tree.len() {
            self.tree[i] -= w;
            i += i & i.wrapping_neg();
        }
    }

    /// Free susceptible half-edges, `X_S`.
    pub fn half_edges(&self) -> u64 {
        self.total
    }

    pub fn classes(&self) -> &[u32] {
        &self.degrees
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Removes the vertex owning a uniformly random susceptible half-edge and
    /// returns its degree. Panics if the urn is empty.
    pub fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u32 {
        let mut target = rng.random_range(0..self.total);
        let mut pos = 0usize;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                target -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        let class = pos;
        let k = self.degrees[class];
        self.counts[class] -= 1;
        self.sub(class, k as u64);
        k
    }
}
