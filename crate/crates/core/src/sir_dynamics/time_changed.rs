use rand::Rng;

use super::urn::DegreeUrn;
use super::{deterministic_trajectories, exp_time, EpidemicOutcome, TimeScale, TrajectoryRecord};
use crate::degree_model::DegreeConfiguration;

const RECOVERED: u32 = u32::MAX;

/// Free infective half-edges, stored by owner. Entries of recovered owners go
/// stale and are purged when sampled.
struct InfectiveHalfEdges {
    owners: Vec<u32>,
    free: Vec<u32>,
    /// Position in `alive`, or `RECOVERED`.
    slot: Vec<u32>,
    alive: Vec<u32>,
    count: u64,
}

impl InfectiveHalfEdges {
    fn new() -> Self {
        Self { owners: Vec::new(), free: Vec::new(), slot: Vec::new(), alive: Vec::new(), count: 0 }
    }

    fn add_vertex(&mut self, free: u32) {
        let id = self.free.len() as u32;
        self.free.push(free);
        self.slot.push(self.alive.len() as u32);
        self.alive.push(id);
        self.owners.extend(std::iter::repeat_n(id, free as usize));
        self.count += free as u64;
    }

    /// Removes a uniformly random free infective half-edge.
    fn take<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        loop {
            let p = rng.random_range(0..self.owners.len());
            let owner = self.owners.swap_remove(p) as usize;
            if self.slot[owner] != RECOVERED {
                self.free[owner] -= 1;
                self.count -= 1;
                return;
            }
        }
    }

    /// Recovers a uniformly random infective vertex and returns its free half-edges.
    fn recover<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u32 {
        let p = rng.random_range(0..self.alive.len());
        let v = self.alive.swap_remove(p) as usize;
        if p < self.alive.len() {
            self.slot[self.alive[p] as usize] = p as u32;
        }
        self.slot[v] = RECOVERED;
        let freed = std::mem::take(&mut self.free[v]);
        self.count -= freed as u64;
        freed
    }
}

/// The epidemic with every rate multiplied by `(x − 1) / (β x_I)`: each free
/// susceptible half-edge is infected at rate 1, free infective half-edges pair
/// at total rate `x − 1` and infective vertices recover at rate
/// `ρ (x − 1) / (β x_I)`. Stops when `X_I = 0`; `duration` is that time.
/// The state is recorded at each `grid` time.
pub fn run_time_changed<R: Rng + ?Sized>(
    config: &DegreeConfiguration,
    rng: &mut R,
    grid: &[f64],
) -> (EpidemicOutcome, TrajectoryRecord) {
    let recovery_scale = config.rho / config.beta;
    let mut urn = DegreeUrn::new(&config.susceptible);
    let mut record = TrajectoryRecord::new(grid, urn.classes().to_vec());
    record.deterministic = deterministic_trajectories(config, grid).ok();
    let mut inf = InfectiveHalfEdges::new();
    for (&k, &c) in &config.infective {
        for _ in 0..c {
            inf.add_vertex(k);
        }
    }
    let mut x_r = config.x_r0();
    let mut outcome = EpidemicOutcome::empty(TimeScale::TimeChanged);
    let mut t = 0.0;

    while inf.count > 0 {
        let x_s = urn.half_edges();
        let x = x_s + inf.count + x_r;
        let pair_rate = (x - 1) as f64;
        let recovery_rate = recovery_scale * inf.alive.len() as f64 * pair_rate / inf.count as f64;
        let total = pair_rate + recovery_rate;
        let next = t + exp_time(total, rng);
        record.fill_before(next, urn.counts(), x_s, inf.count, x_r);
        t = next;
        if rng.random::<f64>() * total < pair_rate {
            inf.take(rng);
            let u = rng.random_range(0..x - 1);
            if u < x_s {
                let k = urn.draw(rng);
                outcome.record_infection(k, t);
                inf.add_vertex(k - 1);
            } else if u < x_s + inf.count {
                inf.take(rng);
            } else {
                x_r -= 1;
            }
            outcome.pairing_events += 1;
        } else {
            x_r += inf.recover(rng) as u64;
        }
    }
    outcome.duration = t;
    record.fill_before(f64::INFINITY, urn.counts(), urn.half_edges(), 0, x_r);
    (outcome, record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_model::DegreeCounts;
    use crate::rng::{stream, Purpose};

    fn config() -> DegreeConfiguration {
        DegreeConfiguration::new([(1, 50), (2, 40), (3, 30)].into(), [(2, 2), (3, 2)].into(), [(1, 4)].into(), 1.0, 0.7).unwrap()
    }

    #[test]
    fn grid_at_zero_is_the_initial_state() {
        let c = config();
        let (_, rec) = run_time_changed(&c, &mut stream(1, Purpose::Epidemic, 0), &[0.0]);
        assert_eq!(rec.x_s, vec![c.x_s0()]);
        assert_eq!(rec.x_i, vec![c.x_i0()]);
        assert_eq!(rec.x_r, vec![c.x_r0()]);
        assert_eq!(rec.s_k, vec![vec![50, 40, 30]]);
        assert_eq!(rec.degrees, vec![1, 2, 3]);
    }

    #[test]
    fn recorded_counts_are_consistent() {
        let c = config();
        let grid: Vec<f64> = (0..200).map(|i| i as f64 * 0.02).collect();
        let mut rng = stream(2, Purpose::Epidemic, 0);
        for _ in 0..200 {
            let (out, rec) = run_time_changed(&c, &mut rng, &grid);
            assert_eq!(rec.x_s.len(), grid.len());
            for j in 0..grid.len() {
                let from_classes: u64 = rec.degrees.iter().zip(&rec.s_k[j]).map(|(&k, &s)| k as u64 * s).sum();
                assert_eq!(from_classes, rec.x_s[j]);
                if j > 0 {
                    assert!(rec.x_s[j] <= rec.x_s[j - 1]);
                }
                let x = rec.x_s[j] + rec.x_i[j] + rec.x_r[j];
                assert_eq!(x % 2, 0);
                if grid[j] >= out.duration {
                    assert_eq!(rec.x_i[j], 0);
                }
            }
            assert_eq!(out.final_size, out.final_size_by_degree.values().sum::<u64>());
            assert!(out.last_infection <= out.duration);
        }
    }

    #[test]
    fn zero_initial_infective_half_edges_ends_at_once() {
        let c = DegreeConfiguration::new([(2, 3)].into(), [(0, 2)].into(), DegreeCounts::new(), 1.0, 1.0).unwrap();
        let (out, rec) = run_time_changed(&c, &mut stream(3, Purpose::Epidemic, 0), &[0.0, 1.0]);
        assert_eq!(out.final_size, 0);
        assert_eq!(out.duration, 0.0);
        assert_eq!(rec.x_s, vec![6, 6]);
    }
}
