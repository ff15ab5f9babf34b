use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::exp_time;

/// Final size (new infections) of the SIR epidemic on the binomial random
/// graph `G(n, p)` with `n_i` initial infectives and everyone else
/// susceptible. Only whether each infective transmits to each vertex still
/// uninfected matters for the final size: a vertex with infectious period `τ`
/// reaches each such vertex independently with probability
/// `p (1 − e^{−βτ})`, so edges are revealed only as the outbreak explores them.
pub fn gnp_final_size<R: Rng + ?Sized>(n: u64, p: f64, n_i: u64, beta: f64, rho: f64, rng: &mut R) -> u64 {
    assert!(n_i <= n && (0.0..=1.0).contains(&p));
    let mut uninfected = n - n_i;
    let mut pending = n_i;
    while pending > 0 && uninfected > 0 {
        pending -= 1;
        let reach = if rho > 0.0 { p * -(-beta * exp_time(rho, rng)).exp_m1() } else { p };
        let hit = Binomial::new(uninfected, reach.clamp(0.0, 1.0)).expect("valid binomial").sample(rng);
        uninfected -= hit;
        pending += hit;
    }
    n - n_i - uninfected
}
