//! The largest component just above the critical window.

use nearcrit::giant_component::verify_giant_law;
use nearcrit::graph_gen::{expand_counts, poisson_counts};

fn main() -> nearcrit::Result<()> {
    for n in [10_000u64, 100_000, 1_000_000] {
        let degrees = expand_counts(&poisson_counts(n, 1.0 + (n as f64).powf(-0.25)));
        let report = verify_giant_law(&degrees, 10, 1)?;
        println!(
            "n = {n:>7}: v(C1)/(n alpha) = {:.3} ± {:.3} (limit {:.3}), v(C2)/v(C1) = {:.3}",
            report.c1_over_nalpha.mean, report.c1_over_nalpha.stderr, report.predicted_c1_over_nalpha, report.c2_over_c1.mean
        );
    }
    Ok(())
}
