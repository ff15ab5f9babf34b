//! Final size against the number of initial infectives, one Sellke draw per
//! realisation, written as CSV to standard output.

use nearcrit::degree_model::DegreeConfiguration;
use nearcrit::graph_gen::{expand_counts, poisson_counts};
use nearcrit::harness::figure_fs_scatter;
use nearcrit::sellke::write_sweep_csv;

fn main() -> nearcrit::Result<()> {
    let config = DegreeConfiguration::all_susceptible(&expand_counts(&poisson_counts(100_000, 2.02)), 1.0, 1.0)?;
    let m_grid: Vec<usize> = (1..=100).map(|j| 10 * j).collect();
    let rows = figure_fs_scatter(&config, 5, &m_grid, 11)?;
    write_sweep_csv(&rows, std::io::stdout().lock())
}
