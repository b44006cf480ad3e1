// Splits the negatives of 10-NN queries by which bound filters them.

use ptolemaic::datagen::{uniform_vectors, DataSource};
use ptolemaic::distances::DistanceFunction;
use ptolemaic::experiments::{relative_power, Labels, RegionConfig};
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let source = DataSource::generated(|seed| uniform_vectors(3000, 10, seed));
    let cfg = RegionConfig {
        pivot_counts: vec![1, 5, 10, 20],
        queries: 20,
        runs: 2,
        seed: 3,
        ..RegionConfig::default()
    };
    let rows = relative_power(
        &source,
        &DistanceFunction::euclidean(),
        &cfg,
        &Labels::new("l2", "u10"),
    )?;
    println!("pivots    ptoOnly       both    triOnly    neither  ptolemaic share");
    for r in rows {
        println!(
            "{:>6} {:>10.1} {:>10.1} {:>10.1} {:>10.1} {:>16.3}",
            r.pivots, r.pto_only, r.both, r.tri_only, r.neither, r.pto_fraction
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
