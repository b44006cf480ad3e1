// Average query cost per filter mode and neighbour count, printed as CSV.

use ptolemaic::datagen::{uniform_vectors, DataSource};
use ptolemaic::distances::DistanceFunction;
use ptolemaic::experiments::{bench_filtering, to_csv, BenchConfig, Labels};
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let source = DataSource::generated(|seed| uniform_vectors(2000, 10, seed));
    let cfg = BenchConfig {
        queries: 20,
        runs: 2,
        seed: 5,
        ..BenchConfig::default()
    };
    let rows = bench_filtering(
        &source,
        &DistanceFunction::euclidean(),
        &cfg,
        &Labels::new("l2", "uniform-r10"),
    )?;
    print!("{}", to_csv(&rows)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
