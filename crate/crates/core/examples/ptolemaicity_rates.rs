// Estimates how often non-Ptolemaic distances still satisfy Ptolemy's
// inequality on random quadruples.

use ptolemaic::datagen::{clustered_vectors, random_sets, uniform_vectors, DataSource};
use ptolemaic::distances::DistanceFunction;
use ptolemaic::ptolemaicity::{ptolemaicity_rate, RateConfig};
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let cfg = RateConfig {
        quadruples: 2000,
        runs: 3,
        seed: 11,
        ..RateConfig::default()
    };
    let sets = DataSource::generated(|seed| random_sets(2000, 10, seed));
    let clustered = DataSource::generated(|seed| clustered_vectors(2000, 5, 10, 0.1, seed));
    let uniform = DataSource::generated(|seed| uniform_vectors(2000, 10, seed));

    let mut rows = Vec::new();
    rows.push(
        ptolemaicity_rate(&sets, &DistanceFunction::hamming(), &cfg)?.row("hamming", "sets-z10"),
    );
    rows.push(
        ptolemaicity_rate(&sets, &DistanceFunction::jaccard(), &cfg)?.row("jaccard", "sets-z10"),
    );
    for (name, d) in [
        ("l1", DistanceFunction::lp(1.0)?),
        ("linf", DistanceFunction::chebyshev()),
    ] {
        rows.push(ptolemaicity_rate(&clustered, &d, &cfg)?.row(name, "clustered-r5"));
    }
    let l2 = DistanceFunction::euclidean();
    rows.push(ptolemaicity_rate(&uniform, &l2, &cfg)?.row("l2", "uniform-r10"));
    let root = DistanceFunction::lp(1.0)?.sqrt();
    rows.push(ptolemaicity_rate(&uniform, &root, &cfg)?.row("sqrt(l1)", "uniform-r10"));

    for r in rows {
        println!(
            "{:>9} {:>13}  mean {:.4}  std {:.4}",
            r.distance, r.dataset, r.mean, r.std
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
