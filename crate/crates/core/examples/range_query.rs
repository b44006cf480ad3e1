// Builds a pivot table over uniform vectors and runs one range query in
// every filter mode, checking against a linear scan.

use ptolemaic::datagen::uniform_vectors;
use ptolemaic::distances::DistanceFunction;
use ptolemaic::experiments::radius_for_k;
use ptolemaic::index::{linear_scan, FilterMode, PivotTable};
use ptolemaic::pivots::{estimate_max_distance, sss_select, DEFAULT_ALPHA};
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let data = uniform_vectors(3000, 8, 7)?;
    let d = DistanceFunction::euclidean();
    let max = estimate_max_distance(&data, &d, 10 * data.len(), 1)?;
    let pivots = sss_select(&data, &d, DEFAULT_ALPHA, max, 2)?;
    let table = PivotTable::build(&data, &d, pivots)?;
    println!(
        "{} pivots, build cost {}",
        table.num_pivots(),
        table.build_cost()
    );

    let query = &data[0];
    let r = radius_for_k(&data, &d, query, 20)?;
    let truth = linear_scan(&data, &d, query, r)?;
    for mode in FilterMode::ALL {
        let (ids, stats) = table.range_query(query, r, mode, Some(&truth))?;
        println!(
            "{mode:>10}: {} results, {} candidates, {} distances, {} missed",
            ids.len(),
            stats.candidates,
            stats.total_distance_computations,
            stats.false_negatives.unwrap_or(0)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
