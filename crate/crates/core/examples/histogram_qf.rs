// Color histograms compared with a quadratic form distance; the Ptolemaic
// bound is sound for it.

use ptolemaic::datagen::{synthetic_histograms, write_qf_matrix};
use ptolemaic::distances::DistanceFunction;
use ptolemaic::experiments::radius_for_k;
use ptolemaic::index::{linear_scan, FilterMode, PivotTable};
use ptolemaic::pivots::random_select;
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let (data, matrix) = synthetic_histograms(1000, 27, 3)?;
    let first_row: String = write_qf_matrix(&matrix)
        .lines()
        .next()
        .unwrap_or_default()
        .into();
    println!("weight matrix row 0: {first_row}");
    let d = DistanceFunction::quadratic_form(matrix);
    let table = PivotTable::build(&data, &d, random_select(&data, 12, 4)?)?;
    for q in [5, 50, 500] {
        let r = radius_for_k(&data, &d, &data[q], 10)?;
        let truth = linear_scan(&data, &d, &data[q], r)?;
        let (ids, stats) = table.range_query(&data[q], r, FilterMode::Combined, Some(&truth))?;
        println!(
            "query {q}: {} results, cost {}, exact: {}",
            ids.len(),
            stats.total_distance_computations,
            ids == truth
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
