// Edit-distance search over a word list with triangular filtering, which
// stays exact for any metric.

use std::path::Path;

use ptolemaic::datagen::load_strings;
use ptolemaic::distances::DistanceFunction;
use ptolemaic::index::{FilterMode, PivotTable};
use ptolemaic::objects::StringObj;
use ptolemaic::pivots::random_select;
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/words.txt");
    let words = load_strings(path, 1)?;
    let d = DistanceFunction::levenshtein();
    let table = PivotTable::build(&words, &d, random_select(&words, 16, 9)?)?;
    for q in ["pattern", "sience", "goverment"] {
        let (ids, stats) =
            table.range_query(&StringObj::new(q), 2.0, FilterMode::Triangular, None)?;
        let found: Vec<String> = ids.iter().map(|&i| words[i].to_string()).collect();
        println!(
            "{q:>10} ({} distances): {}",
            stats.total_distance_computations,
            found.join(" ")
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
