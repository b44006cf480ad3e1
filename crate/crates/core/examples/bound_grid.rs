// Ratio of lower bound to true distance around two pivots, drawn as text.

use ptolemaic::distances::DistanceFunction;
use ptolemaic::experiments::{bound_accuracy_grid, GridCell, GridSpec};
use ptolemaic::Result;

const SHADES: &[u8] = b" .:-=+*#%@";

fn draw(label: &str, cells: &[GridCell], width: usize, ratio: impl Fn(&GridCell) -> f64) {
    println!("{label}");
    for row in cells.chunks(width).rev() {
        let line: String = row
            .iter()
            .map(|c| SHADES[(ratio(c) * (SHADES.len() - 1) as f64).round() as usize] as char)
            .collect();
        println!("  {line}");
    }
}

pub fn run_example() -> Result<()> {
    let spec = GridSpec {
        nx: 41,
        ny: 21,
        ..GridSpec::default()
    };
    let cells = bound_accuracy_grid(&DistanceFunction::euclidean(), &spec)?;
    draw("triangular", &cells, spec.nx, |c| c.tri_ratio);
    draw("ptolemaic", &cells, spec.nx, |c| c.pto_ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
