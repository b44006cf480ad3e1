// Pivot lower bounds for a single object, and their interval forms.

use ptolemaic::bounds::{
    pto_interval_general, pto_lower, shell_lower, tri_interval, tri_lower, DistanceInterval,
};
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    // q = (-1, 0), pivots p = (0, 0) and s = (1, 0), object o = (0, 1)
    let (qp, qs, ps) = (1.0, 2.0, 1.0);
    let (op, os) = (1.0, 2f64.sqrt());
    let actual = 2f64.sqrt();
    let tri = tri_lower(qp, op).max(tri_lower(qs, os));
    let pto = pto_lower(qp, qs, op, os, ps)?;
    println!("actual {actual:.4}  triangular {tri:.4}  ptolemaic {pto:.4}");

    let r = 0.5;
    println!("shell bound at r = {r}: {:.4}", shell_lower(qp, qs, ps, r));

    // only ranges are known for the query distances
    let i = |lo, hi| DistanceInterval::new(lo, hi);
    let t = tri_interval(i(1.0, 2.0)?, i(5.0, 6.0)?);
    println!("triangular interval [{}, {}]", t.lo(), t.hi());
    let p = pto_interval_general(
        i(0.9, 1.1)?,
        i(1.9, 2.1)?,
        DistanceInterval::exact(ps),
        DistanceInterval::exact(op),
        DistanceInterval::exact(os),
    )?;
    println!(
        "ptolemaic interval [{:.4}, {:.4}] contains {actual:.4}: {}",
        p.lo(),
        p.hi(),
        p.contains(actual)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
