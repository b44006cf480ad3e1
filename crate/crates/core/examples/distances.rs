// Evaluates each built-in distance and shows the shared evaluation counter.

use ptolemaic::datagen::rgb_qf_matrix;
use ptolemaic::distances::DistanceFunction;
use ptolemaic::objects::{SetObj, StringObj, VectorObj};
use ptolemaic::Result;

pub fn run_example() -> Result<()> {
    let x = VectorObj::new(vec![0.0, 0.0, 0.0])?;
    let y = VectorObj::new(vec![1.0, 2.0, 2.0])?;
    let vector_distances = [
        DistanceFunction::lp(1.0)?,
        DistanceFunction::euclidean(),
        DistanceFunction::lp(3.0)?,
        DistanceFunction::chebyshev(),
        DistanceFunction::quadratic_form(rgb_qf_matrix(3)?),
        DistanceFunction::lp(1.0)?.sqrt(),
    ];
    for d in &vector_distances {
        println!(
            "{:>10}  d = {:.4}  ptolemaic: {}",
            d.name(),
            d.eval(&x, &y)?,
            d.is_ptolemaic()
        );
    }
    let a = VectorObj::new(vec![1.0, 0.0])?;
    let b = VectorObj::new(vec![1.0, 1.0])?;
    println!(
        "{:>10}  d = {:.4}",
        "angle",
        DistanceFunction::angular().eval(&a, &b)?
    );

    let s = SetObj::new(vec![1, 2, 3])?;
    let t = SetObj::new(vec![2, 3, 4, 5])?;
    println!(
        "{:>10}  d = {}",
        "hamming",
        DistanceFunction::hamming().eval(&s, &t)?
    );
    println!(
        "{:>10}  d = {:.4}",
        "jaccard",
        DistanceFunction::jaccard().eval(&s, &t)?
    );

    let lev = DistanceFunction::levenshtein();
    let (k, w) = (StringObj::new("kitten"), StringObj::new("sitting"));
    println!("{:>10}  d = {}", "edit", lev.eval(&k, &w)?);

    // clones share one counter
    let counted = lev.clone();
    for _ in 0..4 {
        counted.eval(&k, &w)?;
    }
    println!("levenshtein evaluations so far: {}", lev.evaluations());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
