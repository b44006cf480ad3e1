use std::cmp::Ordering;

use super::Metric;
use crate::error::Result;
use crate::objects::SetObj;

/// Sizes of (symmetric difference, union) by a merge over the sorted elements.
fn diff_and_union(a: &SetObj, b: &SetObj) -> (usize, usize) {
    let (a, b) = (a.elements(), b.elements());
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    let union = a.len() + b.len() - common;
    (union - common, union)
}

/// `|a Δ b|`.
pub fn hamming_set(a: &SetObj, b: &SetObj) -> u64 {
    diff_and_union(a, b).0 as u64
}

/// `|a Δ b| / |a ∪ b|`, and 0 for two empty sets.
pub fn jaccard(a: &SetObj, b: &SetObj) -> f64 {
    match diff_and_union(a, b) {
        (_, 0) => 0.0,
        (diff, union) => diff as f64 / union as f64,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Hamming;

impl Metric<SetObj> for Hamming {
    fn eval(&self, a: &SetObj, b: &SetObj) -> Result<f64> {
        Ok(hamming_set(a, b) as f64)
    }

    fn name(&self) -> String {
        "hamming".into()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Jaccard;

impl Metric<SetObj> for Jaccard {
    fn eval(&self, a: &SetObj, b: &SetObj) -> Result<f64> {
        Ok(jaccard(a, b))
    }

    fn name(&self) -> String {
        "jaccard".into()
    }
}
