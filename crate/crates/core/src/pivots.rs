//! Pivot selection: Sparse Spatial Selection and uniform random sampling.

use rand::seq::{index, SliceRandom};
use rand::Rng as _;

use crate::distances::DistanceFunction;
use crate::error::{Error, Result};
use crate::objects::DataSet;
use crate::rng;

/// Default SSS separation factor.
pub const DEFAULT_ALPHA: f64 = 0.4;

/// Default number of sampled pairs per object when estimating the maximum distance.
pub const DEFAULT_PAIRS_PER_OBJECT: usize = 10;

/// Default number of farthest-object sweeps that refine the sampled maximum.
pub const DEFAULT_SWEEPS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PivotStrategy {
    Sparse {
        alpha: f64,
        max_distance: f64,
    },
    Random {
        count: usize,
    },
    /// Pivots supplied directly by the caller.
    Given,
}

/// Distinct object ids chosen as pivots, in selection order.
#[derive(Clone, Debug, PartialEq)]
pub struct PivotSet {
    ids: Vec<usize>,
    strategy: PivotStrategy,
    seed: Option<u64>,
}

impl PivotSet {
    /// Pivots given explicitly. Ids must be distinct and valid for a set of `n` objects.
    pub fn from_ids(ids: Vec<usize>, n: usize) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::param("pivot set is empty"));
        }
        let mut seen = vec![false; n];
        for &id in &ids {
            if id >= n {
                return Err(Error::param(format!(
                    "pivot id {id} out of range for {n} objects"
                )));
            }
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::param(format!("duplicate pivot id {id}")));
            }
        }
        Ok(PivotSet {
            ids,
            strategy: PivotStrategy::Given,
            seed: None,
        })
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn strategy(&self) -> PivotStrategy {
        self.strategy
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// Sparse Spatial Selection.
///
/// Objects are scanned in a seeded random order; the first becomes a pivot,
/// and every later object whose distance to all current pivots is at least
/// `alpha * max_distance` becomes one too.
pub fn sss_select<T: 'static>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    alpha: f64,
    max_distance: f64,
    seed: u64,
) -> Result<PivotSet> {
    if data.is_empty() {
        return Err(Error::param("cannot select pivots from an empty data set"));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::param(format!(
            "alpha must be in (0, 1], got {alpha}"
        )));
    }
    if !(max_distance > 0.0 && max_distance.is_finite()) {
        return Err(Error::param(format!(
            "maximum distance estimate must be positive, got {max_distance}"
        )));
    }
    let threshold = alpha * max_distance;
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(&mut rng::seeded(seed));

    let mut ids = vec![order[0]];
    'scan: for &candidate in &order[1..] {
        for &p in &ids {
            if d.eval(&data[candidate], &data[p])? < threshold {
                continue 'scan;
            }
        }
        ids.push(candidate);
    }
    Ok(PivotSet {
        ids,
        strategy: PivotStrategy::Sparse {
            alpha,
            max_distance,
        },
        seed: Some(seed),
    })
}

/// Largest distance over `sample_size` seeded random pairs of distinct objects.
pub fn estimate_max_distance<T: 'static>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    sample_size: usize,
    seed: u64,
) -> Result<f64> {
    let n = data.len();
    if n < 2 {
        return Err(Error::Degenerate(format!(
            "need at least 2 objects to estimate a distance range, got {n}"
        )));
    }
    if sample_size == 0 {
        return Err(Error::param("sample size must be positive"));
    }
    let mut rng = rng::seeded(seed);
    let mut max = 0.0f64;
    for _ in 0..sample_size {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        max = max.max(d.eval(&data[i], &data[j])?);
    }
    if max <= 0.0 {
        return Err(Error::Degenerate("all sampled distances are zero".into()));
    }
    Ok(max)
}

/// Largest distance seen while repeatedly jumping to the farthest object,
/// starting from `start`. Each sweep costs `n - 1` evaluations; the result
/// never exceeds the true diameter and is usually close to it.
pub fn farthest_sweep<T: 'static>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    start: usize,
    sweeps: usize,
) -> Result<f64> {
    if start >= data.len() {
        return Err(Error::param(format!(
            "start object {start} out of range for {} objects",
            data.len()
        )));
    }
    let mut from = start;
    let mut max = 0.0f64;
    for _ in 0..sweeps {
        let mut best = (from, 0.0f64);
        for (id, o) in data.iter().enumerate() {
            let dist = d.eval(&data[from], o)?;
            if dist > best.1 {
                best = (id, dist);
            }
        }
        if best.1 <= max {
            break;
        }
        max = best.1;
        from = best.0;
    }
    Ok(max)
}

/// `m` distinct ids drawn uniformly without replacement.
pub fn random_select<T>(data: &DataSet<T>, m: usize, seed: u64) -> Result<PivotSet> {
    if m == 0 || m > data.len() {
        return Err(Error::param(format!(
            "cannot pick {m} pivots from {} objects",
            data.len()
        )));
    }
    let ids = index::sample(&mut rng::seeded(seed), data.len(), m).into_vec();
    Ok(PivotSet {
        ids,
        strategy: PivotStrategy::Random { count: m },
        seed: Some(seed),
    })
}
