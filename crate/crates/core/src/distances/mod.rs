//! Dissimilarity functions over vectors, sets and strings.
//!
//! Every evaluation through a [`DistanceFunction`] bumps a shared atomic
//! counter, which is what the index and the experiments report as cost.
//! The free functions (`lp_distance`, `levenshtein`, ...) are the raw
//! uncounted kernels.

mod qf;
mod sets;
mod strings;
mod vectors;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use qf::{qf_matrix_from_bin_distances, QfMatrix, PD_PIVOT_THRESHOLD};
pub use sets::{hamming_set, jaccard, Hamming, Jaccard};
pub use strings::{levenshtein, Levenshtein};
pub use vectors::{
    angular_distance, lp_distance, quadratic_form_distance, Angular, Euclidean, Lp, Norm,
    QuadraticForm,
};

use crate::error::Result;
use crate::objects::{SetObj, StringObj, VectorObj};

/// An uncounted dissimilarity over objects of type `T`.
pub trait Metric<T>: fmt::Debug + Send + Sync {
    fn eval(&self, a: &T, b: &T) -> Result<f64>;

    /// Short identifier used in reports, e.g. `l2`, `sqrt(l1)`.
    fn name(&self) -> String;

    /// Whether the distance is known to satisfy Ptolemy's inequality exactly.
    fn is_ptolemaic(&self) -> bool {
        false
    }
}

/// `sqrt(d)` for an inner metric `d`. Ptolemaic whenever `d` is a metric.
pub struct SqrtOf<T> {
    inner: Arc<dyn Metric<T>>,
}

impl<T> fmt::Debug for SqrtOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SqrtOf").field(&self.inner).finish()
    }
}

impl<T> Metric<T> for SqrtOf<T> {
    fn eval(&self, a: &T, b: &T) -> Result<f64> {
        Ok(self.inner.eval(a, b)?.sqrt())
    }

    fn name(&self) -> String {
        format!("sqrt({})", self.inner.name())
    }

    fn is_ptolemaic(&self) -> bool {
        true
    }
}

/// A metric plus an evaluation counter.
///
/// Clones share both the metric and the counter, so a table built with one
/// clone and queried with another accumulates into the same total.
pub struct DistanceFunction<T> {
    metric: Arc<dyn Metric<T>>,
    counter: Arc<AtomicU64>,
}

impl<T> Clone for DistanceFunction<T> {
    fn clone(&self) -> Self {
        DistanceFunction {
            metric: Arc::clone(&self.metric),
            counter: Arc::clone(&self.counter),
        }
    }
}

impl<T> fmt::Debug for DistanceFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceFunction")
            .field("metric", &self.metric)
            .field("evaluations", &self.evaluations())
            .finish()
    }
}

impl<T: 'static> DistanceFunction<T> {
    pub fn new(metric: impl Metric<T> + 'static) -> Self {
        DistanceFunction {
            metric: Arc::new(metric),
            counter: Arc::new(AtomicU64::new(0)),
        }
    }

    /// The square-root transform of this distance. The result shares this
    /// function's counter; each call of the result counts once.
    pub fn sqrt(&self) -> Self {
        DistanceFunction {
            metric: Arc::new(SqrtOf {
                inner: Arc::clone(&self.metric),
            }),
            counter: Arc::clone(&self.counter),
        }
    }
}

impl<T> DistanceFunction<T> {
    /// Evaluates the distance, counting exactly one evaluation.
    pub fn eval(&self, a: &T, b: &T) -> Result<f64> {
        self.counter.fetch_add(1, Ordering::Relaxed);
        self.metric.eval(a, b)
    }

    pub fn evaluations(&self) -> u64 {
        self.counter.load(Ordering::Relaxed)
    }

    pub fn reset_counter(&self) {
        self.counter.store(0, Ordering::Relaxed);
    }

    pub fn name(&self) -> String {
        self.metric.name()
    }

    pub fn is_ptolemaic(&self) -> bool {
        self.metric.is_ptolemaic()
    }

    /// The uncounted metric, for oracles that must not disturb the count.
    pub fn metric(&self) -> &dyn Metric<T> {
        &*self.metric
    }
}

/// See [`DistanceFunction::sqrt`].
pub fn sqrt_metric<T: 'static>(base: &DistanceFunction<T>) -> DistanceFunction<T> {
    base.sqrt()
}

impl DistanceFunction<VectorObj> {
    pub fn lp(p: f64) -> Result<Self> {
        Ok(Self::new(Lp::new(p)?))
    }

    pub fn euclidean() -> Self {
        Self::new(Euclidean)
    }

    pub fn chebyshev() -> Self {
        Self::new(Lp::chebyshev())
    }

    pub fn quadratic_form(matrix: QfMatrix) -> Self {
        Self::new(QuadraticForm::new(matrix))
    }

    pub fn angular() -> Self {
        Self::new(Angular)
    }
}

impl DistanceFunction<SetObj> {
    pub fn hamming() -> Self {
        Self::new(Hamming)
    }

    pub fn jaccard() -> Self {
        Self::new(Jaccard)
    }
}

impl DistanceFunction<StringObj> {
    pub fn levenshtein() -> Self {
        Self::new(Levenshtein)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::thread;

    fn v(c: &[f64]) -> VectorObj {
        VectorObj::new(c.to_vec()).unwrap()
    }

    #[test]
    fn counter_counts_each_evaluation_once() {
        let d = DistanceFunction::euclidean();
        let (a, b) = (v(&[0.0, 0.0]), v(&[3.0, 4.0]));
        for _ in 0..17 {
            d.eval(&a, &b).unwrap();
        }
        assert_eq!(d.evaluations(), 17);
        d.reset_counter();
        assert_eq!(d.evaluations(), 0);
    }

    #[test]
    fn counter_is_exact_under_concurrency() {
        let d = DistanceFunction::euclidean();
        let (a, b) = (v(&[0.0, 0.0]), v(&[1.0, 1.0]));
        thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| {
                    for _ in 0..1000 {
                        d.eval(&a, &b).unwrap();
                    }
                });
            }
        });
        assert_eq!(d.evaluations(), 8000);
    }

    #[test]
    fn sqrt_metric_values_and_shared_counter() {
        let base = DistanceFunction::lp(1.0).unwrap();
        let root = sqrt_metric(&base);
        assert_eq!(root.name(), "sqrt(l1)");
        assert!(root.is_ptolemaic());
        assert!(!base.is_ptolemaic());
        let (a, b) = (v(&[0.0, 0.0]), v(&[1.0, 3.0]));
        assert_eq!(root.eval(&a, &a).unwrap(), 0.0);
        assert_eq!(root.eval(&a, &b).unwrap(), 2.0);
        assert_eq!(base.evaluations(), 2);
        assert_eq!(root.evaluations(), 2);
    }

    #[test]
    fn sqrt_preserves_ordering() {
        let base = DistanceFunction::lp(1.0).unwrap();
        let root = base.sqrt();
        let x = v(&[0.0, 0.0]);
        let pts = [
            v(&[0.1, 0.0]),
            v(&[2.0, 1.0]),
            v(&[0.5, 0.5]),
            v(&[3.0, 0.0]),
        ];
        for y in &pts {
            for z in &pts {
                let by = base.eval(&x, y).unwrap() < base.eval(&x, z).unwrap();
                let ry = root.eval(&x, y).unwrap() < root.eval(&x, z).unwrap();
                assert_eq!(by, ry);
            }
        }
    }
}
