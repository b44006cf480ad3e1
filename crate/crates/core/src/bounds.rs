//! Lower and upper bounds on an unknown distance `d(q, o)` from known (or
//! bracketed) distances to one or two reference objects.
//!
//! Naming follows the pivot setting: `q` is the query, `o` the candidate
//! object, `p` and `s` are pivots; `qp` is `d(q, p)` and so on.
//!
//! The triangular bounds hold for any metric. The Ptolemaic ones need
//! `xv·yu ≤ xy·uv + xu·yv` for all quadruples, which holds for Euclidean and
//! quadratic form distances and for `sqrt(d)` of any metric `d`.

use crate::error::{Error, Result};

/// A bracket `lo <= d <= hi` on a distance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceInterval {
    lo: f64,
    hi: f64,
}

impl DistanceInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(DistanceInterval { lo, hi })
    }

    /// A distance known exactly. Panics on a negative or non-finite value.
    pub fn exact(d: f64) -> Self {
        Self::new(d, d).expect("exact distance must be finite and nonnegative")
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, d: f64) -> bool {
        self.lo <= d && d <= self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// `|qp - op|`.
#[inline]
pub fn tri_lower(qp: f64, op: f64) -> f64 {
    (qp - op).abs()
}

/// Ball/shell bound from brackets on `qp` and `op`:
/// `max{op.lo - qp.hi, qp.lo - op.hi, 0} <= qo <= qp.hi + op.hi`.
pub fn tri_interval(qp: DistanceInterval, op: DistanceInterval) -> DistanceInterval {
    let lo = (op.lo - qp.hi).max(qp.lo - op.hi).max(0.0);
    DistanceInterval {
        lo,
        hi: qp.hi + op.hi,
    }
}

/// Ptolemaic pivot bound for one pivot pair, `|qp·os - qs·op| / ps`.
///
/// Caller must skip coincident pivots (`ps == 0`).
#[inline]
pub(crate) fn pto_lower_unchecked(qp: f64, qs: f64, op: f64, os: f64, ps: f64) -> f64 {
    (qp * os - qs * op).abs() / ps
}

/// `max{(qp·os - qs·op)/ps, (qs·op - qp·os)/ps, 0}`.
pub fn pto_lower(qp: f64, qs: f64, op: f64, os: f64, ps: f64) -> Result<f64> {
    if ps <= 0.0 {
        return Err(Error::CoincidentPivots);
    }
    Ok(pto_lower_unchecked(qp, qs, op, os, ps))
}

/// Ptolemaic bracket on `qo` given exact query-side distances `qp`, `qs`, the
/// exact pivot-pivot distance `ps`, and brackets on `op` and `os`.
pub fn pto_interval(
    qp: f64,
    qs: f64,
    ps: f64,
    op: DistanceInterval,
    os: DistanceInterval,
) -> Result<DistanceInterval> {
    if ps <= 0.0 {
        return Err(Error::CoincidentPivots);
    }
    pto_interval_general(
        DistanceInterval::new(qp, qp)?,
        DistanceInterval::new(qs, qs)?,
        DistanceInterval::exact(ps),
        op,
        os,
    )
}

/// The fully bracketed form: every one of the five known distances may be an
/// interval. Lower limits enter before the subtractions, upper limits after
/// them; the lower bound divides by `ps.hi` and the upper bound by `ps.lo`.
///
/// Fails when `ps.lo == 0`, since the upper bound is then unbounded.
pub fn pto_interval_general(
    qp: DistanceInterval,
    qs: DistanceInterval,
    ps: DistanceInterval,
    op: DistanceInterval,
    os: DistanceInterval,
) -> Result<DistanceInterval> {
    if ps.lo <= 0.0 {
        return Err(Error::CoincidentPivots);
    }
    let a = qs.lo * op.lo - qp.hi * os.hi;
    let b = qp.lo * os.lo - qs.hi * op.hi;
    let lo = (a.max(b) / ps.hi).max(0.0);
    let hi = (qp.hi * os.hi + qs.hi * op.hi) / ps.lo;
    DistanceInterval::new(lo, hi.max(lo))
}

/// Lower bound for an object inside a ball of radius `r` around `p`, using
/// `os >= ps - r`: `qp - r·(qp + qs)/ps`.
///
/// Returned unclamped; a negative value means the bound is uninformative.
/// Panics unless `ps > 0`.
pub fn shell_lower(qp: f64, qs: f64, ps: f64, r: f64) -> f64 {
    assert!(ps > 0.0, "shell_lower requires ps > 0, got {ps}");
    qp - r * (qp + qs) / ps
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn iv(lo: f64, hi: f64) -> DistanceInterval {
        DistanceInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(DistanceInterval::new(2.0, 1.0).is_err());
        assert!(DistanceInterval::new(-1.0, 1.0).is_err());
        assert!(DistanceInterval::new(0.0, f64::INFINITY).is_err());
        assert!(iv(1.0, 1.0).is_exact());
    }

    #[test]
    fn tri_lower_examples() {
        assert_eq!(tri_lower(1.0, 1.0), 0.0);
        assert_eq!(tri_lower(5.0, 2.0), 3.0);
        assert_eq!(tri_lower(0.0, 7.0), 7.0);
    }

    #[test]
    fn tri_interval_examples() {
        // object inside a ball of radius 1 around p; query at distance 3
        assert_eq!(tri_interval(iv(3.0, 3.0), iv(0.0, 1.0)).lo(), 2.0);
        assert_eq!(tri_interval(iv(2.0, 2.0), iv(2.0, 2.0)), iv(0.0, 4.0));
    }

    #[test]
    fn tri_interval_matches_sampled_extremes() {
        // oracle: min |qp - op| and max qp + op over a grid of bracketed values
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..=100 {
            for j in 0..=100 {
                let qp = 1.0 + i as f64 / 100.0;
                let op = 5.0 + j as f64 / 100.0;
                lo = lo.min((qp - op).abs());
                hi = hi.max(qp + op);
            }
        }
        let got = tri_interval(iv(1.0, 2.0), iv(5.0, 6.0));
        assert_relative_eq!(got.lo(), lo, epsilon = 1e-12);
        assert_relative_eq!(got.hi(), hi, epsilon = 1e-12);
        assert_eq!(got, iv(3.0, 8.0));
    }

    #[test]
    fn pto_lower_examples() {
        // q=(-1,0), p=(0,0), s=(1,0), o=(3,0): collinear, bound is tight
        assert_eq!(pto_lower(1.0, 2.0, 3.0, 2.0, 1.0).unwrap(), 4.0);
        // o=(0,1)
        let b = pto_lower(1.0, 2.0, 1.0, 2f64.sqrt(), 1.0).unwrap();
        assert_relative_eq!(b, 2.0 - 2f64.sqrt(), epsilon = 1e-15);
        assert!(b <= 2f64.sqrt());
        assert_eq!(pto_lower(1.5, 1.5, 0.7, 0.7, 2.0).unwrap(), 0.0);
        assert!(matches!(
            pto_lower(1.0, 1.0, 1.0, 1.0, 0.0),
            Err(Error::CoincidentPivots)
        ));
    }

    #[test]
    fn pto_interval_exact_inputs_reduce_to_pointwise_bounds() {
        let (qp, qs, op, os, ps) = (1.0, 2.0, 1.0, 2f64.sqrt(), 1.0);
        let got = pto_interval(
            qp,
            qs,
            ps,
            DistanceInterval::exact(op),
            DistanceInterval::exact(os),
        )
        .unwrap();
        assert_eq!(got.lo(), pto_lower(qp, qs, op, os, ps).unwrap());
        assert_eq!(got.hi(), (qp * os + qs * op) / ps);
    }

    #[test]
    fn pto_interval_ball_and_shell() {
        let (qp, qs, ps, r) = (3.0, 2.5, 2.0, 0.4);
        let got = pto_interval(qp, qs, ps, iv(0.0, r), iv(ps - r, 10.0)).unwrap();
        assert!(got.lo() >= qp - r * (qp + qs) / ps - 1e-12);
        assert_relative_eq!(got.lo(), shell_lower(qp, qs, ps, r), epsilon = 1e-12);

        // two covering balls: nothing is known from below
        let got = pto_interval(qp, qs, ps, iv(0.0, r), iv(0.0, 10.0)).unwrap();
        assert_eq!(got.lo(), 0.0);
    }

    #[test]
    fn pto_interval_general_rejects_zero_ps() {
        let x = iv(1.0, 2.0);
        assert!(pto_interval_general(x, x, iv(0.0, 1.0), x, x).is_err());
        assert!(pto_interval(1.0, 1.0, 0.0, x, x).is_err());
    }

    #[test]
    fn shell_lower_examples() {
        // q on the segment between p and s
        let (qp, qs) = (0.7, 1.8);
        assert_relative_eq!(shell_lower(qp, qs, qp + qs, 0.3), qp - 0.3, epsilon = 1e-15);
        assert_eq!(shell_lower(2.5, 1.0, 3.0, 0.0), 2.5);
        assert_eq!(shell_lower(2.0, 2.0, 2.0, 1.0), 0.0);
        assert!(shell_lower(1.0, 3.0, 1.0, 1.0) < 0.0);
    }
}
