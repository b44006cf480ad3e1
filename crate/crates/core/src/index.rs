//! LAESA-style pivot table: all object-pivot and pivot-pivot distances are
//! precomputed, and range queries filter objects by a lower bound on their
//! distance to the query before evaluating the real distance.
//!
//! Partial Ptolemaic filtering uses `m - 1` pivot pairs per object. The
//! default schedule pairs consecutive pivots in selection order,
//! `(0, 1), (1, 2), ..`; [`PivotTable::with_partial_schedule`] swaps in
//! another one. Because each pair bound takes an absolute value, `m - 1`
//! unordered pairs amount to `2(m - 1)` directed bounds.
//!
//! An object is excluded only when its bound exceeds the radius by more than
//! [`FILTER_EPS_REL`] times the query's scale, so that rounding in the stored
//! distances and the bound arithmetic cannot drop an object at distance `r`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{pto_lower_unchecked, tri_lower};
use crate::distances::DistanceFunction;
use crate::error::{Error, Result};
use crate::objects::DataSet;
use crate::pivots::PivotSet;

/// Relative slack on exclusion, scaled by `r` plus the largest query-pivot distance.
pub const FILTER_EPS_REL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FilterMode {
    /// `max_p |qp - op|`
    Triangular,
    /// Ptolemaic bound maximised over all pivot pairs.
    PtolemaicFull,
    /// Ptolemaic bound over the partial pair schedule only.
    PtolemaicPartial,
    /// Larger of the triangular and full Ptolemaic bounds.
    Combined,
}

impl FilterMode {
    pub const ALL: [FilterMode; 4] = [
        FilterMode::Triangular,
        FilterMode::PtolemaicFull,
        FilterMode::PtolemaicPartial,
        FilterMode::Combined,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FilterMode::Triangular => "triangular",
            FilterMode::PtolemaicFull => "ptolemaic",
            FilterMode::PtolemaicPartial => "partial",
            FilterMode::Combined => "combined",
        }
    }
}

impl fmt::Display for FilterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FilterMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangular" | "tri" => Ok(FilterMode::Triangular),
            "ptolemaic" | "full" | "pto" => Ok(FilterMode::PtolemaicFull),
            "partial" => Ok(FilterMode::PtolemaicPartial),
            "combined" | "both" => Ok(FilterMode::Combined),
            _ => Err(Error::param(format!("unknown filter mode {s:?}"))),
        }
    }
}

/// Cost accounting for one range query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Query-pivot distances, always `m`.
    pub pivot_distances: u64,
    /// Non-pivot objects whose lower bound did not exceed the radius.
    pub candidates: u64,
    /// `pivot_distances + candidates`.
    pub total_distance_computations: u64,
    /// True results missing from the answer; only set when an oracle is supplied.
    pub false_negatives: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
struct PivotPair {
    a: usize,
    b: usize,
    ps: f64,
}

pub struct PivotTable<'a, T> {
    data: &'a DataSet<T>,
    distance: DistanceFunction<T>,
    pivots: PivotSet,
    m: usize,
    /// Row-major `n x m`.
    obj_piv: Vec<f64>,
    /// Row-major `m x m`.
    piv_piv: Vec<f64>,
    pivot_column: Vec<Option<usize>>,
    full_pairs: Vec<PivotPair>,
    partial_pairs: Vec<PivotPair>,
    build_cost: u64,
}

impl<T> fmt::Debug for PivotTable<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PivotTable")
            .field("n", &self.data.len())
            .field("m", &self.m)
            .field("build_cost", &self.build_cost)
            .finish()
    }
}

impl<'a, T: Send + Sync + 'static> PivotTable<'a, T> {
    /// Computes the pivot-pivot matrix, then every object's distances to the
    /// pivots. Pivot rows are copied from the pivot-pivot matrix, so the build
    /// costs `m(m-1)/2 + (n-m)·m` evaluations.
    pub fn build(data: &'a DataSet<T>, d: &DistanceFunction<T>, pivots: PivotSet) -> Result<Self> {
        let n = data.len();
        let m = pivots.len();
        let mut pivot_column = vec![None; n];
        for (col, &id) in pivots.ids().iter().enumerate() {
            if id >= n || pivot_column[id].replace(col).is_some() {
                return Err(Error::param(format!(
                    "invalid pivot id {id} for {n} objects"
                )));
            }
        }

        let mut build_cost = 0u64;
        let mut piv_piv = vec![0.0; m * m];
        for a in 0..m {
            for b in (a + 1)..m {
                let dist = d.eval(&data[pivots.ids()[a]], &data[pivots.ids()[b]])?;
                build_cost += 1;
                piv_piv[a * m + b] = dist;
                piv_piv[b * m + a] = dist;
            }
        }

        let mut obj_piv = vec![0.0; n * m];
        let evaluated: Result<Vec<u64>> = obj_piv
            .par_chunks_mut(m)
            .enumerate()
            .map(|(i, row)| match pivot_column[i] {
                Some(col) => {
                    row.copy_from_slice(&piv_piv[col * m..(col + 1) * m]);
                    Ok(0)
                }
                None => {
                    for (cell, &p) in row.iter_mut().zip(pivots.ids()) {
                        *cell = d.eval(&data[i], &data[p])?;
                    }
                    Ok(m as u64)
                }
            })
            .collect();
        build_cost += evaluated?.into_iter().sum::<u64>();

        let mut full_pairs = Vec::with_capacity(m * m.saturating_sub(1) / 2);
        for a in 0..m {
            for b in (a + 1)..m {
                let ps = piv_piv[a * m + b];
                if ps > 0.0 {
                    full_pairs.push(PivotPair { a, b, ps });
                }
            }
        }

        let mut table = PivotTable {
            data,
            distance: d.clone(),
            pivots,
            m,
            obj_piv,
            piv_piv,
            pivot_column,
            full_pairs,
            partial_pairs: Vec::new(),
            build_cost,
        };
        table.partial_pairs = table.pairs_from_schedule(&consecutive_schedule(m))?;
        Ok(table)
    }

    /// Replaces the partial-mode pair schedule (pivot column indices).
    pub fn with_partial_schedule(mut self, schedule: &[(usize, usize)]) -> Result<Self> {
        self.partial_pairs = self.pairs_from_schedule(schedule)?;
        Ok(self)
    }

    fn pairs_from_schedule(&self, schedule: &[(usize, usize)]) -> Result<Vec<PivotPair>> {
        let m = self.m;
        let mut pairs = Vec::with_capacity(schedule.len());
        for &(a, b) in schedule {
            if a >= m || b >= m || a == b {
                return Err(Error::param(format!(
                    "invalid pivot pair ({a}, {b}) for {m} pivots"
                )));
            }
            let ps = self.piv_piv[a * m + b];
            if ps > 0.0 {
                pairs.push(PivotPair { a, b, ps });
            }
        }
        Ok(pairs)
    }

    /// The `m` query-pivot distances (counted evaluations).
    pub fn query_pivot_distances(&self, q: &T) -> Result<Vec<f64>> {
        self.pivots
            .ids()
            .iter()
            .map(|&p| self.distance.eval(q, &self.data[p]))
            .collect()
    }

    /// Precomputes per-query state for repeated bound evaluation.
    pub fn prepare<'t>(&'t self, qpiv: &'t [f64]) -> Result<PreparedQuery<'t, 'a, T>> {
        if qpiv.len() != self.m {
            return Err(Error::DimensionMismatch {
                left: self.m,
                right: qpiv.len(),
            });
        }
        // Pairs anchored at pivots close to the query tend to give the largest
        // bounds, so try them first; this only affects early exit.
        let mut full_order = self.full_pairs.clone();
        full_order.sort_by(|x, y| {
            let kx = qpiv[x.a].min(qpiv[x.b]);
            let ky = qpiv[y.a].min(qpiv[y.b]);
            kx.total_cmp(&ky)
        });
        let mut tri_order: Vec<usize> = (0..self.m).collect();
        tri_order.sort_by(|&x, &y| qpiv[x].total_cmp(&qpiv[y]));
        let scale = qpiv.iter().copied().fold(0.0, f64::max);
        Ok(PreparedQuery {
            table: self,
            qpiv,
            full_order,
            tri_order,
            scale,
        })
    }

    /// Exact lower bound on `d(q, object)` under `mode`, without early exit.
    pub fn lower_bound(&self, qpiv: &[f64], object: usize, mode: FilterMode) -> f64 {
        let row = self.row(object);
        let tri = || {
            row.iter()
                .zip(qpiv)
                .map(|(&op, &qp)| tri_lower(qp, op))
                .fold(0.0, f64::max)
        };
        let pto = |pairs: &[PivotPair]| {
            pairs
                .iter()
                .map(|p| pto_lower_unchecked(qpiv[p.a], qpiv[p.b], row[p.a], row[p.b], p.ps))
                .fold(0.0, f64::max)
        };
        match mode {
            FilterMode::Triangular => tri(),
            FilterMode::PtolemaicFull => pto(&self.full_pairs),
            FilterMode::PtolemaicPartial => pto(&self.partial_pairs),
            FilterMode::Combined => tri().max(pto(&self.full_pairs)),
        }
    }

    /// Range query: every object within distance `r` of `q`, sorted by id.
    ///
    /// Pivot objects are answered from the query-pivot distances and are
    /// never candidates. When `oracle` (the true answer) is given, missing
    /// results are reported as false negatives.
    pub fn range_query(
        &self,
        q: &T,
        r: f64,
        mode: FilterMode,
        oracle: Option<&[usize]>,
    ) -> Result<(Vec<usize>, QueryStats)> {
        let oracles = oracle.map(|o| vec![o]);
        let mut out = self.range_query_multi(q, &[r], mode, oracles.as_deref())?;
        Ok(out.pop().expect("one radius in, one answer out"))
    }

    /// Answers several radii for one query at once. Each answer and its stats
    /// are identical to a separate [`range_query`](Self::range_query) call;
    /// shared work (query-pivot distances, candidate distances) is done once.
    pub fn range_query_multi(
        &self,
        q: &T,
        radii: &[f64],
        mode: FilterMode,
        oracles: Option<&[&[usize]]>,
    ) -> Result<Vec<(Vec<usize>, QueryStats)>> {
        if radii.iter().any(|r| !(*r >= 0.0)) {
            return Err(Error::param("query radius must be nonnegative"));
        }
        if let Some(o) = oracles {
            if o.len() != radii.len() {
                return Err(Error::param("one oracle answer per radius is required"));
            }
        }
        let qpiv = self.query_pivot_distances(q)?;
        let Some(cap) = radii.iter().copied().reduce(f64::max) else {
            return Ok(Vec::new());
        };
        let prepared = self.prepare(&qpiv)?;
        let cap = prepared.threshold(cap);

        let mut answers: Vec<(Vec<usize>, QueryStats)> = radii
            .iter()
            .map(|_| {
                let stats = QueryStats {
                    pivot_distances: self.m as u64,
                    ..QueryStats::default()
                };
                (Vec::new(), stats)
            })
            .collect();

        for id in 0..self.data.len() {
            if let Some(col) = self.pivot_column[id] {
                for (&r, (result, _)) in radii.iter().zip(&mut answers) {
                    if qpiv[col] <= r {
                        result.push(id);
                    }
                }
                continue;
            }
            let bound = prepared.bound_capped(id, mode, cap);
            if bound > cap {
                continue;
            }
            let dist = self.distance.eval(q, &self.data[id])?;
            for (&r, (result, stats)) in radii.iter().zip(&mut answers) {
                if bound <= prepared.threshold(r) {
                    stats.candidates += 1;
                    if dist <= r {
                        result.push(id);
                    }
                }
            }
        }

        for (k, (result, stats)) in answers.iter_mut().enumerate() {
            stats.total_distance_computations = stats.pivot_distances + stats.candidates;
            if let Some(oracles) = oracles {
                let missing = oracles[k]
                    .iter()
                    .filter(|id| result.binary_search(id).is_err())
                    .count();
                stats.false_negatives = Some(missing as u64);
            }
        }
        Ok(answers)
    }
}

impl<'a, T> PivotTable<'a, T> {
    pub fn data(&self) -> &'a DataSet<T> {
        self.data
    }

    pub fn pivots(&self) -> &PivotSet {
        &self.pivots
    }

    pub fn num_pivots(&self) -> usize {
        self.m
    }

    pub fn build_cost(&self) -> u64 {
        self.build_cost
    }

    pub fn distance(&self) -> &DistanceFunction<T> {
        &self.distance
    }

    /// `d(object, pivot_j)` for every pivot `j`.
    pub fn row(&self, object: usize) -> &[f64] {
        &self.obj_piv[object * self.m..(object + 1) * self.m]
    }

    pub fn object_pivot(&self, object: usize, pivot: usize) -> f64 {
        self.obj_piv[object * self.m + pivot]
    }

    pub fn pivot_pivot(&self, a: usize, b: usize) -> f64 {
        self.piv_piv[a * self.m + b]
    }

    /// Pivot column of an object, if it is a pivot.
    pub fn pivot_column(&self, object: usize) -> Option<usize> {
        self.pivot_column[object]
    }

    /// Number of pivot pairs used by the Ptolemaic modes (coincident pivots skipped).
    pub fn pair_count(&self, mode: FilterMode) -> usize {
        match mode {
            FilterMode::Triangular => 0,
            FilterMode::PtolemaicFull | FilterMode::Combined => self.full_pairs.len(),
            FilterMode::PtolemaicPartial => self.partial_pairs.len(),
        }
    }
}

/// Query-pivot distances plus a query-specific pair order for early exit.
pub struct PreparedQuery<'t, 'a, T> {
    table: &'t PivotTable<'a, T>,
    qpiv: &'t [f64],
    full_order: Vec<PivotPair>,
    tri_order: Vec<usize>,
    scale: f64,
}

impl<T> PreparedQuery<'_, '_, T> {
    pub fn query_pivot_distances(&self) -> &[f64] {
        self.qpiv
    }

    /// The lower bound if it is at most `cap`; otherwise some value above
    /// `cap` (evaluation stops at the first pair or pivot that exceeds it).
    pub fn bound_capped(&self, object: usize, mode: FilterMode, cap: f64) -> f64 {
        let row = self.table.row(object);
        match mode {
            FilterMode::Triangular => self.tri_capped(row, cap),
            FilterMode::PtolemaicFull => self.pto_capped(row, &self.full_order, cap),
            FilterMode::PtolemaicPartial => self.pto_capped(row, &self.table.partial_pairs, cap),
            FilterMode::Combined => {
                let tri = self.tri_capped(row, cap);
                if tri > cap {
                    return tri;
                }
                tri.max(self.pto_capped(row, &self.full_order, cap))
            }
        }
    }

    /// Largest bound that still keeps an object for radius `r`.
    pub fn threshold(&self, r: f64) -> f64 {
        r + FILTER_EPS_REL * (r + self.scale)
    }

    /// Whether `mode` rules the object out of a query with radius `r`.
    pub fn excludes(&self, object: usize, mode: FilterMode, r: f64) -> bool {
        let t = self.threshold(r);
        self.bound_capped(object, mode, t) > t
    }

    fn tri_capped(&self, row: &[f64], cap: f64) -> f64 {
        let mut best = 0.0f64;
        for &j in &self.tri_order {
            best = best.max(tri_lower(self.qpiv[j], row[j]));
            if best > cap {
                break;
            }
        }
        best
    }

    fn pto_capped(&self, row: &[f64], pairs: &[PivotPair], cap: f64) -> f64 {
        let q = self.qpiv;
        let mut best = 0.0f64;
        for p in pairs {
            best = best.max(pto_lower_unchecked(
                q[p.a], q[p.b], row[p.a], row[p.b], p.ps,
            ));
            if best > cap {
                break;
            }
        }
        best
    }
}

/// `(0, 1), (1, 2), .., (m-2, m-1)`.
pub fn consecutive_schedule(m: usize) -> Vec<(usize, usize)> {
    (1..m).map(|j| (j - 1, j)).collect()
}

/// Exact range query by evaluating every distance.
pub fn linear_scan<T: 'static>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    q: &T,
    r: f64,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (id, o) in data.iter().enumerate() {
        if d.eval(q, o)? <= r {
            out.push(id);
        }
    }
    Ok(out)
}
