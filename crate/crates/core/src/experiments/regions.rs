use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::{draw_queries, Labels, QueryOracle};
use crate::datagen::DataSource;
use crate::distances::DistanceFunction;
use crate::error::{Error, Result};
use crate::index::{FilterMode, PivotTable};
use crate::pivots::random_select;
use crate::rng;

/// Negatives of one query, split by which bounds rule them out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RegionCounts {
    pub pto_only: u64,
    pub both: u64,
    pub tri_only: u64,
    pub neither: u64,
}

impl RegionCounts {
    pub fn total(&self) -> u64 {
        self.pto_only + self.both + self.tri_only + self.neither
    }
}

/// Region sizes averaged over queries.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RegionBreakdown {
    pub pto_only: f64,
    pub both: f64,
    pub tri_only: f64,
    pub neither: f64,
}

impl RegionBreakdown {
    pub fn negatives(&self) -> f64 {
        self.pto_only + self.both + self.tri_only + self.neither
    }

    /// Share of negatives removed by the Ptolemaic bound.
    pub fn pto_fraction(&self) -> f64 {
        (self.pto_only + self.both) / self.negatives()
    }

    pub fn tri_fraction(&self) -> f64 {
        (self.tri_only + self.both) / self.negatives()
    }
}

/// Classifies every object farther than `r` from the query by whether the
/// triangular and full Ptolemaic bounds exceed `r`.
///
/// `dists` are the exact query distances for every object. Fails if the
/// regions do not add up to the number of objects outside the radius.
pub fn classify_regions<T: Send + Sync + 'static>(
    table: &PivotTable<'_, T>,
    qpiv: &[f64],
    dists: &[f64],
    r: f64,
) -> Result<RegionCounts> {
    let prepared = table.prepare(qpiv)?;
    let mut counts = RegionCounts::default();
    let mut results = 0u64;
    for (id, &dist) in dists.iter().enumerate() {
        if dist <= r {
            results += 1;
            continue;
        }
        let tri = prepared.excludes(id, FilterMode::Triangular, r);
        let pto = prepared.excludes(id, FilterMode::PtolemaicFull, r);
        match (pto, tri) {
            (true, false) => counts.pto_only += 1,
            (true, true) => counts.both += 1,
            (false, true) => counts.tri_only += 1,
            (false, false) => counts.neither += 1,
        }
    }
    if counts.total() + results != dists.len() as u64 {
        return Err(Error::Degenerate(format!(
            "regions cover {} of {} negatives",
            counts.total(),
            dists.len() as u64 - results
        )));
    }
    Ok(counts)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionConfig {
    /// Random pivot counts to sweep.
    pub pivot_counts: Vec<usize>,
    pub k: usize,
    pub queries: usize,
    pub runs: usize,
    pub seed: u64,
    pub exclude_self: bool,
}

impl Default for RegionConfig {
    fn default() -> Self {
        RegionConfig {
            pivot_counts: vec![1, 2, 5, 10, 20, 50, 100],
            k: 10,
            queries: super::DEFAULT_QUERIES,
            runs: super::DEFAULT_RUNS,
            seed: 0,
            exclude_self: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegionRow {
    pub experiment: String,
    pub distance: String,
    pub dataset: String,
    pub n: usize,
    pub pivots: usize,
    pub k: usize,
    pub pto_only: f64,
    pub both: f64,
    pub tri_only: f64,
    pub neither: f64,
    pub pto_fraction: f64,
}

/// Average four-region breakdown per pivot count, with random pivots and
/// fixed-radius k-NN queries.
pub fn relative_power<T: Send + Sync + 'static>(
    source: &DataSource<'_, T>,
    d: &DistanceFunction<T>,
    cfg: &RegionConfig,
    labels: &Labels,
) -> Result<Vec<RegionRow>> {
    if cfg.runs == 0 || cfg.queries == 0 || cfg.pivot_counts.is_empty() {
        return Err(Error::param("need runs, queries and pivot counts"));
    }
    let mut sums = vec![RegionCounts::default(); cfg.pivot_counts.len()];
    let mut n = 0;
    for run in 0..cfg.runs {
        let mut seeds = rng::stream(cfg.seed, run as u64);
        let data_seed: u64 = seeds.random();
        let run_seeds: Vec<(u64, u64)> = cfg
            .pivot_counts
            .iter()
            .map(|_| (seeds.random(), seeds.random()))
            .collect();
        let run_sums = source.with_data(data_seed, |data| {
            let mut out = Vec::with_capacity(cfg.pivot_counts.len());
            for (&m, &(pivot_seed, query_seed)) in cfg.pivot_counts.iter().zip(&run_seeds) {
                let table = PivotTable::build(data, d, random_select(data, m, pivot_seed)?)?;
                let queries =
                    draw_queries(data.len(), table.pivots().ids(), cfg.queries, query_seed)?;
                let per_query = queries
                    .par_iter()
                    .map(|&qid| {
                        let oracle = QueryOracle::new(data, d, qid, &[cfg.k], cfg.exclude_self)?;
                        let qpiv = table.query_pivot_distances(&data[qid])?;
                        classify_regions(&table, &qpiv, &oracle.dists, oracle.radii[0])
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(per_query.iter().fold(RegionCounts::default(), add));
            }
            n = data.len();
            Ok(out)
        })?;
        for (acc, c) in sums.iter_mut().zip(run_sums) {
            *acc = add(*acc, &c);
        }
    }
    let total = (cfg.runs * cfg.queries) as f64;
    Ok(cfg
        .pivot_counts
        .iter()
        .zip(&sums)
        .map(|(&m, c)| {
            let b = RegionBreakdown {
                pto_only: c.pto_only as f64 / total,
                both: c.both as f64 / total,
                tri_only: c.tri_only as f64 / total,
                neither: c.neither as f64 / total,
            };
            RegionRow {
                experiment: "regions".into(),
                distance: labels.distance.clone(),
                dataset: labels.dataset.clone(),
                n,
                pivots: m,
                k: cfg.k,
                pto_only: b.pto_only,
                both: b.both,
                tri_only: b.tri_only,
                neither: b.neither,
                pto_fraction: b.pto_fraction(),
            }
        })
        .collect())
}

fn add(a: RegionCounts, b: &RegionCounts) -> RegionCounts {
    RegionCounts {
        pto_only: a.pto_only + b.pto_only,
        both: a.both + b.both,
        tri_only: a.tri_only + b.tri_only,
        neither: a.neither + b.neither,
    }
}

impl RegionRow {
    pub fn breakdown(&self) -> RegionBreakdown {
        RegionBreakdown {
            pto_only: self.pto_only,
            both: self.both,
            tri_only: self.tri_only,
            neither: self.neither,
        }
    }
}
