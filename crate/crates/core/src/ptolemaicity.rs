//! How often a distance satisfies Ptolemy's inequality on sampled quadruples.
//!
//! For a quadruple `(x, y, u, v)` the inequality reads
//! `xv·yu <= xy·uv + xu·yv`. The three products pair up the six distances;
//! a Ptolemaic distance satisfies every relabeling, which is the same as
//! saying the largest product is at most the sum of the other two.
//!
//! [`PtolemyTest::Labeled`] checks the inequality once, in the order the
//! quadruple was drawn. Since draws are uniformly ordered, its failure rate
//! is one third of the [`PtolemyTest::AllLabelings`] failure rate. The
//! labeled form is the default for [`ptolemaicity_rate`].

use std::cmp::Ordering;

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::datagen::DataSource;
use crate::distances::DistanceFunction;
use crate::error::{Error, Result};
use crate::objects::DataSet;
use crate::rng;

pub const DEFAULT_QUADRUPLES: usize = 10_000;
pub const DEFAULT_RUNS: usize = 10;
pub const DEFAULT_EPS_REL: f64 = 1e-9;
/// Violating quadruples kept per run.
pub const WORST_KEPT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PtolemyTest {
    /// `xv·yu <= xy·uv + xu·yv` for the quadruple as drawn.
    #[default]
    Labeled,
    /// Largest of the three pairing products against the sum of the other two.
    AllLabelings,
}

/// The three pairing products `(xy·uv, xu·yv, xv·yu)` of a quadruple.
fn products<T>(d: &DistanceFunction<T>, q: [&T; 4]) -> Result<[f64; 3]> {
    let [x, y, u, v] = q;
    let xy = d.eval(x, y)?;
    let uv = d.eval(u, v)?;
    let xu = d.eval(x, u)?;
    let yv = d.eval(y, v)?;
    let xv = d.eval(x, v)?;
    let yu = d.eval(y, u)?;
    Ok([xy * uv, xu * yv, xv * yu])
}

/// `lhs - rhs` of the test: positive means the quadruple violates it, and
/// `rhs` is returned for the relative tolerance.
fn excess(p: [f64; 3], test: PtolemyTest) -> (f64, f64) {
    match test {
        PtolemyTest::Labeled => (p[2], p[0] + p[1]),
        PtolemyTest::AllLabelings => {
            let max = p[0].max(p[1]).max(p[2]);
            (max, p[0] + p[1] + p[2] - max)
        }
    }
}

fn satisfied(p: [f64; 3], test: PtolemyTest, eps_rel: f64) -> (bool, f64) {
    let (lhs, rhs) = excess(p, test);
    (lhs <= rhs + eps_rel * rhs, lhs - rhs)
}

/// Whether all labelings of Ptolemy's inequality hold for `x, y, u, v`, up to
/// a relative tolerance on the right-hand side.
pub fn ptolemaic_check<T>(
    d: &DistanceFunction<T>,
    x: &T,
    y: &T,
    u: &T,
    v: &T,
    eps_rel: f64,
) -> Result<bool> {
    let p = products(d, [x, y, u, v])?;
    Ok(satisfied(p, PtolemyTest::AllLabelings, eps_rel).0)
}

/// Whether `xv·yu <= xy·uv + xu·yv` holds for this particular labeling.
pub fn ptolemaic_check_labeled<T>(
    d: &DistanceFunction<T>,
    x: &T,
    y: &T,
    u: &T,
    v: &T,
    eps_rel: f64,
) -> Result<bool> {
    let p = products(d, [x, y, u, v])?;
    Ok(satisfied(p, PtolemyTest::Labeled, eps_rel).0)
}

/// `count` ordered quadruples of distinct ids, each drawn uniformly.
pub fn sample_quadruples<T>(data: &DataSet<T>, count: usize, seed: u64) -> Result<Vec<[usize; 4]>> {
    let n = data.len();
    if n < 4 {
        return Err(Error::Degenerate(format!(
            "need at least 4 objects, got {n}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let quads = (0..count)
        .map(|_| {
            let mut q = [0usize; 4];
            for i in 0..4 {
                q[i] = loop {
                    let c = rng.random_range(0..n);
                    if !q[..i].contains(&c) {
                        break c;
                    }
                };
            }
            q
        })
        .collect();
    Ok(quads)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateConfig {
    pub quadruples: usize,
    pub runs: usize,
    pub eps_rel: f64,
    pub seed: u64,
    pub test: PtolemyTest,
}

impl Default for RateConfig {
    fn default() -> Self {
        RateConfig {
            quadruples: DEFAULT_QUADRUPLES,
            runs: DEFAULT_RUNS,
            eps_rel: DEFAULT_EPS_REL,
            seed: 0,
            test: PtolemyTest::Labeled,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub run: usize,
    pub ids: [usize; 4],
    /// Left-hand side minus right-hand side.
    pub excess: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PtoReport {
    pub mean_rate: f64,
    /// Sample standard deviation of the per-run rates (0 for a single run).
    pub std_dev: f64,
    pub runs: usize,
    pub quadruples_per_run: usize,
    pub rates: Vec<f64>,
    /// Up to [`WORST_KEPT`] worst violations per run, worst first.
    pub violations: Vec<Violation>,
}

/// One CSV line of a rate table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PtoRow {
    pub distance: String,
    pub dataset: String,
    pub runs: usize,
    pub quadruples: usize,
    pub mean: f64,
    pub std: f64,
}

impl PtoReport {
    pub fn row(&self, distance: &str, dataset: &str) -> PtoRow {
        PtoRow {
            distance: distance.to_string(),
            dataset: dataset.to_string(),
            runs: self.runs,
            quadruples: self.quadruples_per_run,
            mean: self.mean_rate,
            std: self.std_dev,
        }
    }

    pub fn total_violations(&self) -> usize {
        self.rates
            .iter()
            .map(|r| ((1.0 - r) * self.quadruples_per_run as f64).round() as usize)
            .sum()
    }
}

/// Estimates the fraction of quadruples satisfying Ptolemy's inequality,
/// as a mean and standard deviation over runs.
pub fn ptolemaicity_rate<T: Send + Sync>(
    source: &DataSource<'_, T>,
    d: &DistanceFunction<T>,
    cfg: &RateConfig,
) -> Result<PtoReport> {
    if cfg.runs == 0 || cfg.quadruples == 0 {
        return Err(Error::param("runs and quadruples must be positive"));
    }
    let mut rates = Vec::with_capacity(cfg.runs);
    let mut violations = Vec::new();
    for run in 0..cfg.runs {
        let mut seeds = rng::stream(cfg.seed, run as u64);
        let data_seed: u64 = seeds.random();
        let quad_seed: u64 = seeds.random();
        let (rate, worst) =
            source.with_data(data_seed, |data| run_once(data, d, cfg, run, quad_seed))?;
        rates.push(rate);
        violations.extend(worst);
    }
    let (mean_rate, std_dev) = mean_and_std(&rates);
    Ok(PtoReport {
        mean_rate,
        std_dev,
        runs: cfg.runs,
        quadruples_per_run: cfg.quadruples,
        rates,
        violations,
    })
}

fn run_once<T: Send + Sync>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    cfg: &RateConfig,
    run: usize,
    quad_seed: u64,
) -> Result<(f64, Vec<Violation>)> {
    let quads = sample_quadruples(data, cfg.quadruples, quad_seed)?;
    let outcomes: Vec<(bool, f64)> = quads
        .par_iter()
        .map(|q| {
            let p = products(d, [&data[q[0]], &data[q[1]], &data[q[2]], &data[q[3]]])?;
            Ok(satisfied(p, cfg.test, cfg.eps_rel))
        })
        .collect::<Result<_>>()?;
    let ok = outcomes.iter().filter(|(s, _)| *s).count();
    let mut worst: Vec<Violation> = quads
        .iter()
        .zip(&outcomes)
        .filter(|(_, (s, _))| !s)
        .map(|(q, &(_, excess))| Violation {
            run,
            ids: *q,
            excess,
        })
        .collect();
    worst.sort_by(|a, b| b.excess.partial_cmp(&a.excess).unwrap_or(Ordering::Equal));
    worst.truncate(WORST_KEPT);
    Ok((ok as f64 / cfg.quadruples as f64, worst))
}

pub(crate) fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Largest data set accepted by [`exhaustive_rate`].
pub const EXHAUSTIVE_MAX_N: usize = 40;

/// Exact rate over every quadruple of distinct objects, for small data sets.
///
/// For [`PtolemyTest::Labeled`] this is the expectation of the sampled rate:
/// each 4-subset contributes the fraction of its three pairings that hold.
pub fn exhaustive_rate<T>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    eps_rel: f64,
    test: PtolemyTest,
) -> Result<f64> {
    let n = data.len();
    if !(4..=EXHAUSTIVE_MAX_N).contains(&n) {
        return Err(Error::param(format!(
            "exhaustive enumeration needs 4..={EXHAUSTIVE_MAX_N} objects, got {n}"
        )));
    }
    let mut dist = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = d.eval(&data[i], &data[j])?;
            dist[i * n + j] = v;
            dist[j * n + i] = v;
        }
    }
    let dd = |a: usize, b: usize| dist[a * n + b];
    let (mut ok, mut total) = (0.0, 0.0);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for e in (c + 1)..n {
                    let p = [
                        dd(a, b) * dd(c, e),
                        dd(a, c) * dd(b, e),
                        dd(a, e) * dd(b, c),
                    ];
                    total += 1.0;
                    ok += match test {
                        PtolemyTest::AllLabelings => {
                            f64::from(u8::from(satisfied(p, test, eps_rel).0))
                        }
                        PtolemyTest::Labeled => {
                            let holds = |lhs: f64, r1: f64, r2: f64| {
                                f64::from(u8::from(lhs <= (r1 + r2) * (1.0 + eps_rel)))
                            };
                            (holds(p[0], p[1], p[2])
                                + holds(p[1], p[0], p[2])
                                + holds(p[2], p[0], p[1]))
                                / 3.0
                        }
                    };
                }
            }
        }
    }
    Ok(ok / total)
}
