// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Run with `cargo test --release --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ptolemaic::datagen::{
    clustered_vectors, load_strings, random_sets, random_spd_matrix, synthetic_histograms,
    uniform_vectors, DataSource, DEFAULT_CLUSTERS, DEFAULT_VARIANCE,
};
use ptolemaic::distances::DistanceFunction;
use ptolemaic::experiments::{
    bench_filtering, grid_ratios_at, radius_for_k, relative_power, BenchConfig, Labels,
    PivotChoice, RegionConfig, DEFAULT_KS,
};
use ptolemaic::index::{linear_scan, FilterMode, PivotTable};
use ptolemaic::objects::DataSet;
use ptolemaic::ptolemaicity::{ptolemaicity_rate, RateConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const SEED: u64 = 20_240_601;

fn fail(e: ptolemaic::Error) -> String {
    e.to_string()
}

fn words_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/words.txt")
}

/// Checks every mode against a linear scan for each query and radius.
/// Returns the number of range queries checked.
fn exact_in_modes<T: Send + Sync + 'static>(
    data: &DataSet<T>,
    queries: &DataSet<T>,
    d: &DistanceFunction<T>,
    ks: &[usize],
    modes: &[FilterMode],
    seed: u64,
) -> Result<usize, String> {
    let pivots = PivotChoice::default().select(data, d, seed).map_err(fail)?;
    let table = PivotTable::build(data, d, pivots).map_err(fail)?;
    let mut checked = 0;
    for (qi, q) in queries.iter().enumerate() {
        for &k in ks {
            let r = radius_for_k(data, d, q, k).map_err(fail)?;
            let truth = linear_scan(data, d, q, r).map_err(fail)?;
            for &mode in modes {
                let (ids, stats) = table.range_query(q, r, mode, Some(&truth)).map_err(fail)?;
                if ids != truth || stats.false_negatives != Some(0) {
                    return Err(format!(
                        "{} {mode}: query {qi} k={k} got {} results, expected {}",
                        d.name(),
                        ids.len(),
                        truth.len()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn soundness() -> Outcome {
    const N: usize = 2000;
    const Q: usize = 50;
    let mut checked = 0;
    let vector_sets = [
        (
            "uniform-r5",
            uniform_vectors(N, 5, 1),
            uniform_vectors(Q, 5, 101),
        ),
        (
            "uniform-r10",
            uniform_vectors(N, 10, 2),
            uniform_vectors(Q, 10, 102),
        ),
        (
            "clustered-r5",
            clustered_vectors(N, 5, DEFAULT_CLUSTERS, DEFAULT_VARIANCE, 3),
            clustered_vectors(Q, 5, DEFAULT_CLUSTERS, DEFAULT_VARIANCE, 103),
        ),
        (
            "clustered-r10",
            clustered_vectors(N, 10, DEFAULT_CLUSTERS, DEFAULT_VARIANCE, 4),
            clustered_vectors(Q, 10, DEFAULT_CLUSTERS, DEFAULT_VARIANCE, 104),
        ),
    ];
    for (i, (name, data, queries)) in vector_sets.into_iter().enumerate() {
        let (data, queries) = (data.map_err(fail)?, queries.map_err(fail)?);
        let dim = data.dim().unwrap_or(0);
        let qf = DistanceFunction::quadratic_form(random_spd_matrix(dim, i as u64).map_err(fail)?);
        for d in [DistanceFunction::euclidean(), qf] {
            checked += exact_in_modes(&data, &queries, &d, &DEFAULT_KS, &FilterMode::ALL, SEED)
                .map_err(|e| format!("{name}: {e}"))?;
        }
    }
    let (hist, matrix) = synthetic_histograms(N, 64, 5).map_err(fail)?;
    let (hist_queries, _) = synthetic_histograms(Q, 64, 105).map_err(fail)?;
    for d in [
        DistanceFunction::euclidean(),
        DistanceFunction::quadratic_form(matrix),
    ] {
        checked += exact_in_modes(
            &hist,
            &hist_queries,
            &d,
            &DEFAULT_KS,
            &FilterMode::ALL,
            SEED,
        )
        .map_err(|e| format!("histograms-64: {e}"))?;
    }
    Ok(format!(
        "{checked} range queries match linear scan, no false negatives"
    ))
}

fn triangular_universality() -> Outcome {
    const N: usize = 2000;
    const Q: usize = 50;
    let tri = [FilterMode::Triangular];
    let ks = [10];
    let sets = random_sets(N, 10, 11).map_err(fail)?;
    let set_queries = random_sets(Q, 10, 111).map_err(fail)?;
    let mut checked = 0;
    for d in [DistanceFunction::hamming(), DistanceFunction::jaccard()] {
        checked += exact_in_modes(&sets, &set_queries, &d, &ks, &tri, SEED)?;
    }
    let words = load_strings(words_path(), 1).map_err(fail)?;
    let word_queries = DataSet::new(
        words
            .iter()
            .step_by(words.len() / Q)
            .take(Q)
            .cloned()
            .collect(),
    )
    .map_err(fail)?;
    checked += exact_in_modes(
        &words,
        &word_queries,
        &DistanceFunction::levenshtein(),
        &ks,
        &tri,
        SEED,
    )?;
    let vectors = uniform_vectors(N, 10, 12).map_err(fail)?;
    let vector_queries = uniform_vectors(Q, 10, 112).map_err(fail)?;
    checked += exact_in_modes(
        &vectors,
        &vector_queries,
        &DistanceFunction::chebyshev(),
        &ks,
        &tri,
        SEED,
    )?;
    Ok(format!(
        "{checked} triangular queries exact for hamming, jaccard, levenshtein ({} words), linf",
        words.len()
    ))
}

fn ptolemaicity_table() -> Outcome {
    const N: usize = 10_000;
    let cfg = RateConfig {
        seed: SEED,
        ..RateConfig::default()
    };
    let uniform10 = DataSource::generated(|s| uniform_vectors(N, 10, s));
    let clustered5 =
        DataSource::generated(|s| clustered_vectors(N, 5, DEFAULT_CLUSTERS, DEFAULT_VARIANCE, s));
    let sets = DataSource::generated(|s| random_sets(N, 10, s));

    let mut lines = Vec::new();
    let mut bad = Vec::new();
    let mut check = |label: &str, mean: f64, ok: bool| {
        lines.push(format!("{label}={mean:.4}"));
        if !ok {
            bad.push(format!("{label}={mean}"));
        }
    };

    let l2 = ptolemaicity_rate(&uniform10, &DistanceFunction::euclidean(), &cfg).map_err(fail)?;
    check(
        "l2",
        l2.mean_rate,
        l2.mean_rate == 1.0 && l2.total_violations() == 0,
    );
    let within = |x: f64, target: f64, tol: f64| (x - target).abs() <= tol;
    let r = ptolemaicity_rate(&sets, &DistanceFunction::hamming(), &cfg).map_err(fail)?;
    check("hamming", r.mean_rate, within(r.mean_rate, 0.93, 0.02));
    let r = ptolemaicity_rate(&sets, &DistanceFunction::jaccard(), &cfg).map_err(fail)?;
    check("jaccard", r.mean_rate, within(r.mean_rate, 0.99, 0.01));
    let l1 = DistanceFunction::lp(1.0).map_err(fail)?;
    let r = ptolemaicity_rate(&clustered5, &l1, &cfg).map_err(fail)?;
    check(
        "l1-clustered-r5",
        r.mean_rate,
        within(r.mean_rate, 0.98, 0.01),
    );
    let linf = DistanceFunction::chebyshev();
    let r = ptolemaicity_rate(&clustered5, &linf, &cfg).map_err(fail)?;
    check(
        "linf-clustered-r5",
        r.mean_rate,
        within(r.mean_rate, 0.96, 0.02),
    );
    let r = ptolemaicity_rate(&uniform10, &linf, &cfg).map_err(fail)?;
    check("linf-uniform-r10", r.mean_rate, r.mean_rate >= 0.995);
    let r = ptolemaicity_rate(&uniform10, &l1.sqrt(), &cfg).map_err(fail)?;
    check(
        "sqrt-l1",
        r.mean_rate,
        r.mean_rate == 1.0 && r.total_violations() == 0,
    );

    let summary = lines.join(" ");
    if bad.is_empty() {
        Ok(summary)
    } else {
        Err(format!("out of range: {} ({summary})", bad.join(", ")))
    }
}

fn filtering_power() -> Outcome {
    let source = DataSource::generated(|s| uniform_vectors(10_000, 10, s));
    let d = DistanceFunction::euclidean();
    let cfg = BenchConfig {
        modes: vec![
            FilterMode::Triangular,
            FilterMode::PtolemaicFull,
            FilterMode::PtolemaicPartial,
        ],
        seed: SEED,
        ..BenchConfig::default()
    };
    let rows =
        bench_filtering(&source, &d, &cfg, &Labels::new("l2", "uniform-r10")).map_err(fail)?;
    let cost = |mode: FilterMode, k: usize| {
        rows.iter()
            .find(|r| r.mode == mode.as_str() && r.k == k)
            .map(|r| r.mean_cost)
            .expect("row for every mode and k")
    };
    let mut parts = Vec::new();
    let mut bad = Vec::new();
    for &k in &DEFAULT_KS {
        let (tri, full, partial) = (
            cost(FilterMode::Triangular, k),
            cost(FilterMode::PtolemaicFull, k),
            cost(FilterMode::PtolemaicPartial, k),
        );
        parts.push(format!(
            "k={k}: tri={tri:.1} full={full:.1} partial={partial:.1}"
        ));
        if full > 0.5 * tri || partial > tri {
            bad.push(k);
        }
        if rows.iter().any(|r| r.mean_false_neg != 0.0) {
            return Err("false negatives in benchmark".into());
        }
    }
    let summary = format!("m={:.1}; {}", rows[0].m, parts.join("; "));
    if bad.is_empty() {
        Ok(summary)
    } else {
        Err(format!("ratio violated at k={bad:?} ({summary})"))
    }
}

fn relative_power_claim() -> Outcome {
    let source = DataSource::generated(|s| uniform_vectors(10_000, 10, s));
    let d = DistanceFunction::euclidean();
    let cfg = RegionConfig {
        pivot_counts: vec![10],
        seed: SEED,
        ..RegionConfig::default()
    };
    // fails with an error if any query's regions do not partition its negatives
    let rows =
        relative_power(&source, &d, &cfg, &Labels::new("l2", "uniform-r10")).map_err(fail)?;
    let row = &rows[0];
    let b = row.breakdown();
    let frac = b.pto_fraction();
    let summary = format!(
        "ptoOnly={:.1} both={:.1} triOnly={:.1} neither={:.1} ptoFraction={frac:.4}",
        row.pto_only, row.both, row.tri_only, row.neither
    );
    if frac >= 0.88 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn candidate_nesting() -> Outcome {
    let data = uniform_vectors(2000, 10, 21).map_err(fail)?;
    let queries = uniform_vectors(100, 10, 121).map_err(fail)?;
    let d = DistanceFunction::euclidean();
    let pivots = PivotChoice::default()
        .select(&data, &d, SEED)
        .map_err(fail)?;
    let table = PivotTable::build(&data, &d, pivots).map_err(fail)?;
    let mut sizes = [0usize; 3];
    for (qi, q) in queries.iter().enumerate() {
        let r = radius_for_k(&data, &d, q, 20).map_err(fail)?;
        let qpiv = table.query_pivot_distances(q).map_err(fail)?;
        let prepared = table.prepare(&qpiv).map_err(fail)?;
        let candidates = |mode| -> Vec<usize> {
            (0..data.len())
                .filter(|&id| table.pivot_column(id).is_none() && !prepared.excludes(id, mode, r))
                .collect()
        };
        let combined = candidates(FilterMode::Combined);
        let full = candidates(FilterMode::PtolemaicFull);
        let partial = candidates(FilterMode::PtolemaicPartial);
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
        if !subset(&combined, &full) || !subset(&full, &partial) {
            return Err(format!("nesting broken for query {qi}"));
        }
        for (n, c) in sizes.iter_mut().zip([&combined, &full, &partial]) {
            *n += c.len();
        }
        let (_, stats) = table
            .range_query(q, r, FilterMode::PtolemaicFull, None)
            .map_err(fail)?;
        if stats.candidates != full.len() as u64 {
            return Err(format!(
                "query {qi}: candidate count disagrees with range query"
            ));
        }
    }
    Ok(format!(
        "100 queries; total candidates combined={} full={} partial={}",
        sizes[0], sizes[1], sizes[2]
    ))
}

fn grid_spot_checks() -> Outcome {
    let d = DistanceFunction::euclidean();
    let (q, p, s) = ([-1.0, 0.0], [0.0, 0.0], [1.0, 0.0]);
    let far = grid_ratios_at(&d, q, p, s, [3.0, 0.0]).map_err(fail)?;
    let up = grid_ratios_at(&d, q, p, s, [0.0, 1.0]).map_err(fail)?;
    let expect = (2.0 - 2f64.sqrt()) / 2f64.sqrt();
    let summary = format!(
        "(3,0) pto={} ; (0,1) pto={} expected {expect}",
        far.pto_ratio, up.pto_ratio
    );
    if (far.pto_ratio - 1.0).abs() <= 1e-9 && (up.pto_ratio - expect).abs() <= 1e-9 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ptolemaic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let words = words_path().display().to_string();
    let data = dir.join("data.txt").display().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "gen",
            "--kind",
            "clustered",
            "--n",
            "500",
            "--dim",
            "5",
            "--seed",
            "3",
        ],
        vec![
            "gen", "--kind", "sets", "--n", "300", "--dim", "10", "--seed", "3",
        ],
        vec![
            "gen",
            "--kind",
            "histograms",
            "--n",
            "200",
            "--dim",
            "16",
            "--seed",
            "3",
        ],
        vec![
            "ptolemaicity",
            "--distance",
            "hamming",
            "--kind",
            "sets",
            "--n",
            "1000",
            "--dim",
            "10",
            "--runs",
            "3",
            "--quadruples",
            "2000",
            "--seed",
            "5",
        ],
        vec![
            "ptolemaicity",
            "--distance",
            "levenshtein",
            "--data",
            &words,
            "--runs",
            "2",
            "--quadruples",
            "2000",
            "--seed",
            "5",
        ],
        vec![
            "bench",
            "--n",
            "1500",
            "--dim",
            "8",
            "--runs",
            "2",
            "--queries",
            "20",
            "--ks",
            "5,10",
            "--seed",
            "5",
        ],
        vec![
            "bench",
            "--distance",
            "qf",
            "--kind",
            "histograms",
            "--n",
            "600",
            "--dim",
            "16",
            "--runs",
            "2",
            "--queries",
            "10",
            "--ks",
            "5",
            "--seed",
            "5",
        ],
        vec![
            "regions",
            "--n",
            "1500",
            "--dim",
            "8",
            "--runs",
            "2",
            "--queries",
            "20",
            "--pivot-counts",
            "2,5,10",
            "--seed",
            "5",
        ],
        vec!["grid", "--nx", "21", "--ny", "21"],
        vec!["grid", "--distance", "l1", "--nx", "11", "--ny", "11"],
        vec![
            "query", "--n", "1500", "--dim", "8", "--k", "10", "--seed", "5",
        ],
        vec![
            "query",
            "--distance",
            "jaccard",
            "--kind",
            "sets",
            "--n",
            "500",
            "--dim",
            "10",
            "--radius",
            "0.3",
            "--seed",
            "5",
        ],
        vec![
            "gen", "--kind", "uniform", "--n", "400", "--dim", "4", "--seed", "9", "--out", &data,
        ],
        vec![
            "query",
            "--data",
            &data,
            "--distance",
            "linf",
            "--k",
            "5",
            "--pivots",
            "random",
            "--pivot-count",
            "6",
            "--seed",
            "5",
        ],
    ];
    let bin = env!("CARGO_BIN_EXE_ptolemaic");
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "{args:?} exited with {}: {}",
                out.status,
                String::from_utf8_lossy(&out.stderr).trim()
            ));
        }
        if args.contains(&"--out") {
            std::fs::read(&data).map_err(|e| e.to_string())
        } else {
            Ok(out.stdout)
        }
    };
    let mut subcommands = std::collections::BTreeSet::new();
    for args in &commands {
        let first = run(args)?;
        let second = run(args)?;
        if first.is_empty() {
            return Err(format!("{args:?} produced no output"));
        }
        if first != second {
            return Err(format!("{args:?} output differs between runs"));
        }
        subcommands.insert(args[0]);
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!(
        "{} invocations identical across two runs, subcommands {:?}",
        commands.len(),
        subcommands
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 soundness", soundness),
        ("2 triangular universality", triangular_universality),
        ("3 ptolemaicity rates", ptolemaicity_table),
        ("4 filtering power", filtering_power),
        ("5 relative power", relative_power_claim),
        ("6 candidate nesting", candidate_nesting),
        ("7 bound grid", grid_spot_checks),
        ("8 cli determinism", cli_determinism),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {name} [{secs:.1}s]: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
