//! Command-line front end: `gen`, `ptolemaicity`, `bench`, `regions`,
//! `grid` and `query`. Every command writes CSV (or a data file, for `gen`)
//! to stdout or `--out`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng as _;
use serde::Serialize;

use crate::datagen::{
    read_dataset, read_qf_matrix, rgb_qf_matrix, synthetic_histograms, write_qf_matrix, AnyDataSet,
    DataSource, GenKind, GenSpec, Header, DEFAULT_CLUSTERS, DEFAULT_VARIANCE,
};
use crate::distances::{DistanceFunction, Norm, QfMatrix};
use crate::error::{Error, Result};
use crate::experiments::{
    bench_filtering, bound_accuracy_grid, relative_power, to_csv, BenchConfig, GridSpec, Labels,
    PivotChoice, RegionConfig, DEFAULT_KS,
};
use crate::index::{linear_scan, FilterMode, PivotTable};
use crate::objects::{DataSet, ObjectKind, SetObj, StringObj, VectorObj};
use crate::pivots::DEFAULT_ALPHA;
use crate::ptolemaicity::{ptolemaicity_rate, PtolemyTest, RateConfig};
use crate::rng;

/// A distance named on the command line.
///
/// `l1`, `l2`, `linf`, `lp:<p>`, `angle`, `qf` (color-similarity weights for
/// the data's dimension), `qf:<matrix file>`, `sqrt:<distance>`, `hamming`,
/// `jaccard`, `levenshtein`.
#[derive(Clone, Debug, PartialEq)]
pub enum DistanceSpec {
    Lp(Norm),
    Angle,
    Qf(Option<PathBuf>),
    Sqrt(Box<DistanceSpec>),
    Hamming,
    Jaccard,
    Levenshtein,
}

impl FromStr for DistanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lp = |p: f64| Norm::new(p).map(DistanceSpec::Lp);
        match s {
            "l1" => lp(1.0),
            "l2" => lp(2.0),
            "linf" => Ok(DistanceSpec::Lp(Norm::Infinity)),
            "angle" => Ok(DistanceSpec::Angle),
            "qf" => Ok(DistanceSpec::Qf(None)),
            "hamming" => Ok(DistanceSpec::Hamming),
            "jaccard" => Ok(DistanceSpec::Jaccard),
            "levenshtein" => Ok(DistanceSpec::Levenshtein),
            _ => {
                if let Some(p) = s.strip_prefix("lp:") {
                    if p == "inf" {
                        return Ok(DistanceSpec::Lp(Norm::Infinity));
                    }
                    let p: f64 = p
                        .parse()
                        .map_err(|_| Error::param(format!("bad norm parameter in {s:?}")))?;
                    lp(p)
                } else if let Some(path) = s.strip_prefix("qf:") {
                    Ok(DistanceSpec::Qf(Some(PathBuf::from(path))))
                } else if let Some(inner) = s.strip_prefix("sqrt:") {
                    Ok(DistanceSpec::Sqrt(Box::new(inner.parse()?)))
                } else {
                    Err(Error::param(format!("unknown distance {s:?}")))
                }
            }
        }
    }
}

impl fmt::Display for DistanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceSpec::Lp(Norm::Infinity) => f.write_str("linf"),
            DistanceSpec::Lp(Norm::P(p)) if *p == 1.0 => f.write_str("l1"),
            DistanceSpec::Lp(Norm::P(p)) if *p == 2.0 => f.write_str("l2"),
            DistanceSpec::Lp(Norm::P(p)) => write!(f, "lp:{p}"),
            DistanceSpec::Angle => f.write_str("angle"),
            DistanceSpec::Qf(None) => f.write_str("qf"),
            DistanceSpec::Qf(Some(path)) => write!(f, "qf:{}", path.display()),
            DistanceSpec::Sqrt(inner) => write!(f, "sqrt:{inner}"),
            DistanceSpec::Hamming => f.write_str("hamming"),
            DistanceSpec::Jaccard => f.write_str("jaccard"),
            DistanceSpec::Levenshtein => f.write_str("levenshtein"),
        }
    }
}

impl DistanceSpec {
    pub fn kind(&self) -> ObjectKind {
        match self {
            DistanceSpec::Lp(_) | DistanceSpec::Angle | DistanceSpec::Qf(_) => ObjectKind::Vector,
            DistanceSpec::Sqrt(inner) => inner.kind(),
            DistanceSpec::Hamming | DistanceSpec::Jaccard => ObjectKind::Set,
            DistanceSpec::Levenshtein => ObjectKind::Text,
        }
    }

    fn mismatch(&self, kind: ObjectKind) -> Error {
        Error::param(format!(
            "distance {self} works on {}, not {}",
            self.kind().as_str(),
            kind.as_str()
        ))
    }

    /// The distance over vectors of dimension `dim`.
    pub fn vectors(&self, dim: usize) -> Result<DistanceFunction<VectorObj>> {
        Ok(match self {
            DistanceSpec::Lp(Norm::Infinity) => DistanceFunction::chebyshev(),
            DistanceSpec::Lp(Norm::P(p)) => DistanceFunction::lp(*p)?,
            DistanceSpec::Angle => DistanceFunction::angular(),
            DistanceSpec::Qf(path) => {
                let matrix: QfMatrix = match path {
                    Some(path) => read_qf_matrix(path)?,
                    None => rgb_qf_matrix(dim)?,
                };
                if matrix.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        left: matrix.dim(),
                        right: dim,
                    });
                }
                DistanceFunction::quadratic_form(matrix)
            }
            DistanceSpec::Sqrt(inner) => inner.vectors(dim)?.sqrt(),
            _ => return Err(self.mismatch(ObjectKind::Vector)),
        })
    }

    pub fn sets(&self) -> Result<DistanceFunction<SetObj>> {
        Ok(match self {
            DistanceSpec::Hamming => DistanceFunction::hamming(),
            DistanceSpec::Jaccard => DistanceFunction::jaccard(),
            DistanceSpec::Sqrt(inner) => inner.sets()?.sqrt(),
            _ => return Err(self.mismatch(ObjectKind::Set)),
        })
    }

    pub fn strings(&self) -> Result<DistanceFunction<StringObj>> {
        Ok(match self {
            DistanceSpec::Levenshtein => DistanceFunction::levenshtein(),
            DistanceSpec::Sqrt(inner) => inner.strings()?.sqrt(),
            _ => return Err(self.mismatch(ObjectKind::Text)),
        })
    }
}

#[derive(Parser, Debug)]
#[command(name = "ptolemaic", version, about = "Pivot filtering experiments")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a synthetic data set file.
    Gen(GenArgs),
    /// Estimate how often a distance satisfies Ptolemy's inequality.
    Ptolemaicity(PtoArgs),
    /// Average filtering cost per mode and neighbour count.
    Bench(BenchArgs),
    /// Four-region breakdown of which bound filters each negative.
    Regions(RegionArgs),
    /// Bound-to-distance ratios over a 2-d grid.
    Grid(GridArgs),
    /// One range query, with cost statistics.
    Query(QueryArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Uniform,
    Clustered,
    Sets,
    Histograms,
}

#[derive(Args, Debug, Clone)]
struct GenOpts {
    #[arg(long, value_enum, default_value = "uniform")]
    kind: KindArg,
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    /// Vector dimension, set universe size, or histogram bin count.
    #[arg(long, default_value_t = 10)]
    dim: usize,
    #[arg(long, default_value_t = DEFAULT_CLUSTERS)]
    clusters: usize,
    #[arg(long, default_value_t = DEFAULT_VARIANCE)]
    variance: f64,
}

impl GenOpts {
    fn spec(&self, seed: u64) -> GenSpec {
        let kind = match self.kind {
            KindArg::Uniform => GenKind::Uniform,
            KindArg::Clustered => GenKind::Clustered {
                clusters: self.clusters,
                variance: self.variance,
            },
            KindArg::Sets => GenKind::Sets,
            KindArg::Histograms => GenKind::Histograms,
        };
        GenSpec {
            kind,
            n: self.n,
            dim: self.dim,
            seed,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct DataOpts {
    /// Read objects from this file instead of generating fresh data per run.
    #[arg(long)]
    data: Option<PathBuf>,
    #[command(flatten)]
    gen: GenOpts,
    /// Shortest line kept when reading strings.
    #[arg(long, default_value_t = 1)]
    min_len: usize,
    #[arg(long, default_value = "l2")]
    distance: String,
}

#[derive(Args, Debug)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    gen: GenOpts,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// For histograms: also write the weight matrix here.
    #[arg(long)]
    matrix_out: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TestArg {
    /// The inequality for the quadruple as drawn.
    Labeled,
    /// All labelings at once.
    All,
}

#[derive(Args, Debug)]
struct PtoArgs {
    #[command(flatten)]
    data: DataOpts,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long, default_value_t = 10_000)]
    quadruples: usize,
    /// Relative tolerance on the right-hand side.
    #[arg(long, default_value_t = 1e-9)]
    eps: f64,
    #[arg(long, value_enum, default_value = "labeled")]
    test: TestArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PivotArg {
    Sss,
    Random,
}

#[derive(Args, Debug, Clone)]
struct PivotOpts {
    #[arg(long, value_enum, default_value = "sss")]
    pivots: PivotArg,
    /// SSS separation factor.
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    alpha: f64,
    /// SSS maximum distance; estimated from the data when absent.
    #[arg(long)]
    max_distance: Option<f64>,
    /// Number of random pivots.
    #[arg(long, default_value_t = 10)]
    pivot_count: usize,
}

impl PivotOpts {
    fn choice(&self) -> PivotChoice {
        match self.pivots {
            PivotArg::Sss => PivotChoice::Sparse {
                alpha: self.alpha,
                max_distance: self.max_distance,
            },
            PivotArg::Random => PivotChoice::Random {
                count: self.pivot_count,
            },
        }
    }
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[command(flatten)]
    data: DataOpts,
    #[command(flatten)]
    pivots: PivotOpts,
    #[arg(long, value_delimiter = ',', default_values_t = FilterMode::ALL)]
    modes: Vec<FilterMode>,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_KS)]
    ks: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    queries: usize,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Do not count the query itself among its k neighbours.
    #[arg(long)]
    exclude_self: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[command(flatten)]
    data: DataOpts,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 5, 10, 20, 50, 100])]
    pivot_counts: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 100)]
    queries: usize,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long)]
    exclude_self: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Point([f64; 2]);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (x, y) = s.split_once(',').ok_or("expected x,y")?;
        let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| e.to_string());
        Ok(Point([parse(x)?, parse(y)?]))
    }
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value = "l2")]
    distance: String,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    xmax: f64,
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    ymin: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    ymax: f64,
    #[arg(long, default_value_t = 61)]
    nx: usize,
    #[arg(long, default_value_t = 61)]
    ny: usize,
    /// Query point as `x,y`.
    #[arg(long, default_value = "-1,0", allow_hyphen_values = true)]
    q: Point,
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    p: Point,
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    s: Point,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[command(flatten)]
    data: DataOpts,
    #[command(flatten)]
    pivots: PivotOpts,
    /// Query object id; a random non-pivot object when absent.
    #[arg(long)]
    query: Option<usize>,
    /// Search radius.
    #[arg(long, conflicts_with = "k")]
    radius: Option<f64>,
    /// Use the radius covering this many objects (default 10).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = FilterMode::ALL)]
    modes: Vec<FilterMode>,
    #[arg(long)]
    exclude_self: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

/// Entry point for the binary: parses `std::env::args`, runs, and maps
/// errors to a one-line diagnostic and a nonzero status.
pub fn main() -> ExitCode {
    main_from(std::env::args_os())
}

pub fn main_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("ptolemaic: {}", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string();
            eprintln!("ptolemaic: {}", msg.lines().next().unwrap_or_default());
            ExitCode::FAILURE
        }
    }
}

/// Runs a parsed command line, writing its output.
pub fn run(cli: &Cli) -> Result<()> {
    let (text, out) = match &cli.command {
        Command::Gen(a) => (gen(a)?, &a.output),
        Command::Ptolemaicity(a) => (ptolemaicity(a)?, &a.output),
        Command::Bench(a) => (bench(a)?, &a.output),
        Command::Regions(a) => (regions(a)?, &a.output),
        Command::Grid(a) => (grid(a)?, &a.output),
        Command::Query(a) => (query(a)?, &a.output),
    };
    emit(out.out.as_deref(), &text)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(a: &GenArgs) -> Result<String> {
    let spec = a.gen.spec(a.seed);
    let mut header = Header::new(match spec.kind {
        GenKind::Sets => ObjectKind::Set,
        _ => ObjectKind::Vector,
    })
    .with("gen", spec.kind.as_str())
    .with("n", spec.n)
    .with("dim", spec.dim)
    .with("seed", spec.seed);
    if let GenKind::Clustered { clusters, variance } = spec.kind {
        header = header.with("clusters", clusters).with("variance", variance);
    }
    if let Some(path) = &a.matrix_out {
        if spec.kind != GenKind::Histograms {
            return Err(Error::param("--matrix-out only applies to histograms"));
        }
        let (_, matrix) = synthetic_histograms(spec.n, spec.dim, spec.seed)?;
        emit(Some(path), &write_qf_matrix(&matrix))?;
    }
    Ok(spec.generate()?.to_text(&header))
}

/// Data plus distance, resolved to one object kind.
enum Typed<'a> {
    Vectors(DataSource<'a, VectorObj>, DistanceFunction<VectorObj>),
    Sets(DataSource<'a, SetObj>, DistanceFunction<SetObj>),
    Strings(DataSource<'a, StringObj>, DistanceFunction<StringObj>),
}

/// Calls a generic expression with whichever kind `typed` holds.
macro_rules! with_typed {
    ($typed:expr, |$src:ident, $d:ident| $body:expr) => {
        match $typed {
            Typed::Vectors($src, $d) => $body,
            Typed::Sets($src, $d) => $body,
            Typed::Strings($src, $d) => $body,
        }
    };
}

fn load(opts: &DataOpts) -> Result<Option<AnyDataSet>> {
    match &opts.data {
        Some(path) => {
            let spec: DistanceSpec = opts.distance.parse()?;
            Ok(Some(read_dataset(path, Some(spec.kind()), opts.min_len)?))
        }
        None => Ok(None),
    }
}

fn dataset_label(opts: &DataOpts) -> String {
    match &opts.data {
        Some(path) => path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string()),
        None => opts.gen.spec(0).label(),
    }
}

fn typed<'a>(opts: &'a DataOpts, loaded: Option<&'a AnyDataSet>) -> Result<Typed<'a>> {
    let spec: DistanceSpec = opts.distance.parse()?;
    Ok(match loaded {
        Some(AnyDataSet::Vectors(data)) => {
            let dim = data.dim().unwrap_or(0);
            Typed::Vectors(DataSource::Static(data), spec.vectors(dim)?)
        }
        Some(AnyDataSet::Sets(data)) => Typed::Sets(DataSource::Static(data), spec.sets()?),
        Some(AnyDataSet::Strings(data)) => {
            Typed::Strings(DataSource::Static(data), spec.strings()?)
        }
        None => {
            let gen = &opts.gen;
            match gen.kind {
                KindArg::Sets => Typed::Sets(
                    DataSource::generated(move |seed| {
                        crate::datagen::random_sets(gen.n, gen.dim, seed)
                    }),
                    spec.sets()?,
                ),
                _ => Typed::Vectors(
                    DataSource::generated(move |seed| gen.spec(seed).vectors()),
                    spec.vectors(gen.dim)?,
                ),
            }
        }
    })
}

fn ptolemaicity(a: &PtoArgs) -> Result<String> {
    let loaded = load(&a.data)?;
    let typed = typed(&a.data, loaded.as_ref())?;
    let cfg = RateConfig {
        quadruples: a.quadruples,
        runs: a.runs,
        eps_rel: a.eps,
        seed: a.seed,
        test: match a.test {
            TestArg::Labeled => PtolemyTest::Labeled,
            TestArg::All => PtolemyTest::AllLabelings,
        },
    };
    let dataset = dataset_label(&a.data);
    let row = with_typed!(typed, |src, d| ptolemaicity_rate(&src, &d, &cfg)?
        .row(&a.data.distance, &dataset));
    to_csv(&[row])
}

fn bench(a: &BenchArgs) -> Result<String> {
    let loaded = load(&a.data)?;
    let typed = typed(&a.data, loaded.as_ref())?;
    let cfg = BenchConfig {
        pivots: a.pivots.choice(),
        modes: a.modes.clone(),
        ks: a.ks.clone(),
        queries: a.queries,
        runs: a.runs,
        seed: a.seed,
        exclude_self: a.exclude_self,
    };
    let labels = Labels::new(&a.data.distance, dataset_label(&a.data));
    let rows = with_typed!(typed, |src, d| bench_filtering(&src, &d, &cfg, &labels)?);
    to_csv(&rows)
}

fn regions(a: &RegionArgs) -> Result<String> {
    let loaded = load(&a.data)?;
    let typed = typed(&a.data, loaded.as_ref())?;
    let cfg = RegionConfig {
        pivot_counts: a.pivot_counts.clone(),
        k: a.k,
        queries: a.queries,
        runs: a.runs,
        seed: a.seed,
        exclude_self: a.exclude_self,
    };
    let labels = Labels::new(&a.data.distance, dataset_label(&a.data));
    let rows = with_typed!(typed, |src, d| relative_power(&src, &d, &cfg, &labels)?);
    to_csv(&rows)
}

fn grid(a: &GridArgs) -> Result<String> {
    let d = a.distance.parse::<DistanceSpec>()?.vectors(2)?;
    let spec = GridSpec {
        xmin: a.xmin,
        xmax: a.xmax,
        ymin: a.ymin,
        ymax: a.ymax,
        nx: a.nx,
        ny: a.ny,
        q: a.q.0,
        p: a.p.0,
        s: a.s.0,
    };
    to_csv(&bound_accuracy_grid(&d, &spec)?)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct QueryRow {
    query: usize,
    mode: String,
    radius: f64,
    m: usize,
    results: usize,
    candidates: u64,
    total_cost: u64,
    false_neg: u64,
    ids: String,
}

fn query(a: &QueryArgs) -> Result<String> {
    let loaded = load(&a.data)?;
    let mut seeds = rng::seeded(a.seed);
    let data_seed: u64 = seeds.random();
    let typed = typed(&a.data, loaded.as_ref())?;
    let rows = with_typed!(typed, |src, d| src.with_data(data_seed, |data| {
        query_one(data, &d, a, seeds.random(), seeds.random())
    })?);
    to_csv(&rows)
}

fn query_one<T: Send + Sync + 'static>(
    data: &DataSet<T>,
    d: &DistanceFunction<T>,
    a: &QueryArgs,
    pivot_seed: u64,
    query_seed: u64,
) -> Result<Vec<QueryRow>> {
    let table = PivotTable::build(data, d, a.pivots.choice().select(data, d, pivot_seed)?)?;
    let qid = match a.query {
        Some(id) if id < data.len() => id,
        Some(id) => return Err(Error::param(format!("query id {id} out of range"))),
        None => {
            crate::experiments::draw_queries(data.len(), table.pivots().ids(), 1, query_seed)?[0]
        }
    };
    let q = &data[qid];
    let radius = match (a.radius, a.k) {
        (Some(r), _) => r,
        (None, k) => {
            let k = k.unwrap_or(10);
            if a.exclude_self {
                crate::experiments::radius_for_k_excluding(data, d, qid, k)?
            } else {
                crate::experiments::radius_for_k(data, d, q, k)?
            }
        }
    };
    let oracle = linear_scan(data, d, q, radius)?;
    let mut rows = Vec::with_capacity(a.modes.len());
    for &mode in &a.modes {
        let (ids, stats) = table.range_query(q, radius, mode, Some(&oracle))?;
        rows.push(QueryRow {
            query: qid,
            mode: mode.as_str().into(),
            radius,
            m: table.num_pivots(),
            results: ids.len(),
            candidates: stats.candidates,
            total_cost: stats.total_distance_computations,
            false_neg: stats.false_negatives.unwrap_or(0),
            ids: ids
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        });
    }
    Ok(rows)
}
