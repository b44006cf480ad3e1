//! Plain-text data set and matrix files.
//!
//! One object per line: vectors as whitespace-separated reals, sets as
//! whitespace-separated sorted integers (an empty line is the empty set),
//! strings as raw UTF-8 lines. The first line may be a header of the form
//! `# kind=vectors n=100 dim=5 seed=1`. A weight matrix file holds `k` lines
//! of `k` reals.
//!
//! Reals are written with Rust's shortest round-trip formatting, so writing
//! and reading back is bit-exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::distances::QfMatrix;
use crate::error::{Error, Result};
use crate::objects::{DataSet, ObjectKind, SetObj, StringObj, VectorObj};

/// Data set of any supported object kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDataSet {
    Vectors(DataSet<VectorObj>),
    Sets(DataSet<SetObj>),
    Strings(DataSet<StringObj>),
}

impl AnyDataSet {
    pub fn kind(&self) -> ObjectKind {
        match self {
            AnyDataSet::Vectors(_) => ObjectKind::Vector,
            AnyDataSet::Sets(_) => ObjectKind::Set,
            AnyDataSet::Strings(_) => ObjectKind::Text,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyDataSet::Vectors(d) => d.len(),
            AnyDataSet::Sets(d) => d.len(),
            AnyDataSet::Strings(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Serializes with the given header.
    pub fn to_text(&self, header: &Header) -> String {
        match self {
            AnyDataSet::Vectors(d) => write_vectors(d, header),
            AnyDataSet::Sets(d) => write_sets(d, header),
            AnyDataSet::Strings(d) => write_strings(d, header),
        }
    }
}

/// `# kind=<kind> key=value ...` metadata line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Header {
    pub kind: Option<String>,
    pub fields: Vec<(String, String)>,
}

impl Header {
    pub fn new(kind: ObjectKind) -> Self {
        Header {
            kind: Some(kind.as_str().to_string()),
            fields: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn parse(line: &str) -> Option<Self> {
        let rest = line.strip_prefix('#')?.trim();
        let mut header = Header::default();
        for token in rest.split_whitespace() {
            let (k, v) = token.split_once('=')?;
            if k == "kind" {
                header.kind = Some(v.to_string());
            } else {
                header.fields.push((k.to_string(), v.to_string()));
            }
        }
        header.kind.is_some().then_some(header)
    }

    fn render(&self) -> String {
        let mut s = String::from("#");
        if let Some(kind) = &self.kind {
            write!(s, " kind={kind}").unwrap();
        }
        for (k, v) in &self.fields {
            write!(s, " {k}={v}").unwrap();
        }
        s
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Splits off a `# kind=...` first line, returning it and the data lines with
/// their 1-based line numbers.
fn split_header(text: &str) -> (Option<Header>, Vec<(usize, &str)>) {
    let mut lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .collect();
    let header = lines.first().and_then(|(_, l)| Header::parse(l));
    if header.is_some() {
        lines.remove(0);
    }
    (header, lines)
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn expect_kind(path: &Path, header: &Option<Header>, kind: ObjectKind) -> Result<()> {
    match header.as_ref().and_then(|h| h.kind.as_deref()) {
        Some(k) if k != kind.as_str() => Err(parse_err(
            path,
            1,
            format!("expected kind={}, found kind={k}", kind.as_str()),
        )),
        _ => Ok(()),
    }
}

fn render(header: &Header, body: impl Iterator<Item = String>) -> String {
    let mut out = header.render();
    out.push('\n');
    for line in body {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_vectors(data: &DataSet<VectorObj>, header: &Header) -> String {
    render(
        header,
        data.iter().map(|v| {
            v.coords()
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }),
    )
}

pub fn write_sets(data: &DataSet<SetObj>, header: &Header) -> String {
    render(
        header,
        data.iter().map(|s| {
            s.elements()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        }),
    )
}

pub fn write_strings(data: &DataSet<StringObj>, header: &Header) -> String {
    render(header, data.iter().map(StringObj::to_string))
}

pub fn read_vectors(path: impl AsRef<Path>) -> Result<DataSet<VectorObj>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let (header, lines) = split_header(&text);
    expect_kind(path, &header, ObjectKind::Vector)?;
    parse_vectors(path, &lines)
}

fn parse_vectors(path: &Path, lines: &[(usize, &str)]) -> Result<DataSet<VectorObj>> {
    let mut objects = Vec::with_capacity(lines.len());
    let mut dim = None;
    for &(no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| parse_err(path, no, format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if *dim.get_or_insert(coords.len()) != coords.len() {
            return Err(parse_err(
                path,
                no,
                format!("expected {} coordinates", dim.unwrap()),
            ));
        }
        objects.push(VectorObj::new(coords).map_err(|e| parse_err(path, no, e.to_string()))?);
    }
    DataSet::new(objects)
}

pub fn read_sets(path: impl AsRef<Path>) -> Result<DataSet<SetObj>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let (header, lines) = split_header(&text);
    expect_kind(path, &header, ObjectKind::Set)?;
    parse_sets(path, &lines)
}

fn parse_sets(path: &Path, lines: &[(usize, &str)]) -> Result<DataSet<SetObj>> {
    let objects = lines
        .iter()
        .map(|&(no, line)| {
            let elements = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|e| parse_err(path, no, format!("{t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            SetObj::new(elements).map_err(|e| parse_err(path, no, e.to_string()))
        })
        .collect::<Result<_>>()?;
    DataSet::new(objects)
}

/// Reads lines of at least `min_len` characters. An empty result is not an error here.
pub fn read_strings(path: impl AsRef<Path>, min_len: usize) -> Result<DataSet<StringObj>> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let (header, lines) = split_header(&text);
    expect_kind(path, &header, ObjectKind::Text)?;
    Ok(parse_strings(&lines, min_len))
}

fn parse_strings(lines: &[(usize, &str)], min_len: usize) -> DataSet<StringObj> {
    let objects = lines
        .iter()
        .map(|(_, l)| StringObj::new(l))
        .filter(|s| s.len() >= min_len.max(1))
        .collect();
    DataSet::new(objects).expect("strings have no dimension")
}

/// Reads a data set whose kind comes from its header, or from `fallback`
/// when the file has none. Strings keep lines of at least `min_len` characters.
pub fn read_dataset(
    path: impl AsRef<Path>,
    fallback: Option<ObjectKind>,
    min_len: usize,
) -> Result<AnyDataSet> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let (header, lines) = split_header(&text);
    let kind = match header.as_ref().and_then(|h| h.kind.as_deref()) {
        Some("vectors") => ObjectKind::Vector,
        Some("sets") => ObjectKind::Set,
        Some("strings") => ObjectKind::Text,
        Some(other) => return Err(parse_err(path, 1, format!("unknown kind {other:?}"))),
        None => fallback.ok_or_else(|| {
            parse_err(
                path,
                1,
                "no `# kind=...` header; the object kind must be given",
            )
        })?,
    };
    Ok(match kind {
        ObjectKind::Vector => AnyDataSet::Vectors(parse_vectors(path, &lines)?),
        ObjectKind::Set => AnyDataSet::Sets(parse_sets(path, &lines)?),
        ObjectKind::Text => AnyDataSet::Strings(parse_strings(&lines, min_len)),
    })
}

pub fn write_qf_matrix(matrix: &QfMatrix) -> String {
    matrix
        .entries()
        .chunks_exact(matrix.dim())
        .map(|row| row.iter().map(f64::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// Reads and validates (symmetry, positive-definiteness) a square matrix.
pub fn read_qf_matrix(path: impl AsRef<Path>) -> Result<QfMatrix> {
    let path = path.as_ref();
    let text = read_text(path)?;
    let mut entries = Vec::new();
    let mut rows = 0;
    let mut width = None;
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let before = entries.len();
        for t in line.split_whitespace() {
            entries.push(
                t.parse::<f64>()
                    .map_err(|e| parse_err(path, i + 1, format!("{t:?}: {e}")))?,
            );
        }
        rows += 1;
        if *width.get_or_insert(entries.len() - before) != entries.len() - before {
            return Err(parse_err(path, i + 1, "ragged matrix row"));
        }
    }
    if rows == 0 || entries.len() != rows * rows {
        return Err(parse_err(
            path,
            rows,
            format!(
                "{} entries in {rows} rows is not a square matrix",
                entries.len()
            ),
        ));
    }
    QfMatrix::new(rows, entries)
}
