//! Dataset files and corpus statistics.
//!
//! TSV layout (one header line, then one row per pair, `\n` line endings,
//! trailing newline):
//!
//! ```text
//! premise  hypothesis  label  id  set  template  split  method  variation  hypothesis_type  unit_pair  seed_path
//! ```
//!
//! Absent optional fields are written as `-`. JSONL files carry one object
//! per line with the same field names.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generate::{ChallengeSet, HypothesisType, NLIPair, PairMeta, SamplingMethod, Variation};
use crate::model::Label;
use crate::oracle::UnitPair;
use crate::templates::Split;

pub const COLUMNS: [&str; 12] = [
    "premise",
    "hypothesis",
    "label",
    "id",
    "set",
    "template",
    "split",
    "method",
    "variation",
    "hypothesis_type",
    "unit_pair",
    "seed_path",
];

const NONE: &str = "-";

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("dataset is empty")]
    Empty,
    #[error("row {id}: field `{field}` contains a tab or line break")]
    BadText { id: String, field: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Tsv,
    Jsonl,
}

impl Format {
    /// `.jsonl` and `.json` paths are JSONL; everything else is TSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json") => Format::Jsonl,
            _ => Format::Tsv,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(format!("unknown format: {s}")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::Jsonl => "jsonl",
        })
    }
}

/// Flat record shared by both formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Row {
    premise: String,
    hypothesis: String,
    label: Label,
    id: String,
    set: ChallengeSet,
    template: String,
    split: Split,
    method: Option<SamplingMethod>,
    variation: Variation,
    hypothesis_type: Option<HypothesisType>,
    unit_pair: Option<UnitPair>,
    seed_path: String,
}

impl From<&NLIPair> for Row {
    fn from(p: &NLIPair) -> Self {
        Row {
            premise: p.premise.clone(),
            hypothesis: p.hypothesis.clone(),
            label: p.label,
            id: p.id.clone(),
            set: p.meta.set,
            template: p.meta.template_id.clone(),
            split: p.meta.split,
            method: p.meta.sampling_method,
            variation: p.meta.variation,
            hypothesis_type: p.meta.hypothesis_type,
            unit_pair: p.meta.unit_pair,
            seed_path: p.meta.seed_path.clone(),
        }
    }
}

impl From<Row> for NLIPair {
    fn from(r: Row) -> Self {
        NLIPair {
            id: r.id,
            premise: r.premise,
            hypothesis: r.hypothesis,
            label: r.label,
            meta: PairMeta {
                set: r.set,
                template_id: r.template,
                split: r.split,
                sampling_method: r.method,
                variation: r.variation,
                hypothesis_type: r.hypothesis_type,
                unit_pair: r.unit_pair,
                seed_path: r.seed_path,
            },
        }
    }
}

fn check_text(p: &NLIPair) -> Result<(), DatasetError> {
    let fields: [(&'static str, &str); 5] = [
        ("premise", &p.premise),
        ("hypothesis", &p.hypothesis),
        ("id", &p.id),
        ("template", &p.meta.template_id),
        ("seed_path", &p.meta.seed_path),
    ];
    for (field, text) in fields {
        if text.contains(['\t', '\n', '\r']) {
            return Err(DatasetError::BadText {
                id: p.id.clone(),
                field,
            });
        }
    }
    Ok(())
}

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| NONE.to_owned(), |v| v.to_string())
}

fn tsv_line(p: &NLIPair) -> String {
    let m = &p.meta;
    [
        p.premise.clone(),
        p.hypothesis.clone(),
        p.label.to_string(),
        p.id.clone(),
        m.set.to_string(),
        m.template_id.clone(),
        m.split.to_string(),
        opt(m.sampling_method),
        m.variation.to_string(),
        opt(m.hypothesis_type),
        opt(m.unit_pair),
        m.seed_path.clone(),
    ]
    .join("\t")
}

/// Serializes pairs to a string in `format`.
pub fn to_string(pairs: &[NLIPair], format: Format) -> Result<String, DatasetError> {
    let mut out = String::new();
    if format == Format::Tsv {
        out.push_str(&COLUMNS.join("\t"));
        out.push('\n');
    }
    for p in pairs {
        check_text(p)?;
        match format {
            Format::Tsv => out.push_str(&tsv_line(p)),
            Format::Jsonl => {
                out.push_str(&serde_json::to_string(&Row::from(p)).expect("rows always serialize"))
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_dataset(pairs: &[NLIPair], path: &Path, format: Format) -> Result<(), DatasetError> {
    if pairs.is_empty() {
        return Err(DatasetError::Empty);
    }
    let text = to_string(pairs, format)?;
    let io_err = |source| DatasetError::Io {
        path: path.to_owned(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut w = BufWriter::new(file);
    w.write_all(text.as_bytes()).map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn parse_field<T: FromStr>(line: usize, column: &str, value: &str) -> Result<T, DatasetError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e| DatasetError::Malformed {
        line,
        message: format!("column {column}: {e}"),
    })
}

fn parse_opt<T: FromStr>(line: usize, column: &str, value: &str) -> Result<Option<T>, DatasetError>
where
    T::Err: fmt::Display,
{
    if value == NONE {
        Ok(None)
    } else {
        parse_field(line, column, value).map(Some)
    }
}

fn parse_tsv(text: &str) -> Result<Vec<NLIPair>, DatasetError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let Some((_, header)) = lines.next() else {
        return Err(DatasetError::Empty);
    };
    if header.split('\t').ne(COLUMNS) {
        return Err(DatasetError::Malformed {
            line: 1,
            message: format!("expected header `{}`", COLUMNS.join("\\t")),
        });
    }
    let mut pairs = Vec::new();
    for (n, line) in lines {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != COLUMNS.len() {
            return Err(DatasetError::Malformed {
                line: n,
                message: format!("expected {} columns, found {}", COLUMNS.len(), f.len()),
            });
        }
        pairs.push(NLIPair {
            premise: f[0].to_owned(),
            hypothesis: f[1].to_owned(),
            label: parse_field(n, COLUMNS[2], f[2])?,
            id: f[3].to_owned(),
            meta: PairMeta {
                set: parse_field(n, COLUMNS[4], f[4])?,
                template_id: f[5].to_owned(),
                split: parse_field(n, COLUMNS[6], f[6])?,
                sampling_method: parse_opt(n, COLUMNS[7], f[7])?,
                variation: parse_field(n, COLUMNS[8], f[8])?,
                hypothesis_type: parse_opt(n, COLUMNS[9], f[9])?,
                unit_pair: parse_opt(n, COLUMNS[10], f[10])?,
                seed_path: f[11].to_owned(),
            },
        });
    }
    Ok(pairs)
}

fn parse_jsonl(text: &str) -> Result<Vec<NLIPair>, DatasetError> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Row = serde_json::from_str(line).map_err(|e| DatasetError::Malformed {
            line: i + 1,
            message: e.to_string(),
        })?;
        pairs.push(row.into());
    }
    Ok(pairs)
}

/// Parses dataset text; a first character of `{` selects JSONL.
pub fn from_str(text: &str) -> Result<Vec<NLIPair>, DatasetError> {
    let pairs = if text.trim_start().starts_with('{') {
        parse_jsonl(text)?
    } else {
        parse_tsv(text)?
    };
    if pairs.is_empty() {
        return Err(DatasetError::Empty);
    }
    Ok(pairs)
}

pub fn read_dataset(path: &Path) -> Result<Vec<NLIPair>, DatasetError> {
    let text = fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_owned(),
        source,
    })?;
    from_str(&text)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelShare {
    pub count: usize,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetStats {
    pub rows: usize,
    pub rows_per_split: BTreeMap<Split, usize>,
    pub labels: BTreeMap<Label, LabelShare>,
    /// Facet name -> value -> row count. Facets: method, variation,
    /// hypothesis_type, unit_pair, template, set.
    pub facets: BTreeMap<String, BTreeMap<String, usize>>,
}

pub fn compute_stats(pairs: &[NLIPair]) -> Result<DatasetStats, DatasetError> {
    if pairs.is_empty() {
        return Err(DatasetError::Empty);
    }
    let mut rows_per_split = BTreeMap::new();
    let mut label_counts: BTreeMap<Label, usize> = BTreeMap::new();
    let mut facets: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for p in pairs {
        *rows_per_split.entry(p.meta.split).or_default() += 1;
        *label_counts.entry(p.label).or_default() += 1;
        let m = &p.meta;
        let values = [
            ("set", m.set.to_string()),
            ("template", m.template_id.clone()),
            ("method", opt(m.sampling_method)),
            ("variation", m.variation.to_string()),
            ("hypothesis_type", opt(m.hypothesis_type)),
            ("unit_pair", opt(m.unit_pair)),
        ];
        for (facet, value) in values {
            *facets
                .entry(facet.to_owned())
                .or_default()
                .entry(value)
                .or_default() += 1;
        }
    }
    let n = pairs.len() as f64;
    let labels = label_counts
        .into_iter()
        .map(|(l, count)| {
            (
                l,
                LabelShare {
                    count,
                    percent: 100.0 * count as f64 / n,
                },
            )
        })
        .collect();
    Ok(DatasetStats {
        rows: pairs.len(),
        rows_per_split,
        labels,
        facets,
    })
}

impl fmt::Display for DatasetStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows\t{}", self.rows)?;
        for (split, n) in &self.rows_per_split {
            writeln!(f, "split\t{split}\t{n}")?;
        }
        for (label, share) in &self.labels {
            writeln!(f, "label\t{label}\t{}\t{:.2}%", share.count, share.percent)?;
        }
        for (facet, values) in &self.facets {
            if facet == "template" {
                writeln!(f, "{facet}\t({} distinct)", values.len())?;
                continue;
            }
            for (value, n) in values {
                writeln!(f, "{facet}\t{value}\t{n}")?;
            }
        }
        Ok(())
    }
}
