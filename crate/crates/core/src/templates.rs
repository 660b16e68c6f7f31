//! Event templates and the train/test split.
//!
//! The template file is TOML with one `[[template]]` table per event:
//!
//! ```toml
//! [[template]]
//! id = "left-job"
//! split = "train"
//! past = "he left his job"          # default (non-future) clause
//! future = "he will leave his job"
//! occurrence = ["hour", "weekday", "monthday", "month", "year"]
//! span = "he worked at the firm"    # followed by "from X to Y" / "for N units"
//! began = "he started at the firm"  # followed by "at X and"
//! until = "stayed until"            # followed by "Y"
//! duration = ["hours", "days"]
//! ```
//!
//! Clauses are written as they appear mid-sentence; the realizer capitalizes
//! the first letter when a clause opens a sentence. Occurrence clauses are
//! required when `occurrence` is non-empty, and `span`/`began`/`until` when
//! `duration` is non-empty.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Axis, DurationUnit};

pub const BUNDLED_TEMPLATES: &str = include_str!("../data/templates.toml");

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("template file does not match the schema: {0}")]
    Schema(String),
    #[error("duplicate template id `{0}`")]
    DuplicateId(String),
    #[error("template `{0}` has no occurrence or duration units")]
    NoUnits(String),
    #[error("template `{id}` lists {unit} but has no `{field}` text")]
    MissingText {
        id: String,
        unit: String,
        field: &'static str,
    },
    #[error("template `{id}` field `{field}`: {problem}")]
    BadText {
        id: String,
        field: &'static str,
        problem: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub const ALL: [Split; 2] = [Split::Train, Split::Test];

    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "train" => Ok(Split::Train),
            "test" => Ok(Split::Test),
            _ => Err(format!("unknown split `{s}`")),
        }
    }
}

/// Units that can fill a template's slot as a point in time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OccurrenceUnit {
    Hour,
    // "day" in the template labels means a day of the week.
    #[serde(alias = "day")]
    Weekday,
    Monthday,
    Month,
    Year,
}

impl OccurrenceUnit {
    pub fn axis(self) -> Axis {
        match self {
            OccurrenceUnit::Hour => Axis::Hour,
            OccurrenceUnit::Weekday => Axis::Weekday,
            OccurrenceUnit::Monthday => Axis::MonthDay,
            OccurrenceUnit::Month => Axis::Month,
            OccurrenceUnit::Year => Axis::Year,
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "hour" => Some(OccurrenceUnit::Hour),
            "weekday" | "day" => Some(OccurrenceUnit::Weekday),
            "monthday" => Some(OccurrenceUnit::Monthday),
            "month" => Some(OccurrenceUnit::Month),
            "year" => Some(OccurrenceUnit::Year),
            _ => None,
        }
    }
}

/// Units a template's span can be measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpanUnit {
    Hours,
    Days,
    Months,
    Years,
}

impl SpanUnit {
    pub fn duration_unit(self) -> DurationUnit {
        match self {
            SpanUnit::Hours => DurationUnit::Hours,
            SpanUnit::Days => DurationUnit::Days,
            SpanUnit::Months => DurationUnit::Months,
            SpanUnit::Years => DurationUnit::Years,
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "hours" => Some(SpanUnit::Hours),
            "days" => Some(SpanUnit::Days),
            "months" => Some(SpanUnit::Months),
            "years" => Some(SpanUnit::Years),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventTemplate {
    pub id: String,
    pub split: Split,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub past: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub future: Option<String>,
    #[serde(default)]
    pub occurrence: BTreeSet<OccurrenceUnit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub began: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub until: Option<String>,
    #[serde(default)]
    pub duration: BTreeSet<SpanUnit>,
}

impl EventTemplate {
    pub fn has_occurrence(&self, unit: OccurrenceUnit) -> bool {
        self.occurrence.contains(&unit)
    }

    pub fn has_duration(&self, unit: SpanUnit) -> bool {
        self.duration.contains(&unit)
    }

    fn validate(&self) -> Result<(), TemplateError> {
        if self.occurrence.is_empty() && self.duration.is_empty() {
            return Err(TemplateError::NoUnits(self.id.clone()));
        }
        let require = |text: &Option<String>, field: &'static str, unit: String| {
            let Some(text) = text else {
                return Err(TemplateError::MissingText {
                    id: self.id.clone(),
                    unit,
                    field,
                });
            };
            check_text(&self.id, field, text)
        };
        if let Some(unit) = self.occurrence.iter().next() {
            require(&self.past, "past", format!("{unit:?}"))?;
            require(&self.future, "future", format!("{unit:?}"))?;
        }
        if let Some(unit) = self.duration.iter().next() {
            require(&self.span, "span", format!("{unit:?}"))?;
            require(&self.began, "began", format!("{unit:?}"))?;
            require(&self.until, "until", format!("{unit:?}"))?;
            let until = self.until.as_deref().unwrap_or_default();
            if !until.ends_with(" until") || until[..until.len() - 6].contains(" until") {
                return Err(TemplateError::BadText {
                    id: self.id.clone(),
                    field: "until",
                    problem: "must end with a single `until`",
                });
            }
            if until.contains(" and ") {
                return Err(TemplateError::BadText {
                    id: self.id.clone(),
                    field: "until",
                    problem: "must not contain `and`",
                });
            }
        }
        Ok(())
    }
}

fn check_text(id: &str, field: &'static str, text: &str) -> Result<(), TemplateError> {
    let bad = |problem| {
        Err(TemplateError::BadText {
            id: id.to_owned(),
            field,
            problem,
        })
    };
    if text.trim().is_empty() {
        return bad("empty");
    }
    if text.trim() != text || text.contains("  ") {
        return bad("stray whitespace");
    }
    if text.contains(['\t', '\n', '\r']) {
        return bad("tab or newline");
    }
    if text.contains([',', '.']) {
        return bad("commas and periods are reserved for sentence structure");
    }
    Ok(())
}

#[derive(Debug, Serialize, Deserialize)]
struct TemplateFile {
    template: Vec<EventTemplate>,
}

/// A validated, immutable set of templates ordered by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateBank {
    templates: Vec<EventTemplate>,
}

impl TemplateBank {
    pub fn new(mut templates: Vec<EventTemplate>) -> Result<Self, TemplateError> {
        let mut seen = HashSet::new();
        for t in &templates {
            if !seen.insert(t.id.clone()) {
                return Err(TemplateError::DuplicateId(t.id.clone()));
            }
            t.validate()?;
        }
        templates.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(TemplateBank { templates })
    }

    pub fn from_toml_str(source: &str) -> Result<Self, TemplateError> {
        let file: TemplateFile =
            toml::from_str(source).map_err(|e| TemplateError::Schema(e.to_string()))?;
        Self::new(file.template)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TemplateError> {
        let path = path.as_ref();
        let source = std::fs::read_to_string(path).map_err(|source| TemplateError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&source)
    }

    /// The 71-template inventory shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_toml_str(BUNDLED_TEMPLATES).expect("bundled templates are valid")
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&TemplateFile {
            template: self.templates.clone(),
        })
        .expect("templates serialize")
    }

    pub fn templates(&self) -> &[EventTemplate] {
        &self.templates
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&EventTemplate> {
        self.templates
            .binary_search_by(|t| t.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.templates[i])
    }

    pub fn split(&self, split: Split) -> impl Iterator<Item = &EventTemplate> {
        self.templates.iter().filter(move |t| t.split == split)
    }

    pub fn split_counts(&self) -> BTreeMap<Split, usize> {
        let mut counts = BTreeMap::new();
        for t in &self.templates {
            *counts.entry(t.split).or_insert(0) += 1;
        }
        counts
    }

    /// Templates in `split` supporting `unit`, which may name an occurrence
    /// unit (`hour`, `weekday`, ...) or a duration unit (`hours`, `days`, ...).
    /// Unknown unit names match nothing.
    pub fn templates_for(&self, split: Split, unit: &str) -> Vec<&EventTemplate> {
        let occurrence = OccurrenceUnit::from_name(unit);
        let span = SpanUnit::from_name(unit);
        self.split(split)
            .filter(|t| {
                occurrence.is_some_and(|u| t.has_occurrence(u))
                    || span.is_some_and(|u| t.has_duration(u))
            })
            .collect()
    }
}
