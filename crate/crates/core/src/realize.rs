//! Turns logical forms into premise and hypothesis sentences.
//!
//! Point phrases take `at` for hours, `on` for weekdays, month-days and
//! day-month-year dates, and `in` for months, years and month-year dates.
//! Before/after phrases use the bare point ("before July").

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    Anchor, ClaimMode, DurationClaim, DurationValue, ListKind, Point, TemporalSpec,
};
use crate::templates::EventTemplate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("template `{id}` has no `{field}` text")]
    MissingText { id: String, field: &'static str },
    #[error("cannot render a zero duration")]
    ZeroDuration,
    #[error("spec kind not allowed here: {0}")]
    WrongSpec(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotPosition {
    #[default]
    Final,
    Fronted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tense {
    #[default]
    Past,
    Future,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PremiseWording {
    #[default]
    FromTo,
    BeganLastedUntil,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RealizationStyle {
    pub position: SlotPosition,
    pub tense: Tense,
}

impl RealizationStyle {
    pub const BASE: RealizationStyle = RealizationStyle {
        position: SlotPosition::Final,
        tense: Tense::Past,
    };

    pub fn new(position: SlotPosition, tense: Tense) -> Self {
        RealizationStyle { position, tense }
    }
}

pub fn preposition(point: &Point) -> &'static str {
    match point {
        Point::Time(t) => match t.kind() {
            ListKind::Hour12 | ListKind::Hour24 => "at",
            ListKind::Weekday | ListKind::MonthDay => "on",
            ListKind::MonthFull | ListKind::MonthAbbrev | ListKind::Year => "in",
        },
        Point::Date(d) if d.is_day_month_year() => "on",
        Point::Date(_) => "in",
    }
}

pub fn render_point_phrase(point: &Point) -> String {
    format!("{} {}", preposition(point), point.surface())
}

/// "5 hours", "1 day", "4 years 4 months". Zero parts of a year-month
/// composite are dropped.
pub fn duration_phrase(value: &DurationValue) -> Result<String, RenderError> {
    if value.is_zero() {
        return Err(RenderError::ZeroDuration);
    }
    Ok(match *value {
        DurationValue::Simple { unit, magnitude } => {
            format!("{magnitude} {}", unit.word(magnitude))
        }
        DurationValue::YearMonth { years, months } => {
            let y = format!("{years} {}", if years == 1 { "year" } else { "years" });
            let m = format!("{months} {}", if months == 1 { "month" } else { "months" });
            match (years, months) {
                (0, _) => m,
                (_, 0) => y,
                _ => format!("{y} {m}"),
            }
        }
    })
}

fn capitalize(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

fn text<'a>(
    t: &'a EventTemplate,
    value: &'a Option<String>,
    field: &'static str,
) -> Result<&'a str, RenderError> {
    value.as_deref().ok_or_else(|| RenderError::MissingText {
        id: t.id.clone(),
        field,
    })
}

fn occurrence_clause(t: &EventTemplate, tense: Tense) -> Result<&str, RenderError> {
    match tense {
        Tense::Past => text(t, &t.past, "past"),
        Tense::Future => text(t, &t.future, "future"),
    }
}

fn place(clause: &str, phrase: &str, position: SlotPosition) -> String {
    match position {
        SlotPosition::Final => format!("{} {phrase}.", capitalize(clause)),
        SlotPosition::Fronted => format!("{}, {clause}.", capitalize(phrase)),
    }
}

/// Sentence for an at/before/after claim on a point.
pub fn render_order_sentence(
    t: &EventTemplate,
    spec: &TemporalSpec,
    style: RealizationStyle,
) -> Result<String, RenderError> {
    let TemporalSpec::Anchored { anchor, point } = spec else {
        return Err(RenderError::WrongSpec(
            "ordering sentences need an anchored point",
        ));
    };
    let phrase = match anchor {
        Anchor::At => render_point_phrase(point),
        Anchor::Before | Anchor::After => format!("{} {}", anchor.word(), point.surface()),
    };
    Ok(place(
        occurrence_clause(t, style.tense)?,
        &phrase,
        style.position,
    ))
}

pub fn render_duration_premise(
    t: &EventTemplate,
    start: &Point,
    end: &Point,
    wording: PremiseWording,
) -> Result<String, RenderError> {
    Ok(match wording {
        PremiseWording::FromTo => format!(
            "{} from {} to {}.",
            capitalize(text(t, &t.span, "span")?),
            start.surface(),
            end.surface()
        ),
        PremiseWording::BeganLastedUntil => format!(
            "{} {} and {} {}.",
            capitalize(text(t, &t.began, "began")?),
            render_point_phrase(start),
            text(t, &t.until, "until")?,
            end.surface()
        ),
    })
}

pub fn render_duration_hypothesis(
    t: &EventTemplate,
    claim: &DurationClaim,
) -> Result<String, RenderError> {
    let amount = duration_phrase(&claim.value)?;
    let qualifier = match claim.mode {
        ClaimMode::Equal => "",
        ClaimMode::LessThan => "less than ",
    };
    Ok(format!(
        "{} for {qualifier}{amount}.",
        capitalize(text(t, &t.span, "span")?)
    ))
}

/// Sentence for an event some amount of time from now; always future tense.
pub fn render_future_offset(
    t: &EventTemplate,
    spec: &TemporalSpec,
    position: SlotPosition,
) -> Result<String, RenderError> {
    let TemporalSpec::FutureOffset { anchor, value } = spec else {
        return Err(RenderError::WrongSpec("expected a future offset"));
    };
    let word = match anchor {
        Anchor::At => "in",
        Anchor::Before => "before",
        Anchor::After => "after",
    };
    let phrase = format!("{word} {}", duration_phrase(value)?);
    Ok(place(
        occurrence_clause(t, Tense::Future)?,
        &phrase,
        position,
    ))
}
