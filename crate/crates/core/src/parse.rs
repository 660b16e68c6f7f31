//! Parser for the sentence grammar the realizer produces, and re-labelling
//! of parsed pairs through the oracle.
//!
//! Recognized temporal phrases:
//!
//! - `at|on|in <point>` and `before|after <point>`, slot-final or fronted
//! - `from <point> to <point>` and `<clause> at <point> and <verb> until <point>`
//! - `for [less than] N unit(s)` and `for Y years M months`
//! - `in|before|after N unit(s)`
//!
//! Points are any Table-of-lists surface form, `Month YYYY` or
//! `Nth Month YYYY`. This is not a general English temporal tagger.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    Anchor, ClaimMode, CompositeDate, DurationClaim, DurationUnit, DurationValue, Label, ListKind,
    MonthStyle, Point, TemporalSpec, TimePoint,
};
use crate::oracle::{
    composite_gold_duration, cross_unit_label, duration_label, gold_duration, order_label,
    OracleError, UnitConversions,
};
use crate::realize::{preposition, PremiseWording, SlotPosition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at bytes {}..{}: `{fragment}`", span.start, span.end)]
pub struct ParseError {
    pub message: String,
    pub span: Range<usize>,
    pub fragment: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Order,
    Duration,
    CrossUnit,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetKind::Order => "order",
            SetKind::Duration => "duration",
            SetKind::CrossUnit => "cross-unit",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedClaim {
    /// The sentence with its temporal phrase(s) removed.
    pub stem: String,
    pub spec: TemporalSpec,
    pub set_kind: SetKind,
    pub position: SlotPosition,
    /// Set for span premises only.
    pub wording: Option<PremiseWording>,
}

#[derive(Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    start: usize,
}

fn words(text: &str, offset: usize) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for piece in text.split(' ') {
        out.push(Word {
            text: piece,
            start: offset + pos,
        });
        pos += piece.len() + 1;
    }
    out
}

fn span_of(ws: &[Word<'_>]) -> Range<usize> {
    match (ws.first(), ws.last()) {
        (Some(a), Some(b)) => a.start..b.start + b.text.len(),
        _ => 0..0,
    }
}

struct Failure {
    message: String,
    span: Range<usize>,
}

fn fail<T>(message: impl Into<String>, ws: &[Word<'_>]) -> Result<T, Failure> {
    Err(Failure {
        message: message.into(),
        span: span_of(ws),
    })
}

const KEYWORDS: [&str; 7] = ["at", "on", "in", "before", "after", "from", "for"];

fn is_keyword(word: &str) -> bool {
    KEYWORDS.iter().any(|k| k.eq_ignore_ascii_case(word))
}

fn parse_number(word: &str) -> Option<u64> {
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if word.len() > 1 && word.starts_with('0') {
        return None;
    }
    word.parse().ok()
}

fn parse_year(word: &str) -> Option<u16> {
    if word.len() == 4 {
        parse_number(word).map(|y| y as u16)
    } else {
        None
    }
}

fn parse_month(word: &str) -> Option<(u8, MonthStyle)> {
    // "May" is spelled the same in both lists and reads as the full name.
    if let Some(i) = ListKind::MonthFull.lookup(word) {
        return Some((i as u8, MonthStyle::Full));
    }
    ListKind::MonthAbbrev
        .lookup(word)
        .map(|i| (i as u8, MonthStyle::Abbrev))
}

fn parse_point(ws: &[Word<'_>]) -> Result<Point, Failure> {
    let texts: Vec<&str> = ws.iter().map(|w| w.text).collect();
    let single = |kind: ListKind, s: &str| kind.lookup(s).map(|i| TimePoint::new(kind, i).unwrap());
    match texts.as_slice() {
        [s] => {
            for kind in [
                ListKind::Hour24,
                ListKind::Weekday,
                ListKind::MonthDay,
                ListKind::MonthFull,
                ListKind::MonthAbbrev,
                ListKind::Year,
            ] {
                if let Some(p) = single(kind, s) {
                    return Ok(p.into());
                }
            }
            fail("not a known temporal expression", ws)
        }
        [n, meridiem] if *meridiem == "AM" || *meridiem == "PM" => {
            match single(ListKind::Hour12, &format!("{n} {meridiem}")) {
                Some(p) => Ok(p.into()),
                None => fail("not a 12-hour clock time", ws),
            }
        }
        [month, year] => match (parse_month(month), parse_year(year)) {
            (Some((m, style)), Some(y)) => CompositeDate::month_year(m, y, style)
                .map(Point::from)
                .or_else(|e| fail(e.to_string(), ws)),
            _ => fail("expected `Month YYYY`", ws),
        },
        [day, month, year] => {
            let d = ListKind::MonthDay.lookup(day);
            match (d, parse_month(month), parse_year(year)) {
                (Some(d), Some((m, style)), Some(y)) => {
                    CompositeDate::day_month_year(d as u8 + 1, m, y, style)
                        .map(Point::from)
                        .or_else(|e| fail(e.to_string(), ws))
                }
                _ => fail("expected `Nth Month YYYY`", ws),
            }
        }
        _ => fail("not a known temporal expression", ws),
    }
}

fn parse_amount(ws: &[Word<'_>]) -> Result<DurationValue, Failure> {
    let texts: Vec<&str> = ws.iter().map(|w| w.text).collect();
    let simple = |n: &str, unit: &str| -> Option<(u64, DurationUnit, bool)> {
        let n = parse_number(n)?;
        let (unit, plural) = DurationUnit::from_word(unit)?;
        Some((n, unit, plural))
    };
    let agrees = |n: u64, plural: bool| (n == 1) != plural;
    match texts.as_slice() {
        [n, unit] => match simple(n, unit) {
            Some((n, unit, plural)) if agrees(n, plural) && n > 0 => {
                Ok(DurationValue::new(unit, n))
            }
            Some(_) => fail("bad magnitude or unit agreement", ws),
            None => fail("expected `N unit`", ws),
        },
        [y, yu, m, mu] => match (simple(y, yu), simple(m, mu)) {
            (Some((y, DurationUnit::Years, yp)), Some((m, DurationUnit::Months, mp)))
                if agrees(y, yp) && agrees(m, mp) && y > 0 && (1..12).contains(&m) =>
            {
                Ok(DurationValue::YearMonth {
                    years: y,
                    months: m as u8,
                })
            }
            _ => fail("expected `Y years M months`", ws),
        },
        _ => fail("expected a duration", ws),
    }
}

fn is_amount(ws: &[Word<'_>]) -> bool {
    ws.len() >= 2
        && parse_number(ws[0].text).is_some()
        && DurationUnit::from_word(ws[1].text).is_some()
}

fn infer_wrap(start: &Point, end: &Point) -> bool {
    match (start, end) {
        (Point::Time(s), Point::Time(e)) => {
            s.axis() == e.axis()
                && s.axis().is_cyclic()
                && e.canonical_index() < s.canonical_index()
        }
        _ => false,
    }
}

/// Parses one temporal phrase; `ws[0]` is the keyword.
fn parse_phrase(ws: &[Word<'_>]) -> Result<TemporalSpec, Failure> {
    let Some((head, rest)) = ws.split_first() else {
        return fail("empty phrase", ws);
    };
    if rest.is_empty() {
        return fail("keyword without an expression", ws);
    }
    let keyword = head.text.to_ascii_lowercase();
    match keyword.as_str() {
        "in" | "before" | "after" if is_amount(rest) => {
            let anchor = match keyword.as_str() {
                "in" => Anchor::At,
                "before" => Anchor::Before,
                _ => Anchor::After,
            };
            Ok(TemporalSpec::FutureOffset {
                anchor,
                value: parse_amount(rest)?,
            })
        }
        "at" | "on" | "in" => {
            let point = parse_point(rest)?;
            if preposition(&point) != keyword {
                return fail(
                    format!("`{}` does not take `{keyword}`", point.surface()),
                    ws,
                );
            }
            Ok(TemporalSpec::at(point))
        }
        "before" => Ok(TemporalSpec::before(parse_point(rest)?)),
        "after" => Ok(TemporalSpec::after(parse_point(rest)?)),
        "from" => {
            let Some(to) = rest.iter().position(|w| w.text == "to") else {
                return fail("`from` without `to`", ws);
            };
            let start = parse_point(&rest[..to])?;
            let end = parse_point(&rest[to + 1..])?;
            if start == end {
                return fail("span starts and ends at the same point", ws);
            }
            Ok(TemporalSpec::FromTo {
                start,
                end,
                wrapped: infer_wrap(&start, &end),
            })
        }
        "for" => {
            let (mode, amount) = match rest {
                [l, t, amount @ ..] if l.text == "less" && t.text == "than" => {
                    (ClaimMode::LessThan, amount)
                }
                _ => (ClaimMode::Equal, rest),
            };
            Ok(TemporalSpec::Duration(DurationClaim {
                mode,
                value: parse_amount(amount)?,
            }))
        }
        _ => fail("not a temporal keyword", ws),
    }
}

fn set_kind(spec: &TemporalSpec) -> SetKind {
    match spec {
        TemporalSpec::Anchored { .. } => SetKind::Order,
        TemporalSpec::FromTo { .. } | TemporalSpec::Duration(_) => SetKind::Duration,
        TemporalSpec::FutureOffset { .. } => SetKind::CrossUnit,
    }
}

fn join(ws: &[Word<'_>]) -> String {
    ws.iter().map(|w| w.text).collect::<Vec<_>>().join(" ")
}

/// Tries each keyword position from the right; the phrase must run to the
/// end of `ws`.
fn parse_final(ws: &[Word<'_>]) -> Result<(usize, TemporalSpec), Failure> {
    let mut first_failure = None;
    for k in (1..ws.len()).rev() {
        if !is_keyword(ws[k].text) {
            continue;
        }
        match parse_phrase(&ws[k..]) {
            Ok(spec) => return Ok((k, spec)),
            Err(f) => {
                first_failure.get_or_insert(f);
            }
        }
    }
    Err(first_failure.unwrap_or(Failure {
        message: "no temporal phrase found".into(),
        span: span_of(ws),
    }))
}

fn parse_began(ws: &[Word<'_>]) -> Option<Result<ParsedClaim, Failure>> {
    let until = ws.iter().rposition(|w| w.text == "until")?;
    let and = ws[..until].iter().rposition(|w| w.text == "and")?;
    let end_words = &ws[until + 1..];
    let (k, start_spec) = match parse_final(&ws[..and]) {
        Ok(found) => found,
        Err(_) => return None,
    };
    let TemporalSpec::Anchored {
        anchor: Anchor::At,
        point: start,
    } = start_spec
    else {
        return None;
    };
    Some(parse_point(end_words).map(|end| ParsedClaim {
        stem: format!("{} and {}", join(&ws[..k]), join(&ws[and + 1..=until])),
        spec: TemporalSpec::FromTo {
            start,
            end,
            wrapped: infer_wrap(&start, &end),
        },
        set_kind: SetKind::Duration,
        position: SlotPosition::Final,
        wording: Some(PremiseWording::BeganLastedUntil),
    }))
}

fn wording_of(spec: &TemporalSpec) -> Option<PremiseWording> {
    matches!(spec, TemporalSpec::FromTo { .. }).then_some(PremiseWording::FromTo)
}

/// Parses one generated sentence into its logical form.
pub fn parse_sentence(text: &str) -> Result<ParsedClaim, ParseError> {
    let to_error = |f: Failure| ParseError {
        fragment: text.get(f.span.clone()).unwrap_or_default().to_owned(),
        message: f.message,
        span: f.span,
    };
    let Some(body) = text.strip_suffix('.') else {
        return Err(ParseError {
            message: "sentence must end with a period".into(),
            span: text.len()..text.len(),
            fragment: String::new(),
        });
    };
    if body.is_empty() || body.contains('.') || body.contains("  ") {
        return Err(to_error(Failure {
            message: "malformed sentence".into(),
            span: 0..body.len(),
        }));
    }

    if let Some((front, rest)) = body.split_once(", ") {
        let fws = words(front, 0);
        if is_keyword(fws[0].text) {
            let spec = parse_phrase(&fws).map_err(to_error)?;
            if rest.is_empty() || rest.contains(", ") {
                return Err(to_error(Failure {
                    message: "expected a single clause after the fronted phrase".into(),
                    span: front.len() + 2..body.len(),
                }));
            }
            return Ok(ParsedClaim {
                stem: rest.to_owned(),
                set_kind: set_kind(&spec),
                wording: wording_of(&spec),
                spec,
                position: SlotPosition::Fronted,
            });
        }
    }

    let ws = words(body, 0);
    if let Some(parsed) = parse_began(&ws) {
        return parsed.map_err(to_error);
    }
    let (k, spec) = parse_final(&ws).map_err(to_error)?;
    Ok(ParsedClaim {
        stem: join(&ws[..k]),
        set_kind: set_kind(&spec),
        wording: wording_of(&spec),
        spec,
        position: SlotPosition::Final,
    })
}

/// Recomputes the gold label of a parsed premise/hypothesis pair.
pub fn relabel(
    premise: &ParsedClaim,
    hypothesis: &ParsedClaim,
    conversions: &UnitConversions,
) -> Result<Label, OracleError> {
    match (premise.set_kind, hypothesis.set_kind) {
        (SetKind::Order, SetKind::Order) => order_label(&premise.spec, &hypothesis.spec),
        (SetKind::Duration, SetKind::Duration) => {
            let (
                TemporalSpec::FromTo {
                    start,
                    end,
                    wrapped,
                },
                TemporalSpec::Duration(claim),
            ) = (&premise.spec, &hypothesis.spec)
            else {
                return Err(OracleError::IncompatibleClaims);
            };
            let gold = match (start, end) {
                (Point::Time(s), Point::Time(e)) => gold_duration(s, e, *wrapped)?,
                (Point::Date(s), Point::Date(e)) => composite_gold_duration(s, e)?,
                _ => return Err(OracleError::IncompatibleClaims),
            };
            duration_label(&gold, claim)
        }
        (SetKind::CrossUnit, SetKind::CrossUnit) => {
            cross_unit_label(&premise.spec, &hypothesis.spec, conversions)
        }
        _ => Err(OracleError::IncompatibleClaims),
    }
}

/// Parses both sentences and labels the pair.
pub fn label_text(
    premise: &str,
    hypothesis: &str,
    conversions: &UnitConversions,
) -> Result<Label, LabelTextError> {
    let p = parse_sentence(premise).map_err(LabelTextError::Premise)?;
    let h = parse_sentence(hypothesis).map_err(LabelTextError::Hypothesis)?;
    Ok(relabel(&p, &h, conversions)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelTextError {
    #[error("premise: {0}")]
    Premise(ParseError),
    #[error("hypothesis: {0}")]
    Hypothesis(ParseError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}
