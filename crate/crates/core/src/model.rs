//! Temporal lists, points, dates, durations and the logical forms that the
//! oracle, realizer and parser all share.
//!
//! Every surface string lives in a single static registry. Comparisons are
//! always made on indices, never on text.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("index {index} out of range for list {kind} (length {len})")]
    IndexOutOfRange {
        kind: ListKind,
        index: usize,
        len: usize,
    },
    #[error("month-day {0} outside 1..=28")]
    MonthDayOutOfRange(u8),
    #[error("month {0} outside 0..=11")]
    MonthOutOfRange(u8),
    #[error("year {0} outside 1000..=9999")]
    YearOutOfRange(u16),
    #[error("cannot compare a day-month-year date with a month-year date")]
    GranularityMismatch,
    #[error("invalid temporal spec: {0}")]
    InvalidSpec(&'static str),
    #[error("unknown {what} `{value}`")]
    Unknown { what: &'static str, value: String },
}

/// The seven lists of temporal expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListKind {
    Hour12,
    Hour24,
    Weekday,
    MonthDay,
    MonthFull,
    MonthAbbrev,
    Year,
}

/// The comparison axis a list lives on. Lists sharing an axis share a
/// canonical index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    Hour,
    Weekday,
    MonthDay,
    Month,
    Year,
}

const HOUR12: [&str; 24] = [
    "12 AM", "1 AM", "2 AM", "3 AM", "4 AM", "5 AM", "6 AM", "7 AM", "8 AM", "9 AM", "10 AM",
    "11 AM", "12 PM", "1 PM", "2 PM", "3 PM", "4 PM", "5 PM", "6 PM", "7 PM", "8 PM", "9 PM",
    "10 PM", "11 PM",
];

const HOUR24: [&str; 24] = [
    "00:00", "01:00", "02:00", "03:00", "04:00", "05:00", "06:00", "07:00", "08:00", "09:00",
    "10:00", "11:00", "12:00", "13:00", "14:00", "15:00", "16:00", "17:00", "18:00", "19:00",
    "20:00", "21:00", "22:00", "23:00",
];

const WEEKDAY: [&str; 7] = [
    "Sunday",
    "Monday",
    "Tuesday",
    "Wednesday",
    "Thursday",
    "Friday",
    "Saturday",
];

const MONTH_DAY: [&str; 28] = [
    "1st", "2nd", "3rd", "4th", "5th", "6th", "7th", "8th", "9th", "10th", "11th", "12th", "13th",
    "14th", "15th", "16th", "17th", "18th", "19th", "20th", "21st", "22nd", "23rd", "24th", "25th",
    "26th", "27th", "28th",
];

const MONTH_FULL: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

const MONTH_ABBREV: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

pub const FIRST_YEAR: u16 = 1900;
pub const LAST_YEAR: u16 = 2000;

static YEARS: LazyLock<Vec<String>> =
    LazyLock::new(|| (FIRST_YEAR..=LAST_YEAR).map(|y| y.to_string()).collect());

static REGISTRY: LazyLock<Vec<TemporalList>> = LazyLock::new(|| {
    ListKind::ALL
        .iter()
        .map(|&kind| {
            let items: Vec<&'static str> = match kind {
                ListKind::Hour12 => HOUR12.to_vec(),
                ListKind::Hour24 => HOUR24.to_vec(),
                ListKind::Weekday => WEEKDAY.to_vec(),
                ListKind::MonthDay => MONTH_DAY.to_vec(),
                ListKind::MonthFull => MONTH_FULL.to_vec(),
                ListKind::MonthAbbrev => MONTH_ABBREV.to_vec(),
                ListKind::Year => YEARS.iter().map(String::as_str).collect(),
            };
            TemporalList {
                kind,
                items,
                cyclic: kind != ListKind::Year,
            }
        })
        .collect()
});

/// One list of temporal expressions in its fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalList {
    pub kind: ListKind,
    pub items: Vec<&'static str>,
    pub cyclic: bool,
}

impl TemporalList {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn position(&self, surface: &str) -> Option<usize> {
        self.items.iter().position(|s| *s == surface)
    }
}

impl ListKind {
    pub const ALL: [ListKind; 7] = [
        ListKind::Hour12,
        ListKind::Hour24,
        ListKind::Weekday,
        ListKind::MonthDay,
        ListKind::MonthFull,
        ListKind::MonthAbbrev,
        ListKind::Year,
    ];

    pub fn list(self) -> &'static TemporalList {
        &REGISTRY[self as usize]
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.list().len()
    }

    pub fn is_cyclic(self) -> bool {
        self.list().cyclic
    }

    pub fn axis(self) -> Axis {
        match self {
            ListKind::Hour12 | ListKind::Hour24 => Axis::Hour,
            ListKind::Weekday => Axis::Weekday,
            ListKind::MonthDay => Axis::MonthDay,
            ListKind::MonthFull | ListKind::MonthAbbrev => Axis::Month,
            ListKind::Year => Axis::Year,
        }
    }

    pub fn surface(self, index: usize) -> Option<&'static str> {
        self.list().items.get(index).copied()
    }

    pub fn lookup(self, surface: &str) -> Option<usize> {
        self.list().position(surface)
    }

    pub fn name(self) -> &'static str {
        match self {
            ListKind::Hour12 => "hour12",
            ListKind::Hour24 => "hour24",
            ListKind::Weekday => "weekday",
            ListKind::MonthDay => "monthday",
            ListKind::MonthFull => "month-full",
            ListKind::MonthAbbrev => "month-abbrev",
            ListKind::Year => "year",
        }
    }
}

impl fmt::Display for ListKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Axis {
    /// Number of distinct canonical positions on the axis.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            Axis::Hour => 24,
            Axis::Weekday => 7,
            Axis::MonthDay => 28,
            Axis::Month => 12,
            Axis::Year => 101,
        }
    }

    pub fn is_cyclic(self) -> bool {
        self != Axis::Year
    }
}

/// A position in one of the temporal lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimePoint {
    kind: ListKind,
    index: usize,
}

impl TimePoint {
    pub fn new(kind: ListKind, index: usize) -> Result<Self, ModelError> {
        let len = kind.len();
        if index >= len {
            return Err(ModelError::IndexOutOfRange { kind, index, len });
        }
        Ok(TimePoint { kind, index })
    }

    pub fn from_surface(kind: ListKind, surface: &str) -> Result<Self, ModelError> {
        let index = kind.lookup(surface).ok_or_else(|| ModelError::Unknown {
            what: "surface string",
            value: surface.to_owned(),
        })?;
        Ok(TimePoint { kind, index })
    }

    /// Shorthand for test and example code; panics on a bad index.
    pub fn of(kind: ListKind, surface: &str) -> Self {
        Self::from_surface(kind, surface).expect("surface string not in list")
    }

    pub fn kind(&self) -> ListKind {
        self.kind
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn axis(&self) -> Axis {
        self.kind.axis()
    }

    pub fn surface(&self) -> &'static str {
        self.kind.list().items[self.index]
    }

    /// Position on the shared axis: hour-of-day for both hour lists, month
    /// number (0-based) for both month lists.
    pub fn canonical_index(&self) -> usize {
        // Both hour lists start at midnight and both month lists at January,
        // so list position already is the axis position.
        self.index
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonthStyle {
    Full,
    Abbrev,
}

impl MonthStyle {
    pub fn list_kind(self) -> ListKind {
        match self {
            MonthStyle::Full => ListKind::MonthFull,
            MonthStyle::Abbrev => ListKind::MonthAbbrev,
        }
    }
}

/// A month-year or day-month-year date built from the month, month-day and
/// year lists. Month lengths are ignored: every month has days 1 through 28.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositeDate {
    monthday: Option<u8>,
    month: u8,
    year: u16,
    month_style: MonthStyle,
}

impl CompositeDate {
    /// `month` is 0-based.
    pub fn month_year(month: u8, year: u16, month_style: MonthStyle) -> Result<Self, ModelError> {
        Self::new(None, month, year, month_style)
    }

    /// `monthday` is 1-based, `month` 0-based.
    pub fn day_month_year(
        monthday: u8,
        month: u8,
        year: u16,
        month_style: MonthStyle,
    ) -> Result<Self, ModelError> {
        Self::new(Some(monthday), month, year, month_style)
    }

    fn new(
        monthday: Option<u8>,
        month: u8,
        year: u16,
        month_style: MonthStyle,
    ) -> Result<Self, ModelError> {
        if let Some(d) = monthday {
            if !(1..=28).contains(&d) {
                return Err(ModelError::MonthDayOutOfRange(d));
            }
        }
        if month > 11 {
            return Err(ModelError::MonthOutOfRange(month));
        }
        if !(1000..=9999).contains(&year) {
            return Err(ModelError::YearOutOfRange(year));
        }
        Ok(CompositeDate {
            monthday,
            month,
            year,
            month_style,
        })
    }

    pub fn monthday(&self) -> Option<u8> {
        self.monthday
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    pub fn year(&self) -> u16 {
        self.year
    }

    pub fn month_style(&self) -> MonthStyle {
        self.month_style
    }

    pub fn is_day_month_year(&self) -> bool {
        self.monthday.is_some()
    }

    /// `(year, month, monthday-or-0)`; lexicographic order is chronological.
    pub fn date_key(&self) -> (u16, u8, u8) {
        (self.year, self.month, self.monthday.unwrap_or(0))
    }

    pub fn compare(&self, other: &CompositeDate) -> Result<Ordering, ModelError> {
        if self.is_day_month_year() != other.is_day_month_year() {
            return Err(ModelError::GranularityMismatch);
        }
        Ok(self.date_key().cmp(&other.date_key()))
    }

    /// Months since year 0. Only meaningful for month-year dates.
    pub fn month_count(&self) -> i64 {
        self.year as i64 * 12 + self.month as i64
    }

    pub fn surface(&self) -> String {
        let month = self.month_style.list_kind().list().items[self.month as usize];
        match self.monthday {
            Some(d) => format!("{} {} {}", MONTH_DAY[d as usize - 1], month, self.year),
            None => format!("{} {}", month, self.year),
        }
    }
}

/// Either a single list element or a composite date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Point {
    Time(TimePoint),
    Date(CompositeDate),
}

impl Point {
    pub fn surface(&self) -> String {
        match self {
            Point::Time(t) => t.surface().to_owned(),
            Point::Date(d) => d.surface(),
        }
    }
}

impl From<TimePoint> for Point {
    fn from(p: TimePoint) -> Self {
        Point::Time(p)
    }
}

impl From<CompositeDate> for Point {
    fn from(d: CompositeDate) -> Self {
        Point::Date(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DurationUnit {
    Seconds,
    Minutes,
    Hours,
    Days,
    Months,
    Years,
}

impl DurationUnit {
    pub const ALL: [DurationUnit; 6] = [
        DurationUnit::Seconds,
        DurationUnit::Minutes,
        DurationUnit::Hours,
        DurationUnit::Days,
        DurationUnit::Months,
        DurationUnit::Years,
    ];

    pub fn plural(self) -> &'static str {
        match self {
            DurationUnit::Seconds => "seconds",
            DurationUnit::Minutes => "minutes",
            DurationUnit::Hours => "hours",
            DurationUnit::Days => "days",
            DurationUnit::Months => "months",
            DurationUnit::Years => "years",
        }
    }

    pub fn singular(self) -> &'static str {
        let p = self.plural();
        &p[..p.len() - 1]
    }

    /// Unit word agreeing with `magnitude`.
    pub fn word(self, magnitude: u64) -> &'static str {
        if magnitude == 1 {
            self.singular()
        } else {
            self.plural()
        }
    }

    /// Parses a unit word, returning the unit and whether it was plural.
    pub fn from_word(word: &str) -> Option<(DurationUnit, bool)> {
        DurationUnit::ALL.iter().find_map(|&u| {
            if word == u.plural() {
                Some((u, true))
            } else if word == u.singular() {
                Some((u, false))
            } else {
                None
            }
        })
    }
}

impl fmt::Display for DurationUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.plural())
    }
}

/// Unit families whose members convert exactly into one another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseUnit {
    /// seconds, minutes, hours, days
    Seconds,
    /// months, years, year-month composites
    Months,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DurationValue {
    Simple { unit: DurationUnit, magnitude: u64 },
    YearMonth { years: u64, months: u8 },
}

impl DurationValue {
    pub fn new(unit: DurationUnit, magnitude: u64) -> Self {
        DurationValue::Simple { unit, magnitude }
    }

    /// Splits a month count into whole years and leftover months.
    pub fn year_month_from_months(total: u64) -> Self {
        DurationValue::YearMonth {
            years: total / 12,
            months: (total % 12) as u8,
        }
    }

    pub fn normalized(&self) -> (BaseUnit, u64) {
        match *self {
            DurationValue::Simple { unit, magnitude } => match unit {
                DurationUnit::Seconds => (BaseUnit::Seconds, magnitude),
                DurationUnit::Minutes => (BaseUnit::Seconds, magnitude * 60),
                DurationUnit::Hours => (BaseUnit::Seconds, magnitude * 3_600),
                DurationUnit::Days => (BaseUnit::Seconds, magnitude * 86_400),
                DurationUnit::Months => (BaseUnit::Months, magnitude),
                DurationUnit::Years => (BaseUnit::Months, magnitude * 12),
            },
            DurationValue::YearMonth { years, months } => {
                (BaseUnit::Months, years * 12 + months as u64)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.normalized().1 == 0
    }

    /// Adds `n` of the finest unit (months for composites).
    pub fn plus(&self, n: u64) -> Self {
        match *self {
            DurationValue::Simple { unit, magnitude } => DurationValue::new(unit, magnitude + n),
            DurationValue::YearMonth { .. } => {
                Self::year_month_from_months(self.normalized().1 + n)
            }
        }
    }

    /// Multiplies the value; composites scale their total month count.
    pub fn times(&self, k: u64) -> Self {
        match *self {
            DurationValue::Simple { unit, magnitude } => DurationValue::new(unit, magnitude * k),
            DurationValue::YearMonth { .. } => {
                Self::year_month_from_months(self.normalized().1 * k)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    At,
    Before,
    After,
}

impl Anchor {
    pub fn word(self) -> &'static str {
        match self {
            Anchor::At => "at",
            Anchor::Before => "before",
            Anchor::After => "after",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimMode {
    Equal,
    LessThan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DurationClaim {
    pub mode: ClaimMode,
    pub value: DurationValue,
}

/// Logical form of the temporal claim in one premise or hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TemporalSpec {
    /// At, before or after a point.
    Anchored {
        anchor: Anchor,
        point: Point,
    },
    /// A span between two points; `wrapped` marks a span that crosses into
    /// the next cycle of its list.
    FromTo {
        start: Point,
        end: Point,
        wrapped: bool,
    },
    Duration(DurationClaim),
    /// In, before or after some amount of time from now.
    FutureOffset {
        anchor: Anchor,
        value: DurationValue,
    },
}

impl TemporalSpec {
    pub fn at(point: impl Into<Point>) -> Self {
        TemporalSpec::Anchored {
            anchor: Anchor::At,
            point: point.into(),
        }
    }

    pub fn before(point: impl Into<Point>) -> Self {
        TemporalSpec::Anchored {
            anchor: Anchor::Before,
            point: point.into(),
        }
    }

    pub fn after(point: impl Into<Point>) -> Self {
        TemporalSpec::Anchored {
            anchor: Anchor::After,
            point: point.into(),
        }
    }

    pub fn offset(anchor: Anchor, unit: DurationUnit, magnitude: u64) -> Self {
        TemporalSpec::FutureOffset {
            anchor,
            value: DurationValue::new(unit, magnitude),
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            TemporalSpec::Anchored { .. } => Ok(()),
            TemporalSpec::FromTo {
                start,
                end,
                wrapped,
            } => {
                if start == end {
                    return Err(ModelError::InvalidSpec("span start equals its end"));
                }
                if *wrapped {
                    match (start, end) {
                        (Point::Time(s), Point::Time(e))
                            if s.axis() == e.axis()
                                && s.axis().is_cyclic()
                                && e.canonical_index() < s.canonical_index() => {}
                        _ => {
                            return Err(ModelError::InvalidSpec(
                                "wrapped span must end earlier in the same cyclic list",
                            ))
                        }
                    }
                }
                Ok(())
            }
            TemporalSpec::Duration(claim) => {
                if claim.value.is_zero() {
                    Err(ModelError::InvalidSpec("zero duration claim"))
                } else {
                    Ok(())
                }
            }
            TemporalSpec::FutureOffset { value, .. } => {
                if value.is_zero() {
                    Err(ModelError::InvalidSpec("future offsets must be positive"))
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Entailment,
    Contradiction,
    Neutral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinaryLabel {
    Entailed,
    NotEntailed,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Entailment, Label::Contradiction, Label::Neutral];

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Entailment => "entailment",
            Label::Contradiction => "contradiction",
            Label::Neutral => "neutral",
        }
    }

    pub fn collapse(self) -> BinaryLabel {
        match self {
            Label::Entailment => BinaryLabel::Entailed,
            Label::Contradiction | Label::Neutral => BinaryLabel::NotEntailed,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "entailment" | "E" => Ok(Label::Entailment),
            "contradiction" | "C" => Ok(Label::Contradiction),
            "neutral" | "N" => Ok(Label::Neutral),
            _ => Err(ModelError::Unknown {
                what: "label",
                value: s.to_owned(),
            }),
        }
    }
}

impl BinaryLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            BinaryLabel::Entailed => "entailed",
            BinaryLabel::NotEntailed => "not-entailed",
        }
    }
}

impl fmt::Display for BinaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
