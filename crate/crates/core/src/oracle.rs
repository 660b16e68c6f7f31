//! Gold labels for the three challenge sets.
//!
//! Ordering claims are turned into intervals on a comparison axis and
//! labelled by inclusion (entailment), disjointness (contradiction) or
//! partial overlap (neutral). "Before t" and "after t" exclude `t` itself.
//! Ordering never wraps around a cycle: both points are taken to lie in the
//! same day, week, month or year.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    Anchor, Axis, ClaimMode, CompositeDate, DurationClaim, DurationUnit, DurationValue, Label,
    ModelError, Point, TemporalSpec, TimePoint,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("premise and hypothesis lie on different axes ({0} vs {1})")]
    AxisMismatch(OrderAxis, OrderAxis),
    #[error("ordering hypotheses must be `before` or `after` claims")]
    HypothesisNotRelative,
    #[error("spec cannot be placed on an ordering axis: {0}")]
    NotOrderable(&'static str),
    #[error("wrap-around is not defined for {0:?}")]
    WrapNotAllowed(Axis),
    #[error("span must end after it starts")]
    EmptySpan,
    #[error("durations in incompatible units")]
    UnitMismatch,
    #[error("{0} and {1} are not adjacent units")]
    NotAdjacent(DurationUnit, DurationUnit),
    #[error("premise and hypothesis use the same unit ({0})")]
    SameUnit(DurationUnit),
    #[error("premise and hypothesis belong to different challenge sets")]
    IncompatibleClaims,
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The line on which ordering intervals are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderAxis {
    List(Axis),
    MonthYear,
    DayMonthYear,
    /// Elapsed time from now, measured in the given unit.
    Elapsed(DurationUnit),
}

impl fmt::Display for OrderAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderAxis::List(a) => write!(f, "{a:?}"),
            OrderAxis::MonthYear => f.write_str("month-year dates"),
            OrderAxis::DayMonthYear => f.write_str("day-month-year dates"),
            OrderAxis::Elapsed(u) => write!(f, "elapsed {u}"),
        }
    }
}

impl OrderAxis {
    /// Discrete axes hold only integer positions; elapsed time is dense.
    pub fn is_discrete(self) -> bool {
        !matches!(self, OrderAxis::Elapsed(_))
    }

    pub fn minimum(self) -> Endpoint {
        match self {
            OrderAxis::List(Axis::Year) | OrderAxis::MonthYear | OrderAxis::DayMonthYear => {
                Endpoint::NegInf
            }
            OrderAxis::List(_) | OrderAxis::Elapsed(_) => Endpoint::Finite(0),
        }
    }

    pub fn maximum(self) -> Endpoint {
        match self {
            OrderAxis::List(Axis::Year)
            | OrderAxis::MonthYear
            | OrderAxis::DayMonthYear
            | OrderAxis::Elapsed(_) => Endpoint::PosInf,
            OrderAxis::List(a) => Endpoint::Finite(a.len() as i64 - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(i64),
    PosInf,
}

/// An interval on an [`OrderAxis`] with independently open or closed ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InducedInterval {
    pub axis: OrderAxis,
    pub lower: Endpoint,
    pub upper: Endpoint,
    pub lower_open: bool,
    pub upper_open: bool,
}

// Sort keys: a larger lower key is a tighter lower constraint, a smaller upper
// key a tighter upper constraint.
type BoundKey = (u8, i64, u8);

impl InducedInterval {
    pub fn point(axis: OrderAxis, t: i64) -> Self {
        InducedInterval {
            axis,
            lower: Endpoint::Finite(t),
            upper: Endpoint::Finite(t),
            lower_open: false,
            upper_open: false,
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        let above = match self.lower {
            Endpoint::NegInf => true,
            Endpoint::Finite(l) => x > l || (x == l && !self.lower_open),
            Endpoint::PosInf => false,
        };
        let below = match self.upper {
            Endpoint::PosInf => true,
            Endpoint::Finite(u) => x < u || (x == u && !self.upper_open),
            Endpoint::NegInf => false,
        };
        above && below
    }

    /// On discrete axes, open finite ends become closed ends one step inward.
    fn tightened(&self) -> Self {
        if !self.axis.is_discrete() {
            return *self;
        }
        let mut out = *self;
        if let (Endpoint::Finite(l), true) = (self.lower, self.lower_open) {
            out.lower = Endpoint::Finite(l + 1);
            out.lower_open = false;
        }
        if let (Endpoint::Finite(u), true) = (self.upper, self.upper_open) {
            out.upper = Endpoint::Finite(u - 1);
            out.upper_open = false;
        }
        out
    }

    fn lower_key(&self) -> BoundKey {
        match self.lower {
            Endpoint::NegInf => (0, 0, 0),
            Endpoint::Finite(v) => (1, v, self.lower_open as u8),
            Endpoint::PosInf => (2, 0, 0),
        }
    }

    fn upper_key(&self) -> BoundKey {
        match self.upper {
            Endpoint::NegInf => (0, 0, 0),
            Endpoint::Finite(v) => (1, v, !self.upper_open as u8),
            Endpoint::PosInf => (2, 0, 0),
        }
    }

    pub fn is_empty(&self) -> bool {
        let t = self.tightened();
        match (t.lower, t.upper) {
            (Endpoint::PosInf, _) | (_, Endpoint::NegInf) => true,
            (Endpoint::Finite(l), Endpoint::Finite(u)) => {
                l > u || (l == u && (t.lower_open || t.upper_open))
            }
            _ => false,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (self.tightened(), other.tightened());
        let lower = if a.lower_key() >= b.lower_key() { a } else { b };
        let upper = if a.upper_key() <= b.upper_key() { a } else { b };
        InducedInterval {
            axis: self.axis,
            lower: lower.lower,
            lower_open: lower.lower_open,
            upper: upper.upper,
            upper_open: upper.upper_open,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        if self.is_empty() {
            return true;
        }
        let (a, b) = (self.tightened(), other.tightened());
        a.lower_key() >= b.lower_key() && a.upper_key() <= b.upper_key()
    }

    pub fn is_disjoint_from(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }
}

/// Axis and coordinate of a point. Year points use the calendar year.
pub fn point_coordinate(point: &Point) -> (OrderAxis, i64) {
    match point {
        Point::Time(t) => {
            let axis = t.axis();
            let c = t.canonical_index() as i64;
            let c = if axis == Axis::Year {
                c + crate::model::FIRST_YEAR as i64
            } else {
                c
            };
            (OrderAxis::List(axis), c)
        }
        Point::Date(d) => date_coordinate(d),
    }
}

fn date_coordinate(d: &CompositeDate) -> (OrderAxis, i64) {
    match d.monthday() {
        None => (OrderAxis::MonthYear, d.month_count()),
        Some(day) => (
            OrderAxis::DayMonthYear,
            d.month_count() * 28 + day as i64 - 1,
        ),
    }
}

fn relative_interval(axis: OrderAxis, anchor: Anchor, t: i64) -> InducedInterval {
    match anchor {
        Anchor::At => InducedInterval::point(axis, t),
        Anchor::Before => InducedInterval {
            axis,
            lower: axis.minimum(),
            upper: Endpoint::Finite(t),
            lower_open: false,
            upper_open: true,
        },
        Anchor::After => InducedInterval {
            axis,
            lower: Endpoint::Finite(t),
            upper: axis.maximum(),
            lower_open: true,
            upper_open: false,
        },
    }
}

/// Interval of times a claim allows. Wrapped spans and duration claims have
/// no interval on an ordering axis.
pub fn induce_interval(spec: &TemporalSpec) -> Result<InducedInterval, OracleError> {
    match spec {
        TemporalSpec::Anchored { anchor, point } => {
            let (axis, t) = point_coordinate(point);
            Ok(relative_interval(axis, *anchor, t))
        }
        TemporalSpec::FromTo {
            start,
            end,
            wrapped,
        } => {
            if *wrapped {
                return Err(OracleError::NotOrderable("wrapped span"));
            }
            let (a1, s) = point_coordinate(start);
            let (a2, e) = point_coordinate(end);
            if a1 != a2 {
                return Err(OracleError::AxisMismatch(a1, a2));
            }
            if e < s {
                return Err(OracleError::EmptySpan);
            }
            Ok(InducedInterval {
                axis: a1,
                lower: Endpoint::Finite(s),
                upper: Endpoint::Finite(e),
                lower_open: false,
                upper_open: false,
            })
        }
        TemporalSpec::FutureOffset { anchor, value } => match *value {
            DurationValue::Simple { unit, magnitude } => Ok(relative_interval(
                OrderAxis::Elapsed(unit),
                *anchor,
                magnitude as i64,
            )),
            DurationValue::YearMonth { .. } => Err(OracleError::NotOrderable("year-month offset")),
        },
        TemporalSpec::Duration(_) => Err(OracleError::NotOrderable("duration claim")),
    }
}

/// Inclusion, precedence or overlap between two intervals on one axis.
pub fn inclusion_label(
    premise: &InducedInterval,
    hypothesis: &InducedInterval,
) -> Result<Label, OracleError> {
    if premise.axis != hypothesis.axis {
        return Err(OracleError::AxisMismatch(premise.axis, hypothesis.axis));
    }
    Ok(if premise.is_subset_of(hypothesis) {
        Label::Entailment
    } else if premise.is_disjoint_from(hypothesis) {
        Label::Contradiction
    } else {
        Label::Neutral
    })
}

fn require_relative(spec: &TemporalSpec) -> Result<(), OracleError> {
    match spec {
        TemporalSpec::Anchored {
            anchor: Anchor::Before | Anchor::After,
            ..
        }
        | TemporalSpec::FutureOffset {
            anchor: Anchor::Before | Anchor::After,
            ..
        } => Ok(()),
        _ => Err(OracleError::HypothesisNotRelative),
    }
}

/// Label for an ordering pair. The hypothesis must be a before/after claim.
pub fn order_label(
    premise: &TemporalSpec,
    hypothesis: &TemporalSpec,
) -> Result<Label, OracleError> {
    if !matches!(hypothesis, TemporalSpec::Anchored { .. }) {
        return Err(OracleError::HypothesisNotRelative);
    }
    require_relative(hypothesis)?;
    let p = induce_interval(premise)?;
    let h = induce_interval(hypothesis)?;
    inclusion_label(&p, &h)
}

fn span_unit(axis: Axis) -> DurationUnit {
    match axis {
        Axis::Hour => DurationUnit::Hours,
        Axis::Weekday | Axis::MonthDay => DurationUnit::Days,
        Axis::Month => DurationUnit::Months,
        Axis::Year => DurationUnit::Years,
    }
}

/// Whether a span on this axis may cross into the next cycle. Month-days are
/// excluded because the month length is unknown; years do not cycle.
pub fn wrap_allowed(axis: Axis) -> bool {
    axis.is_cyclic() && axis != Axis::MonthDay
}

/// Difference between two list points in the list's own unit.
pub fn gold_duration(
    start: &TimePoint,
    end: &TimePoint,
    wrapped: bool,
) -> Result<DurationValue, OracleError> {
    let (sa, ea) = (start.axis(), end.axis());
    if sa != ea {
        return Err(OracleError::AxisMismatch(
            OrderAxis::List(sa),
            OrderAxis::List(ea),
        ));
    }
    let s = start.canonical_index() as i64;
    let e = end.canonical_index() as i64;
    let magnitude = if wrapped {
        if !wrap_allowed(sa) {
            return Err(OracleError::WrapNotAllowed(sa));
        }
        if e >= s {
            return Err(
                ModelError::InvalidSpec("wrapped span must end earlier in the list").into(),
            );
        }
        (e - s).rem_euclid(sa.len() as i64)
    } else {
        if e <= s {
            return Err(OracleError::EmptySpan);
        }
        e - s
    };
    Ok(DurationValue::new(span_unit(sa), magnitude as u64))
}

/// Months between two month-year dates.
pub fn composite_gold_duration(
    start: &CompositeDate,
    end: &CompositeDate,
) -> Result<DurationValue, OracleError> {
    if start.is_day_month_year() || end.is_day_month_year() {
        return Err(OracleError::NotOrderable("day-month-year span"));
    }
    let months = end.month_count() - start.month_count();
    if months <= 0 {
        return Err(OracleError::EmptySpan);
    }
    Ok(DurationValue::new(DurationUnit::Months, months as u64))
}

pub fn duration_label(gold: &DurationValue, claim: &DurationClaim) -> Result<Label, OracleError> {
    let (gu, g) = gold.normalized();
    let (cu, c) = claim.value.normalized();
    if gu != cu {
        return Err(OracleError::UnitMismatch);
    }
    let holds = match claim.mode {
        ClaimMode::Equal => g == c,
        ClaimMode::LessThan => g < c,
    };
    Ok(if holds {
        Label::Entailment
    } else {
        Label::Contradiction
    })
}

/// A pair of adjacent duration units, higher unit first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitPair {
    MinutesSeconds,
    HoursMinutes,
    DaysHours,
    MonthsDays,
    YearsMonths,
}

impl UnitPair {
    pub const ALL: [UnitPair; 5] = [
        UnitPair::MinutesSeconds,
        UnitPair::HoursMinutes,
        UnitPair::DaysHours,
        UnitPair::MonthsDays,
        UnitPair::YearsMonths,
    ];

    pub fn higher(self) -> DurationUnit {
        match self {
            UnitPair::MinutesSeconds => DurationUnit::Minutes,
            UnitPair::HoursMinutes => DurationUnit::Hours,
            UnitPair::DaysHours => DurationUnit::Days,
            UnitPair::MonthsDays => DurationUnit::Months,
            UnitPair::YearsMonths => DurationUnit::Years,
        }
    }

    pub fn lower(self) -> DurationUnit {
        match self {
            UnitPair::MinutesSeconds => DurationUnit::Seconds,
            UnitPair::HoursMinutes => DurationUnit::Minutes,
            UnitPair::DaysHours => DurationUnit::Hours,
            UnitPair::MonthsDays => DurationUnit::Days,
            UnitPair::YearsMonths => DurationUnit::Months,
        }
    }

    pub fn from_units(higher: DurationUnit, lower: DurationUnit) -> Result<Self, OracleError> {
        if higher == lower {
            return Err(OracleError::SameUnit(higher));
        }
        Self::ALL
            .into_iter()
            .find(|p| p.higher() == higher && p.lower() == lower)
            .ok_or(OracleError::NotAdjacent(higher, lower))
    }

    pub fn name(self) -> &'static str {
        match self {
            UnitPair::MinutesSeconds => "minutes-seconds",
            UnitPair::HoursMinutes => "hours-minutes",
            UnitPair::DaysHours => "days-hours",
            UnitPair::MonthsDays => "months-days",
            UnitPair::YearsMonths => "years-months",
        }
    }
}

impl fmt::Display for UnitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for UnitPair {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnitPair::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| ModelError::Unknown {
                what: "unit pair",
                value: s.to_owned(),
            })
    }
}

/// Conversion factors between adjacent units. Only days-per-month is a
/// convention; the others are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitConversions {
    pub days_per_month: u64,
}

impl Default for UnitConversions {
    fn default() -> Self {
        UnitConversions { days_per_month: 30 }
    }
}

impl UnitConversions {
    pub fn factor(&self, pair: UnitPair) -> u64 {
        match pair {
            UnitPair::MinutesSeconds | UnitPair::HoursMinutes => 60,
            UnitPair::DaysHours => 24,
            UnitPair::MonthsDays => self.days_per_month,
            UnitPair::YearsMonths => 12,
        }
    }
}

pub fn convert_down(
    value: &DurationValue,
    pair: UnitPair,
    conversions: &UnitConversions,
) -> Result<DurationValue, OracleError> {
    match *value {
        DurationValue::Simple { unit, magnitude } if unit == pair.higher() => Ok(
            DurationValue::new(pair.lower(), magnitude * conversions.factor(pair)),
        ),
        DurationValue::Simple { unit, .. } => Err(OracleError::NotAdjacent(unit, pair.lower())),
        DurationValue::YearMonth { .. } => Err(OracleError::UnitMismatch),
    }
}

/// Label for a cross-unit pair: the premise offset is given in the higher
/// unit of an adjacent pair, the hypothesis offset in the lower one.
pub fn cross_unit_label(
    premise: &TemporalSpec,
    hypothesis: &TemporalSpec,
    conversions: &UnitConversions,
) -> Result<Label, OracleError> {
    let (p_anchor, p_value) = match premise {
        TemporalSpec::FutureOffset { anchor, value } => (*anchor, *value),
        _ => return Err(OracleError::NotOrderable("premise is not a future offset")),
    };
    let h_value = match hypothesis {
        TemporalSpec::FutureOffset { value, .. } => *value,
        _ => return Err(OracleError::HypothesisNotRelative),
    };
    require_relative(hypothesis)?;
    let (p_unit, h_unit) = match (p_value, h_value) {
        (DurationValue::Simple { unit: a, .. }, DurationValue::Simple { unit: b, .. }) => (a, b),
        _ => return Err(OracleError::UnitMismatch),
    };
    let pair = UnitPair::from_units(p_unit, h_unit)?;
    let converted = convert_down(&p_value, pair, conversions)?;
    let p = induce_interval(&TemporalSpec::FutureOffset {
        anchor: p_anchor,
        value: converted,
    })?;
    let h = induce_interval(hypothesis)?;
    inclusion_label(&p, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ListKind, MonthStyle};

    fn h12(s: &str) -> TimePoint {
        TimePoint::of(ListKind::Hour12, s)
    }

    fn hours(n: u64) -> DurationValue {
        DurationValue::new(DurationUnit::Hours, n)
    }

    // Membership oracle: enumerate the 24 hours and test each against the
    // meaning of the claim directly.
    fn hour_members(anchor: Anchor, t: i64) -> Vec<i64> {
        (0..24)
            .filter(|&h| match anchor {
                Anchor::At => h == t,
                Anchor::Before => h < t,
                Anchor::After => h > t,
            })
            .collect()
    }

    #[test]
    fn induce_interval_examples() {
        let at = induce_interval(&TemporalSpec::at(h12("12 PM"))).unwrap();
        assert_eq!(at, InducedInterval::point(OrderAxis::List(Axis::Hour), 12));

        let before = induce_interval(&TemporalSpec::before(h12("5 PM"))).unwrap();
        assert_eq!(before.lower, Endpoint::Finite(0));
        assert_eq!(before.upper, Endpoint::Finite(17));
        assert!(!before.lower_open && before.upper_open);

        let after = induce_interval(&TemporalSpec::after(h12("9 AM"))).unwrap();
        assert_eq!(after.lower, Endpoint::Finite(9));
        assert_eq!(after.upper, Endpoint::Finite(23));
        assert!(after.lower_open && !after.upper_open);

        for (iv, anchor, t) in [(before, Anchor::Before, 17), (after, Anchor::After, 9)] {
            let members: Vec<i64> = (0..24).filter(|&h| iv.contains(h)).collect();
            assert_eq!(members, hour_members(anchor, t));
        }
    }

    #[test]
    fn order_label_table_rows() {
        let cases = [
            (
                TemporalSpec::at(h12("12 PM")),
                TemporalSpec::before(h12("5 PM")),
                Label::Entailment,
            ),
            (
                TemporalSpec::after(h12("12 PM")),
                TemporalSpec::after(h12("9 AM")),
                Label::Entailment,
            ),
            (
                TemporalSpec::after(h12("12 PM")),
                TemporalSpec::before(h12("5 PM")),
                Label::Neutral,
            ),
            (
                TemporalSpec::after(h12("12 PM")),
                TemporalSpec::before(h12("9 AM")),
                Label::Contradiction,
            ),
            (
                TemporalSpec::at(h12("12 PM")),
                TemporalSpec::before(TimePoint::of(ListKind::Hour24, "17:00")),
                Label::Entailment,
            ),
            (
                TemporalSpec::at(TimePoint::of(ListKind::MonthFull, "February")),
                TemporalSpec::after(TimePoint::of(ListKind::MonthAbbrev, "Apr")),
                Label::Contradiction,
            ),
            (
                TemporalSpec::at(h12("5 PM")),
                TemporalSpec::before(h12("5 PM")),
                Label::Contradiction,
            ),
            (
                TemporalSpec::at(h12("2 AM")),
                TemporalSpec::before(h12("11 PM")),
                Label::Entailment,
            ),
        ];
        for (p, h, want) in cases {
            assert_eq!(order_label(&p, &h).unwrap(), want, "{p:?} / {h:?}");
        }
    }

    #[test]
    fn order_label_dates() {
        let oct = CompositeDate::month_year(9, 2011, MonthStyle::Full).unwrap();
        let jan = CompositeDate::month_year(0, 2011, MonthStyle::Abbrev).unwrap();
        assert_eq!(
            order_label(&TemporalSpec::at(oct), &TemporalSpec::after(jan)).unwrap(),
            Label::Entailment
        );
        let a = CompositeDate::day_month_year(21, 8, 2013, MonthStyle::Abbrev).unwrap();
        let b = CompositeDate::day_month_year(23, 8, 2012, MonthStyle::Abbrev).unwrap();
        assert_eq!(
            order_label(&TemporalSpec::at(a), &TemporalSpec::before(b)).unwrap(),
            Label::Contradiction
        );
        assert!(matches!(
            order_label(&TemporalSpec::at(a), &TemporalSpec::before(jan)),
            Err(OracleError::AxisMismatch(..))
        ));
    }

    #[test]
    fn order_label_rejects_point_hypothesis() {
        let p = TemporalSpec::at(h12("1 PM"));
        assert_eq!(
            order_label(&p, &TemporalSpec::at(h12("2 PM"))),
            Err(OracleError::HypothesisNotRelative)
        );
        let span = TemporalSpec::FromTo {
            start: h12("1 PM").into(),
            end: h12("2 PM").into(),
            wrapped: false,
        };
        assert_eq!(
            order_label(&p, &span),
            Err(OracleError::HypothesisNotRelative)
        );
    }

    #[test]
    fn mixed_axis_rejected() {
        let p = TemporalSpec::at(h12("1 PM"));
        let h = TemporalSpec::before(TimePoint::of(ListKind::Weekday, "Monday"));
        assert!(matches!(
            order_label(&p, &h),
            Err(OracleError::AxisMismatch(..))
        ));
    }

    #[test]
    fn year_axis_is_unbounded() {
        let y = TimePoint::of(ListKind::Year, "1900");
        let iv = induce_interval(&TemporalSpec::before(y)).unwrap();
        assert_eq!(iv.lower, Endpoint::NegInf);
        assert!(!iv.is_empty());
    }

    #[test]
    fn gold_duration_examples() {
        assert_eq!(
            gold_duration(&h12("12 PM"), &h12("5 PM"), false).unwrap(),
            hours(5)
        );
        assert_eq!(
            gold_duration(&h12("9 PM"), &h12("3 AM"), true).unwrap(),
            hours(6)
        );
        assert_eq!(
            gold_duration(
                &TimePoint::of(ListKind::MonthAbbrev, "Mar"),
                &TimePoint::of(ListKind::MonthFull, "June"),
                false
            )
            .unwrap(),
            DurationValue::new(DurationUnit::Months, 3)
        );
        assert_eq!(
            gold_duration(
                &TimePoint::of(ListKind::Year, "1939"),
                &TimePoint::of(ListKind::Year, "1945"),
                false
            )
            .unwrap(),
            DurationValue::new(DurationUnit::Years, 6)
        );
        // (1 - 6) mod 7
        assert_eq!(
            gold_duration(
                &TimePoint::of(ListKind::Weekday, "Saturday"),
                &TimePoint::of(ListKind::Weekday, "Monday"),
                true
            )
            .unwrap(),
            DurationValue::new(DurationUnit::Days, 2)
        );
    }

    #[test]
    fn gold_duration_errors() {
        let y1 = TimePoint::of(ListKind::Year, "1950");
        let y0 = TimePoint::of(ListKind::Year, "1940");
        assert_eq!(
            gold_duration(&y1, &y0, true),
            Err(OracleError::WrapNotAllowed(Axis::Year))
        );
        let d1 = TimePoint::of(ListKind::MonthDay, "20th");
        let d0 = TimePoint::of(ListKind::MonthDay, "2nd");
        assert_eq!(
            gold_duration(&d1, &d0, true),
            Err(OracleError::WrapNotAllowed(Axis::MonthDay))
        );
        assert_eq!(
            gold_duration(&h12("5 PM"), &h12("5 PM"), false),
            Err(OracleError::EmptySpan)
        );
        assert!(gold_duration(&h12("1 AM"), &h12("5 PM"), true).is_err());
    }

    #[test]
    fn composite_gold_examples() {
        let start = CompositeDate::month_year(6, 1914, MonthStyle::Full).unwrap();
        let end = CompositeDate::month_year(10, 1918, MonthStyle::Abbrev).unwrap();
        let gold = composite_gold_duration(&start, &end).unwrap();
        assert_eq!(gold, DurationValue::new(DurationUnit::Months, 52));
        assert_eq!(
            gold.normalized(),
            DurationValue::YearMonth {
                years: 4,
                months: 4
            }
            .normalized()
        );
        assert_eq!(
            composite_gold_duration(&end, &start),
            Err(OracleError::EmptySpan)
        );
    }

    #[test]
    fn composite_gold_matches_month_counting() {
        // Step one month at a time from the start until reaching the end.
        let pairs = [
            ((0u8, 2000u16), (1u8, 2001u16)),
            ((11, 1999), (0, 2000)),
            ((5, 1901), (5, 1950)),
        ];
        for ((m0, y0), (m1, y1)) in pairs {
            let (mut m, mut y, mut steps) = (m0, y0, 0u64);
            while (y, m) != (y1, m1) {
                m += 1;
                if m == 12 {
                    m = 0;
                    y += 1;
                }
                steps += 1;
            }
            let s = CompositeDate::month_year(m0, y0, MonthStyle::Full).unwrap();
            let e = CompositeDate::month_year(m1, y1, MonthStyle::Full).unwrap();
            assert_eq!(
                composite_gold_duration(&s, &e).unwrap(),
                DurationValue::new(DurationUnit::Months, steps)
            );
        }
    }

    #[test]
    fn duration_label_examples() {
        let gold = hours(5);
        let claim = |mode, n| DurationClaim {
            mode,
            value: hours(n),
        };
        assert_eq!(
            duration_label(&gold, &claim(ClaimMode::Equal, 5)).unwrap(),
            Label::Entailment
        );
        assert_eq!(
            duration_label(&gold, &claim(ClaimMode::Equal, 50)).unwrap(),
            Label::Contradiction
        );
        assert_eq!(
            duration_label(&gold, &claim(ClaimMode::LessThan, 5)).unwrap(),
            Label::Contradiction
        );
        assert_eq!(
            duration_label(&gold, &claim(ClaimMode::LessThan, 6)).unwrap(),
            Label::Entailment
        );
        let months = DurationClaim {
            mode: ClaimMode::Equal,
            value: DurationValue::new(DurationUnit::Months, 5),
        };
        assert_eq!(
            duration_label(&gold, &months),
            Err(OracleError::UnitMismatch)
        );
    }

    #[test]
    fn convert_down_examples() {
        let conv = UnitConversions::default();
        assert_eq!(
            convert_down(&hours(2), UnitPair::HoursMinutes, &conv).unwrap(),
            DurationValue::new(DurationUnit::Minutes, 120)
        );
        assert_eq!(
            convert_down(
                &DurationValue::new(DurationUnit::Days, 2),
                UnitPair::DaysHours,
                &conv
            )
            .unwrap(),
            hours(48)
        );
        assert_eq!(
            convert_down(
                &DurationValue::new(DurationUnit::Months, 1),
                UnitPair::MonthsDays,
                &conv
            )
            .unwrap(),
            DurationValue::new(DurationUnit::Days, 30)
        );
        assert!(convert_down(&hours(2), UnitPair::DaysHours, &conv).is_err());
        let conv31 = UnitConversions { days_per_month: 31 };
        assert_eq!(conv31.factor(UnitPair::MonthsDays), 31);
    }

    #[test]
    fn unit_pair_lookup() {
        assert_eq!(
            UnitPair::from_units(DurationUnit::Hours, DurationUnit::Minutes).unwrap(),
            UnitPair::HoursMinutes
        );
        assert_eq!(
            UnitPair::from_units(DurationUnit::Days, DurationUnit::Minutes),
            Err(OracleError::NotAdjacent(
                DurationUnit::Days,
                DurationUnit::Minutes
            ))
        );
        assert_eq!(
            UnitPair::from_units(DurationUnit::Hours, DurationUnit::Hours),
            Err(OracleError::SameUnit(DurationUnit::Hours))
        );
    }

    #[test]
    fn cross_unit_table_rows() {
        use Anchor::*;
        use DurationUnit::*;
        let conv = UnitConversions::default();
        let rows = [
            ((At, Hours, 2), (Before, Minutes, 40), Label::Contradiction),
            ((At, Hours, 2), (After, Minutes, 84), Label::Entailment),
            ((At, Days, 2), (After, Hours, 34), Label::Entailment),
            ((After, Days, 4), (Before, Hours, 38), Label::Contradiction),
            ((Before, Days, 4), (Before, Hours, 174), Label::Entailment),
            ((Before, Hours, 6), (After, Minutes, 77), Label::Neutral),
            ((After, Hours, 3), (After, Minutes, 409), Label::Neutral),
        ];
        for ((pa, pu, pm), (ha, hu, hm), want) in rows {
            let p = TemporalSpec::offset(pa, pu, pm);
            let h = TemporalSpec::offset(ha, hu, hm);
            assert_eq!(
                cross_unit_label(&p, &h, &conv).unwrap(),
                want,
                "{p:?} / {h:?}"
            );
        }
    }

    #[test]
    fn cross_unit_errors() {
        let conv = UnitConversions::default();
        let p = TemporalSpec::offset(Anchor::At, DurationUnit::Hours, 2);
        let same = TemporalSpec::offset(Anchor::Before, DurationUnit::Hours, 3);
        assert_eq!(
            cross_unit_label(&p, &same, &conv),
            Err(OracleError::SameUnit(DurationUnit::Hours))
        );
        let at = TemporalSpec::offset(Anchor::At, DurationUnit::Minutes, 3);
        assert_eq!(
            cross_unit_label(&p, &at, &conv),
            Err(OracleError::HypothesisNotRelative)
        );
    }

    #[test]
    fn cross_unit_twelve_block_balance_exhaustive() {
        // Every (low, high) around every converted value gives 4/4/4.
        use Anchor::*;
        let conv = UnitConversions::default();
        for t1 in 1..=4u64 {
            let c = t1 * 60;
            for low in [1, c / 2, c - 1] {
                for high in [c + 1, c + 7, 3 * c] {
                    let mut counts = [0usize; 3];
                    for pa in [At, Before, After] {
                        for ha in [Before, After] {
                            for t2 in [high, low] {
                                let p = TemporalSpec::offset(pa, DurationUnit::Hours, t1);
                                let h = TemporalSpec::offset(ha, DurationUnit::Minutes, t2);
                                let l = cross_unit_label(&p, &h, &conv).unwrap();
                                counts[l as usize] += 1;
                            }
                        }
                    }
                    assert_eq!(counts, [4, 4, 4], "t1={t1} low={low} high={high}");
                }
            }
        }
    }
}
