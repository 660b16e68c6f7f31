//! Rejection samplers for point pairs.

use rand::Rng;

use super::GenerateError;
use crate::model::{CompositeDate, ListKind, MonthStyle, TimePoint, FIRST_YEAR, LAST_YEAR};

pub const MAX_RETRIES: usize = 10_000;

/// Largest year gap allowed between two sampled composite dates.
pub const MAX_YEAR_GAP: u16 = 50;

/// Largest index distance allowed between two points of a list.
pub fn max_distance(kind: ListKind) -> usize {
    kind.len() / 2
}

fn retry<T, R: Rng + ?Sized>(
    rng: &mut R,
    what: &'static str,
    mut draw: impl FnMut(&mut R) -> Option<T>,
) -> Result<T, GenerateError> {
    for _ in 0..MAX_RETRIES {
        if let Some(v) = draw(rng) {
            return Ok(v);
        }
    }
    Err(GenerateError::SamplingExhausted(what))
}

/// Two points of one list at most half the list length apart.
pub fn sample_point_pair<R: Rng + ?Sized>(
    kind: ListKind,
    rng: &mut R,
    with_replacement: bool,
) -> Result<(TimePoint, TimePoint), GenerateError> {
    sample_cross_pair(kind, kind, rng, with_replacement)
}

/// Like [`sample_point_pair`] but the points come from two lists sharing a
/// canonical index space (e.g. hour12 and hour24).
pub fn sample_cross_pair<R: Rng + ?Sized>(
    first: ListKind,
    second: ListKind,
    rng: &mut R,
    with_replacement: bool,
) -> Result<(TimePoint, TimePoint), GenerateError> {
    if first.axis() != second.axis() {
        return Err(GenerateError::InvalidConfig(format!(
            "lists {first} and {second} do not share an axis"
        )));
    }
    let len = first.len();
    let bound = max_distance(first);
    retry(rng, "point pair", |rng| {
        let i = rng.random_range(0..len);
        let j = rng.random_range(0..len);
        (i.abs_diff(j) <= bound && (with_replacement || i != j))
            .then(|| (point(first, i), point(second, j)))
    })
}

/// A pair whose end precedes its start in the list, so the span wraps into
/// the next cycle. The wrapped length never exceeds half the list.
pub fn sample_wrapped_pair<R: Rng + ?Sized>(
    first: ListKind,
    second: ListKind,
    rng: &mut R,
) -> Result<(TimePoint, TimePoint), GenerateError> {
    let len = first.len();
    let bound = max_distance(first);
    retry(rng, "wrapped pair", |rng| {
        let s = rng.random_range(0..len);
        let e = rng.random_range(0..len);
        (e < s && (e + len - s) <= bound).then(|| (point(first, s), point(second, e)))
    })
}

fn point(kind: ListKind, index: usize) -> TimePoint {
    TimePoint::new(kind, index).expect("index drawn below list length")
}

fn random_style<R: Rng + ?Sized>(rng: &mut R) -> MonthStyle {
    if rng.random_bool(0.5) {
        MonthStyle::Full
    } else {
        MonthStyle::Abbrev
    }
}

fn random_date<R: Rng + ?Sized>(rng: &mut R, year: u16, with_day: bool) -> CompositeDate {
    let month = rng.random_range(0..12u8);
    let style = random_style(rng);
    let date = if with_day {
        CompositeDate::day_month_year(rng.random_range(1..=28u8), month, year, style)
    } else {
        CompositeDate::month_year(month, year, style)
    };
    date.expect("fields drawn in range")
}

/// Two month-year (or day-month-year) dates at most [`MAX_YEAR_GAP`] years
/// apart. Month styles are drawn independently per date.
pub fn sample_date_pair<R: Rng + ?Sized>(
    with_day: bool,
    rng: &mut R,
    with_replacement: bool,
) -> Result<(CompositeDate, CompositeDate), GenerateError> {
    retry(rng, "date pair", |rng| {
        let y1 = rng.random_range(FIRST_YEAR..=LAST_YEAR);
        let y2 = rng.random_range(FIRST_YEAR..=LAST_YEAR);
        if y1.abs_diff(y2) > MAX_YEAR_GAP {
            return None;
        }
        let a = random_date(rng, y1, with_day);
        let b = random_date(rng, y2, with_day);
        (with_replacement || a.date_key() != b.date_key()).then_some((a, b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn hour_partners_of_three() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = BTreeSet::new();
        for _ in 0..20_000 {
            let (a, b) = sample_point_pair(ListKind::Hour24, &mut rng, true).unwrap();
            if a.index() == 3 {
                seen.insert(b.index());
            }
        }
        // Admissible partners under |i - j| <= 12.
        let expected: BTreeSet<usize> = (0..24).filter(|j: &usize| j.abs_diff(3) <= 12).collect();
        assert_eq!(seen, expected);
        assert_eq!(expected, (0..=15).collect());
    }

    #[test]
    fn weekday_distance_at_most_three() {
        assert_eq!(max_distance(ListKind::Weekday), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2_000 {
            let (a, b) = sample_point_pair(ListKind::Weekday, &mut rng, true).unwrap();
            assert!(a.index().abs_diff(b.index()) <= 3);
        }
    }

    #[test]
    fn without_replacement_is_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for kind in ListKind::ALL {
            for _ in 0..500 {
                let (a, b) = sample_point_pair(kind, &mut rng, false).unwrap();
                assert_ne!(a.index(), b.index());
            }
        }
    }

    #[test]
    fn wrapped_pairs_wrap_within_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for kind in [ListKind::Hour12, ListKind::Weekday, ListKind::MonthAbbrev] {
            for _ in 0..500 {
                let (s, e) = sample_wrapped_pair(kind, kind, &mut rng).unwrap();
                assert!(e.index() < s.index());
                assert!(e.index() + kind.len() - s.index() <= kind.len() / 2);
            }
        }
    }

    #[test]
    fn dates_respect_year_gap() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for with_day in [false, true] {
            for _ in 0..1_000 {
                let (a, b) = sample_date_pair(with_day, &mut rng, false).unwrap();
                assert!(a.year().abs_diff(b.year()) <= MAX_YEAR_GAP);
                assert_eq!(a.is_day_month_year(), with_day);
                assert_ne!(a.date_key(), b.date_key());
            }
        }
    }

    #[test]
    fn cross_pair_rejects_mixed_axes() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert!(sample_cross_pair(ListKind::Hour12, ListKind::Weekday, &mut rng, true).is_err());
    }
}
