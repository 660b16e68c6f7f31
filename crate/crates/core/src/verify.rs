//! Dataset checks that work from the text alone.

use rayon::prelude::*;
use serde::Serialize;

use crate::generate::sampling::max_distance;
use crate::generate::{ChallengeSet, NLIPair};
use crate::model::{Point, TemporalSpec};
use crate::oracle::UnitConversions;
use crate::parse::{label_text, parse_sentence};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowFailure {
    /// 1-based row number (excluding any header).
    pub row: usize,
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<RowFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn collect(pairs: &[NLIPair], check: impl Fn(&NLIPair) -> Option<String> + Sync) -> VerifyReport {
    let failures = pairs
        .par_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            check(p).map(|reason| RowFailure {
                row: i + 1,
                id: p.id.clone(),
                reason,
            })
        })
        .collect();
    VerifyReport {
        checked: pairs.len(),
        failures,
    }
}

/// Parses every premise and hypothesis and checks that the recomputed label
/// equals the stored one.
pub fn verify_pairs(pairs: &[NLIPair], conversions: &UnitConversions) -> VerifyReport {
    collect(pairs, |p| {
        match label_text(&p.premise, &p.hypothesis, conversions) {
            Ok(label) if label == p.label => None,
            Ok(label) => Some(format!("stored {} but text implies {label}", p.label)),
            Err(e) => Some(e.to_string()),
        }
    })
}

fn anchored_point(text: &str) -> Option<Point> {
    match parse_sentence(text).ok()?.spec {
        TemporalSpec::Anchored { point, .. } => Some(point),
        _ => None,
    }
}

/// Index distance between the two points of a same-list Temp-Order row,
/// with the bound it must respect. `None` for rows the rule does not cover.
pub fn order_distance(p: &NLIPair) -> Option<(usize, usize)> {
    if p.meta.set != ChallengeSet::TempOrder || !p.meta.sampling_method?.is_same_list() {
        return None;
    }
    match (anchored_point(&p.premise)?, anchored_point(&p.hypothesis)?) {
        (Point::Time(a), Point::Time(b)) => Some((
            a.canonical_index().abs_diff(b.canonical_index()),
            max_distance(a.kind()),
        )),
        _ => None,
    }
}

/// Same-list Temp-Order rows whose points are more than half the list apart.
pub fn audit_distances(pairs: &[NLIPair]) -> VerifyReport {
    collect(pairs, |p| {
        let (d, bound) = order_distance(p)?;
        (d > bound).then(|| format!("distance {d} exceeds {bound}"))
    })
}
