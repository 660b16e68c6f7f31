//! Shared inputs for the benchmarks.

use tempnli_core::model::{ListKind, TimePoint};
use tempnli_core::TemporalSpec;

/// Premise/hypothesis sentence pairs covering all three sets.
pub const SENTENCE_PAIRS: [(&str, &str); 6] = [
    (
        "He left his job after 12 PM.",
        "He left his job before 5 PM.",
    ),
    (
        "He left his job on 21st Sep 2013.",
        "He left his job before 23rd Sep 2012.",
    ),
    (
        "The meeting lasted from 9 PM to 3 AM.",
        "The meeting lasted for 6 hours.",
    ),
    (
        "The war lasted from July 1914 to Nov 1918.",
        "The war lasted for 4 years 4 months.",
    ),
    (
        "After 4 days, the store will close.",
        "The store will close before 38 hours.",
    ),
    (
        "The store will close before 6 hours.",
        "The store will close after 77 minutes.",
    ),
];

/// Every at/before/after premise against every before/after hypothesis on
/// the 24-hour list.
pub fn hour_grid() -> Vec<(TemporalSpec, TemporalSpec)> {
    let point = |i| TimePoint::new(ListKind::Hour24, i).unwrap();
    let mut out = Vec::new();
    for i in 0..24 {
        for premise in [
            TemporalSpec::at(point(i)),
            TemporalSpec::before(point(i)),
            TemporalSpec::after(point(i)),
        ] {
            for j in 0..24 {
                out.push((premise, TemporalSpec::before(point(j))));
                out.push((premise, TemporalSpec::after(point(j))));
            }
        }
    }
    out
}
