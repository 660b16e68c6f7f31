//! Cross-Unit work unit: a twelve-pair block per template, unit pair and
//! premise magnitude.

use rand::Rng;

use super::{Draft, GenerateError, GenerationConfig, HypothesisType, UnitOutput, Variation};
use crate::model::{Anchor, DurationUnit, DurationValue, TemporalSpec};
use crate::oracle::{cross_unit_label, UnitPair};
use crate::realize::{render_future_offset, SlotPosition};
use crate::templates::{EventTemplate, OccurrenceUnit};

/// Adjacent unit pairs available to a template. Hour occurrences supply both
/// minutes and hours; weekday and month-day occurrences supply days.
pub(super) fn pairs_for(t: &EventTemplate) -> Vec<UnitPair> {
    let mut units = Vec::new();
    for u in &t.occurrence {
        match u {
            OccurrenceUnit::Hour => units.extend([DurationUnit::Minutes, DurationUnit::Hours]),
            OccurrenceUnit::Weekday | OccurrenceUnit::Monthday => units.push(DurationUnit::Days),
            OccurrenceUnit::Month => units.push(DurationUnit::Months),
            OccurrenceUnit::Year => units.push(DurationUnit::Years),
        }
    }
    UnitPair::ALL
        .into_iter()
        .filter(|p| units.contains(&p.higher()) && units.contains(&p.lower()))
        .collect()
}

/// Inclusive ranges for the low and high hypothesis magnitudes around the
/// converted premise value `c`. `None` for the low side when no positive
/// value lies below `c`.
pub fn t2_ranges(c: u64, difference_range: u64, factor: u64) -> (Option<(u64, u64)>, (u64, u64)) {
    let spread = difference_range * factor;
    let low = (c >= 2).then(|| (c.saturating_sub(spread).max(1), c - 1));
    (low, (c + 1, c + spread))
}

pub(super) fn run<R: Rng + ?Sized>(
    t: &EventTemplate,
    pair: UnitPair,
    t1: u64,
    config: &GenerationConfig,
    rng: &mut R,
) -> Result<UnitOutput, GenerateError> {
    let mut out = UnitOutput::default();
    if t.future.is_none() {
        out.warnings
            .push(format!("cross-unit: template {} has no future text", t.id));
        return Ok(out);
    }
    let factor = config.conversions.factor(pair);
    let c = t1 * factor;
    let (low, high) = t2_ranges(c, config.difference_range, factor);
    let Some(low) = low else {
        out.warnings.push(format!(
            "cross-unit: no lower T2 below {c} {}",
            pair.lower()
        ));
        return Ok(out);
    };
    let t2_low = rng.random_range(low.0..=low.1);
    let t2_high = rng.random_range(high.0..=high.1);

    let mut k = 0usize;
    for p_anchor in [Anchor::At, Anchor::Before, Anchor::After] {
        let premise = TemporalSpec::FutureOffset {
            anchor: p_anchor,
            value: DurationValue::new(pair.higher(), t1),
        };
        for h_anchor in [Anchor::Before, Anchor::After] {
            for (high_side, t2) in [(true, t2_high), (false, t2_low)] {
                let hypothesis = TemporalSpec::FutureOffset {
                    anchor: h_anchor,
                    value: DurationValue::new(pair.lower(), t2),
                };
                // Rotate through final/final, fronted premise, fronted
                // hypothesis.
                let (pp, hp) = match (config.mix.position, k % 3) {
                    (true, 1) => (SlotPosition::Fronted, SlotPosition::Final),
                    (true, 2) => (SlotPosition::Final, SlotPosition::Fronted),
                    _ => (SlotPosition::Final, SlotPosition::Final),
                };
                k += 1;
                out.drafts.push(Draft {
                    premise: render_future_offset(t, &premise, pp)?,
                    hypothesis: render_future_offset(t, &hypothesis, hp)?,
                    label: cross_unit_label(&premise, &hypothesis, &config.conversions)?,
                    sampling_method: None,
                    variation: match p_anchor {
                        Anchor::At => Variation::Point,
                        Anchor::Before => Variation::IntervalBefore,
                        Anchor::After => Variation::IntervalAfter,
                    },
                    hypothesis_type: match (h_anchor, high_side) {
                        (Anchor::Before, true) => HypothesisType::BeforeHigh,
                        (Anchor::Before, false) => HypothesisType::BeforeLow,
                        (_, true) => HypothesisType::AfterHigh,
                        (_, false) => HypothesisType::AfterLow,
                    },
                    unit_pair: Some(pair),
                });
            }
        }
    }
    if !config.mix.interval_premise {
        out.drafts.retain(|d| d.variation == Variation::Point);
    }
    Ok(out)
}
