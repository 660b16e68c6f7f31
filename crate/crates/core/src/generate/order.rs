//! Temp-Order work unit: point premises in three styles plus the
//! before/after interval grid.

use rand::Rng;

use super::sampling::{sample_cross_pair, sample_date_pair, MAX_RETRIES};
use super::{
    Draft, GenerateError, HypothesisType, SamplingMethod, UnitOutput, Variation, VariationMix,
};
use crate::model::{Anchor, Point, TemporalSpec};
use crate::oracle::{induce_interval, order_label};
use crate::realize::{render_order_sentence, RealizationStyle, SlotPosition, Tense};
use crate::templates::EventTemplate;

/// Draws a (premise point, hypothesis point) pair for `method`. Temp-Order
/// samples with replacement.
pub(super) fn sample_points<R: Rng + ?Sized>(
    method: SamplingMethod,
    rng: &mut R,
    with_replacement: bool,
) -> Result<(Point, Point), GenerateError> {
    match method.lists() {
        Some((a, b)) => {
            let (a, b) = if a != b && rng.random_bool(0.5) {
                (b, a)
            } else {
                (a, b)
            };
            let (p, h) = sample_cross_pair(a, b, rng, with_replacement)?;
            Ok((p.into(), h.into()))
        }
        None => {
            let with_day = method == SamplingMethod::DateDayMonthYear;
            let (p, h) = sample_date_pair(with_day, rng, with_replacement)?;
            Ok((p.into(), h.into()))
        }
    }
}

fn anchored(anchor: Anchor, point: Point) -> TemporalSpec {
    TemporalSpec::Anchored { anchor, point }
}

fn hypothesis_type(anchor: Anchor) -> HypothesisType {
    match anchor {
        Anchor::Before => HypothesisType::Before,
        _ => HypothesisType::After,
    }
}

pub(super) fn run<R: Rng + ?Sized>(
    t: &EventTemplate,
    method: SamplingMethod,
    mix: &VariationMix,
    rng: &mut R,
) -> Result<UnitOutput, GenerateError> {
    let mut out = UnitOutput::default();
    let mut styles = vec![(Variation::Point, RealizationStyle::BASE)];
    if mix.position {
        styles.push((
            Variation::PointFronted,
            RealizationStyle::new(SlotPosition::Fronted, Tense::Past),
        ));
    }
    if mix.tense {
        if t.future.is_some() {
            styles.push((
                Variation::PointFuture,
                RealizationStyle::new(SlotPosition::Final, Tense::Future),
            ));
        } else {
            out.warnings
                .push(format!("temp-order: template {} has no future text", t.id));
        }
    }
    if t.past.is_none() {
        out.warnings
            .push(format!("temp-order: template {} has no past text", t.id));
        return Ok(out);
    }

    for (variation, style) in styles {
        let (p, h) = sample_points(method, rng, true)?;
        let anchor = if rng.random_bool(0.5) {
            Anchor::Before
        } else {
            Anchor::After
        };
        let premise = TemporalSpec::at(p);
        let hypothesis = anchored(anchor, h);
        out.drafts.push(Draft {
            premise: render_order_sentence(t, &premise, style)?,
            hypothesis: render_order_sentence(t, &hypothesis, style)?,
            label: order_label(&premise, &hypothesis)?,
            sampling_method: Some(method),
            variation,
            hypothesis_type: hypothesis_type(anchor),
            unit_pair: None,
        });
    }

    if mix.interval_premise {
        for p_anchor in [Anchor::Before, Anchor::After] {
            for h_anchor in [Anchor::Before, Anchor::After] {
                let (premise, hypothesis) = sample_interval_pair(method, p_anchor, h_anchor, rng)?;
                out.drafts.push(Draft {
                    premise: render_order_sentence(t, &premise, RealizationStyle::BASE)?,
                    hypothesis: render_order_sentence(t, &hypothesis, RealizationStyle::BASE)?,
                    label: order_label(&premise, &hypothesis)?,
                    sampling_method: Some(method),
                    variation: match p_anchor {
                        Anchor::Before => Variation::IntervalBefore,
                        _ => Variation::IntervalAfter,
                    },
                    hypothesis_type: hypothesis_type(h_anchor),
                    unit_pair: None,
                });
            }
        }
    }
    Ok(out)
}

// "before 12 AM" or "after 28th" as a premise describes no time at all, so
// such draws are rejected.
fn sample_interval_pair<R: Rng + ?Sized>(
    method: SamplingMethod,
    p_anchor: Anchor,
    h_anchor: Anchor,
    rng: &mut R,
) -> Result<(TemporalSpec, TemporalSpec), GenerateError> {
    for _ in 0..MAX_RETRIES {
        let (p, h) = sample_points(method, rng, true)?;
        let premise = anchored(p_anchor, p);
        if !induce_interval(&premise)?.is_empty() {
            return Ok((premise, anchored(h_anchor, h)));
        }
    }
    Err(GenerateError::SamplingExhausted(
        "non-empty interval premise",
    ))
}
