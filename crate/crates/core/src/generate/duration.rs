//! Temp-Duration work unit: one premise per variation, six hypotheses each.

use rand::Rng;

use super::order::sample_points;
use super::sampling::sample_wrapped_pair;
use super::{
    Draft, GenerateError, HypothesisType, SamplingMethod, UnitOutput, Variation, VariationMix,
};
use crate::model::{ClaimMode, DurationClaim, DurationValue, Point};
use crate::oracle::{composite_gold_duration, duration_label, gold_duration, wrap_allowed};
use crate::realize::{render_duration_hypothesis, render_duration_premise, PremiseWording};
use crate::templates::EventTemplate;

impl HypothesisType {
    pub const DURATION: [HypothesisType; 6] = [
        HypothesisType::EqGold,
        HypothesisType::EqGoldPlusOne,
        HypothesisType::EqGoldTimesTen,
        HypothesisType::LtGold,
        HypothesisType::LtGoldPlusOne,
        HypothesisType::LtGoldTimesTen,
    ];

    /// The claim this hypothesis type makes about `gold`; `None` for
    /// non-duration types.
    pub fn duration_claim(self, gold: &DurationValue) -> Option<DurationClaim> {
        use HypothesisType as H;
        let (mode, value) = match self {
            H::EqGold => (ClaimMode::Equal, *gold),
            H::EqGoldPlusOne => (ClaimMode::Equal, gold.plus(1)),
            H::EqGoldTimesTen => (ClaimMode::Equal, gold.times(10)),
            H::LtGold => (ClaimMode::LessThan, *gold),
            H::LtGoldPlusOne => (ClaimMode::LessThan, gold.plus(1)),
            H::LtGoldTimesTen => (ClaimMode::LessThan, gold.times(10)),
            _ => return None,
        };
        Some(DurationClaim { mode, value })
    }
}

fn wording(v: Variation) -> PremiseWording {
    match v {
        Variation::BeganUntil | Variation::BeganUntilWrapped => PremiseWording::BeganLastedUntil,
        _ => PremiseWording::FromTo,
    }
}

/// Premise variations produced for `method`.
pub(super) fn variations(method: SamplingMethod, mix: &VariationMix) -> Vec<Variation> {
    if method == SamplingMethod::DateMonthYear {
        return vec![Variation::YearMonth, Variation::MonthsOnly];
    }
    let mut out = vec![Variation::FromTo];
    if mix.began_wording {
        out.push(Variation::BeganUntil);
    }
    let axis = method.lists().map(|(k, _)| k.axis());
    if mix.wrap_around && axis.is_some_and(wrap_allowed) {
        out.push(Variation::FromToWrapped);
        if mix.began_wording {
            out.push(Variation::BeganUntilWrapped);
        }
    }
    out
}

/// Samples a span premise: start, end and gold duration.
pub(super) fn sample_span<R: Rng + ?Sized>(
    method: SamplingMethod,
    wrapped: bool,
    rng: &mut R,
) -> Result<(Point, Point, DurationValue), GenerateError> {
    if wrapped {
        let Some((a, b)) = method.lists().filter(|(k, _)| wrap_allowed(k.axis())) else {
            return Err(GenerateError::WrapNotAllowed(method));
        };
        let (a, b) = if a != b && rng.random_bool(0.5) {
            (b, a)
        } else {
            (a, b)
        };
        let (s, e) = sample_wrapped_pair(a, b, rng)?;
        let gold = gold_duration(&s, &e, true)?;
        return Ok((s.into(), e.into(), gold));
    }
    // Duration pairs are drawn without replacement; the earlier point starts
    // the span.
    let (p, q) = sample_points(method, rng, false)?;
    match (p, q) {
        (Point::Time(a), Point::Time(b)) => {
            let (s, e) = if a.canonical_index() < b.canonical_index() {
                (a, b)
            } else {
                (b, a)
            };
            let gold = gold_duration(&s, &e, false)?;
            Ok((s.into(), e.into(), gold))
        }
        (Point::Date(a), Point::Date(b)) => {
            let (s, e) = if a.date_key() < b.date_key() {
                (a, b)
            } else {
                (b, a)
            };
            let gold = composite_gold_duration(&s, &e)?;
            Ok((s.into(), e.into(), gold))
        }
        _ => unreachable!("one method never mixes dates and list points"),
    }
}

pub(super) fn run<R: Rng + ?Sized>(
    t: &EventTemplate,
    method: SamplingMethod,
    mix: &VariationMix,
    rng: &mut R,
) -> Result<UnitOutput, GenerateError> {
    let mut out = UnitOutput::default();
    for variation in variations(method, mix) {
        let wrapped = matches!(
            variation,
            Variation::FromToWrapped | Variation::BeganUntilWrapped
        );
        let (start, end, gold) = sample_span(method, wrapped, rng)?;
        let gold = match variation {
            Variation::YearMonth => DurationValue::year_month_from_months(gold.normalized().1),
            _ => gold,
        };
        let premise = render_duration_premise(t, &start, &end, wording(variation))?;
        for h in HypothesisType::DURATION {
            let claim = h.duration_claim(&gold).expect("duration hypothesis type");
            out.drafts.push(Draft {
                premise: premise.clone(),
                hypothesis: render_duration_hypothesis(t, &claim)?,
                label: duration_label(&gold, &claim)?,
                sampling_method: Some(method),
                variation,
                hypothesis_type: h,
                unit_pair: None,
            });
        }
    }
    Ok(out)
}
