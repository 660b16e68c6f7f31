//! Construction of the three challenge sets.
//!
//! Work is split into units (template x method x iteration for ordering and
//! duration; template x unit pair x magnitude x iteration for cross-unit).
//! Each unit draws from its own RNG seeded by [`derive_seed`], so units can
//! run on any number of threads and the merged output is always the same.

mod cross_unit;
mod duration;
mod order;
pub mod sampling;
mod seed;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{DurationUnit, Label, ListKind, ModelError};
use crate::oracle::{OracleError, UnitConversions, UnitPair};
use crate::realize::RenderError;
use crate::templates::{EventTemplate, OccurrenceUnit, SpanUnit, Split, TemplateBank};

pub use seed::derive_seed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("could not sample a {0} within the retry budget")]
    SamplingExhausted(&'static str),
    #[error("wrap-around is not defined for sampling method {0}")]
    WrapNotAllowed(SamplingMethod),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

macro_rules! named_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $text)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    _ => Err(format!("unknown {}: {s}", stringify!($name))),
                }
            }
        }
    };
}

named_enum! {
    ChallengeSet {
        TempOrder => "temp-order",
        TempDuration => "temp-duration",
        CrossUnit => "cross-unit",
    }
}

named_enum! {
    /// How the two time instances of a pair are chosen: seven same-list
    /// methods and four that mix lists.
    SamplingMethod {
        Hour12 => "hour12",
        Hour24 => "hour24",
        Weekday => "weekday",
        MonthDay => "monthday",
        MonthFull => "month-full",
        MonthAbbrev => "month-abbrev",
        Year => "year",
        HourMixed => "hour-mixed",
        MonthMixed => "month-mixed",
        DateMonthYear => "date-my",
        DateDayMonthYear => "date-dmy",
    }
}

named_enum! {
    Variation {
        Point => "point",
        PointFronted => "point-fronted",
        PointFuture => "point-future",
        IntervalBefore => "interval-before",
        IntervalAfter => "interval-after",
        FromTo => "from-to",
        BeganUntil => "began-until",
        FromToWrapped => "from-to-wrapped",
        BeganUntilWrapped => "began-until-wrapped",
        YearMonth => "year-month",
        MonthsOnly => "months-only",
    }
}

named_enum! {
    HypothesisType {
        Before => "before",
        After => "after",
        EqGold => "eq-gold",
        EqGoldPlusOne => "eq-gold+1",
        EqGoldTimesTen => "eq-gold*10",
        LtGold => "lt-gold",
        LtGoldPlusOne => "lt-gold+1",
        LtGoldTimesTen => "lt-gold*10",
        BeforeHigh => "before-high",
        BeforeLow => "before-low",
        AfterHigh => "after-high",
        AfterLow => "after-low",
    }
}

impl SamplingMethod {
    /// Premise and hypothesis lists; `None` for composite dates. Mixed
    /// methods list both kinds and the orientation is drawn per pair.
    pub fn lists(self) -> Option<(ListKind, ListKind)> {
        use SamplingMethod as M;
        let same = |k| Some((k, k));
        match self {
            M::Hour12 => same(ListKind::Hour12),
            M::Hour24 => same(ListKind::Hour24),
            M::Weekday => same(ListKind::Weekday),
            M::MonthDay => same(ListKind::MonthDay),
            M::MonthFull => same(ListKind::MonthFull),
            M::MonthAbbrev => same(ListKind::MonthAbbrev),
            M::Year => same(ListKind::Year),
            M::HourMixed => Some((ListKind::Hour12, ListKind::Hour24)),
            M::MonthMixed => Some((ListKind::MonthFull, ListKind::MonthAbbrev)),
            M::DateMonthYear | M::DateDayMonthYear => None,
        }
    }

    pub fn is_same_list(self) -> bool {
        self.lists().is_some_and(|(a, b)| a == b)
    }

    pub fn is_cross_list(self) -> bool {
        !self.is_same_list()
    }

    pub fn is_composite(self) -> bool {
        matches!(
            self,
            SamplingMethod::DateMonthYear | SamplingMethod::DateDayMonthYear
        )
    }

    /// Methods available to a template, in a fixed order.
    pub fn for_template(t: &EventTemplate, mix: &VariationMix) -> Vec<SamplingMethod> {
        use SamplingMethod as M;
        let mut out = Vec::new();
        for unit in &t.occurrence {
            let (same, mixed): (&[M], &[M]) = match unit {
                OccurrenceUnit::Hour => (&[M::Hour12, M::Hour24], &[M::HourMixed]),
                OccurrenceUnit::Weekday => (&[M::Weekday], &[]),
                OccurrenceUnit::Monthday => (&[M::MonthDay], &[]),
                OccurrenceUnit::Month => (&[M::MonthFull, M::MonthAbbrev], &[M::MonthMixed]),
                OccurrenceUnit::Year => (&[M::Year], &[]),
            };
            out.extend_from_slice(same);
            if mix.cross_list {
                out.extend_from_slice(mixed);
            }
        }
        if mix.composite_dates {
            let has = |u| t.has_occurrence(u);
            if has(OccurrenceUnit::Month) && has(OccurrenceUnit::Year) {
                out.push(M::DateMonthYear);
                if has(OccurrenceUnit::Monthday) {
                    out.push(M::DateDayMonthYear);
                }
            }
        }
        out
    }

    /// Methods measuring a span in `unit`.
    pub fn for_span(unit: SpanUnit, mix: &VariationMix) -> Vec<SamplingMethod> {
        use SamplingMethod as M;
        let mut out = match unit {
            SpanUnit::Hours => vec![M::Hour12, M::Hour24],
            SpanUnit::Days => vec![M::Weekday, M::MonthDay],
            SpanUnit::Months => vec![M::MonthFull, M::MonthAbbrev],
            SpanUnit::Years => vec![M::Year],
        };
        if mix.cross_list {
            match unit {
                SpanUnit::Hours => out.push(M::HourMixed),
                SpanUnit::Months => out.push(M::MonthMixed),
                _ => {}
            }
        }
        if mix.composite_dates && unit == SpanUnit::Months {
            out.push(M::DateMonthYear);
        }
        out
    }
}

/// Which of the optional sentence variations are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VariationMix {
    /// Fronted temporal phrase.
    pub position: bool,
    /// Future-tense ordering pairs.
    pub tense: bool,
    /// Before/after premises in Temp-Order and Cross-Unit.
    pub interval_premise: bool,
    /// Methods drawing the two points from different lists.
    pub cross_list: bool,
    /// Month-year and day-month-year dates.
    pub composite_dates: bool,
    /// "began at X and lasted until Y" premises.
    pub began_wording: bool,
    /// Spans crossing into the next cycle.
    pub wrap_around: bool,
}

impl Default for VariationMix {
    fn default() -> Self {
        VariationMix {
            position: true,
            tense: true,
            interval_premise: true,
            cross_list: true,
            composite_dates: true,
            began_wording: true,
            wrap_around: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenerationConfig {
    pub master_seed: u64,
    pub iterations: u32,
    /// Bounds |T2 - convert(T1)| at this many higher units.
    pub difference_range: u64,
    pub mix: VariationMix,
    /// Cross-Unit premise magnitudes, keyed by the higher unit of a pair.
    pub t1_magnitudes: BTreeMap<DurationUnit, Vec<u64>>,
    pub conversions: UnitConversions,
}

impl Default for GenerationConfig {
    fn default() -> Self {
        let t1_magnitudes = BTreeMap::from([
            (DurationUnit::Minutes, vec![1, 2, 5, 10, 15, 30]),
            (DurationUnit::Hours, vec![1, 2, 3, 4, 5, 6, 8, 12]),
            (DurationUnit::Days, vec![1, 2, 3, 4, 5, 7]),
            (DurationUnit::Months, vec![1, 2, 3, 4, 6, 9]),
            (DurationUnit::Years, vec![1, 2, 3, 5, 10]),
        ]);
        GenerationConfig {
            master_seed: 0,
            iterations: 5,
            difference_range: 5,
            mix: VariationMix::default(),
            t1_magnitudes,
            conversions: UnitConversions::default(),
        }
    }
}

impl GenerationConfig {
    pub fn with_seed(master_seed: u64) -> Self {
        GenerationConfig {
            master_seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        let bad = |m: &str| Err(GenerateError::InvalidConfig(m.to_owned()));
        if self.iterations == 0 {
            return bad("iterations must be at least 1");
        }
        if self.difference_range == 0 {
            return bad("difference range must be at least 1");
        }
        if self.conversions.days_per_month == 0 {
            return bad("days per month must be at least 1");
        }
        if self.t1_magnitudes.values().flatten().any(|&m| m == 0) {
            return bad("T1 magnitudes must be at least 1");
        }
        Ok(())
    }
}

/// Metadata stored with every pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMeta {
    pub set: ChallengeSet,
    pub template_id: String,
    pub split: Split,
    pub sampling_method: Option<SamplingMethod>,
    pub variation: Variation,
    pub hypothesis_type: Option<HypothesisType>,
    pub unit_pair: Option<UnitPair>,
    /// `set/template/method/iteration`: with the master seed, enough to
    /// rebuild the unit's RNG.
    pub seed_path: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub struct NLIPair {
    pub id: String,
    pub premise: String,
    pub hypothesis: String,
    pub label: Label,
    pub meta: PairMeta,
}

/// One pair as produced inside a work unit, before ids are assigned.
#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub premise: String,
    pub hypothesis: String,
    pub label: Label,
    pub sampling_method: Option<SamplingMethod>,
    pub variation: Variation,
    pub hypothesis_type: HypothesisType,
    pub unit_pair: Option<UnitPair>,
}

#[derive(Debug, Default)]
pub(crate) struct UnitOutput {
    pub drafts: Vec<Draft>,
    pub warnings: Vec<String>,
}

/// Counted reasons for work that was skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarningReport {
    pub counts: BTreeMap<String, usize>,
}

impl WarningReport {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    fn add(&mut self, reason: String) {
        *self.counts.entry(reason).or_default() += 1;
    }
}

#[derive(Debug, Clone, Default)]
pub struct Generated {
    pub pairs: Vec<NLIPair>,
    pub warnings: WarningReport,
}

pub(crate) struct WorkUnit<'a> {
    pub template: &'a EventTemplate,
    pub method_id: String,
    pub iteration: u32,
    pub kind: UnitKind,
}

#[derive(Clone, Copy)]
pub(crate) enum UnitKind {
    Order(SamplingMethod),
    Duration(SamplingMethod),
    CrossUnit(UnitPair, u64),
}

fn work_units<'a>(
    set: ChallengeSet,
    split: Split,
    config: &GenerationConfig,
    bank: &'a TemplateBank,
) -> Vec<WorkUnit<'a>> {
    let mut kinds: Vec<(&EventTemplate, String, UnitKind)> = Vec::new();
    for t in bank.split(split) {
        match set {
            ChallengeSet::TempOrder => {
                for m in SamplingMethod::for_template(t, &config.mix) {
                    kinds.push((t, m.name().to_owned(), UnitKind::Order(m)));
                }
            }
            ChallengeSet::TempDuration => {
                for &unit in &t.duration {
                    for m in SamplingMethod::for_span(unit, &config.mix) {
                        let id = format!("{}:{}", unit.duration_unit(), m);
                        kinds.push((t, id, UnitKind::Duration(m)));
                    }
                }
            }
            ChallengeSet::CrossUnit => {
                for pair in cross_unit::pairs_for(t) {
                    let mags = config.t1_magnitudes.get(&pair.higher());
                    for &mag in mags.into_iter().flatten() {
                        let id = format!("{pair}:{mag}");
                        kinds.push((t, id, UnitKind::CrossUnit(pair, mag)));
                    }
                }
            }
        }
    }
    let mut units = Vec::new();
    for (template, method_id, kind) in kinds {
        for iteration in 0..config.iterations {
            units.push(WorkUnit {
                template,
                method_id: method_id.clone(),
                iteration,
                kind,
            });
        }
    }
    units
}

impl WorkUnit<'_> {
    fn seed_path(&self, set: ChallengeSet) -> String {
        format!(
            "{set}/{}/{}/{}",
            self.template.id, self.method_id, self.iteration
        )
    }

    fn run(
        &self,
        set: ChallengeSet,
        config: &GenerationConfig,
    ) -> Result<UnitOutput, GenerateError> {
        let seed = derive_seed(
            config.master_seed,
            set.name(),
            &self.template.id,
            self.iteration,
            &self.method_id,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self.kind {
            UnitKind::Order(m) => order::run(self.template, m, &config.mix, &mut rng),
            UnitKind::Duration(m) => duration::run(self.template, m, &config.mix, &mut rng),
            UnitKind::CrossUnit(pair, mag) => {
                cross_unit::run(self.template, pair, mag, config, &mut rng)
            }
        }
    }
}

/// Generates one split of one challenge set.
///
/// Work units run on the current rayon pool; the result does not depend on
/// its thread count.
pub fn generate(
    set: ChallengeSet,
    split: Split,
    config: &GenerationConfig,
    bank: &TemplateBank,
) -> Result<Generated, GenerateError> {
    config.validate()?;
    let units = work_units(set, split, config, bank);
    let outputs: Vec<(String, &EventTemplate, UnitOutput)> = units
        .par_iter()
        .map(|u| Ok((u.seed_path(set), u.template, u.run(set, config)?)))
        .collect::<Result<_, GenerateError>>()?;

    let mut keyed = Vec::new();
    let mut warnings = WarningReport::default();
    for (seed_path, template, out) in outputs {
        for w in out.warnings {
            warnings.add(w);
        }
        for (ordinal, d) in out.drafts.into_iter().enumerate() {
            keyed.push((template.id.clone(), seed_path.clone(), ordinal, d));
        }
    }
    // Units are already enumerated deterministically; the sort pins the
    // order independently of how they were scheduled.
    keyed.sort_by(|a, b| (&a.0, unit_order(&a.1), a.2).cmp(&(&b.0, unit_order(&b.1), b.2)));

    let prefix = match set {
        ChallengeSet::TempOrder => "order",
        ChallengeSet::TempDuration => "duration",
        ChallengeSet::CrossUnit => "cross",
    };
    let pairs = keyed
        .into_iter()
        .enumerate()
        .map(|(n, (template_id, seed_path, _, d))| NLIPair {
            id: format!("{prefix}-{split}-{:06}", n + 1),
            premise: d.premise,
            hypothesis: d.hypothesis,
            label: d.label,
            meta: PairMeta {
                set,
                template_id,
                split,
                sampling_method: d.sampling_method,
                variation: d.variation,
                hypothesis_type: Some(d.hypothesis_type),
                unit_pair: d.unit_pair,
                seed_path,
            },
        })
        .collect();
    Ok(Generated { pairs, warnings })
}

// Seed paths end in the iteration number; compare it numerically so that
// iteration 10 sorts after iteration 9.
fn unit_order(seed_path: &str) -> (&str, u32) {
    let (head, it) = seed_path.rsplit_once('/').unwrap_or((seed_path, "0"));
    (head, it.parse().unwrap_or(0))
}

/// Generates the train split followed by the test split.
pub fn generate_both(
    set: ChallengeSet,
    config: &GenerationConfig,
    bank: &TemplateBank,
) -> Result<Generated, GenerateError> {
    let mut all = Generated::default();
    for split in Split::ALL {
        let g = generate(set, split, config, bank)?;
        all.pairs.extend(g.pairs);
        for (k, v) in g.warnings.counts {
            *all.warnings.counts.entry(k).or_default() += v;
        }
    }
    Ok(all)
}
