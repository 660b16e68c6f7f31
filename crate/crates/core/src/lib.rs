//! Temporal-expression NLI challenge sets: a label oracle, deterministic
//! generators for ordering, duration and cross-unit pairs, a round-trip
//! parser that re-derives every label from text, and dataset I/O.

pub mod dataset;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod realize;
pub mod templates;
pub mod verify;

pub use dataset::{compute_stats, read_dataset, write_dataset, DatasetError, DatasetStats, Format};
pub use generate::{
    derive_seed, generate, generate_both, ChallengeSet, GenerateError, Generated, GenerationConfig,
    HypothesisType, NLIPair, PairMeta, SamplingMethod, Variation, VariationMix,
};
pub use model::{
    Anchor, Axis, BinaryLabel, ClaimMode, CompositeDate, DurationClaim, DurationUnit,
    DurationValue, Label, ListKind, MonthStyle, Point, TemporalSpec, TimePoint,
};
pub use oracle::{OracleError, UnitConversions, UnitPair};
pub use parse::{parse_sentence, relabel, ParseError, ParsedClaim, SetKind};
pub use templates::{EventTemplate, Split, TemplateBank};
pub use verify::{audit_distances, verify_pairs, VerifyReport};
