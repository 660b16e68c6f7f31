//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use tempnli_core::model::{Anchor, ListKind, TimePoint};
use tempnli_core::oracle::{gold_duration, order_label, wrap_allowed};
use tempnli_core::{
    audit_distances, generate_both, ChallengeSet, GenerationConfig, Label, TemplateBank,
    TemporalSpec, Variation,
};

const TABLE_RUNTIME_LIMIT: Duration = Duration::from_secs(1);
const BRUTE_FORCE_RUNTIME_LIMIT: Duration = Duration::from_secs(60);
const DISTRIBUTION_TOLERANCE_PP: f64 = 3.0;
const TARGET_ORDER_SHARES: [(Label, f64); 3] = [
    (Label::Contradiction, 40.0),
    (Label::Entailment, 35.0),
    (Label::Neutral, 25.0),
];
const SEED: u64 = 0;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tempnli"))
}

use Label::{Contradiction as C, Entailment as E, Neutral as N};

const EXAMPLES: [(&str, &str, Label); 30] = [
    (
        "He left his job at 12 PM.",
        "He left his job before 5 PM.",
        E,
    ),
    (
        "At 12 PM, he left his job.",
        "Before 5 PM, he left his job.",
        E,
    ),
    (
        "He will leave his job at 12 PM.",
        "He will leave his job before 5 PM.",
        E,
    ),
    (
        "He left his job after 12 PM.",
        "He left his job after 9 AM.",
        E,
    ),
    (
        "He left his job after 12 PM.",
        "He left his job before 5 PM.",
        N,
    ),
    (
        "He left his job after 12 PM.",
        "He left his job before 9 AM.",
        C,
    ),
    (
        "He left his job at 12 PM.",
        "He left his job before 17:00.",
        E,
    ),
    (
        "He left his job in February.",
        "He left his job after Apr.",
        C,
    ),
    (
        "He left his job in October 2011.",
        "He left his job after Jan 2011.",
        E,
    ),
    (
        "He left his job on 21st Sep 2013.",
        "He left his job before 23rd Sep 2012.",
        C,
    ),
    (
        "The meeting lasted from 12 PM to 5 PM.",
        "The meeting lasted for 5 hours.",
        E,
    ),
    (
        "The meeting lasted from 12 PM to 5 PM.",
        "The meeting lasted for 50 hours.",
        C,
    ),
    (
        "The meeting lasted from 12 PM to 5 PM.",
        "The meeting lasted for less than 5 hours.",
        C,
    ),
    (
        "The meeting lasted from 12 PM to 5 PM.",
        "The meeting lasted for less than 6 hours.",
        E,
    ),
    (
        "The meeting began at 12 PM and lasted until 5 PM.",
        "The meeting lasted for 5 hours.",
        E,
    ),
    (
        "The meeting lasted from 9 PM to 3 AM.",
        "The meeting lasted for 6 hours.",
        E,
    ),
    (
        "The meeting lasted from 12 PM to 17:00.",
        "The meeting lasted for 5 hours.",
        E,
    ),
    (
        "The spring quarter lasts from Mar to June.",
        "The spring quarter lasts for 3 months.",
        E,
    ),
    (
        "The war lasted from July 1914 to Nov 1918.",
        "The war lasted for 4 years 4 months.",
        E,
    ),
    (
        "The war lasted from July 1914 to Nov 1918.",
        "The war lasted for 52 months.",
        E,
    ),
    (
        "The store will close in 2 hours.",
        "The store will close before 40 minutes.",
        C,
    ),
    (
        "In 2 hours, the store will close.",
        "The store will close after 84 minutes.",
        E,
    ),
    (
        "The store will close in 2 days.",
        "After 34 hours, the store will close.",
        E,
    ),
    (
        "After 4 days, the store will close.",
        "The store will close before 38 hours.",
        C,
    ),
    (
        "The store will close before 4 days.",
        "Before 174 hours, the store will close.",
        E,
    ),
    (
        "The store will close before 6 hours.",
        "The store will close after 77 minutes.",
        N,
    ),
    (
        "After 3 hours, the store will close.",
        "The store will close after 409 minutes.",
        N,
    ),
    (
        "They got married in March.",
        "They got married before July.",
        E,
    ),
    (
        "The war lasted from 1939 to 1945.",
        "The war lasted for 6 years.",
        E,
    ),
    (
        "The concert starts at 2 AM.",
        "The concert starts before 11 PM.",
        E,
    ),
];

fn table_fidelity() -> Outcome {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for (i, (premise, hypothesis, gold)) in EXAMPLES.iter().enumerate() {
        let out = bin()
            .args(["oracle", "--premise", premise, "--hypothesis", hypothesis])
            .output()
            .expect("run oracle");
        let got = String::from_utf8_lossy(&out.stdout).trim().to_owned();
        if !out.status.success() || got != gold.as_str() {
            wrong.push(format!("#{} expected {gold} got {got:?}", i + 1));
        }
    }
    let elapsed = start.elapsed();
    let exact = EXAMPLES.len() - wrong.len();
    Outcome {
        name: "table fidelity (30 examples via oracle CLI, < 1 s)",
        passed: wrong.is_empty() && elapsed < TABLE_RUNTIME_LIMIT,
        detail: format!("{exact}/30 exact in {elapsed:.2?} {}", wrong.join("; ")),
    }
}

// Point-set oracle: materializes each claim as the set of list indices it
// allows and tests subset/disjointness directly.
fn members(anchor: Anchor, t: usize, len: usize) -> BTreeSet<usize> {
    (0..len)
        .filter(|&x| match anchor {
            Anchor::At => x == t,
            Anchor::Before => x < t,
            Anchor::After => x > t,
        })
        .collect()
}

fn set_label(p: &BTreeSet<usize>, h: &BTreeSet<usize>) -> Label {
    if p.is_subset(h) {
        E
    } else if p.is_disjoint(h) {
        C
    } else {
        N
    }
}

fn brute_force() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    let cyclic: Vec<ListKind> = ListKind::ALL
        .into_iter()
        .filter(|k| k.is_cyclic())
        .collect();
    for &pk in &cyclic {
        for &hk in cyclic.iter().filter(|k| k.axis() == pk.axis()) {
            let len = pk.len();
            for p_anchor in [Anchor::At, Anchor::Before, Anchor::After] {
                for h_anchor in [Anchor::Before, Anchor::After] {
                    for i in 0..len {
                        for j in 0..len {
                            let premise = TemporalSpec::Anchored {
                                anchor: p_anchor,
                                point: TimePoint::new(pk, i).unwrap().into(),
                            };
                            let hypothesis = TemporalSpec::Anchored {
                                anchor: h_anchor,
                                point: TimePoint::new(hk, j).unwrap().into(),
                            };
                            let got = order_label(&premise, &hypothesis).ok();
                            let want =
                                set_label(&members(p_anchor, i, len), &members(h_anchor, j, len));
                            checked += 1;
                            if got != Some(want) {
                                mismatches
                                    .push(format!("{pk}/{hk} {p_anchor:?}{i} {h_anchor:?}{j}"));
                            }
                        }
                    }
                }
            }
        }
    }
    // Wrapped gold durations against modular arithmetic: the unique d in
    // [1, len-1] with (s + d) mod len == e.
    for kind in cyclic.iter().filter(|k| wrap_allowed(k.axis())) {
        let len = kind.len();
        for s in 0..len {
            for e in 0..s {
                let d = (1..len).find(|d| (s + d) % len == e).unwrap() as u64;
                let got = gold_duration(
                    &TimePoint::new(*kind, s).unwrap(),
                    &TimePoint::new(*kind, e).unwrap(),
                    true,
                )
                .map(|g| g.normalized());
                checked += 1;
                let want_base = tempnli_core::model::DurationValue::new(
                    match kind.axis() {
                        tempnli_core::Axis::Hour => tempnli_core::DurationUnit::Hours,
                        tempnli_core::Axis::Weekday => tempnli_core::DurationUnit::Days,
                        _ => tempnli_core::DurationUnit::Months,
                    },
                    d,
                )
                .normalized();
                if got.as_ref().ok() != Some(&want_base) {
                    mismatches.push(format!("wrap {kind} {s}->{e}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        name: "brute-force equivalence (ordering and wrapped gold, < 1 min)",
        passed: mismatches.is_empty() && elapsed < BRUTE_FORCE_RUNTIME_LIMIT,
        detail: format!(
            "{}/{checked} agree in {elapsed:.2?} {}",
            checked - mismatches.len(),
            mismatches
                .iter()
                .take(5)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
    }
}

fn label_counts<'a>(labels: impl IntoIterator<Item = &'a Label>) -> BTreeMap<Label, usize> {
    let mut c = BTreeMap::new();
    for l in labels {
        *c.entry(*l).or_default() += 1;
    }
    c
}

fn structural_balance(bank: &TemplateBank, config: &GenerationConfig) -> Outcome {
    let mut violations = Vec::new();
    let mut blocks = 0usize;

    let duration = generate_both(ChallengeSet::TempDuration, config, bank)
        .unwrap()
        .pairs;
    let mut by_premise: BTreeMap<(String, Variation), Vec<Label>> = BTreeMap::new();
    for p in &duration {
        by_premise
            .entry((p.meta.seed_path.clone(), p.meta.variation))
            .or_default()
            .push(p.label);
    }
    for (key, labels) in &by_premise {
        blocks += 1;
        let c = label_counts(labels);
        if labels.len() != 6 || c.get(&E) != Some(&3) || c.get(&C) != Some(&3) {
            violations.push(format!("duration block {key:?}: {c:?}"));
        }
    }
    let dc = label_counts(duration.iter().map(|p| &p.label));
    if dc.get(&E) != dc.get(&C) || dc.contains_key(&N) {
        violations.push(format!("duration dataset {dc:?}"));
    }

    let cross = generate_both(ChallengeSet::CrossUnit, config, bank)
        .unwrap()
        .pairs;
    let mut by_block: BTreeMap<String, Vec<Label>> = BTreeMap::new();
    for p in &cross {
        by_block
            .entry(p.meta.seed_path.clone())
            .or_default()
            .push(p.label);
    }
    for (key, labels) in &by_block {
        blocks += 1;
        let c = label_counts(labels);
        if labels.len() != 12 || c.values().any(|&n| n != 4) || c.len() != 3 {
            violations.push(format!("cross-unit block {key}: {c:?}"));
        }
    }
    let cc = label_counts(cross.iter().map(|p| &p.label));
    if cc.values().collect::<BTreeSet<_>>().len() != 1 || cc.len() != 3 {
        violations.push(format!("cross-unit dataset {cc:?}"));
    }

    Outcome {
        name: "structural balance (duration 3E/3C per premise, cross-unit 4/4/4 per block)",
        passed: violations.is_empty() && blocks > 0,
        detail: format!(
            "{blocks} blocks, {} violations; duration {dc:?}; cross-unit {cc:?} {}",
            violations.len(),
            violations
                .iter()
                .take(3)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ")
        ),
    }
}

fn distribution(bank: &TemplateBank, config: &GenerationConfig) -> Outcome {
    let pairs = generate_both(ChallengeSet::TempOrder, config, bank)
        .unwrap()
        .pairs;
    let counts = label_counts(pairs.iter().map(|p| &p.label));
    let n = pairs.len() as f64;
    let mut passed = true;
    let mut parts = Vec::new();
    for (label, target) in TARGET_ORDER_SHARES {
        let share = 100.0 * *counts.get(&label).unwrap_or(&0) as f64 / n;
        passed &= (share - target).abs() <= DISTRIBUTION_TOLERANCE_PP;
        parts.push(format!("{label} {share:.1}% (target {target})"));
    }
    Outcome {
        name: "distribution fidelity (temp-order within 3 pp of 40 C / 35 E / 25 N)",
        passed,
        detail: format!("{} rows: {}", pairs.len(), parts.join(", ")),
    }
}

fn generate_file(dir: &Path, set: &str, split: &str, extra: &[&str], name: &str) -> PathBuf {
    let out = dir.join(name);
    let status = bin()
        .args([
            "generate",
            "--set",
            set,
            "--split",
            split,
            "--seed",
            &SEED.to_string(),
        ])
        .arg("--out")
        .arg(&out)
        .args(extra)
        .output()
        .expect("run generate");
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    out
}

fn round_trip(dir: &Path) -> Outcome {
    let mut ok = 0;
    let mut failures = Vec::new();
    for set in ["temp-order", "temp-duration", "cross-unit"] {
        for split in ["train", "test"] {
            let path = generate_file(dir, set, split, &[], &format!("{set}-{split}.tsv"));
            let out = bin()
                .arg("verify")
                .arg("--in")
                .arg(&path)
                .output()
                .expect("run verify");
            if out.status.success() {
                ok += 1;
            } else {
                failures.push(format!(
                    "{set}/{split}: {}",
                    String::from_utf8_lossy(&out.stderr)
                        .lines()
                        .next()
                        .unwrap_or("")
                ));
            }
        }
    }
    Outcome {
        name: "round-trip verification (verify on 3 sets x 2 splits)",
        passed: failures.is_empty(),
        detail: format!("{ok}/6 files verified {}", failures.join("; ")),
    }
}

fn determinism(dir: &Path) -> Outcome {
    let mut differing = Vec::new();
    for set in ["temp-order", "temp-duration", "cross-unit"] {
        let a = generate_file(dir, set, "both", &[], &format!("{set}-a.tsv"));
        let b = generate_file(dir, set, "both", &[], &format!("{set}-b.tsv"));
        let w1 = generate_file(
            dir,
            set,
            "both",
            &["--workers", "1"],
            &format!("{set}-w1.tsv"),
        );
        let w7 = generate_file(
            dir,
            set,
            "both",
            &["--workers", "7"],
            &format!("{set}-w7.tsv"),
        );
        let reference = std::fs::read(&a).unwrap();
        for other in [b, w1, w7] {
            if std::fs::read(&other).unwrap() != reference {
                differing.push(other.file_name().unwrap().to_string_lossy().into_owned());
            }
        }
    }
    Outcome {
        name: "determinism (repeat runs and 1/7/all workers byte-identical)",
        passed: differing.is_empty(),
        detail: if differing.is_empty() {
            "9 comparisons identical".into()
        } else {
            format!("differs: {}", differing.join(", "))
        },
    }
}

fn sampling_audit(bank: &TemplateBank, config: &GenerationConfig) -> Outcome {
    let pairs = generate_both(ChallengeSet::TempOrder, config, bank)
        .unwrap()
        .pairs;
    let audited = pairs
        .iter()
        .filter(|p| tempnli_core::verify::order_distance(p).is_some())
        .count();
    let report = audit_distances(&pairs);
    Outcome {
        name: "sampling constraint audit (same-list temp-order distance <= half list)",
        passed: report.passed() && audited > 0,
        detail: format!(
            "{audited} same-list rows audited, {} violations",
            report.failures.len()
        ),
    }
}

fn main() {
    let bank = TemplateBank::bundled();
    let config = GenerationConfig::with_seed(SEED);
    let dir = tempfile::tempdir().expect("temp dir");
    let outcomes = [
        table_fidelity(),
        brute_force(),
        structural_balance(&bank, &config),
        distribution(&bank, &config),
        round_trip(dir.path()),
        determinism(dir.path()),
        sampling_audit(&bank, &config),
    ];
    let mut failed = 0;
    for o in &outcomes {
        println!(
            "{} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {}/{} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
