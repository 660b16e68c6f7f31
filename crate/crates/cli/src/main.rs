use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand, ValueEnum};
use tempnli_core::dataset::{self, Format};
use tempnli_core::parse::label_text;
use tempnli_core::{
    audit_distances, compute_stats, generate, generate_both, verify_pairs, ChallengeSet,
    GenerationConfig, Split, TemplateBank, UnitConversions,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "tempnli",
    version,
    about = "Temporal-expression NLI challenge sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetArg {
    TempOrder,
    TempDuration,
    CrossUnit,
}

impl From<SetArg> for ChallengeSet {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::TempOrder => ChallengeSet::TempOrder,
            SetArg::TempDuration => ChallengeSet::TempDuration,
            SetArg::CrossUnit => ChallengeSet::CrossUnit,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Train,
    Test,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one challenge set.
    Generate {
        #[arg(long, value_enum)]
        set: SetArg,
        #[arg(long, value_enum, default_value = "both")]
        split: SplitArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Template file; the bundled bank is used when omitted.
        #[arg(long)]
        templates: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        iterations: u32,
        #[arg(long, default_value_t = 5)]
        difference_range: u64,
        /// Defaults to jsonl for .jsonl/.json paths and tsv otherwise.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Worker threads; 0 uses all cores. Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value_t = 30)]
        days_per_month: u64,
    },
    /// Print row counts, label shares and facet counts.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive every label from the text and audit sampling distances.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 30)]
        days_per_month: u64,
    },
    /// Label a single premise/hypothesis pair.
    Oracle {
        #[arg(long)]
        premise: String,
        #[arg(long)]
        hypothesis: String,
        #[arg(long, default_value_t = 30)]
        days_per_month: u64,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Verify(String),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
            Failure::Io(_) => EXIT_IO,
        }
    }
}

fn read(path: &Path) -> Result<Vec<tempnli_core::NLIPair>, Failure> {
    dataset::read_dataset(path).map_err(|e| match e {
        dataset::DatasetError::Io { .. } => Failure::Io(e.into()),
        _ => Failure::Usage(anyhow!(e).context(format!("reading {}", path.display()))),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate {
            set,
            split,
            seed,
            templates,
            out,
            iterations,
            difference_range,
            format,
            workers,
            days_per_month,
        } => {
            let bank = match templates {
                Some(path) => TemplateBank::load(&path).map_err(|e| match e {
                    tempnli_core::templates::TemplateError::Io { .. } => Failure::Io(e.into()),
                    _ => Failure::Usage(e.into()),
                })?,
                None => TemplateBank::bundled(),
            };
            let mut config = GenerationConfig::with_seed(seed);
            config.iterations = iterations;
            config.difference_range = difference_range;
            config.conversions = UnitConversions { days_per_month };
            config.validate().map_err(|e| Failure::Usage(e.into()))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Failure::Usage(e.into()))?;
            let set = ChallengeSet::from(set);
            let generated = pool
                .install(|| match split {
                    SplitArg::Train => generate(set, Split::Train, &config, &bank),
                    SplitArg::Test => generate(set, Split::Test, &config, &bank),
                    SplitArg::Both => generate_both(set, &config, &bank),
                })
                .map_err(|e| Failure::Usage(e.into()))?;
            let format = match format {
                Some(FormatArg::Tsv) => Format::Tsv,
                Some(FormatArg::Jsonl) => Format::Jsonl,
                None => Format::from_path(&out),
            };
            dataset::write_dataset(&generated.pairs, &out, format).map_err(|e| match e {
                dataset::DatasetError::Io { .. } => Failure::Io(e.into()),
                _ => Failure::Usage(e.into()),
            })?;
            eprintln!("wrote {} rows to {}", generated.pairs.len(), out.display());
            for (reason, n) in &generated.warnings.counts {
                eprintln!("warning: skipped {n}x: {reason}");
            }
            Ok(())
        }
        Command::Stats { input, json } => {
            let pairs = read(&input)?;
            let stats = compute_stats(&pairs).map_err(|e| Failure::Usage(e.into()))?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&stats).expect("stats serialize")
                );
            } else {
                print!("{stats}");
            }
            Ok(())
        }
        Command::Verify {
            input,
            days_per_month,
        } => {
            let pairs = read(&input)?;
            let report = verify_pairs(&pairs, &UnitConversions { days_per_month });
            let audit = audit_distances(&pairs);
            for f in report.failures.iter().chain(&audit.failures).take(20) {
                eprintln!("row {} ({}): {}", f.row, f.id, f.reason);
            }
            let bad = report.failures.len() + audit.failures.len();
            if bad > 0 {
                return Err(Failure::Verify(format!(
                    "{bad} of {} rows failed verification",
                    pairs.len()
                )));
            }
            println!("ok: {} rows verified", pairs.len());
            Ok(())
        }
        Command::Oracle {
            premise,
            hypothesis,
            days_per_month,
        } => {
            let label = label_text(&premise, &hypothesis, &UnitConversions { days_per_month })
                .map_err(|e| Failure::Usage(e.into()))?;
            println!("{label}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(e) | Failure::Io(e) => eprintln!("error: {e:#}"),
                Failure::Verify(msg) => eprintln!("verification failed: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
