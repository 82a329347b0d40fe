//! Command implementations behind the `trivext` binary.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use trivext_core::classify::PolyReport;
use trivext_core::corpus::{conjecture45, run_corpus, run_theorems, CorpusConfig, Family};
use trivext_core::ideal::enumerate_ideals;
use trivext_core::poly::DEFAULT_SEARCH_CAP;
use trivext_core::{
    build_ring, classify, parse_document, ClassifyConfig, Error, FiniteRing, RingPoly, SearchConfig,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BOUND: u8 = 2;
pub const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "trivext",
    version,
    about = "Classify finite rings and trivial ring extensions"
)]
pub struct Cli {
    /// Cap on polynomial tuples examined by any single search.
    #[arg(long, global = true, env = "TRIVEXT_SEARCH_CAP", default_value_t = DEFAULT_SEARCH_CAP)]
    pub search_cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the last ring declared in a spec file.
    Classify(ClassifyArgs),
    /// Dump the ideal lattice of the last ring declared in a spec file.
    Lattice(LatticeArgs),
    /// Classify a generated corpus and check the invariant suite.
    Corpus(CorpusArgs),
    /// Compare pseudo-arithmetical with local irreducibility of zero.
    Conjecture45(CorpusArgs),
    /// Run the structure and quotient harnesses over a corpus.
    Theorems(CorpusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = trivext_core::poly::DEFAULT_DEGREE_BOUND)]
    pub degree_bound: u32,
    /// Record wall time per condition.
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, default_value_t = trivext_core::ideal::DEFAULT_LATTICE_BOUND)]
    pub bound: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    #[arg(long, default_value_t = 64)]
    pub max_order: usize,
    /// Comma-separated subset of zmod, gf, product, trivext.
    #[arg(long, default_value = "zmod,gf,product,trivext")]
    pub families: String,
    #[arg(long, default_value_t = trivext_core::poly::DEFAULT_DEGREE_BOUND)]
    pub degree_bound: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

/// A finished command: the rendered report, where it goes and the exit
/// code.
#[derive(Debug)]
pub struct Outcome {
    pub report: String,
    pub out: Option<PathBuf>,
    pub code: u8,
    /// Shown on stderr.
    pub notice: Option<String>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded { .. } | Error::SearchCapExceeded { .. } => EXIT_BOUND,
        Error::Consistency(_) => EXIT_CONSISTENCY,
        _ => EXIT_USAGE,
    }
}

fn render(format: Format, json: impl FnOnce() -> String, md: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => json(),
        Format::Md => md(),
    }
}

fn load_ring(path: &PathBuf) -> Result<(FiniteRing, trivext_core::SpecDocument), CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })?;
    let doc = parse_document(&text).map_err(|e| CliError {
        code: EXIT_USAGE,
        message: format!("{}:{e}", path.display()),
    })?;
    let spec = doc.target().ok_or_else(|| CliError {
        code: EXIT_USAGE,
        message: format!("{}: no ring declared", path.display()),
    })?;
    Ok((build_ring(spec)?, doc))
}

pub fn cmd_classify(args: &ClassifyArgs, search_cap: u64) -> Result<Outcome, CliError> {
    let (ring, doc) = load_ring(&args.spec)?;
    let cfg = ClassifyConfig {
        search: SearchConfig {
            degree_bound: args.degree_bound,
            search_cap,
            ..SearchConfig::default()
        },
        timings: args.timings,
        ..ClassifyConfig::default()
    };
    let mut report = classify(&ring, &cfg)?;
    for p in &doc.polys {
        let f = RingPoly::from_spec(&ring, p)?;
        report
            .polynomials
            .push(PolyReport::new(&p.name, &f, &cfg.search)?);
    }
    Ok(Outcome {
        report: render(
            args.output.format,
            || report.to_json(),
            || report.to_markdown(),
        ),
        out: args.output.out.clone(),
        code: EXIT_OK,
        notice: None,
    })
}

pub fn cmd_lattice(args: &LatticeArgs) -> Result<Outcome, CliError> {
    let (ring, _) = load_ring(&args.spec)?;
    let lattice = enumerate_ideals(&ring, args.bound)?;
    Ok(Outcome {
        report: serde_json::to_string_pretty(&lattice.dump()).expect("dump serializes") + "\n",
        out: args.out.clone(),
        code: EXIT_OK,
        notice: None,
    })
}

pub fn corpus_config(args: &CorpusArgs, search_cap: u64) -> Result<CorpusConfig, CliError> {
    Ok(CorpusConfig {
        max_order: args.max_order,
        families: Family::parse_list(&args.families)?,
        degree_bound: args.degree_bound,
        search_cap,
        seed: args.seed,
        ..CorpusConfig::default()
    })
}

pub fn cmd_corpus(args: &CorpusArgs, search_cap: u64) -> Result<Outcome, CliError> {
    let report = run_corpus(&corpus_config(args, search_cap)?)?;
    let failures = report.failures().count();
    let passed = report.passed();
    Ok(Outcome {
        report: render(
            args.output.format,
            || report.to_json(),
            || report.to_markdown(),
        ),
        out: args.output.out.clone(),
        code: if passed { EXIT_OK } else { EXIT_CONSISTENCY },
        notice: (!passed).then(|| {
            format!(
                "{} ring failures, {} invariant violations",
                failures,
                report.violations.len()
            )
        }),
    })
}

pub fn cmd_conjecture45(args: &CorpusArgs, search_cap: u64) -> Result<Outcome, CliError> {
    let corpus = run_corpus(&corpus_config(args, search_cap)?)?;
    let table = conjecture45(&corpus)?;
    let notice = (table.disagree > 0).then(|| {
        format!(
            "{} disagreeing rings (certificates replayed); see the report",
            table.disagree
        )
    });
    Ok(Outcome {
        report: render(
            args.output.format,
            || table.to_json(),
            || table.to_markdown(),
        ),
        out: args.output.out.clone(),
        code: if table.failures.is_empty() {
            EXIT_OK
        } else {
            EXIT_CONSISTENCY
        },
        notice,
    })
}

pub fn cmd_theorems(args: &CorpusArgs, search_cap: u64) -> Result<Outcome, CliError> {
    let report = run_theorems(&corpus_config(args, search_cap)?)?;
    let passed = report.passed();
    let notice = (!passed).then(|| {
        let failing: Vec<String> = report
            .failed()
            .map(|h| serde_json::to_string(h).expect("harness report serializes"))
            .chain(report.errors.iter().cloned())
            .collect();
        format!("failing instances:\n{}", failing.join("\n"))
    });
    Ok(Outcome {
        report: render(
            args.output.format,
            || report.to_json(),
            || report.to_markdown(),
        ),
        out: args.output.out.clone(),
        code: if passed { EXIT_OK } else { EXIT_CONSISTENCY },
        notice,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Classify(a) => cmd_classify(a, cli.search_cap),
        Command::Lattice(a) => cmd_lattice(a),
        Command::Corpus(a) => cmd_corpus(a, cli.search_cap),
        Command::Conjecture45(a) => cmd_conjecture45(a, cli.search_cap),
        Command::Theorems(a) => cmd_theorems(a, cli.search_cap),
    }
}

/// Parses arguments, runs the command and writes its report. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            if let Some(n) = &outcome.notice {
                eprintln!("{n}");
            }
            match &outcome.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &outcome.report) {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
                None => print!("{}", outcome.report),
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
