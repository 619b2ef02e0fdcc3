//! The `concordance` command-line front end.
//!
//! Every command produces a JSON document carrying `"schema": 1` and a
//! plain-text rendering; `--json` selects the former. Exit codes: 0 success,
//! 1 domain failure, 2 usage or parse error.

mod commands;
mod error;
mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;

pub const SCHEMA_VERSION: u64 = 1;
pub const THREADS_ENV: &str = "CONCORDANCE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "concordance", version, about = "Knot concordance invariants and certificates")]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the randomized rank fast path.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alexander polynomial, signature, Arf invariant and genus bounds.
    Invariants { knot: String },
    /// Jumps of the Levine-Tristram signature and its values at roots of unity.
    LtProfile {
        knot: String,
        #[arg(long, default_value_t = 12)]
        max_order: u64,
    },
    /// Finite or integral ρ-invariant.
    Rho(RhoArgs),
    /// Universal Cheeger-Gromov bound 69713280·c(K).
    Bound(BoundArgs),
    /// Search and verify a J-sequence.
    Jseq(JseqArgs),
    /// Build the satellite family described by a configuration file.
    Family { config: String },
    /// Fox calculus utilities.
    #[command(subcommand)]
    Fox(FoxCommand),
    /// Alias for `fox tuples`.
    Tuples(TuplesArgs),
    /// Alias for `fox indep`.
    Indep(IndepArgs),
    /// Membership of a word in P^1 or P^2 of a presented group.
    Membership(MembershipArgs),
    /// Certify a linear combination of a satellite family.
    Certify(CertifyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "kind")]
pub struct RhoKindArgs {
    /// Sum of signatures over the d-th roots of unity.
    #[arg(long, value_name = "D")]
    pub finite: Option<u64>,
    /// Integral of the signature function over the circle.
    #[arg(long)]
    pub integral: bool,
}

#[derive(Args, Debug)]
pub struct RhoArgs {
    #[command(flatten)]
    pub kind: RhoKindArgs,
    /// Enclosure width for a non-rational integral.
    #[arg(long, default_value = "1/1099511627776")]
    pub tolerance: String,
    pub knot: String,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Crossing number.
    #[arg(required_unless_present = "knot")]
    pub crossing: Option<u64>,
    /// Read the crossing number from a knot file.
    #[arg(long, conflicts_with = "crossing")]
    pub knot: Option<String>,
    /// Check a claimed constant against the bound.
    #[arg(long)]
    pub claimed: Option<String>,
}

#[derive(Args, Debug)]
pub struct JseqArgs {
    #[arg(long)]
    pub constant: String,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 31)]
    pub primes_max: u64,
    #[arg(long, default_value_t = 3)]
    pub min_prime: u64,
    /// Candidate family JSON; the built-in library when omitted.
    #[arg(long)]
    pub family: Option<String>,
    /// Also write the sequence document to this path.
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum FoxCommand {
    /// All Fox derivatives of a word.
    Derive {
        word: String,
        /// Rank of the free group; defaults to the largest generator used.
        #[arg(long)]
        rank: Option<usize>,
        /// Only this derivative.
        #[arg(long)]
        index: Option<usize>,
        /// Also project to the level-one quotient over this field.
        #[arg(long)]
        project: Option<String>,
    },
    Tuples(TuplesArgs),
    Indep(IndepArgs),
}

#[derive(Args, Debug)]
pub struct TuplesArgs {
    #[arg(long)]
    pub level: usize,
    #[arg(long)]
    pub genus: usize,
    /// Stop after this many tuples.
    #[arg(long, default_value_t = 64)]
    pub limit: usize,
}

#[derive(Args, Debug)]
pub struct IndepArgs {
    #[arg(long)]
    pub genus: usize,
    #[arg(long, default_value = "q")]
    pub coeffs: String,
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    /// The 2g - 1 words of the tuple.
    #[arg(required = true)]
    pub words: Vec<String>,
}

#[derive(Args, Debug)]
pub struct MembershipArgs {
    /// Presentation JSON.
    pub presentation: String,
    #[arg(long)]
    pub word: String,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub level: u8,
    /// `R0` or `R0,R1`, each `q` or `zp:P`.
    #[arg(long, default_value = "q,q")]
    pub coeffs: String,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Family configuration JSON.
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// `auto` (the sequence's constant), `bound` (the seed's universal bound) or a rational.
    #[arg(long, default_value = "auto")]
    pub constant: String,
}

/// A rendered command result.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    pub code: u8,
}

impl Report {
    fn ok(json: serde_json::Value, text: String) -> Self {
        Report { json, text, code: 0 }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`")))?;
    // a pool may already exist when run() is called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(out: &mut dyn Write, json: bool, report: &Report) -> std::io::Result<()> {
    if json {
        let mut doc = report.json.clone();
        if let Some(map) = doc.as_object_mut() {
            map.insert("schema".into(), SCHEMA_VERSION.into());
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
    } else {
        write!(out, "{}", report.text)
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let failure = CliError::usage(e.kind().to_string());
            if !wants_json {
                let _ = write!(err, "{e}");
            }
            let _ = emit(out, true, &failure.report());
            return failure.code;
        }
    };
    let result = configure_threads().and_then(|()| commands::dispatch(&cli));
    let report = result.unwrap_or_else(|e| e.report());
    if report.code != 0 && report.text.is_empty() {
        // errors always reach stdout as JSON
        if !cli.json {
            let _ = writeln!(err, "{}", error::describe(&report.json));
        }
        let _ = emit(out, true, &report);
        return report.code;
    }
    if emit(out, cli.json, &report).is_err() {
        return 1;
    }
    report.code
}
