use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Build, check, optimize and simulate placement delivery arrays for coded
/// caching with shared helper caches and private caches.
#[derive(Parser)]
#[command(name = "sppda", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an SP-PDA from two PDAs and an association profile.
    Construct(ConstructArgs),
    /// Check a PDA or SP-PDA file; exits 1 when it is invalid.
    Verify(VerifyArgs),
    /// Run placement, delivery and decoding for an array file.
    Simulate(SimulateArgs),
    /// Search column permutations of two PDAs for the smallest code count.
    Search(SearchArgs),
    /// Closed-form rate and subpacketization of both schemes over a t2 range, as CSV.
    Sweep(SweepArgs),
    /// Evaluate the closed-form expressions.
    #[command(subcommand)]
    Formulas(FormulaCommand),
}

#[derive(Args)]
struct ConstructArgs {
    /// First PDA, over the helper caches: a file, `man:K,t` or `consa:q,m`.
    first: String,
    /// Second PDA, over the largest user group: a file, `man:K,t` or `consa:q,m`.
    second: String,
    /// Users per helper cache, comma-separated and non-increasing.
    #[arg(long)]
    profile: String,
    /// Renumber codes by first appearance.
    #[arg(long)]
    canonical: bool,
    /// Write JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Output file (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Search for a column grouping instead of using the one in the file.
    #[arg(long)]
    search: bool,
    /// Check this helper-star count instead of the header's.
    #[arg(long)]
    zh: Option<usize>,
}

#[derive(Args)]
struct SimulateArgs {
    /// PDA or SP-PDA file; a plain PDA runs the dedicated-cache scheme.
    file: PathBuf,
    /// Seeded random library: `N,B,seed` (files, bytes per file, seed).
    #[arg(long, conflicts_with = "library")]
    synthetic: Option<String>,
    /// Directory whose regular files form the library, in name order.
    #[arg(long)]
    library: Option<PathBuf>,
    /// Requested file of each user, 1-based and comma-separated.
    #[arg(long, conflicts_with = "worst_case")]
    demands: Option<String>,
    /// User k requests file k.
    #[arg(long)]
    worst_case: bool,
    /// Transmission log (JSON lines).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Report file (stdout when absent).
    #[arg(long)]
    report: Option<PathBuf>,
    /// One-line CSV summary with header.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    first: String,
    second: String,
    #[arg(long)]
    profile: String,
    /// Evaluate every pair of column orders.
    #[arg(long, conflicts_with = "greedy")]
    exhaustive: bool,
    /// Greedy column orders for inputs too large to enumerate.
    #[arg(long)]
    greedy: bool,
    /// Largest number of pairs the exhaustive search may evaluate.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u128,
    /// Pairs listed in the exhaustive table.
    #[arg(long, default_value_t = 10)]
    top: usize,
    /// CSV output file (stdout when absent).
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write the reordered first PDA (greedy mode or best exhaustive pair).
    #[arg(long)]
    write_first: Option<PathBuf>,
    /// Write the reordered second PDA.
    #[arg(long)]
    write_second: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of users; must equal the profile sum.
    #[arg(long)]
    k: usize,
    /// Number of helper caches; must equal the profile length.
    #[arg(long)]
    lambda: usize,
    #[arg(long)]
    profile: String,
    /// Helper memory fraction M_h/N, as `a/b` or a decimal.
    #[arg(long)]
    mh: String,
    /// t2 values: `all`, a range `a-b`, or a comma-separated list.
    #[arg(long, default_value = "all")]
    t2: String,
    /// Comma-separated subset of `man_pair`, `construction_a_pair`.
    #[arg(long, default_value = "man_pair,construction_a_pair")]
    schemes: String,
    /// Largest subpacketization that is also constructed and simulated.
    #[arg(long, default_value_t = 100_000)]
    verify_cap: u128,
    /// CSV output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum FormulaCommand {
    /// Code count and rate of the MaN pair.
    Man {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        t1: usize,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        t2: usize,
    },
    /// Code count and rate of the Construction A pair.
    Consa {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        t2: usize,
    },
    /// Both schemes at matched helper memory.
    Compare {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        profile: String,
        #[arg(long)]
        t2: usize,
    },
    /// Parameters of MaN(K, t) used directly as an SP-PDA.
    ManSppda {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        profile: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Search(a) => commands::search(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Formulas(f) => commands::formulas(f),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
