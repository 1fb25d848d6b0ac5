use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

mod cache;
mod commands;
mod config;
mod output;
mod parse;

#[derive(Parser, Debug)]
#[command(name = "gaussrel", version, about = "Gauss sums, Weyl-sum equidistribution and relation decomposition")]
#[command(args_override_self = true)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every sampled computation; recorded in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Gauss-sum identities on a list of fields.
    Verify(VerifyArgs),
    /// Weyl sums of a normalized Gauss-sum tuple over a range of levels.
    Weyl(WeylArgs),
    /// Level-1 Weyl sums across a list of primes.
    SweepQ(SweepArgs),
    /// Decide whether a Gauss-sum monomial is a product of known relations.
    Decompose(DecomposeArgs),
    /// Weyl sums of normalized Jacobi sums.
    Jacobi(JacobiArgs),
    /// Gauss sums of one field, single or all characters.
    Gauss(GaussArgs),
}

pub const SUBCOMMANDS: [&str; 6] = ["verify", "weyl", "sweep-q", "decompose", "jacobi", "gauss"];

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Field orders q.
    #[arg(long, default_value = "5,7,9,13,25,27")]
    pub fields: String,
    /// Check lifting up to this level.
    #[arg(long, default_value_t = 3)]
    pub lift: u32,
    /// Skip lifts whose field has more elements than this.
    #[arg(long, default_value_t = 2_000_000)]
    pub max_order: u64,
    #[arg(long, default_value_t = gaussrel::identities::IDENTITY_TOL)]
    pub tol: f64,
    /// Write the reports as JSON here.
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct WeylArgs {
    #[arg(long)]
    pub q: u64,
    /// `eta=u/v; a=(a1,...,ar); t=(l1,...,lr)`, once per coordinate.
    #[arg(long = "entry", required = true)]
    pub entries: Vec<String>,
    /// Frequency vector, repeatable.
    #[arg(long = "c")]
    pub cs: Vec<String>,
    /// Also every c with 0 < |c|_inf <= cmax.
    #[arg(long)]
    pub cmax: Option<i64>,
    #[arg(long, default_value = "1..4")]
    pub levels: String,
    /// Levels used to fit the bound constant.
    #[arg(long, default_value = "1,2")]
    pub calibrate: String,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    /// Exponents may use q-1, e.g. `a=(2(q-1)+1)`.
    #[arg(long = "entry", required = true)]
    pub entries: Vec<String>,
    #[arg(long = "c")]
    pub c: String,
    #[arg(long, default_value = "5..97")]
    pub primes: String,
    /// Largest allowed |a_ij| after substituting q.
    #[arg(long)]
    pub cap: i64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct DecomposeArgs {
    /// `[eta=u/v; a=(a1,...,ar); exp=e] * ...`, or `1`.
    pub monomial: String,
    #[arg(long)]
    pub q: u64,
    /// Dimension, needed only for the empty monomial.
    #[arg(long)]
    pub r: Option<usize>,
    /// Compare with the Gauss-sum values numerically.
    #[arg(long)]
    pub crosscheck: bool,
    #[arg(long, default_value = "1,2")]
    pub levels: String,
    /// Sample this many character tuples instead of all of them.
    #[arg(long)]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct JacobiArgs {
    /// jacobi_all_free, jacobi_fixed_tail or jacobi_powers.
    #[arg(long)]
    pub preset: String,
    #[arg(long)]
    pub q: u64,
    /// Number of free characters (all_free).
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of free characters (fixed_tail).
    #[arg(long)]
    pub d: Option<usize>,
    /// Fixed characters of one tail, e.g. `1/2,1/4` (fixed_tail, repeatable).
    #[arg(long = "tail")]
    pub tails: Vec<String>,
    /// Exponents d_1,...,d_n (powers).
    #[arg(long)]
    pub ds: Option<String>,
    #[arg(long, default_value = "1..4")]
    pub levels: String,
    #[arg(long, default_value_t = 3)]
    pub cmax: i64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct GaussArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Character index; all characters when omitted.
    #[arg(long)]
    pub index: Option<u64>,
    /// Use alpha = g^k instead of 1.
    #[arg(long)]
    pub alpha_log: Option<u64>,
    #[arg(long, default_value_t = gaussrel::dft::DEFAULT_CHIRP_THRESHOLD)]
    pub threshold: usize,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct OutArgs {
    /// CSV destination (default stdout).
    #[arg(long)]
    pub out: Option<String>,
    /// Manifest destination (default `<out>.manifest.json`, or stderr).
    #[arg(long)]
    pub manifest: Option<String>,
}

pub enum Failure {
    Tolerance(String),
    Usage(String),
}

impl From<gaussrel::Error> for Failure {
    fn from(e: gaussrel::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub struct Globals {
    pub seed: u64,
    pub threads: usize,
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect(), &SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let g = Globals { seed: cli.seed, threads: rayon::current_num_threads() };
    let res = match &cli.cmd {
        Command::Verify(a) => commands::verify(a, &g),
        Command::Weyl(a) => commands::weyl(a, &g),
        Command::SweepQ(a) => commands::sweep_q(a, &g),
        Command::Decompose(a) => commands::decompose(a, &g),
        Command::Jacobi(a) => commands::jacobi(a, &g),
        Command::Gauss(a) => commands::gauss(a, &g),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Tolerance(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
