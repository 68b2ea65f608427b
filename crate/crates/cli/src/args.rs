use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sl2char::classify::{DEFAULT_PAIR_FACTORS, DEFAULT_UNITARY_TOL};
use sl2char::mcgdyn::DEFAULT_ORBIT_CAP;
use sl2char::random::DEFAULT_SEED;
use sl2char::sl2core::{DEFAULT_CLOSURE_CAP, DEFAULT_TORSION_BOUND};
use sl2char::verify::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "sl2char",
    version,
    about = "Exact computations on SL2(C)-character varieties of punctured surfaces",
    after_help = "Exit codes: 0 success (orbit finite, classification decided, all checks \
                  passed); 1 verification failure; 2 classification undecided; 3 orbit cap \
                  exceeded; 64 usage or parse error; 65 invalid input data; 66 input file \
                  unreadable; 74 output write failure."
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand. Flags win over environment
/// variables, which win over the defaults.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Orbit size cap for breadth-first search.
    #[arg(long, global = true, env = "MCG_ORBIT_CAP", default_value_t = DEFAULT_ORBIT_CAP,
          value_parser = positive)]
    pub cap: usize,
    /// Largest order tried when testing whether a matrix is torsion.
    #[arg(long = "kmax", global = true, env = "MCG_KMAX", default_value_t = DEFAULT_TORSION_BOUND,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub k_max: u32,
    /// Group closure cap used by classify.
    #[arg(long, global = true, env = "MCG_CLOSURE_CAP", default_value_t = DEFAULT_CLOSURE_CAP,
          value_parser = positive)]
    pub closure_cap: usize,
    /// Bits of precision for the numeric embedding.
    #[arg(long, global = true, env = "MCG_PRECISION", default_value_t = 53)]
    pub precision: u32,
    /// Tolerance for numeric decisions.
    #[arg(long, global = true, env = "MCG_TOL", default_value_t = DEFAULT_UNITARY_TOL)]
    pub tol: f64,
    #[arg(long, global = true, env = "MCG_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit of a Fricke triple under a set of polynomial automorphisms.
    Orbit(OrbitArgs),
    /// Classify a representation read from a JSON file.
    Classify(ClassifyArgs),
    /// Run a fixed-seed verification suite.
    Verify(VerifyArgs),
    /// Monodromy survey along the cyclic-order loop family.
    Survey(SurveyArgs),
    /// List the built-in sample representations, or print one as JSON.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Seed triple, e.g. "0,-1,-phi".
    #[arg(long, required_unless_present = "request")]
    pub seed: Option<String>,
    /// A generating set (twists, beta, pi-prime) or a comma-separated list
    /// of maps (tw_a, tw_b, tw_ab, sigma12, ..., beta1, beta2).
    #[arg(long, default_value = "beta")]
    pub gens: String,
    /// JSON request {"seed": ..., "generators": [...], "cap": N}; its fields
    /// override the corresponding flags.
    #[arg(long, conflicts_with = "seed")]
    pub request: Option<PathBuf>,
    /// Also write the orbit as newline-delimited triples.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Representation JSON file.
    pub rep_file: PathBuf,
    /// Surface signature "g,n"; defaults to the one in the file.
    #[arg(long)]
    pub sig: Option<String>,
    /// Word bound when searching for a pair of loops with irreducible restriction.
    #[arg(long, default_value_t = DEFAULT_PAIR_FACTORS, value_parser = positive)]
    pub pair_factors: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    pub suite: Suite,
    /// Seed for the randomized checks.
    #[arg(long, env = "MCG_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("must be positive".to_string()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    /// Representation JSON file.
    pub rep_file: PathBuf,
    /// Surface signature "g,n"; defaults to the one in the file.
    #[arg(long)]
    pub sig: Option<String>,
    /// Largest number of distinct generators in a loop word.
    #[arg(long, default_value_t = 3, value_parser = positive)]
    pub max_factors: usize,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Name of the representation to print.
    pub name: Option<String>,
}
