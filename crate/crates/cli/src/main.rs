use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Exact computations with the universal formal group law, Steenrod-type
/// operations and symmetric operations on algebraic cobordism.
///
/// Defaults: p = 2, least positive representatives 1..p-1, variable degree 8
/// and b-weight 8 (6 and 6 for `verify`), t-floor -64.
#[derive(Debug, Parser)]
#[command(name = "cobcalc", version)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// The prime p [default: 2; `verify` covers 2, 3 and 5]
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Coset representatives ī, comma separated, negatives allowed
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub reps: Option<Vec<i64>>,
    /// Variable-degree truncation [default: 8]
    #[arg(long, global = true, env = "COBCALC_DEG")]
    pub deg: Option<i32>,
    /// b-weight truncation [default: 8]
    #[arg(long, global = true)]
    pub bweight: Option<i32>,
    /// Lowest admissible power of t
    #[arg(long, global = true, default_value_t = -64, allow_hyphen_values = true)]
    pub tfloor: i32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write output to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The universal formal group law and derived series
    Fgl {
        #[arg(long, value_parser = ["F", "[n]", "a_ij", "omega", "inverse"])]
        what: String,
        /// n for [n]
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        i: i32,
        #[arg(long, default_value_t = 1)]
        j: i32,
    },
    /// Classes of projective spaces and hypersurfaces
    Class {
        #[command(subcommand)]
        kind: ClassKind,
    },
    /// Apply an operation to an element (builtin grammar or a JSON file)
    Op {
        #[arg(value_enum)]
        which: OpWhich,
        /// e.g. P1, z^2, P1*z, H(3,3), or a path to series JSON
        #[arg(long)]
        input: String,
        /// Slice weight q(t), e.g. t^2 or P1*t (slice only)
        #[arg(long, default_value = "1")]
        q: String,
    },
    /// η_{p,ī}(U) for U = Pn or H(n,d)
    Eta {
        #[arg(long = "U", value_name = "U")]
        u: String,
    },
    /// Run a property suite, or `all`
    Verify {
        suite: String,
        /// Largest N for minors
        #[arg(long = "maxN")]
        max_n: Option<usize>,
        /// r for il3
        #[arg(long)]
        r: Option<u32>,
        /// Randomized samples per prime for thmG
        #[arg(long)]
        samples: Option<usize>,
        /// One block structure for minors, e.g. 2,1
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
        /// Width of A(n; width) for --blocks
        #[arg(long)]
        width: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum ClassKind {
    /// [P^n]
    #[command(name = "Pn")]
    Pn {
        #[arg(long)]
        n: i32,
    },
    /// A degree-d hypersurface in P^n
    Hypersurface {
        #[arg(long)]
        n: i32,
        #[arg(long)]
        d: i32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpWhich {
    St,
    Sq,
    Phi,
    Ln,
    Slice,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = &cli.run;
    let result = match &cli.cmd {
        Command::Fgl { what, n, i, j } => commands::fgl(run, what, *n, *i, *j),
        Command::Class { kind: ClassKind::Pn { n } } => commands::class(run, *n, None),
        Command::Class { kind: ClassKind::Hypersurface { n, d } } => commands::class(run, *n, Some(*d)),
        Command::Op { which, input, q } => commands::op(run, *which, input, q),
        Command::Eta { u } => commands::eta(run, u),
        Command::Verify { suite, max_n, r, samples, blocks, width } => {
            let opts = commands::VerifyOpts {
                max_n: *max_n,
                r: *r,
                samples: *samples,
                blocks: blocks.clone(),
                width: *width,
            };
            commands::verify(run, suite, opts)
        }
    };
    match result {
        Ok(out) => {
            if let Err(e) = emit(run, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if let Some(w) = &out.failure {
                eprintln!("verification failed: {w}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(run: &RunArgs, text: &str) -> std::io::Result<()> {
    match &run.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
