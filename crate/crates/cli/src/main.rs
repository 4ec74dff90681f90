//! `gf2trace`: batch verification and exploration of trace/cotrace buckets of
//! binary irreducibles.
//!
//! Exit status: 0 when everything ran and every check passed, 1 when a check
//! failed, 2 on usage errors (bad flags, unparsable polynomials, degrees
//! outside the budget).

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "gf2trace", version, about = "Trace/cotrace buckets of irreducible polynomials over GF(2)")]
struct Cli {
    /// Worker threads for exhaustive scans (default: all hardware threads).
    #[arg(long, global = true, env = "GF2TRACE_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct DegreeRange {
    #[arg(long, default_value_t = 2)]
    min: u32,
    #[arg(long, default_value_t = 12)]
    max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exhaustive scan of all candidate polynomials.
    Enumerate,
    /// Field trace tallies, Möbius inversion and `G_i(n)/n`.
    Field,
    /// Closed forms anchored by the field value of `|S_{1,1}(n)|`.
    Analytic,
    /// Every route, checked against each other.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Psi,
    PsiInv,
    Reciprocal,
    Q,
    QRoot,
    Gl2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyStyle {
    Hex,
    Symbolic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bucket sizes per degree by one or more counting routes.
    Counts {
        #[command(flatten)]
        range: DegreeRange,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Highest degree the field routes may tally.
        #[arg(long, default_value_t = gf2trace::field::DEFAULT_FIELD_BUDGET)]
        field_budget: u32,
        /// Allow enumeration up to degree 32.
        #[arg(long)]
        long_run: bool,
    },
    /// Bucket sizes by exhaustive enumeration.
    Table {
        #[command(flatten)]
        range: DegreeRange,
        #[arg(long)]
        long_run: bool,
    },
    /// Recompute rows by enumeration and compare with the reference table.
    Verify {
        n_min: u32,
        n_max: u32,
        /// Allow degrees 27 to 32 (n = 32 takes hours on one core).
        #[arg(long)]
        long_run: bool,
    },
    /// Irreducibility, bucket and signature of one polynomial.
    Classify {
        /// Hex (`0x3B`) or symbolic (`x^5+x^4+x^3+x+1`).
        poly: String,
    },
    /// Apply a substitution or the Q-transform.
    Transform {
        #[arg(long, value_enum)]
        op: TransformOp,
        /// Matrix entries `a,b,c,d` for `--op gl2`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, value_enum, default_value_t = PolyStyle::Hex)]
        style: PolyStyle,
        poly: String,
    },
    /// Certify the S_{1,1} <-> S_{0,0} bijection at odd degrees.
    Bijection {
        #[arg(long, default_value_t = 3)]
        min: u32,
        #[arg(long, default_value_t = 13)]
        max: u32,
        /// Mapped pairs to show per degree.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        /// Seed for choosing the sample pairs.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Self-reciprocal trace-one irreducibles of degree n and their pairing.
    Sri { n: u32 },
    /// Time an exhaustive scan against a regression threshold.
    Bench {
        #[arg(long, default_value_t = 20)]
        n: u32,
        #[arg(long, default_value_t = 10_000)]
        threshold_ms: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
