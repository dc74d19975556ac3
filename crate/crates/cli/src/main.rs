//! `reltype`: relation type of polynomial ideals from the command line.
//!
//! Exit codes: 0 success, 1 error, 2 usage, 3 incomplete (degree cap or
//! timeout), 4 corpus mismatch.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "reltype", version, about = "Relation type of ideals via Rees, symmetric and associated graded presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relation type with generator degrees and certificates.
    Rt(Job),
    /// Minimal generators of the Rees ideal.
    Rees(Job),
    /// Linear relations: the symmetric-algebra ideal.
    Sym(Job),
    /// Relation type of the associated graded ring.
    Gr(Job),
    /// Jacobian dual of the syzygy matrix and its determinant.
    Jdual(Job),
    /// Relation type of a principal ideal over k[x]/base via colon ideals.
    Cyclic(Job),
    /// Minimal-generator bidegrees by linear algebra alone.
    Oracle {
        #[command(flatten)]
        job: Job,
        #[arg(long, default_value_t = 8)]
        d_max: u32,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
    /// Runs a corpus manifest and compares against expected values.
    Corpus {
        manifest: PathBuf,
        /// Also compare bidegrees with the oracle, e.g. `8,6`.
        #[arg(long)]
        oracle: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Writes the built-in corpus manifest (to stdout without a path).
    CorpusExport { path: Option<PathBuf> },
    /// Relation types of random point sets in P^2.
    Points {
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_points: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// Ring such as `QQ[x,y]` or `GF(32003)[x1,x2]`; inferred from the ideal when omitted.
    #[arg(long)]
    pub ring: Option<String>,
    /// Comma-separated generators.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Base ideal: computations take place over ring/base.
    #[arg(long, default_value = "")]
    pub base: String,
    /// Built-in example family instead of --ideal.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub g: Option<usize>,
    /// Family parameters, comma-separated (six-points: a1,a2,a3; nodal: a).
    #[arg(long)]
    pub a: Option<String>,
    /// Second nodal parameter list.
    #[arg(long)]
    pub b: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Veronese,
    Unbounded,
    SixPoints,
    Nodal,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Coefficient field, `QQ` or `GF(p)`; overrides the ring's field.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_degree: u32,
    /// Seconds per Gröbner computation.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,
    #[arg(long)]
    pub json: bool,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, reltype::Error::Incomplete(_)) { commands::EXIT_INCOMPLETE } else { 1 })
        }
    }
}
