//! `spf`: command-line access to Schur algebras, strict polynomial functors
//! and the Koszul, Ringel and Serre dualities.

mod commands;
mod spec;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spf_core::schur::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "spf", version, about = "Exact computations with strict polynomial functors")]
pub struct Cli {
    /// Coefficient ring: F2, F3, F5, ..., Q or Z.
    #[arg(long, global = true, default_value = "F2")]
    pub ring: String,
    /// Dimension of the evaluation space (defaults to d).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Degree.
    #[arg(long, global = true, default_value_t = 2)]
    pub d: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub out: Format,
    /// Seed for the randomized isomorphism search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Highest Ext degree to compute (defaults to 2d + 2).
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    /// Permit n > 3 or d > 3.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchurWhat {
    Dim,
    Basis,
    MultTable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Lambda,
    Symmetric,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The Schur algebra S(n, d): dimension, basis labels or structure constants.
    Schur {
        #[arg(value_enum)]
        what: SchurWhat,
    },
    /// Build a module from a spec such as `gamma:2,0`, `weyl:1,1` or `tensorpower`.
    Module { spec: String },
    /// Tensor products of the standard indecomposables (golden table for F2, d = 2).
    TensorTable,
    /// The bar resolution of Λ^d, or the resolution of S^d by exterior powers.
    Resolve {
        #[arg(value_enum)]
        target: Target,
        /// Fail unless the resolution is exact.
        #[arg(long)]
        check_exact: bool,
    },
    /// Koszul duality Λ^d ⊗^L − on a module spec or a module/complex JSON file.
    Koszul {
        input: String,
        /// Apply RHom(Λ^d, −) instead.
        #[arg(long, conflicts_with = "square")]
        inverse: bool,
        /// Apply the functor twice and compare with S^d ⊗^L −.
        #[arg(long)]
        square: bool,
    },
    /// Ext^i(from, to) for i up to --max-degree.
    Ext { from: String, to: String },
    /// Run a verification suite: all, categorical, koszul, ringel, serre or table.
    Verify { suite: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let text = match cli.out {
                Format::Json => serde_json::to_string_pretty(&out.json).unwrap() + "\n",
                Format::Md => out.markdown,
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().write_all(text.as_bytes());
            if let Some(msg) = &out.notice {
                eprintln!("{msg}");
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
