// SPDX-License-Identifier: Apache-2.0

//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wdg_core::diagrams::{PartitionInput, Variant};
use wdg_core::gram::CoefficientRing;
use wdg_core::root_system::LieType;
use wdg_core::verifier::{VerifyConfig, DEFAULT_EXHAUSTIVE_CAP, MAX_EXHAUSTIVE_CAP};

/// Weighted Dynkin diagrams and Gram matrices of graded alternating forms.
#[derive(Debug, Parser)]
#[command(name = "wdg", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
}

/// Output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON document per line.
    Json,
    /// Comma-separated values with a header row.
    Csv,
    /// Aligned human-readable text.
    Pretty,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every partition input of a type and rank with its diagram data.
    Enumerate {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Keep only odd diagrams.
        #[arg(long)]
        odd: bool,
        /// Keep only special inputs.
        #[arg(long)]
        special: bool,
    },
    /// Evaluate the Gram determinant of a lambda read from a file.
    Gram {
        #[command(flatten)]
        input: InputArgs,
        /// JSON file holding the lambda assignment or a `construct` record.
        #[arg(long)]
        lambda: PathBuf,
        /// Coefficient ring: z, gf2 or gf2k:K; defaults to the ring of the file.
        #[arg(long, value_parser = parse_ring)]
        ring: Option<CoefficientRing>,
    },
    /// Build a unimodular lambda for a special input.
    Construct {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Verify both directions of the theorem for every input of a type and rank.
    Verify {
        #[command(flatten)]
        diagram: DiagramArgs,
        #[command(flatten)]
        verify: VerifyArgs,
    },
    /// Reduce the divisors of an input towards an odd diagram.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run a short battery of known results.
    Selftest,
}

/// Type and rank.
#[derive(Debug, Clone, Args)]
pub struct DiagramArgs {
    /// Lie type: A, B, C or D.
    #[arg(long = "type", value_parser = parse_type)]
    pub lie_type: LieType,
    /// Rank of the root system.
    #[arg(long)]
    pub rank: usize,
}

/// A single partition input.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub diagram: DiagramArgs,
    /// Parts of mu, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub mu: Vec<u32>,
    /// Parts of nu, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub nu: Vec<u32>,
    /// Variant of very even type D data: plus or minus.
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<Variant>,
}

impl InputArgs {
    /// The validated partition input.
    pub fn to_input(&self) -> wdg_core::Result<PartitionInput> {
        PartitionInput::new(
            self.diagram.lie_type,
            self.diagram.rank,
            self.mu.clone(),
            self.nu.clone(),
            self.variant,
        )
    }
}

/// Verification settings.
#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest |Phi_(d,2)| searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP, value_parser = parse_cap)]
    pub exhaustive_cap: usize,
    /// Schwartz-Zippel trials for larger diagrams.
    #[arg(long, default_value_t = 32)]
    pub sz_trials: u32,
    /// Exponent k of the sampling field GF(2^k).
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u32).range(2..=64))]
    pub sz_field: u32,
    /// Seed of the random generator.
    #[arg(long, env = "WDG_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timings, which makes output nondeterministic.
    #[arg(long)]
    pub timings: bool,
}

impl VerifyArgs {
    /// The library configuration.
    pub fn config(&self) -> VerifyConfig {
        VerifyConfig {
            exhaustive_cap: self.exhaustive_cap,
            sz_field_exponent: self.sz_field,
            sz_trials: self.sz_trials,
            seed: self.seed,
        }
    }
}

fn parse_cap(s: &str) -> Result<usize, String> {
    let cap: usize = s.parse().map_err(|e| format!("{e}"))?;
    if cap > MAX_EXHAUSTIVE_CAP {
        return Err(format!("the cap may be at most {MAX_EXHAUSTIVE_CAP}"));
    }
    Ok(cap)
}

fn parse_type(s: &str) -> Result<LieType, String> {
    s.parse().map_err(|e: wdg_core::Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: wdg_core::Error| e.to_string())
}

fn parse_ring(s: &str) -> Result<CoefficientRing, String> {
    s.parse().map_err(|e: wdg_core::Error| e.to_string())
}
