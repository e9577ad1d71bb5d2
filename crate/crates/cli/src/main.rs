// SPDX-License-Identifier: Apache-2.0

//! The `wdg` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for
//! usage and input errors.

mod args;
mod commands;
mod error;
mod output;

use std::io::BufWriter;
use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::error::{EXIT_FAILURE, EXIT_OK};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j as usize)
            .build_global()
        {
            eprintln!("wdg: cannot start worker threads: {e}");
            return ExitCode::from(EXIT_FAILURE);
        }
    }
    let stdout = std::io::stdout();
    match commands::run(&cli, BufWriter::new(stdout.lock())) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("wdg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
