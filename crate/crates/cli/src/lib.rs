//! Command-line front end: verification reports, classification, seeded
//! constraint scans and CSV field/energy profiles.

pub mod args;
pub mod commands;
pub mod params;
pub mod scan;

pub use params::{CliError, CliResult};

use args::{Cli, Command};

/// Run a parsed command line, returning the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Classify(a) => commands::cmd_classify(a),
        Command::Scan(a) => commands::cmd_scan(a),
        Command::Fields(a) => commands::cmd_fields(a),
        Command::EnergyProfile(a) => commands::cmd_energy_profile(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
