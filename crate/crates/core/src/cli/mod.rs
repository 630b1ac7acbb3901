//! Command-line front end: definition files, cochain files and report emission.

pub mod cochain_file;
pub mod commands;
pub mod definition;
pub mod expr;

pub use commands::{error_code, run, Cli, Command, Status};
pub use definition::{parse_definition, print_definition, Builtin, Definition, Member, ModuleKeyword, Param};

/// Caps rayon's global pool from `CONFCOH_THREADS` when set.
pub fn configure_threads() -> Result<(), crate::Error> {
    let Ok(v) = std::env::var("CONFCOH_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| crate::Error::Invalid(format!("CONFCOH_THREADS must be a positive integer, found `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| crate::Error::Invalid(e.to_string()))
}
