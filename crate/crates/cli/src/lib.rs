//! Library side of the `rdshock` command: configuration, output formatting
//! and the subcommands.

pub mod commands;
pub mod config;
pub mod output;

/// Exit status for configuration and I/O problems.
pub const EXIT_CONFIG: u8 = 2;
/// Exit status for solver failures.
pub const EXIT_NUMERICAL: u8 = 3;

/// Maps an error to its exit status: solver failures anywhere in the chain
/// give [`EXIT_NUMERICAL`], everything else [`EXIT_CONFIG`].
pub fn exit_status(err: &anyhow::Error) -> u8 {
    let numerical = err
        .chain()
        .filter_map(|e| e.downcast_ref::<rdshock_core::Error>())
        .any(|e| e.is_numerical());
    if numerical {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}
