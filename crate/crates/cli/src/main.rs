use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rdshock::config::{Format, RunConfig};
use rdshock::output::Sink;
use rdshock::{commands, exit_status};

/// Exact shock-fitted solutions of a reaction-diffusion equation with
/// negative diffusivity.
#[derive(Parser)]
#[command(name = "rdshock", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// TOML file with [model], [params] and [command] tables.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; RDSHOCK_OUT takes precedence.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also report every continuity pair found (shock-compare).
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Multi-valued and shocked profiles plus the shock report.
    Solve(Common),
    /// Front position, flux, speed and Stefan residual over time.
    Boundary(Common),
    /// Continuity and equal-area shocks side by side.
    ShockCompare(Common),
    /// Constant states, dispersion curves, Sturm trace and (a, b) scan.
    Stability(Common),
    /// Direction field, analytic trajectory and nullclines.
    PhasePlane(Common),
}

fn run(cli: Cli) -> anyhow::Result<Vec<PathBuf>> {
    let common = match &cli.command {
        Command::Solve(c)
        | Command::Boundary(c)
        | Command::ShockCompare(c)
        | Command::Stability(c)
        | Command::PhasePlane(c) => c,
    };
    let cfg = RunConfig::load(&common.config)?;
    let out = std::env::var_os("RDSHOCK_OUT")
        .map(PathBuf::from)
        .or_else(|| common.out.clone())
        .or_else(|| cfg.command.out.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("rdshock-out"));
    let format = common.format.or(cfg.command.format).unwrap_or(Format::Csv);
    let mut sink = Sink::new(&out)?;
    match cli.command {
        Command::Solve(_) => commands::solve(&cfg, &mut sink, format)?,
        Command::Boundary(_) => commands::boundary(&cfg, &mut sink, format)?,
        Command::ShockCompare(_) => commands::shock_compare(&cfg, &mut sink, common.verbose)?,
        Command::Stability(_) => commands::stability(&cfg, &mut sink, format)?,
        Command::PhasePlane(_) => commands::phase_plane(&cfg, &mut sink, format)?,
    }
    Ok(sink.written().to_vec())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(rdshock::EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
