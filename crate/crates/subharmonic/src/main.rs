use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use subharmonic::commands::{self, Common, SimulateArgs, SpectrumArgs};

#[derive(Parser)]
#[command(name = "subharmonic", version, about = "Sub-harmonic jamming simulator and planner")]
struct Cli {
    /// Scenario JSON file (defaults to the shipped calibrated scenario).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Overrides the scenario's noise seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate sub-harmonic carriers for a target and predict verdicts.
    Plan {
        #[arg(long)]
        target_hz: Option<u64>,
    },
    /// Run the link simulation with the jammer on one harmonic order.
    Simulate {
        #[arg(long)]
        target_hz: Option<u64>,
        #[arg(long, default_value_t = 2)]
        order: u32,
        /// Tick at which the jammer switches on; omit with --no-jam.
        #[arg(long, default_value_t = 0)]
        jam_start: u32,
        #[arg(long)]
        no_jam: bool,
        #[arg(long)]
        duration: Option<u32>,
        /// Pull the battery and power back on at this tick.
        #[arg(long)]
        battery_pull: Option<u32>,
    },
    /// Reproduce the harmonic table for orders 2 to 5 and cross-check it.
    Table1 {
        #[arg(long)]
        target_hz: Option<u64>,
    },
    /// FM-modulate a WAV file and report its spectrum and peak.
    Spectrum {
        wav: PathBuf,
        #[arg(long, default_value_t = 75_000)]
        deviation_hz: u64,
        #[arg(long = "fft", default_value_t = 4096)]
        n_fft: usize,
        #[arg(long)]
        target_hz: Option<u64>,
    },
    /// Write the scenario's white-noise sample as a PCM16 WAV.
    Noise,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = Common {
        scenario: cli.scenario,
        seed: cli.seed,
        out: cli.out,
    };
    let result = match cli.command {
        Command::Plan { target_hz } => commands::cmd_plan(&common, target_hz),
        Command::Simulate {
            target_hz,
            order,
            jam_start,
            no_jam,
            duration,
            battery_pull,
        } => commands::cmd_simulate(
            &common,
            SimulateArgs {
                target_hz,
                order,
                jam_start: (!no_jam).then_some(jam_start),
                duration,
                battery_pull,
            },
        ),
        Command::Table1 { target_hz } => commands::cmd_table1(&common, target_hz),
        Command::Spectrum {
            wav,
            deviation_hz,
            n_fft,
            target_hz,
        } => commands::cmd_spectrum(
            &common,
            &SpectrumArgs {
                wav,
                deviation_hz,
                n_fft,
                target_hz,
            },
        ),
        Command::Noise => commands::cmd_noise(&common),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
