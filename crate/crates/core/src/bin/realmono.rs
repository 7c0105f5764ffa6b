use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use realmono::cli::{self, Caps, CftpOptions, SyncOptions};

#[derive(Parser)]
#[command(name = "realmono", about = "Monotone couplings, synchronizing functions and perfect sampling on finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct CapArgs {
    /// Maximum number of up-sets to enumerate.
    #[arg(long, global = true, default_value_t = Caps::default().up_sets)]
    cap_upsets: u64,
    /// Maximum number of monotone tuples in the coupling LP.
    #[arg(long, global = true, default_value_t = Caps::default().tuples)]
    cap_tuples: u64,
    /// Maximum number of spanning-tree search nodes.
    #[arg(long, global = true, default_value_t = Caps::default().trees)]
    cap_trees: u64,
    /// Longest coupling-from-the-past epoch.
    #[arg(long, global = true, default_value_t = Caps::default().epochs)]
    cap_epochs: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Cover graph and class of a poset.
    Classify {
        #[arg(long)]
        poset: PathBuf,
    },
    /// Stochastic and realizable monotonicity of a measure system.
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synchronizing functions for a realizably monotone system.
    Synchronize {
        #[arg(long)]
        system: PathBuf,
        /// Root leaf of the state poset's cover tree.
        #[arg(long)]
        root: Option<String>,
        /// Child order `parent:child,child,...`; repeatable.
        #[arg(long)]
        child_order: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perfect samples from a monotone kernel.
    Cftp {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let caps = Caps {
        up_sets: args.caps.cap_upsets,
        tuples: args.caps.cap_tuples,
        trees: args.caps.cap_trees,
        epochs: args.caps.cap_epochs,
    };
    let result = match args.command {
        Command::Classify { poset } => cli::classify_cmd(&poset, caps),
        Command::Check { system, out } => cli::check_cmd(&system, out.as_deref(), caps),
        Command::Synchronize {
            system,
            root,
            child_order,
            out,
        } => cli::synchronize_cmd(
            &system,
            &SyncOptions {
                root,
                child_orders: child_order,
                out,
                caps,
            },
        ),
        Command::Cftp {
            kernel,
            seed,
            samples,
            out,
        } => cli::cftp_cmd(&kernel, &CftpOptions { seed, samples, out, caps }),
    };
    match result {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
