use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use t3m_units_cli::{run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "t3m-units", version, about = "Unit groups of F_{3^n} T_{3m}")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the unit group structure.
    Structure(Opts),
    /// List the conjugacy classes.
    Classes(Opts),
    /// Print a basis of the radical and its nilpotency index.
    Radical(Opts),
    /// Run the full invariant suite.
    Verify(Opts),
    /// Monte-Carlo estimate of the fraction of units.
    Density(Opts),
    /// One structure per n = 1..max-n.
    Table(Opts),
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    t: u64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 20000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, o) = match cli.command {
        Cmd::Structure(o) => (Command::Structure, o),
        Cmd::Classes(o) => (Command::Classes, o),
        Cmd::Radical(o) => (Command::Radical, o),
        Cmd::Verify(o) => (Command::Verify, o),
        Cmd::Density(o) => (Command::Density, o),
        Cmd::Table(o) => (Command::Table, o),
    };
    let cfg = RunConfig {
        command,
        m: o.m,
        t: o.t,
        n: o.n,
        samples: o.samples,
        seed: o.seed,
        format: match o.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        max_n: o.max_n,
    };
    let out = run(&cfg);
    if !out.stdout.is_empty() {
        println!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
