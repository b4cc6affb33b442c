use clap::{Parser, ValueEnum};
use hirzebruch::cli::{self, Format, Invocation, Subcommand, EXIT_INPUT};
use std::io::{Read, Write};
use std::process::ExitCode;

/// K-theoretic computations on Hirzebruch surfaces. Requests are JSON on stdin.
#[derive(Debug, Parser)]
#[command(name = "hirzebruch", version)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Surface index n of F_n.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(0..=cli::schema::MAX_N as i64))]
    n: u32,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Maximum braid word length explored by orbit-search.
    #[arg(long, global = true, default_value_t = cli::DEFAULT_DEPTH, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(0..=cli::schema::MAX_DEPTH as u64))]
    depth: usize,

    /// Tower entries are reported for i in [-tower_max, tower_max].
    #[arg(long, global = true, default_value_t = hirzebruch::tower::DEFAULT_TOWER_MAX, value_parser = clap::value_parser!(i64).range(0..=cli::schema::MAX_TOWER))]
    tower_max: i64,

    /// Seed for the randomized checks of verify.
    #[arg(long, global = true, default_value_t = cli::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, clap::Subcommand)]
enum Command {
    /// χ(v, w) for {"v": class, "w": class}.
    Euler,
    /// h^i(O(D)) for a divisor {"f": x, "c": y}.
    Cohom,
    /// Twist along O_C(a) on F_2: {"a": a, "class": class, "direction": "twist"|"inverse"}.
    Twist,
    /// The tower E_i attached to an exceptional class on F_2.
    Tower,
    /// Sheaves and complexes sharing a class on F_2.
    Classify,
    /// Restriction profile (b0, s, R) of a class on F_2.
    Profile,
    /// Ext dimensions between T, E, F for {"t": t, "f": f}.
    ExtTable,
    /// Apply a braid word and signs to a collection.
    Mutate,
    /// Find a group element carrying one collection to another.
    OrbitSearch,
    /// Exceptional classes in a box.
    Enumerate,
    /// Replay every identity check.
    Verify,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::Euler => Subcommand::Euler,
            Command::Cohom => Subcommand::Cohom,
            Command::Twist => Subcommand::Twist,
            Command::Tower => Subcommand::Tower,
            Command::Classify => Subcommand::Classify,
            Command::Profile => Subcommand::Profile,
            Command::ExtTable => Subcommand::ExtTable,
            Command::Mutate => Subcommand::Mutate,
            Command::OrbitSearch => Subcommand::OrbitSearch,
            Command::Enumerate => Subcommand::Enumerate,
            Command::Verify => Subcommand::Verify,
        }
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(u8::try_from(code).unwrap_or(u8::MAX))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return exit(code);
        }
    };
    let inv = Invocation {
        subcommand: args.command.into(),
        n: args.n,
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        depth: args.depth,
        tower_max: args.tower_max,
        seed: args.seed,
    };
    let mut input = String::new();
    if inv.subcommand.reads_stdin() {
        if let Err(e) = std::io::stdin().read_to_string(&mut input) {
            eprintln!("failed to read stdin: {e}");
            return exit(EXIT_INPUT);
        }
    }
    let outcome = cli::run(&inv, &input);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stdout.flush();
    exit(outcome.exit_code)
}
