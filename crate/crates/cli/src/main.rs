mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Large induced forests in triangle-free planar graphs.
#[derive(Parser, Debug)]
#[command(name = "inforest", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph, or the whole seeded corpus, in graph-file format.
    Gen(GenArgs),
    /// Find an induced forest of at least ceil(5n/9) vertices.
    Solve(SolveArgs),
    /// Compute the exact maximum induced forest of a small graph.
    Oracle(OracleArgs),
    /// Check that a vertex set induces a forest meeting ceil(5n/9).
    Check { graph: PathBuf, forest: PathBuf },
    /// Verify the linear program, its redundancy certificates and the rule table.
    VerifyLp {
        #[arg(long)]
        json: bool,
    },
    /// Re-run a trace against its input graph.
    Replay {
        graph: PathBuf,
        trace: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve every graph file in a directory.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Family spec, e.g. `cubes:3`, `grid:4x5`, `random:20:7:0.8`, `gadget:q3:4:6:1`.
    #[arg(long, conflicts_with = "corpus_dir", required_unless_present = "corpus_dir")]
    family: Option<String>,
    /// Replace the seed of a seeded family, or shift the corpus seeds.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the standard corpus into this directory, one file per member.
    #[arg(long)]
    corpus_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    graph: PathBuf,
    /// Forest output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Run the exact oracle when n is at most this.
    #[arg(long, default_value_t = 22)]
    oracle_limit: usize,
    /// Fail when a matching rule has no verified rewrite.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    graph: PathBuf,
    /// Search-node budget.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    /// Also run subset enumeration and compare (n <= 20).
    #[arg(long)]
    brute: bool,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    dir: PathBuf,
    #[arg(long, default_value_t = 22)]
    oracle_limit: usize,
    #[arg(long)]
    json: bool,
    /// Keep going after a file fails to parse or solve.
    #[arg(long)]
    continue_on_error: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("INFOREST_LOG", "warn")).init();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Gen(a) => commands::gen(a.family.as_deref(), a.seed, a.output.as_deref(), a.corpus_dir.as_deref()),
        Command::Solve(a) => commands::solve(&a.graph, a.output.as_deref(), a.trace.as_deref(), a.json, a.oracle_limit, a.strict),
        Command::Oracle(a) => commands::oracle(&a.graph, a.budget, a.brute),
        Command::Check { graph, forest } => commands::check(&graph, &forest),
        Command::VerifyLp { json } => commands::verify_lp(json),
        Command::Replay { graph, trace, output } => commands::replay(&graph, &trace, output.as_deref()),
        Command::Corpus(a) => commands::corpus(&a.dir, a.oracle_limit, a.json, a.continue_on_error),
    };
    match code {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::Exit::Failure as u8)
        }
    }
}
