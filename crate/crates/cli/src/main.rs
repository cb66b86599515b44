use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qzm::chiral_fock::DEFAULT_BUDGET;
use qzm::commands::{self, CacheAction};
use qzm::report::{Format, Report, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "qzm", version, about = "Exact zero-mode Fock module and Q-algebra checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Rank: SU(n).
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,

    /// Level; h = n + k.
    #[arg(long, global = true, default_value_t = 1)]
    k: u32,

    /// Work over rational functions in q instead of at the root of unity.
    #[arg(long, global = true)]
    generic_q: bool,

    /// Spanning-word ceiling per class family.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Random sample states for the identity suite.
    #[arg(long, global = true, default_value_t = 25)]
    samples: usize,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Hook row for check-w.
    #[arg(long, global = true, default_value_t = 2)]
    i: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CacheArg {
    List,
    Validate,
    Purge,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the admissible diagrams.
    Enumerate,
    /// q-integer identities at h.
    VerifyField,
    /// Relation span, determinant consistency and the bilinear identities.
    VerifyAlgebra,
    /// F' dimension, growth rules and off-diagonal annihilation.
    Fprime,
    /// Hook vectors v_h, w_h for row --i.
    CheckW,
    /// Inspect the quotient cache.
    Cache {
        #[arg(value_enum)]
        action: CacheArg,
    },
}

fn run(cli: &Cli) -> qzm::Result<Report> {
    let cfg = RunConfig {
        command: String::new(),
        n: cli.n,
        k: cli.k,
        generic_q: cli.generic_q,
        budget: cli.budget,
        samples: cli.samples,
        seed: cli.seed,
        cache_dir: cli.cache_dir.clone(),
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        out: cli.out.clone(),
        i: cli.i,
        ..RunConfig::default()
    };
    match &cli.command {
        Command::Enumerate => commands::cmd_enumerate(&cfg),
        Command::VerifyField => commands::cmd_verify_field(&cfg),
        Command::VerifyAlgebra => commands::cmd_verify_algebra(&cfg),
        Command::Fprime => commands::cmd_fprime(&cfg),
        Command::CheckW => commands::cmd_check_w(&cfg),
        Command::Cache { action } => {
            let a = match action {
                CacheArg::List => CacheAction::List,
                CacheArg::Validate => CacheAction::Validate,
                CacheArg::Purge => CacheAction::Purge,
            };
            commands::cmd_cache(&cfg, a)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("qzm: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let text = match report.render(format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qzm: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("qzm: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
