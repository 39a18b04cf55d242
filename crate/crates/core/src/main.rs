use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pgonal::galois::DEFAULT_MAX_P;
use pgonal::monodromy::DEFAULT_BETA_CAP;
use pgonal::pipeline::{error_exit_code, run, Command, Format, RunOptions, EXIT_INTERNAL, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "pgonal", version, about = "Exact checks for étale double covers of cyclic p-gonal curves")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Full pipeline for an odd prime p.
    Report {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        beta: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// The p = 2 (Klein group) case.
    Klein {
        #[arg(long)]
        beta_r: usize,
        #[arg(long)]
        beta_rs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Character table only.
    Characters {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Group-algebra identities only.
    Isogeny {
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Genus table only.
    Genera {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        beta: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Branch data file overriding the search (validated before use).
    #[arg(long)]
    monodromy: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_P)]
    max_p: usize,
    #[arg(long, default_value_t = DEFAULT_BETA_CAP)]
    beta_cap: usize,
    /// Pin the first local monodromy to σ.
    #[arg(long)]
    first_is_sigma: bool,
    /// Check every index i in the isogeny stage even for large p.
    #[arg(long)]
    exhaustive_isogeny: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Report { p, beta, common } => (Command::Report { p, beta }, common),
        Sub::Klein { beta_r, beta_rs, common } => (Command::Klein { beta_r, beta_rs }, common),
        Sub::Characters { p, common } => (Command::Characters { p }, common),
        Sub::Isogeny { p, common } => (Command::Isogeny { p }, common),
        Sub::Genera { p, beta, common } => (Command::Genera { p, beta }, common),
    };
    let monodromy = match &common.monodromy {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        None => None,
    };
    let options = RunOptions {
        max_p: common.max_p,
        beta_cap: common.beta_cap,
        first_is_sigma: common.first_is_sigma,
        monodromy,
        exhaustive_isogeny: common.exhaustive_isogeny,
    };
    let format = match common.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let report = match run(command, &options) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(error_exit_code(&e) as u8);
        }
    };
    let rendered = report.render(format);
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INTERNAL as u8);
            }
        }
        None => print!("{rendered}"),
    }
    if let Some(failure) = &report.first_failure {
        eprintln!("verification failed: {failure}");
    }
    ExitCode::from(report.exit_code() as u8)
}
