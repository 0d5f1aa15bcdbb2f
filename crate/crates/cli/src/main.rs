use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use cohomlim::commands::parse_chain;
use cohomlim::{parse_config, report_exit_code, run, CliError, Command, Format, Options, BUDGET_ENV};
use cohomlim_core::Budget;

#[derive(Parser)]
#[command(name = "cohomlim", version, about = "Finite group cohomology and inverse-limit checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format; defaults to the config's "format", then json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cross-check results against brute-force computations.
    #[arg(long, global = true)]
    oracle: bool,
    /// Enumeration budget; overrides COHOMLIM_BUDGET and the config.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Omit timing so that output is byte-identical across runs.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a config.
    Validate { config: PathBuf },
    /// Nonabelian H¹ as orbits of the coboundary action.
    H1 {
        config: PathBuf,
        #[arg(long)]
        action: String,
    },
    /// Abelian Hⁿ as Zⁿ/Bⁿ.
    Hn {
        config: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        n: usize,
    },
    /// Torsors twisted by each cocycle.
    Torsors {
        config: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        classify: bool,
    },
    /// Compare H(G, lim A) with lim H(G, A_r).
    Theta {
        config: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// lim¹ of the coefficient tower, or of H^{i-1} with --i.
    Lim1 {
        config: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        i: Option<usize>,
    },
    /// lim¹ H^{i-1} trivial and Θ_i bijective.
    Exactness {
        config: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        i: usize,
    },
    /// The tower A/A(k) → … → A/A(1) of the derived series.
    DerivedTower {
        config: PathBuf,
        #[arg(long)]
        action: String,
        #[arg(long)]
        verify: bool,
    },
    /// Check A ≅ lim A/N_r for a characteristic chain given by orders.
    Present {
        config: PathBuf,
        #[arg(long)]
        action: String,
        /// orders=N,N,...
        #[arg(long)]
        chain: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run every check over every configured object.
    VerifyAll { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let (path, command) = match &cli.command {
        Cmd::Validate { config } => (config, Command::Validate),
        Cmd::H1 { config, action } => (config, Command::H1 { action: action.clone() }),
        Cmd::Hn { config, action, n } => (config, Command::Hn { action: action.clone(), n: *n }),
        Cmd::Torsors { config, action, classify } => (
            config,
            Command::Torsors {
                action: action.clone(),
                classify: *classify,
            },
        ),
        Cmd::Theta { config, system, n } => (config, Command::Theta { system: system.clone(), n: *n }),
        Cmd::Lim1 { config, system, i } => (config, Command::Lim1 { system: system.clone(), i: *i }),
        Cmd::Exactness { config, system, i } => (config, Command::Exactness { system: system.clone(), i: *i }),
        Cmd::DerivedTower { config, action, verify } => (
            config,
            Command::DerivedTower {
                action: action.clone(),
                verify: *verify,
            },
        ),
        Cmd::Present { config, action, chain, n } => (
            config,
            Command::Present {
                action: action.clone(),
                chain: parse_chain(chain)?,
                n: *n,
            },
        ),
        Cmd::VerifyAll { config } => (config, Command::VerifyAll),
    };
    let start = Instant::now();
    let cfg = parse_config(path)?;
    let budget = match (cli.budget, std::env::var(BUDGET_ENV)) {
        (Some(b), _) => b,
        (None, Ok(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{BUDGET_ENV} must be an integer, got {s:?}")))?,
        (None, Err(_)) => cfg.raw.budget.unwrap_or(Budget::DEFAULT.0),
    };
    let format = match (cli.format, &cfg.raw.format) {
        (Some(f), _) => f,
        (None, Some(s)) => Format::parse(s).ok_or_else(|| CliError::Validation(format!("unknown format {s:?}")))?,
        (None, None) => Format::Json,
    };
    let opts = Options {
        budget: Budget(budget),
        oracle: cli.oracle,
        seed: cli.seed,
    };
    let mut report = run(&command, &cfg, &opts)?;
    if !cli.deterministic {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    print!("{}", report.render(format));
    Ok(report_exit_code(&report))
}
