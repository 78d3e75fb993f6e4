use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use postlie::ffsearch::Strategy;
use postlie_cli::report::Report;
use postlie_cli::{SearchArgs, SearchPair, Target};

#[derive(Parser)]
#[command(name = "postlie", version, about = "Exact checks for post-Lie algebra structures")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    G,
    N,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::G => Target::G,
            TargetArg::N => Target::N,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    Heis3,
    Dim2,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Raw,
    Hom,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Antisymmetry and Jacobi identity of the brackets g and n.
    CheckLie { file: Option<PathBuf> },
    /// Post-Lie axioms for the product on (g, n).
    CheckPa { file: Option<PathBuf> },
    /// Commutative post-Lie axioms for the product on g.
    CheckCpa { file: Option<PathBuf> },
    /// Post-Lie axioms on (abelian, n); the LR product is the negative.
    CheckLr { file: Option<PathBuf> },
    /// Series, center, annihilators and nilpotency data.
    Analyze { file: Option<PathBuf> },
    /// Symmetrize the product and test for a CPA-structure on g or n.
    Symmetrize {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        target: TargetArg,
    },
    /// Check the grading and evaluate the class bound of its support.
    Grading {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "g")]
        target: TargetArg,
    },
    /// Named algebras and pairs.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Exhaustive search over a prime field.
    Ffsearch {
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum)]
        pair: PairArg,
        /// Maximum number of candidates.
        #[arg(long)]
        limit: Option<u128>,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Maximum number of brackets n enumerated for catalog membership.
        #[arg(long)]
        membership_limit: Option<usize>,
        /// Print every structure found.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Build {
        name: String,
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
        /// Q, or a prime p.
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected key=value, got {s:?}"))
}

fn read_input(file: &Option<PathBuf>) -> Result<String> {
    match file.as_deref() {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
    }
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).context("reading standard input")?;
    Ok(s)
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    let report = match cli.command {
        Command::CheckLie { file } => postlie_cli::check_lie(&postlie_cli::load(&read_input(&file)?)?),
        Command::CheckPa { file } => postlie_cli::check_pa(&postlie_cli::load(&read_input(&file)?)?),
        Command::CheckCpa { file } => postlie_cli::check_cpa(&postlie_cli::load(&read_input(&file)?)?)?,
        Command::CheckLr { file } => postlie_cli::check_lr(&postlie_cli::load(&read_input(&file)?)?)?,
        Command::Analyze { file } => postlie_cli::analyze(&postlie_cli::load(&read_input(&file)?)?),
        Command::Symmetrize { file, target } => {
            postlie_cli::symmetrize(&postlie_cli::load(&read_input(&file)?)?, target.into())?
        }
        Command::Grading { file, target } => {
            postlie_cli::grading(&postlie_cli::load(&read_input(&file)?)?, target.into())?
        }
        Command::Catalog {
            command: CatalogCommand::List,
        } => postlie_cli::catalog_list(),
        Command::Catalog {
            command:
                CatalogCommand::Build {
                    name,
                    params,
                    field,
                    output,
                },
        } => {
            let field = postlie_cli::parse_field(&field)?;
            let doc = postlie_cli::catalog_build(&name, field, &params)?;
            match output {
                Some(path) => fs::write(&path, doc.to_json()).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", doc.to_json()),
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Ffsearch {
            p,
            pair,
            limit,
            jobs,
            strategy,
            membership_limit,
            list,
        } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build_global()
                    .context("configuring worker threads")?;
            }
            let args = SearchArgs {
                p,
                pair: match pair {
                    PairArg::Heis3 => SearchPair::Heis3,
                    PairArg::Dim2 => SearchPair::Dim2,
                },
                strategy: strategy.map(|s| match s {
                    StrategyArg::Raw => Strategy::RawTensor,
                    StrategyArg::Hom => Strategy::HomThroughDerivations,
                    StrategyArg::Linear => Strategy::LinearPruned,
                }),
                limit,
                membership_limit,
                list,
            };
            postlie_cli::ffsearch(&args)?
        }
    };
    Ok(emit(&report, json))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
