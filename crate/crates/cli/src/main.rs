use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use whm_cli::config::{self, Format, RunConfig};
use whm_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "whm", version, about = "Bounds, constructions and decoding for the weighted-Hamming metric")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Run configuration file.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output format; overrides [output] format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output file; overrides [output] path. Standard output otherwise.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Range {
    #[arg(long, default_value_t = 0)]
    t_min: u64,
    /// Defaults to the first t at which every bound is zero.
    #[arg(long)]
    t_max: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension bounds for each capability t.
    Bounds {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
        /// Add the exact LP optimum as a column.
        #[arg(long)]
        lp_optimum: bool,
        /// Also write a gnuplot script plotting the table (needs --out).
        #[arg(long, value_name = "PATH")]
        gnuplot: Option<PathBuf>,
    },
    /// Assemble the [gcc] code and report its parameters.
    Construct {
        #[command(flatten)]
        common: Common,
        /// Write the generator matrix here.
        #[arg(long, value_name = "PATH")]
        matrix: Option<PathBuf>,
        /// Certify distance and capability by enumeration and run the decoder check.
        #[arg(long)]
        verify: bool,
        /// Seed for sampled decoder checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact distance and capability of a generator-matrix file.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "PATH")]
        code: PathBuf,
    },
    /// Decode a received word with the [gcc] code.
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "PATH")]
        received: PathBuf,
    },
    /// Search the [search] menus and print the (t, k) and (d, k) frontiers.
    Search {
        #[command(flatten)]
        common: Common,
        /// Accepted for symmetry with the other commands; the search is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ball sizes per t, or the block-weight enumerator of --code.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
        #[arg(long, value_name = "PATH")]
        code: Option<PathBuf>,
    },
}

fn setup(common: &Common, default: Format) -> Result<(RunConfig, Format, Option<PathBuf>)> {
    let cfg = config::load(&common.config)?;
    let format = match common.format {
        Some(FormatArg::Csv) => Format::Csv,
        Some(FormatArg::Json) => Format::Json,
        None => cfg.output.format.unwrap_or(default),
    };
    let out = common.out.clone().or_else(|| cfg.output.path.clone());
    Ok((cfg, format, out))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bounds { common, range, lp_optimum, gnuplot } => {
            let (cfg, format, out) = setup(&common, Format::Csv)?;
            let text = whm_cli::cmd_bounds(&cfg, range.t_min, range.t_max, format, lp_optimum)?;
            if let Some(script) = gnuplot {
                let data = out
                    .as_deref()
                    .filter(|_| format == Format::Csv)
                    .ok_or_else(|| CliError::Config("--gnuplot needs CSV output written with --out".into()))?;
                write(&script, &whm_cli::gnuplot_script(data))?;
            }
            emit(out.as_deref(), &text)
        }
        Command::Construct { common, matrix, verify, seed } => {
            let (cfg, format, out) = setup(&common, Format::Csv)?;
            let (summary, gen) = whm_cli::cmd_construct(&cfg, format, verify, seed)?;
            if let Some(m) = matrix {
                write(&m, &gen)?;
            }
            emit(out.as_deref(), &summary)
        }
        Command::Analyze { common, code } => {
            let (cfg, format, out) = setup(&common, Format::Json)?;
            emit(out.as_deref(), &whm_cli::cmd_analyze(&cfg, &code, format)?)
        }
        Command::Decode { common, received } => {
            let (cfg, format, out) = setup(&common, Format::Json)?;
            if format != Format::Json {
                return Err(CliError::Config("decode reports are JSON only".into()));
            }
            emit(out.as_deref(), &whm_cli::cmd_decode(&cfg, &received)?)
        }
        Command::Search { common, seed: _ } => {
            let (cfg, format, out) = setup(&common, Format::Csv)?;
            emit(out.as_deref(), &whm_cli::cmd_search(&cfg, format)?)
        }
        Command::Enumerate { common, range, code } => {
            let (cfg, format, out) = setup(&common, Format::Csv)?;
            emit(out.as_deref(), &whm_cli::cmd_enumerate(&cfg, range.t_min, range.t_max, code.as_deref(), format)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("whm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
