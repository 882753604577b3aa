use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use intertwine_cli::{
    cmd_spectrum, cmd_verify, summary, write_output, CliError, Format, MethodSelection, SpectrumConfig, VerifyConfig,
    CHECKS, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(
    name = "intertwine",
    version,
    about = "Eigenvalues of intertwining operators on S^p x S^q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate base-normalized eigenvalues by every route.
    Spectrum(SpectrumArgs),
    /// Run verification checks and emit a JSON report bundle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    All,
    Recursion,
    ClosedForm,
    Factorized,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    #[arg(long, default_value_t = 8)]
    jmax: u32,
    #[arg(long, default_value_t = 8)]
    kmax: u32,
    /// 0 or 1; both classes when omitted.
    #[arg(long)]
    parity: Option<u8>,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    #[arg(long, default_value_t = 8)]
    jmax: u32,
    #[arg(long, default_value_t = 8)]
    kmax: u32,
    /// Run every check (the default when no --check is given).
    #[arg(long, conflicts_with = "check")]
    all: bool,
    /// Run only this check; repeatable.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECKS))]
    check: Vec<String>,
    /// Override a check tolerance, e.g. `intertwining=1e-8`; repeatable.
    #[arg(long, value_name = "NAME=VALUE")]
    tolerance: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_output(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spectrum(args: SpectrumArgs) -> Result<bool, CliError> {
    let mut cfg = SpectrumConfig::new(args.p, args.q, args.r, args.jmax, args.kmax)?;
    cfg.parity = args.parity;
    cfg.method = match args.method {
        MethodArg::All => MethodSelection::All,
        MethodArg::Recursion => MethodSelection::Recursion,
        MethodArg::ClosedForm => MethodSelection::ClosedForm,
        MethodArg::Factorized => MethodSelection::Factorized,
    };
    cfg.format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    emit(args.out.as_ref(), &cmd_spectrum(&cfg)?)?;
    Ok(true)
}

fn verify(args: VerifyArgs) -> Result<bool, CliError> {
    let mut cfg = VerifyConfig {
        jmax: args.jmax,
        kmax: args.kmax,
        seed: args.seed,
        ..VerifyConfig::default()
    };
    cfg.restrict(args.p, args.q, args.r)?;
    if !args.check.is_empty() {
        cfg.select_checks(&args.check)?;
    }
    for t in &args.tolerance {
        cfg.set_tolerance(t)?;
    }
    let bundle = cmd_verify(&cfg)?;
    eprint!("{}", summary(&bundle));
    let mut json = serde_json::to_string_pretty(&bundle).map_err(CliError::from)?;
    json.push('\n');
    emit(args.out.as_ref(), &json)?;
    Ok(bundle.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Spectrum(args) => spectrum(args),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
