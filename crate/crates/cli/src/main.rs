use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use matmeasure_cli::{
    cmd_acdecomp, cmd_analyze, cmd_restrict, cmd_spectrum, cmd_verify, cmd_verify_xmue, CliError, CliResult, Config,
};

#[derive(Parser)]
#[command(name = "matmeasure", version, about = "Matrix measures, multiplication operators and spectral representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Residual tolerance (relative to 1 + ‖A‖ where applicable)
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Eigenvalue clustering tolerance
    #[arg(long, default_value_t = 1e-8)]
    cluster_tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    fuzz_cases: usize,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Config {
        Config { tol: self.tol, cluster_tol: self.cluster_tol, seed: self.seed, fuzz_cases: self.fuzz_cases }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Spectral measure, cyclicity, xMUE residuals and spectra of an operator
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Residuals of A = U T_x U⁻¹ for a cyclic operator input
    VerifyXmue {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Spectrum, point spectrum and norm of T_F on a measure
    Spectrum {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, default_value = "x")]
        symbol: String,
        #[command(flatten)]
        common: Common,
    },
    /// Restriction of a measure to a Borel set
    Restrict {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        common: Common,
    },
    /// Absolute-continuity report for a Borel set G
    Acdecomp {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        set: String,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded property suites
    Verify {
        /// linalg, measure, l2, multop, cyclic, accont or all
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { input, common } => {
            let report = cmd_analyze(&read(&input)?, &common.config())?;
            emit(&report, common.output.as_deref())?;
            match &report.xmue {
                Some(x) if !x.passed => Err(CliError::Property(format!("xMUE residual {:e} exceeds {:e}", x.max_residual, x.threshold))),
                _ => Ok(()),
            }
        }
        Command::VerifyXmue { input, common } => {
            let report = cmd_verify_xmue(&read(&input)?, &common.config())?;
            emit(&report, common.output.as_deref())?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Property(format!("xMUE residual {:e} exceeds {:e}", report.max_residual, report.threshold)))
            }
        }
        Command::Spectrum { measure, symbol, common } => emit(&cmd_spectrum(&read(&measure)?, &symbol)?, common.output.as_deref()),
        Command::Restrict { measure, set, common } => emit(&cmd_restrict(&read(&measure)?, &set)?, common.output.as_deref()),
        Command::Acdecomp { measure, set, common } => emit(&cmd_acdecomp(&read(&measure)?, &set)?, common.output.as_deref()),
        Command::Verify { suite, common } => {
            let report = cmd_verify(&suite, &common.config())?;
            emit(&report, common.output.as_deref())?;
            for p in &report.properties {
                let status = if p.failures == 0 { "ok" } else { "FAIL" };
                eprintln!("{status:4} {}::{} ({} cases, {} failures)", p.suite, p.name, p.cases, p.failures);
            }
            if report.passed {
                Ok(())
            } else {
                let failed = report.properties.iter().filter(|p| p.failures > 0).count();
                Err(CliError::Property(format!("{failed} properties failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
