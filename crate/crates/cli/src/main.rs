use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thetaring_cli::{certfile, suites, Report, RunConfig};

#[derive(Parser)]
#[command(
    name = "thetaring",
    version,
    about = "Exact checks of the θ^p-ring nilpotence bound"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// θ^p-ring identities on seeded random polynomials.
    Axioms(Common),
    /// Nilpotence, sharpness, stability and the propositions over a (p, e) grid.
    Verify(Common),
    /// Lemmas on the polynomials F_n.
    FnCheck(Common),
    /// Prints the nilpotence exponent for n-torsion.
    Bound {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Re-checks certificate files.
    CheckCert {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Args)]
struct Common {
    /// Prime (repeatable).
    #[arg(long = "p")]
    primes: Vec<u64>,
    /// Exponent e ≥ 1 (repeatable).
    #[arg(long = "e")]
    exponents: Vec<u32>,
    /// Nilpotence is also checked modulo p^(e+1+k).
    #[arg(long, default_value_t = 1)]
    extra_precision: u32,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cells with p^(2e) above this are skipped.
    #[arg(long, default_value_t = 4096)]
    span_limit: u64,
    /// Largest p^n for the F_n lemmas.
    #[arg(long, default_value_t = 1024)]
    degree_cap: u64,
    /// Machine-readable report file.
    #[arg(long)]
    out_report: Option<PathBuf>,
    /// Directory for certificate files.
    #[arg(long)]
    out_certs: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Record wall-clock times per cell (makes reports run-dependent).
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            extra_precision: self.extra_precision,
            trials: self.trials,
            seed: self.seed,
            span_limit: self.span_limit,
            degree_cap: self.degree_cap,
            timings: self.timings,
            ..RunConfig::default()
        }
        .with_grid(&self.primes, &self.exponents)
    }
}

const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Axioms(c) => run(&c, |cfg| (suites::run_axioms(cfg), Vec::new())),
        Command::Verify(c) => run(&c, suites::run_verify),
        Command::FnCheck(c) => run(&c, |cfg| (suites::run_fn_check(cfg), Vec::new())),
        Command::Bound { n } => match suites::bound(n) {
            Ok(e) => {
                println!("{e}");
                Ok(true)
            }
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(USAGE);
            }
        },
        Command::CheckCert { files } => check_certs(&files),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(code) => ExitCode::from(code),
    }
}

fn run(
    common: &Common,
    suite: impl FnOnce(&RunConfig) -> (Report, Vec<(String, thetaring::Certificate)>),
) -> Result<bool, u8> {
    let cfg = common.config();
    if let Err(err) = cfg.validate() {
        eprintln!("error: {err}");
        return Err(USAGE);
    }
    let (report, certificates) = suite(&cfg);
    if let Some(dir) = &common.out_certs {
        let written = fs::create_dir_all(dir).and_then(|()| {
            certificates
                .iter()
                .try_for_each(|(name, c)| certfile::write(&dir.join(name), c))
        });
        if let Err(err) = written {
            eprintln!("error: writing certificates to {}: {err}", dir.display());
            return Err(1);
        }
    }
    if let Some(path) = &common.out_report {
        if let Err(err) = fs::write(path, report.to_json()) {
            eprintln!("error: writing {}: {err}", path.display());
            return Err(1);
        }
    }
    match common.format {
        Format::Table => print!("{}", report.to_table()),
        Format::Machine => print!("{}", report.to_json()),
    }
    Ok(report.passed)
}

fn check_certs(files: &[PathBuf]) -> Result<bool, u8> {
    let mut all = true;
    for path in files {
        let verdict = match certfile::read(path) {
            Ok(c) if thetaring::verify_certificate(&c) => "valid".to_owned(),
            Ok(_) => {
                all = false;
                "INVALID".to_owned()
            }
            Err(err) => {
                all = false;
                format!("unreadable: {err}")
            }
        };
        println!("{}: {verdict}", path.display());
    }
    Ok(all)
}
