use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perdom_cli::commands::{self, parse_subset, DatumSource};
use perdom_cli::datum::parse_class;
use perdom_cli::{selftest, CliError, CliResult, Report};
use perdom_core::cohomology::Coefficients;

#[derive(Parser)]
#[command(name = "perdom", version, about = "Cohomology of p-adic period domains")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeff {
    Modp,
    Zp,
}

#[derive(Args)]
struct Input {
    /// Preset, e.g. `drinfeld:3` or `gln_basic:4,1,1,0,0:1/2`.
    #[arg(long, conflicts_with = "datum", required_unless_present = "datum")]
    preset: Option<String>,
    /// Datum file (JSON).
    #[arg(long)]
    datum: Option<PathBuf>,
}

impl Input {
    fn source(&self) -> DatumSource {
        match (&self.preset, &self.datum) {
            (Some(p), _) => DatumSource::Preset(p.clone()),
            (None, Some(f)) => DatumSource::File(f.clone()),
            (None, None) => unreachable!("clap enforces one of --preset, --datum"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compactly supported cohomology of the period domain.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Coeff::Modp)]
        coefficients: Coeff,
        /// Prime; also runs the splitting-hypothesis check.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Cohomology of the boundary, with its E1 and E2 pages.
    Boundary {
        #[command(flatten)]
        input: Input,
    },
    /// Omega_I and the cohomology of the Schubert union for each I.
    Schubert {
        #[command(flatten)]
        input: Input,
        /// Restrict to one subset, e.g. `a1,a3`.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Strata with |Delta \ I| = i.
    Strata {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        i: usize,
    },
    /// Acceptable set of GL_n for a cocharacter mu.
    Kottwitz {
        #[arg(long)]
        gln: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        mu: Vec<i64>,
    },
    /// Ext^1 between generalized Steinberg representations.
    Ext {
        /// |Delta|.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        i: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        j: String,
        #[arg(long)]
        p: u64,
        /// `gln`, `gln_d:<degree>` or `general`.
        #[arg(long, default_value = "general")]
        class: String,
    },
    /// Euler consistency, splitting hypothesis and invariant suite.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        n: Vec<i64>,
    },
    /// Acceptance criteria and golden-file regression.
    Selftest {
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Rewrite the golden files instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

fn run(command: Command) -> CliResult<Report> {
    match command {
        Command::Cohomology {
            input,
            coefficients,
            p,
            n,
        } => {
            let d = commands::load_datum(&input.source())?;
            let c = match coefficients {
                Coeff::Modp => Coefficients::ModPn,
                Coeff::Zp => Coefficients::Zp,
            };
            commands::cohomology(&d, c, p, n)
        }
        Command::Boundary { input } => commands::boundary(&commands::load_datum(&input.source())?),
        Command::Schubert { input, subset } => {
            let d = commands::load_datum(&input.source())?;
            let only = subset.map(|s| parse_subset(&s, d.relative_rank())).transpose()?;
            commands::schubert(&d, only)
        }
        Command::Strata { input, i } => commands::strata(&commands::load_datum(&input.source())?, i),
        Command::Kottwitz { gln, mu } => commands::kottwitz(gln, &mu),
        Command::Ext {
            size,
            i,
            j,
            p,
            class,
        } => {
            let i = parse_subset(&i, size)?;
            let j = parse_subset(&j, size)?;
            commands::ext(size, i, j, p, parse_class(&class)?)
        }
        Command::Check { input, p, n } => {
            commands::check(&commands::load_datum(&input.source())?, &p, &n)
        }
        Command::Selftest { golden_dir, bless } => {
            selftest::run(&golden_dir.unwrap_or_else(selftest::default_golden_dir), bless)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = run(cli.command).and_then(|r| {
        let text = match cli.format {
            Format::Human => r.to_human(),
            Format::Machine => r.to_machine(),
        };
        print!("{text}");
        commands::require_passed(&r)
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Validation(perdom_core::Error::EmptyPeriodDomain(_)) = e {
                eprintln!("the period domain is nonempty exactly when nu_b <= mu^diamond");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
