use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ci_lattice::gluing::DEFAULT_MAX_EXP;
use ci_lattice::Characteristic;
use ci_lattice_cli::generate::{generate, GenerateParams};
use ci_lattice_cli::schema::to_json;
use ci_lattice_cli::{commands, CliError, Format, Output, Status};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ci-lattice", version, about = "Complete intersection deciders for lattice ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a matrix is mixed dominating and print its decomposition.
    CheckMixedDominating {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Decide complete intersection (char 0) or set-theoretic complete
    /// intersection on binomials (char p).
    Decide {
        instance: PathBuf,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_EXP)]
        max_exp: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Check a certificate against an instance.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Report the extreme rays of the semigroup's cone.
    Cone {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Write a random instance built from a mixed dominating matrix, plus its
    /// computed verdicts.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, default_value_t = 0)]
        perturb_exp: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_EXP)]
        max_exp: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn characteristic(n: u64) -> Result<Characteristic, CliError> {
    Characteristic::from_u64(n).ok_or_else(|| CliError::Input(format!("--char {n} is neither 0 nor a prime")))
}

fn run(command: Command) -> Result<Output, CliError> {
    match command {
        Command::CheckMixedDominating { matrix, format } => {
            commands::check_mixed_dominating(&read(&matrix)?, format.into())
        }
        Command::Decide { instance, characteristic: ch, max_exp, format } => {
            commands::decide(&read(&instance)?, characteristic(ch)?, max_exp, format.into())
        }
        Command::Verify { instance, certificate, format } => {
            commands::verify(&read(&instance)?, &read(&certificate)?, format.into())
        }
        Command::Cone { instance, format } => commands::cone(&read(&instance)?, format.into()),
        Command::Generate { seed, rank, cols, characteristic: ch, perturb_exp, max_exp, out_dir } => {
            let params = GenerateParams { seed, rank, cols, characteristic: characteristic(ch)?, perturb_exp, max_exp };
            let generated = generate(&params)?;
            fs::create_dir_all(&out_dir)
                .map_err(|source| CliError::Io { path: out_dir.display().to_string(), source })?;
            let instance = out_dir.join("instance.json");
            let expected = out_dir.join("expected.json");
            write(&instance, &to_json(&generated.instance))?;
            write(&expected, &to_json(&generated.expected))?;
            Ok(Output {
                text: format!("wrote {} and {}\n", instance.display(), expected.display()),
                status: Status::Decided,
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::InputError as u8)
        }
    }
}
