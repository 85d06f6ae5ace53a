use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::commands::{self, CommandError, CommandResult, Format};

/// When set, overrides every --seed flag.
pub const SEED_ENV: &str = "CLIFFMOEB_SEED";

#[derive(Debug, Parser)]
#[command(name = "cliffmoeb", version, about = "Clifford algebras, Vahlen matrices and Möbius maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact Clifford arithmetic.
    #[command(subcommand)]
    Alg(AlgCommand),
    /// Möbius action of a Vahlen matrix.
    #[command(subcommand)]
    Moebius(MoebiusCommand),
    /// Seeded verification harnesses.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Function theory on the unit disk.
    #[command(subcommand)]
    Ftheory(FtheoryCommand),
}

#[derive(Debug, Args)]
struct ExprArgs {
    /// Signature as p,q.
    #[arg(long)]
    sig: String,
    #[arg(long, allow_hyphen_values = true)]
    expr: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum AlgCommand {
    /// Evaluate an expression.
    Eval(ExprArgs),
    /// Show an expression with its reversion, conjugation and grade involution.
    Involutions(ExprArgs),
}

#[derive(Debug, Subcommand)]
enum MoebiusCommand {
    /// Apply (a,b;c,d) to a vector point, or to `inf`.
    Apply {
        /// JSON file {"a":…,"b":…,"c":…,"d":…} of multivectors.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Args)]
struct HarnessArgs {
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Ring, involution, Kelvin-inverse and Vahlen-group laws.
    Laws {
        #[command(flatten)]
        common: HarnessArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Claims about conformal self-maps of the unit sphere.
    Proposition {
        #[command(flatten)]
        common: HarnessArgs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Which sign pattern of (±1, a; ±a, ±1) gives the sphere maps.
    Convention {
        #[command(flatten)]
        common: HarnessArgs,
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

#[derive(Debug, Subcommand)]
enum FtheoryCommand {
    /// Reproduce z^degree at a disk point from its boundary values.
    Cauchy {
        #[arg(long)]
        degree: u32,
        /// Disk point as re,im.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        #[arg(long, default_value_t = 1)]
        kappa: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Taylor coefficients of a polynomial from its boundary values.
    Taylor {
        /// Comma-separated coefficients c_0,c_1,…, each re or re:im.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monte Carlo Bergman kernel on point pairs.
    Bergman {
        /// CSV file with columns x_re,x_im,y_re,y_im.
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        kappa: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn resolve_seed(flag: u64, env: Option<&str>) -> Result<u64, CommandError> {
    match env {
        None => Ok(flag),
        Some(v) => {
            v.trim().parse().map_err(|_| CommandError::Usage(format!("{SEED_ENV}={v:?} is not an unsigned integer")))
        }
    }
}

/// Runs one invocation. `env_seed` is the value of CLIFFMOEB_SEED, if set.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { stdout: text, stderr: String::new(), code: 0 }
                }
                _ => Outcome { stdout: String::new(), stderr: text, code: commands::EXIT_USAGE },
            };
        }
    };
    match dispatch(cli.command, env_seed) {
        Ok(out) => Outcome { stdout: out.stdout, stderr: String::new(), code: out.code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

fn dispatch(command: Command, env_seed: Option<&str>) -> CommandResult {
    match command {
        Command::Alg(AlgCommand::Eval(a)) => commands::alg_eval(commands::parse_signature(&a.sig)?, &a.expr, a.format),
        Command::Alg(AlgCommand::Involutions(a)) => {
            commands::alg_involutions(commands::parse_signature(&a.sig)?, &a.expr, a.format)
        }
        Command::Moebius(MoebiusCommand::Apply { matrix, point, format }) => {
            commands::moebius_apply(&matrix, &point, format)
        }
        Command::Verify(VerifyCommand::Laws { common: c, samples }) => {
            let seed = resolve_seed(c.seed, env_seed)?;
            commands::verify_laws_cmd(c.p, c.q, samples, seed, c.format)
        }
        Command::Verify(VerifyCommand::Proposition { common: c, samples }) => {
            let seed = resolve_seed(c.seed, env_seed)?;
            commands::verify_proposition_cmd(c.p, c.q, samples, seed, c.format)
        }
        Command::Verify(VerifyCommand::Convention { common: c, trials }) => {
            let seed = resolve_seed(c.seed, env_seed)?;
            commands::verify_convention_cmd(c.p, c.q, trials, seed, c.format)
        }
        Command::Ftheory(FtheoryCommand::Cauchy { degree, point, nodes, kappa, format }) => {
            commands::ftheory_cauchy(degree, commands::parse_complex(&point)?, nodes, kappa, format)
        }
        Command::Ftheory(FtheoryCommand::Taylor { coeffs, order, nodes, format }) => {
            commands::ftheory_taylor(&commands::parse_coefficients(&coeffs)?, order, nodes, format)
        }
        Command::Ftheory(FtheoryCommand::Bergman { pairs, samples, seed, kappa, format }) => {
            let seed = resolve_seed(seed, env_seed)?;
            let pairs = commands::read_pairs(&pairs)?;
            commands::ftheory_bergman(&pairs, samples, seed, kappa, format)
        }
    }
}
