//! The `admac` command line: reads a scenario file, runs one analysis and
//! reports it as text or as JSON.

use std::fmt;
use std::io::Read;

use admac_core::game::{build_game, build_game_strict, UncertaintyProfile};
use admac_core::{parse_scenario, Error, Game};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

pub use report::Format;

/// Exit status for a completed run.
pub const EXIT_OK: i32 = 0;
/// `--require-pne` was given and the game has no pure equilibrium.
pub const EXIT_NO_PNE: i32 = 1;
/// Bad arguments, unreadable input or an invalid scenario.
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "admac", version, about = "Angel-daemon uncertainty analysis of linear economic models")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "ADMAC_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Reject joint actions whose perturbed valuation breaks the model bounds.
    #[arg(long, global = true)]
    strict: bool,

    /// Exit with status 1 when the game has no pure Nash equilibrium.
    #[arg(long, global = true)]
    require_pne: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Scenario {
    /// Scenario file, or `-` for standard input.
    scenario: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Equilibrium of the unperturbed valuation.
    Solve(Scenario),
    /// Valuation and equilibrium after one joint action.
    Stress {
        #[command(flatten)]
        input: Scenario,
        /// Components perturbed by the angel, comma separated.
        #[arg(long, default_value = "")]
        angel: String,
        /// Components perturbed by the daemon, comma separated.
        #[arg(long, default_value = "")]
        daemon: String,
    },
    /// The bimatrix of the compiled game.
    Game(Scenario),
    /// Pure Nash equilibria.
    Pne(Scenario),
    /// Dominant strategy equilibria.
    Dse(Scenario),
    /// Mixed Nash equilibria.
    Mixed(Scenario),
    /// Value of a zero-sum game.
    Value(Scenario),
    /// Alternating best-response dynamics.
    Dynamics {
        #[command(flatten)]
        input: Scenario,
        /// Starting profile such as `({b},{G,P})`; defaults to the first cell.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, value_enum, default_value_t = Mover::Angel)]
        first_mover: Mover,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
    },
    /// Sign analysis of a fiscal game on taxes and spending.
    ClassifyFiscal(Scenario),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mover {
    Angel,
    Daemon,
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Io(String),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Parses `args` (program name first) and runs the command. `stdin` is read
/// only when the scenario path is `-`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_INPUT,
                }
            } else {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    match commands::execute(&cli, stdin) {
        Ok(report) => {
            let code = if cli.require_pne && report.pne_empty == Some(true) {
                EXIT_NO_PNE
            } else {
                EXIT_OK
            };
            Output {
                stdout: report.render(cli.format),
                stderr: String::new(),
                code,
            }
        }
        Err(e) => Output {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INPUT,
        },
    }
}

fn load(path: &str, stdin: &mut dyn Read) -> Result<UncertaintyProfile, CliError> {
    let text = if path == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {path}: {e}")))?
    };
    Ok(parse_scenario(&text)?)
}

fn compile(cli: &Cli, profile: &UncertaintyProfile) -> Result<Game, CliError> {
    Ok(if cli.strict {
        build_game_strict(profile)?
    } else {
        build_game(profile)?
    })
}
