use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tsa_core::cli::{
    self, Document, EquivMode, GroupDocument, MinimizeOptions, MonadKind, StrategyChoice,
};
use tsa_core::field::Field;
use tsa_core::set_monads::FiniteGroup;
use tsa_core::Error;

/// Succinct automata from deterministic ones.
#[derive(Parser)]
#[command(name = "tsa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CapArg {
    /// Largest carrier or determinization to materialize [env: TSA_CAP]
    #[arg(long)]
    cap: Option<usize>,
}

impl CapArg {
    fn get(&self) -> Result<usize, Error> {
        self.cap.map_or_else(cli::cap_from_env, Ok)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimize an automaton into a succinct one
    Minimize {
        input: PathBuf,
        /// powerset, alternating, caba, group or vector
        #[arg(long)]
        monad: String,
        /// naive or fast
        #[arg(long, default_value = "fast")]
        strategy: String,
        /// Check the result against the input on all words up to this length
        #[arg(long, value_name = "DEPTH")]
        verify: Option<usize>,
        /// rational or gf:p (vector monad)
        #[arg(long)]
        field: Option<String>,
        /// Group document (group monad)
        #[arg(long)]
        group_file: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a Graphviz rendering of the result
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Determinize a succinct automaton
    Determinize {
        input: PathBuf,
        /// Minimize the deterministic result
        #[arg(long)]
        then_minimize: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Print the output of an automaton on a word
    Run {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Compare two automata
    Equiv {
        left: PathBuf,
        right: PathBuf,
        /// Compare all words up to this length
        #[arg(long, conflicts_with = "exact", required_unless_present = "exact")]
        max_len: Option<usize>,
        /// Decide equivalence exactly
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Check the monad laws on small bases
    CheckLaws {
        #[arg(long)]
        monad: String,
        #[arg(long)]
        base_size: usize,
        #[arg(long)]
        group_file: Option<PathBuf>,
        #[arg(long)]
        field: Option<String>,
        #[command(flatten)]
        cap: CapArg,
    },
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Error> {
    Document::parse(&read(path)?).map_err(|e| match e {
        Error::Input(msg) => Error::input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load_group(path: Option<&PathBuf>) -> Result<Option<FiniteGroup>, Error> {
    path.map(|p| GroupDocument::parse(&read(p)?)).transpose()
}

fn parse_field(spec: Option<&str>) -> Result<Option<Field>, Error> {
    spec.map(Field::parse).transpose()
}

/// Writes the document to `output`, or to stdout when absent.
fn emit(doc: &Document, output: Option<&PathBuf>, dot: Option<&PathBuf>) -> Result<(), Error> {
    if let Some(path) = dot {
        write(path, &cli::to_dot(doc))?;
    }
    match output {
        Some(path) => write(path, &doc.to_json()),
        None => {
            print!("{}", doc.to_json());
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<u8, Error> {
    match command {
        Command::Minimize {
            input,
            monad,
            strategy,
            verify,
            field,
            group_file,
            output,
            emit_dot,
            cap,
        } => {
            let doc = load(&input)?;
            let opts = MinimizeOptions {
                strategy: StrategyChoice::parse(&strategy)?,
                verify,
                field: parse_field(field.as_deref())?,
                group: load_group(group_file.as_ref())?,
                ..MinimizeOptions::new(MonadKind::parse(&monad)?, cap.get()?)
            };
            let outcome = cli::minimize(&doc, &opts)?;
            emit(&outcome.document, output.as_ref(), emit_dot.as_ref())?;
            if output.is_some() {
                println!("{}", outcome.summary);
            } else {
                eprintln!("{}", outcome.summary);
            }
            if let Some(report) = outcome.verification {
                eprint!("{report}");
                if !report.passed() {
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Determinize {
            input,
            then_minimize,
            output,
            emit_dot,
            cap,
        } => {
            let doc = cli::determinize(&load(&input)?, cap.get()?, then_minimize)?;
            emit(&doc, output.as_ref(), emit_dot.as_ref())?;
            eprintln!("states={}", doc.state_count());
            Ok(0)
        }
        Command::Run { input, word } => {
            println!("{}", cli::run(&load(&input)?, &word)?);
            Ok(0)
        }
        Command::Equiv {
            left,
            right,
            max_len,
            exact,
            cap,
        } => {
            let mode = match (exact, max_len) {
                (true, _) => EquivMode::Exact,
                (false, Some(n)) => EquivMode::Bounded(n),
                (false, None) => return Err(Error::input("give --max-len N or --exact")),
            };
            let outcome = cli::equiv(&load(&left)?, &load(&right)?, mode, cap.get()?)?;
            println!("{outcome}");
            Ok(if outcome.is_equal() { 0 } else { 1 })
        }
        Command::CheckLaws {
            monad,
            base_size,
            group_file,
            field,
            cap,
        } => {
            let report = cli::check_laws(
                MonadKind::parse(&monad)?,
                base_size,
                parse_field(field.as_deref())?,
                load_group(group_file.as_ref())?,
                cap.get()?,
            )?;
            println!("{report}");
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(parsed.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
