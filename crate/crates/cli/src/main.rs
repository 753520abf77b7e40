//! `wordle-exact`: solve, generate, verify, assist and serve.
//!
//! Exit status: 0 for yes/pass, 1 for no/fail, 2 for malformed input, 3 when
//! a search budget or oracle cap is exceeded.

mod assist;
mod gen;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use wordle_exact::assistant::AssistConfig;
use wordle_exact::solver::{GuessMode, SolveOptions, Solver};
use wordle_exact::{DictFormat, Dictionary};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] wordle_exact::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] wordle_api::LoadError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use wordle_exact::Error as E;
        match self {
            CliError::Core(E::BudgetExceeded { .. } | E::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Parser)]
#[command(name = "wordle-exact", version, about = "Exact Wordle decision engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the dictionary can always be won within L guesses.
    Solve(SolveArgs),
    /// Print the fewest guesses that always win.
    Wmin(WminArgs),
    /// Generate hardness gadget instances.
    Gen(gen::GenArgs),
    /// Check construction claims against brute-force oracles.
    Verify(verify::VerifyArgs),
    /// Interactive helper: enter guesses and markings, get suggestions.
    Assist(AssistArgs),
    /// Run the local HTTP service.
    Serve(ServeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Auto,
    Chars,
    Tokens,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GuessModeArg {
    Full,
    Feasible,
}

impl From<GuessModeArg> for GuessMode {
    fn from(m: GuessModeArg) -> Self {
        match m {
            GuessModeArg::Full => GuessMode::FullDictionary,
            GuessModeArg::Feasible => GuessMode::FeasibleOnly,
        }
    }
}

#[derive(Args)]
pub struct DictArgs {
    /// Dictionary file, one word per line.
    #[arg(long)]
    dict: PathBuf,
    /// `chars` for one letter per symbol, `tokens` for comma-separated symbols.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,
}

impl DictArgs {
    fn load(&self) -> CliResult<Dictionary> {
        load_dictionary(&self.dict, self.format)
    }
}

pub fn load_dictionary(path: &Path, format: FormatArg) -> CliResult<Dictionary> {
    let text = read_file(path)?;
    let format = match format {
        FormatArg::Auto => DictFormat::detect(&text),
        FormatArg::Chars => DictFormat::Chars,
        FormatArg::Tokens => DictFormat::Tokens,
    };
    Ok(Dictionary::parse(&text, format)?)
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = GuessModeArg::Full)]
    guess_mode: GuessModeArg,
    /// Give up after expanding this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    /// Disable the transposition table.
    #[arg(long)]
    no_memo: bool,
    /// Search root guesses on all cores (ignored with --budget).
    #[arg(long)]
    parallel: bool,
}

impl SearchArgs {
    fn options(&self) -> SolveOptions {
        let opts = SolveOptions {
            guess_mode: self.guess_mode.into(),
            memo_enabled: !self.no_memo,
            node_budget: None,
            parallel: self.parallel,
        };
        match self.budget {
            Some(b) => opts.with_budget(b),
            None => opts,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    dict: DictArgs,
    #[arg(long)]
    max_guesses: usize,
    #[command(flatten)]
    search: SearchArgs,
    /// Write a winning strategy tree as JSON (only when the answer is yes).
    #[arg(long)]
    emit_strategy: Option<PathBuf>,
}

#[derive(Args)]
struct WminArgs {
    #[command(flatten)]
    dict: DictArgs,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct AssistArgs {
    #[command(flatten)]
    dict: DictArgs,
    /// Use exact search once at most this many words remain.
    #[arg(long, default_value_t = AssistConfig::default().exact_threshold)]
    threshold: usize,
    /// Node budget for each exact search.
    #[arg(long, default_value_t = AssistConfig::default().node_budget)]
    budget: u64,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: IpAddr,
    /// Directory of `*.txt` / `*.dict` dictionaries.
    #[arg(long)]
    dict_dir: PathBuf,
    #[arg(long, default_value_t = AssistConfig::default().exact_threshold)]
    threshold: usize,
    #[arg(long, default_value_t = AssistConfig::default().node_budget)]
    budget: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Solve(args) => solve(&args, &mut out),
        Command::Wmin(args) => wmin(&args, &mut out),
        Command::Gen(args) => gen::run(&args, &mut out),
        Command::Verify(args) => verify::run(&args, &mut out),
        Command::Assist(args) => {
            let dict = Arc::new(args.dict.load()?);
            let config = AssistConfig {
                exact_threshold: args.threshold,
                node_budget: args.budget,
            };
            let stdin = io::stdin().lock();
            assist::run(dict, config, stdin, &mut out, &mut io::stderr())
        }
        Command::Serve(args) => serve(&args),
    }
}

fn emit(out: &mut impl Write, line: impl std::fmt::Display) -> CliResult<()> {
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn solve(args: &SolveArgs, out: &mut impl Write) -> CliResult<u8> {
    let d = args.dict.load()?;
    let solver = Solver::new(&d, args.search.options());
    let yes = solver.decide(args.max_guesses)?;
    emit(out, if yes { "YES" } else { "NO" })?;
    if let (true, Some(path)) = (yes, &args.emit_strategy) {
        let tree = solver
            .strategy_tree(args.max_guesses)?
            .expect("decided winnable");
        let doc = json!({ "max_guesses": args.max_guesses, "tree": tree.to_json(&d) });
        write_file(path, &serde_json::to_string_pretty(&doc).expect("plain data"))?;
    }
    emit(out, serde_json::to_string(&solver.stats()).expect("plain data"))?;
    Ok(if yes { 0 } else { 1 })
}

fn wmin(args: &WminArgs, out: &mut impl Write) -> CliResult<u8> {
    let d = args.dict.load()?;
    let solver = Solver::new(&d, args.search.options());
    let w = solver.w_min()?;
    emit(out, w)?;
    emit(out, serde_json::to_string(&solver.stats()).expect("plain data"))?;
    Ok(0)
}

fn serve(args: &ServeArgs) -> CliResult<u8> {
    let dictionaries = wordle_api::load_dictionaries(&args.dict_dir)?;
    if dictionaries.is_empty() {
        return Err(CliError::Usage(format!(
            "no *.txt or *.dict dictionaries in {}",
            args.dict_dir.display()
        )));
    }
    let config = AssistConfig {
        exact_threshold: args.threshold,
        node_budget: args.budget,
    };
    let state = Arc::new(wordle_api::AppState::new(dictionaries, config));
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new().map_err(|source| CliError::Io {
        path: "<runtime>".into(),
        source,
    })?;
    eprintln!("listening on http://{addr}{}", wordle_api::API_PREFIX);
    runtime
        .block_on(wordle_api::serve(addr, state))
        .map_err(|source| CliError::Io {
            path: addr.to_string(),
            source,
        })?;
    Ok(0)
}
