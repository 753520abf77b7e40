//! Line-oriented assistant loop.
//!
//! Input lines are `GUESS DIGITS` (for example `ALGAE 20001`), `undo`,
//! `list [N]`, `suggest` or `quit`. Malformed lines are reported and
//! skipped; the exit status is 2 if any were seen.

use std::io::{BufRead, Write};
use std::sync::Arc;

use wordle_exact::assistant::{AssistConfig, Assistant, SuggestionMode};
use wordle_exact::{Dictionary, Error};

use crate::{CliError, CliResult};

const DEFAULT_LIST: usize = 20;

pub fn run(
    dict: Arc<Dictionary>,
    config: AssistConfig,
    input: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
) -> CliResult<u8> {
    let mut a = Assistant::new(dict.clone(), config);
    let mut bad_input = false;
    say(out, format_args!("dictionary: {} words of length {}", dict.len(), dict.k()))?;
    report(&a, out)?;
    for line in input.lines() {
        let line = line.map_err(|source| CliError::Io {
            path: "<stdin>".into(),
            source,
        })?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let outcome = match parts.as_slice() {
            [] => continue,
            ["quit" | "exit"] => break,
            ["undo"] => a.undo().map(|_| true).map_err(Problem::from),
            ["suggest"] => Ok(true),
            ["list"] => {
                list(&a, DEFAULT_LIST, out)?;
                Ok(false)
            }
            ["list", n] => match n.parse() {
                Ok(n) => {
                    list(&a, n, out)?;
                    Ok(false)
                }
                Err(_) => Err(Problem::Usage(format!("`{n}` is not a count"))),
            },
            [guess, marking] => a.feedback(guess, marking).map(|_| true).map_err(Problem::from),
            [_] => Err(Problem::Usage(
                "expected a guess followed by its marking digits, e.g. `ALGAE 20001`".into(),
            )),
            _ => Err(Problem::Usage(format!("cannot parse `{line}`"))),
        };
        match outcome {
            Ok(true) => report(&a, out)?,
            Ok(false) => {}
            Err(Problem::Usage(msg)) => {
                bad_input = true;
                say(err, format_args!("error: {msg}"))?;
            }
            Err(Problem::Rejected(msg)) => say(err, format_args!("rejected: {msg}"))?,
        }
    }
    Ok(if bad_input { 2 } else { 0 })
}

/// Malformed input versus well-formed feedback the state cannot accept.
enum Problem {
    Usage(String),
    Rejected(String),
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        match e {
            Error::InconsistentFeedback { .. } | Error::NothingToUndo => Problem::Rejected(e.to_string()),
            _ => Problem::Usage(e.to_string()),
        }
    }
}

fn report(a: &Assistant, out: &mut impl Write) -> CliResult<()> {
    say(out, format_args!("feasible: {}", a.feasible_count()))?;
    let s = a.suggest()?;
    let mode = match s.mode {
        SuggestionMode::Exact => "exact",
        SuggestionMode::Heuristic => "heuristic",
    };
    say(out, format_args!("suggestion: {} ({mode})", s.word))
}

fn list(a: &Assistant, limit: usize, out: &mut impl Write) -> CliResult<()> {
    let (total, words) = a.list_feasible(Some(limit));
    for w in &words {
        say(out, w)?;
    }
    if words.len() < total {
        say(out, format_args!("... {} more", total - words.len()))?;
    }
    Ok(())
}

fn say(w: &mut impl Write, line: impl std::fmt::Display) -> CliResult<()> {
    writeln!(w, "{line}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}
