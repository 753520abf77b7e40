//! Executable guessing policies.
//!
//! `AnyFeasible` always guesses the lowest-index word that is still
//! feasible; such play wins within σ guesses, because every feasible guess
//! either pins a position (green) or removes its symbol from that position's
//! surviving set. `GreedyMinimax` picks, from the whole dictionary, the word
//! whose largest unresolved marking class is smallest.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{filter_feasible, FeasibilityMode, FeasibleSet};
use crate::marking::{mark, mark_into};
use crate::model::{Dictionary, History, MarkColor, Marking, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    AnyFeasible,
    GreedyMinimax,
}

pub fn next_guess(policy: Policy, d: &Dictionary, f: &FeasibleSet<'_>) -> Result<usize> {
    let first = f.indices().next().ok_or(Error::EmptyFeasibleSet)?;
    match policy {
        Policy::AnyFeasible => Ok(first),
        Policy::GreedyMinimax => Ok(greedy_minimax(d, f)),
    }
}

/// Size of the largest marking class of `f` under `guess`, not counting the
/// all-green class (which is already won).
pub fn worst_block(d: &Dictionary, f: &FeasibleSet<'_>, guess: &Word) -> usize {
    let k = d.k();
    let mut scratch = vec![MarkColor::Gray; k];
    let mut codes: Vec<Vec<MarkColor>> = Vec::with_capacity(f.len());
    for w in f.words() {
        mark_into(w.symbols(), guess.symbols(), &mut scratch);
        if scratch.iter().all(|&c| c == MarkColor::Green) {
            continue;
        }
        codes.push(scratch.clone());
    }
    codes.sort_unstable();
    codes
        .chunk_by(|a, b| a == b)
        .map(<[_]>::len)
        .max()
        .unwrap_or(0)
}

fn greedy_minimax(d: &Dictionary, f: &FeasibleSet<'_>) -> usize {
    if f.len() == 1 {
        return f.indices().next().expect("non-empty");
    }
    (0..d.len())
        .into_par_iter()
        .map(|g| (worst_block(d, f, d.word(g)), g))
        .min()
        .map(|(_, g)| g)
        .expect("dictionary is non-empty")
}

/// Per-position set of symbols that some feasible word carries there.
pub fn symbol_candidates(f: &FeasibleSet<'_>) -> Vec<BTreeSet<Symbol>> {
    let k = f.dictionary().k();
    let mut out = vec![BTreeSet::new(); k];
    for w in f.words() {
        for (i, &s) in w.symbols().iter().enumerate() {
            out[i].insert(s);
        }
    }
    out
}

/// Checks that one feasible guess shrank every per-position set: a green
/// position collapses to the guessed symbol, any other position loses it.
/// Returns the first offending position.
pub fn shrink_violation(
    before: &[BTreeSet<Symbol>],
    after: &[BTreeSet<Symbol>],
    guess: &Word,
    marking: &Marking,
) -> Option<usize> {
    (0..guess.len()).find(|&i| {
        let g = guess.symbols()[i];
        let subset = after[i].is_subset(&before[i]);
        let ok = match marking.colors()[i] {
            MarkColor::Green => after[i].len() == 1 && after[i].contains(&g),
            _ => !after[i].contains(&g) && after[i].len() < before[i].len(),
        };
        !(subset && ok)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub guesses: Vec<usize>,
    pub history: History,
    pub won: bool,
    /// `symbol_candidates` before each guess, plus the final state.
    pub symbol_trace: Vec<Vec<BTreeSet<Symbol>>>,
}

impl Transcript {
    pub fn guess_count(&self) -> usize {
        self.guesses.len()
    }
}

/// Plays `policy` against `secret` until the all-green marking.
pub fn run_policy(policy: Policy, d: &Dictionary, secret: &Word) -> Result<Transcript> {
    if d.position(secret).is_none() {
        return Err(Error::NotInDictionary(d.render(secret)));
    }
    let mut history = History::new();
    let mut guesses = Vec::new();
    let mut f = FeasibleSet::full(d);
    let mut symbol_trace = vec![symbol_candidates(&f)];
    // each guess either wins or strictly shrinks the feasible set
    for _ in 0..=d.len() {
        let g = next_guess(policy, d, &f)?;
        let m = mark(secret, d.word(g))?;
        let won = m.is_all_green();
        history.push(d.word(g).clone(), m)?;
        guesses.push(g);
        f = filter_feasible(d, &history, FeasibilityMode::Exact)?;
        symbol_trace.push(symbol_candidates(&f));
        if won {
            return Ok(Transcript {
                guesses,
                history,
                won: true,
                symbol_trace,
            });
        }
    }
    Ok(Transcript {
        guesses,
        history,
        won: false,
        symbol_trace,
    })
}
