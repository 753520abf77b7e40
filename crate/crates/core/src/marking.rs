//! Feedback computation for a (secret, guess) pair.
//!
//! [`mark`] is the canonical rule: green positions are settled first, then
//! every secret position that was not consumed by a green, in ascending
//! order, yellow-marks the leftmost still-unmarked guess position holding the
//! same symbol. Everything left over is gray.
//!
//! [`mark_one_pass_literal`] runs the single left-to-right sweep exactly as
//! worded, where step `i` may green-mark `p[i]` or yellow-mark some other
//! position. That sweep can try to green a position an earlier step already
//! made yellow; the conflict is reported instead of being resolved.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{History, MarkColor, Marking, Symbol, Word};

pub fn mark(secret: &Word, guess: &Word) -> Result<Marking> {
    check_lengths(secret, guess)?;
    let mut out = vec![MarkColor::Gray; guess.len()];
    mark_into(secret.symbols(), guess.symbols(), &mut out);
    Ok(Marking::new(out))
}

/// Allocation-free core of [`mark`]. All three slices must have equal length.
pub fn mark_into(secret: &[Symbol], guess: &[Symbol], out: &mut [MarkColor]) {
    debug_assert!(secret.len() == guess.len() && guess.len() == out.len());
    out.fill(MarkColor::Gray);
    let mut marked = [false; 64];
    let mut marked_vec;
    let marked: &mut [bool] = if guess.len() <= marked.len() {
        &mut marked[..guess.len()]
    } else {
        marked_vec = vec![false; guess.len()];
        &mut marked_vec
    };
    for i in 0..secret.len() {
        if secret[i] == guess[i] {
            out[i] = MarkColor::Green;
            marked[i] = true;
        }
    }
    for i in 0..secret.len() {
        if secret[i] == guess[i] {
            continue;
        }
        if let Some(j) = (0..guess.len()).find(|&j| !marked[j] && guess[j] == secret[i]) {
            out[j] = MarkColor::Yellow;
            marked[j] = true;
        }
    }
}

/// The literal sweep tried to overwrite a color it had already assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OnePassConflict {
    /// Zero-based guess position.
    pub position: usize,
    pub prior_color: MarkColor,
    pub attempted_color: MarkColor,
}

impl fmt::Display for OnePassConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {} already {:?}, sweep attempted {:?}",
            self.position + 1,
            self.prior_color,
            self.attempted_color
        )
    }
}

pub fn mark_one_pass_literal(
    secret: &Word,
    guess: &Word,
) -> Result<std::result::Result<Marking, OnePassConflict>> {
    check_lengths(secret, guess)?;
    let (w, p) = (secret.symbols(), guess.symbols());
    let mut colors: Vec<Option<MarkColor>> = vec![None; p.len()];
    for i in 0..w.len() {
        if w[i] == p[i] {
            if let Some(prior) = colors[i] {
                return Ok(Err(OnePassConflict {
                    position: i,
                    prior_color: prior,
                    attempted_color: MarkColor::Green,
                }));
            }
            colors[i] = Some(MarkColor::Green);
        } else if let Some(j) = (0..p.len()).find(|&j| p[j] == w[i] && colors[j].is_none()) {
            // S_i only holds unmarked positions, so a yellow never collides.
            colors[j] = Some(MarkColor::Yellow);
        }
    }
    Ok(Ok(Marking::new(
        colors
            .into_iter()
            .map(|c| c.unwrap_or(MarkColor::Gray))
            .collect(),
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub history: History,
    /// 1-based index of the winning guess, if any.
    pub won_at: Option<usize>,
}

/// Replays `guesses` against `secret`, stopping after the first all-green row.
pub fn simulate_game(secret: &Word, guesses: &[Word]) -> Result<Game> {
    let mut history = History::new();
    for (i, guess) in guesses.iter().enumerate() {
        let m = mark(secret, guess)?;
        let won = m.is_all_green();
        history.push(guess.clone(), m)?;
        if won {
            return Ok(Game {
                history,
                won_at: Some(i + 1),
            });
        }
    }
    Ok(Game {
        history,
        won_at: None,
    })
}

fn check_lengths(secret: &Word, guess: &Word) -> Result<()> {
    if secret.len() != guess.len() {
        return Err(Error::IncompatibleWords {
            left: secret.len(),
            right: guess.len(),
        });
    }
    Ok(())
}
