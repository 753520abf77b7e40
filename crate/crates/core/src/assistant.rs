//! Interactive play support: the user reports each guess and the marking
//! the real game showed, and the assistant keeps the feasible set and
//! proposes the next guess.

use std::sync::Arc;

use serde::Serialize;

use crate::bitset::WordSet;
use crate::error::{Error, Result};
use crate::feasibility::{filter_feasible, FeasibilityMode, FeasibleSet};
use crate::marking::mark;
use crate::model::{Dictionary, History, Marking};
use crate::solver::{SolveOptions, Solver};
use crate::strategies::{next_guess, Policy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuggestionMode {
    Heuristic,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Suggestion {
    pub word: String,
    #[serde(skip)]
    pub index: usize,
    pub mode: SuggestionMode,
    pub feasible: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssistConfig {
    /// Exact search runs only while at most this many words are feasible.
    pub exact_threshold: usize,
    /// Node budget for exact search; past it the heuristic answers.
    pub node_budget: u64,
}

impl Default for AssistConfig {
    fn default() -> Self {
        Self {
            exact_threshold: 64,
            node_budget: 20_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Assistant {
    dict: Arc<Dictionary>,
    config: AssistConfig,
    history: History,
    members: WordSet,
}

impl Assistant {
    pub fn new(dict: Arc<Dictionary>, config: AssistConfig) -> Self {
        let members = WordSet::full(dict.len());
        Self {
            dict,
            config,
            history: History::new(),
            members,
        }
    }

    pub fn dictionary(&self) -> &Arc<Dictionary> {
        &self.dict
    }

    pub fn history(&self) -> &History {
        &self.history
    }

    pub fn feasible(&self) -> FeasibleSet<'_> {
        FeasibleSet::from_members(&self.dict, self.members.clone())
    }

    pub fn feasible_count(&self) -> usize {
        self.members.count()
    }

    /// Records one guess and its marking. Feedback that would leave no
    /// feasible word is rejected and the state is unchanged.
    pub fn feedback(&mut self, guess: &str, marking: &str) -> Result<usize> {
        let word = self.dict.parse_guess(&normalize_case(&self.dict, guess))?;
        let marking = Marking::parse(marking.trim(), self.dict.k())?;
        let mut next = WordSet::empty(self.dict.len());
        for i in self.members.iter() {
            if mark(self.dict.word(i), &word)? == marking {
                next.insert(i);
            }
        }
        if next.is_empty() {
            return Err(Error::InconsistentFeedback {
                guess: guess.trim().to_string(),
                marking: marking.to_digits(),
            });
        }
        self.history.push(word, marking)?;
        self.members = next;
        Ok(self.feasible_count())
    }

    pub fn undo(&mut self) -> Result<usize> {
        self.history.pop().ok_or(Error::NothingToUndo)?;
        self.members = filter_feasible(&self.dict, &self.history, FeasibilityMode::Exact)?.into_members();
        Ok(self.feasible_count())
    }

    /// Total feasible count and up to `limit` of the words, in dictionary
    /// order.
    pub fn list_feasible(&self, limit: Option<usize>) -> (usize, Vec<String>) {
        let words = self
            .members
            .iter()
            .take(limit.unwrap_or(usize::MAX))
            .map(|i| self.dict.render_index(i))
            .collect();
        (self.feasible_count(), words)
    }

    /// Next guess: exact when the feasible set is small and the search fits
    /// the node budget, otherwise greedy minimax.
    pub fn suggest(&self) -> Result<Suggestion> {
        let feasible = self.feasible_count();
        let exact = if feasible == 1 {
            self.members.first()
        } else if feasible <= self.config.exact_threshold {
            self.exact_guess()?
        } else {
            None
        };
        let (index, mode) = match exact {
            Some(i) => (i, SuggestionMode::Exact),
            None => (
                next_guess(Policy::GreedyMinimax, &self.dict, &self.feasible())?,
                SuggestionMode::Heuristic,
            ),
        };
        Ok(Suggestion {
            word: self.dict.render_index(index),
            index,
            mode,
            feasible,
        })
    }

    fn exact_guess(&self) -> Result<Option<usize>> {
        let opts = SolveOptions::default().with_budget(self.config.node_budget);
        let solver = Solver::with_universe(&self.dict, &self.members, opts);
        let attempt = solver.w_min().and_then(|ell| solver.best_guess(ell));
        match attempt {
            Ok(found) => Ok(found),
            Err(Error::BudgetExceeded { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Upper-cases input for dictionaries whose symbols are all upper case.
fn normalize_case(d: &Dictionary, text: &str) -> String {
    let upper = d
        .alphabet()
        .names()
        .iter()
        .all(|n| n.chars().all(|c| !c.is_lowercase()));
    if upper {
        text.trim().to_uppercase()
    } else {
        text.trim().to_string()
    }
}
