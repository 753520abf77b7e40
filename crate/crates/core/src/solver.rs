//! Exact adversarial search for the Wordle decision problem.
//!
//! `wins(S, ℓ)` holds when some guess splits the candidate secrets `S` into
//! marking classes that are each winnable with `ℓ - 1` guesses left; the
//! all-green class of a guess inside `S` is already won. Classes stand in for
//! the individual secrets that produce them, and results are memoized per
//! candidate set as a pair of bounds (`ℓ` known to win / known to lose),
//! which is sound because winnability is monotone in `ℓ`.
//!
//! Guesses that induce the same partition of the universe (same classes,
//! same green position) are interchangeable at every node below it, so only
//! the lowest-index representative is searched.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::num::NonZeroU64;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bitset::WordSet;
use crate::error::{Error, Result};
use crate::feasibility::FeasibleSet;
use crate::marking::{mark, mark_into};
use crate::model::{Dictionary, MarkColor, Marking, Word};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GuessMode {
    /// Any dictionary word may be guessed at any point.
    #[default]
    FullDictionary,
    /// Only words still feasible may be guessed.
    FeasibleOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub guess_mode: GuessMode,
    pub memo_enabled: bool,
    /// Maximum number of expanded search nodes before giving up.
    pub node_budget: Option<NonZeroU64>,
    /// Explore root candidates on the rayon pool. Ignored when a node budget
    /// is set, so that budget exhaustion stays reproducible.
    pub parallel: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            guess_mode: GuessMode::FullDictionary,
            memo_enabled: true,
            node_budget: None,
            parallel: false,
        }
    }
}

impl SolveOptions {
    pub fn feasible_only() -> Self {
        Self {
            guess_mode: GuessMode::FeasibleOnly,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = NonZeroU64::new(budget);
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub memo_hits: u64,
    #[serde(rename = "elapsed_ms", serialize_with = "serialize_millis")]
    pub elapsed: Duration,
}

fn serialize_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// A winning policy: what to guess, and where to go for each marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyTree {
    Win,
    Guess {
        /// Dictionary index of the guessed word.
        guess: usize,
        children: BTreeMap<Marking, StrategyTree>,
    },
}

impl StrategyTree {
    /// Longest number of guesses on any branch.
    pub fn depth(&self) -> usize {
        match self {
            StrategyTree::Win => 0,
            StrategyTree::Guess { children, .. } => {
                1 + children.values().map(StrategyTree::depth).max().unwrap_or(0)
            }
        }
    }

    pub fn root_guess(&self) -> Option<usize> {
        match self {
            StrategyTree::Win => None,
            StrategyTree::Guess { guess, .. } => Some(*guess),
        }
    }

    /// Plays the tree against `secret`. Returns the number of guesses used to
    /// reach the all-green leaf, or `None` when a marking has no branch.
    pub fn replay(&self, d: &Dictionary, secret: &Word) -> Result<Option<usize>> {
        let mut node = self;
        let mut guesses = 0;
        loop {
            match node {
                StrategyTree::Win => return Ok(None),
                StrategyTree::Guess { guess, children } => {
                    guesses += 1;
                    let m = mark(secret, d.word(*guess))?;
                    match children.get(&m) {
                        Some(StrategyTree::Win) if m.is_all_green() => return Ok(Some(guesses)),
                        Some(StrategyTree::Win) | None => return Ok(None),
                        Some(next) => node = next,
                    }
                }
            }
        }
    }

    pub fn to_json(&self, d: &Dictionary) -> Value {
        match self {
            StrategyTree::Win => Value::String("win".into()),
            StrategyTree::Guess { guess, children } => {
                let kids: serde_json::Map<String, Value> = children
                    .iter()
                    .map(|(m, child)| (m.to_digits(), child.to_json(d)))
                    .collect();
                json!({ "guess": d.render_index(*guess), "children": kids })
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    /// Smallest ℓ known to win.
    win_from: u32,
    /// Largest ℓ known to lose.
    lose_upto: u32,
}

pub struct Solver<'d> {
    dict: &'d Dictionary,
    opts: SolveOptions,
    /// Dictionary indices of the candidate secrets; local index = position.
    secrets: Vec<usize>,
    /// Dictionary indices of the searched guesses, ascending.
    pool: Vec<usize>,
    /// Local secret index of each pool entry, when the guess is a candidate.
    pool_local: Vec<Option<usize>>,
    /// Marking class of (pool entry, local secret), row major.
    classes: Vec<u32>,
    markings: Vec<Marking>,
    green: u32,
    memo: DashMap<WordSet, Bounds>,
    nodes: AtomicU64,
    hits: AtomicU64,
    elapsed: Mutex<Duration>,
}

impl<'d> Solver<'d> {
    pub fn new(dict: &'d Dictionary, opts: SolveOptions) -> Self {
        Self::with_universe(dict, &WordSet::full(dict.len()), opts)
    }

    /// Solver whose candidate secrets are `universe` (a subset of `dict`).
    /// In full-dictionary mode every dictionary word remains a legal guess.
    pub fn with_universe(dict: &'d Dictionary, universe: &WordSet, opts: SolveOptions) -> Self {
        let secrets: Vec<usize> = universe.iter().collect();
        let mut local_of = vec![None; dict.len()];
        for (l, &g) in secrets.iter().enumerate() {
            local_of[g] = Some(l);
        }
        let raw_pool: Vec<usize> = match opts.guess_mode {
            GuessMode::FullDictionary => (0..dict.len()).collect(),
            GuessMode::FeasibleOnly => secrets.clone(),
        };
        let m = secrets.len();
        let k = dict.k();
        let rows: Vec<Vec<Marking>> = raw_pool
            .par_iter()
            .map_init(
                || vec![MarkColor::Gray; k],
                |scratch, &g| {
                    secrets
                        .iter()
                        .map(|&s| {
                            mark_into(dict.word(s).symbols(), dict.word(g).symbols(), scratch);
                            Marking::new(scratch.clone())
                        })
                        .collect()
                },
            )
            .collect();

        let mut intern: HashMap<Marking, u32> = HashMap::new();
        let mut markings = Vec::new();
        let green_marking = Marking::all_green(k);
        intern.insert(green_marking.clone(), 0);
        markings.push(green_marking);
        let mut seen_signatures: HashSet<Vec<u32>> = HashSet::new();
        let mut pool = Vec::new();
        let mut pool_local = Vec::new();
        let mut classes = Vec::with_capacity(raw_pool.len() * m);
        for (&g, row) in raw_pool.iter().zip(rows) {
            let row: Vec<u32> = row
                .into_iter()
                .map(|mk| {
                    let next = intern.len() as u32;
                    *intern.entry(mk.clone()).or_insert_with(|| {
                        markings.push(mk);
                        next
                    })
                })
                .collect();
            if opts.guess_mode == GuessMode::FullDictionary {
                // relabel classes by first appearance; green keeps its own label
                let mut relabel: HashMap<u32, u32> = HashMap::new();
                let signature: Vec<u32> = row
                    .iter()
                    .map(|&c| {
                        if c == 0 {
                            u32::MAX
                        } else {
                            let next = relabel.len() as u32;
                            *relabel.entry(c).or_insert(next)
                        }
                    })
                    .collect();
                if !seen_signatures.insert(signature) {
                    continue;
                }
            }
            pool.push(g);
            pool_local.push(local_of[g]);
            classes.extend_from_slice(&row);
        }

        Self {
            dict,
            opts,
            secrets,
            pool,
            pool_local,
            classes,
            markings,
            green: 0,
            memo: DashMap::new(),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            elapsed: Mutex::new(Duration::ZERO),
        }
    }

    pub fn dictionary(&self) -> &'d Dictionary {
        self.dict
    }

    pub fn options(&self) -> &SolveOptions {
        &self.opts
    }

    /// Number of distinct guesses actually searched after merging guesses
    /// with identical partitions.
    pub fn distinct_guesses(&self) -> usize {
        self.pool.len()
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes.load(Ordering::Relaxed),
            memo_hits: self.hits.load(Ordering::Relaxed),
            elapsed: *self.elapsed.lock().expect("poisoned"),
        }
    }

    fn universe(&self) -> WordSet {
        WordSet::full(self.secrets.len())
    }

    fn timed<T>(&self, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.elapsed.lock().expect("poisoned") += start.elapsed();
        out
    }

    fn parallel(&self) -> bool {
        self.opts.parallel && self.opts.node_budget.is_none()
    }

    /// Can the guesser always find the secret within `ell` guesses?
    pub fn decide(&self, ell: usize) -> Result<bool> {
        self.timed(|| self.wins_root(&self.universe(), clamp(ell)))
    }

    /// Decision with the alphabet-size shortcut: at least σ guesses always
    /// suffice, so no search runs when `σ ≤ ell`.
    pub fn decide_constant_alphabet(&self, ell: usize) -> Result<bool> {
        if self.dict.sigma() <= ell {
            return Ok(true);
        }
        self.decide(ell)
    }

    /// Lowest-index word whose every non-green marking class is winnable
    /// with `ell - 1` guesses left.
    pub fn best_guess(&self, ell: usize) -> Result<Option<usize>> {
        self.timed(|| {
            let set = self.universe();
            if ell == 0 || set.is_empty() {
                return Ok(None);
            }
            Ok(self
                .find_winning_guess(&set, clamp(ell), false)?
                .map(|p| self.pool[p]))
        })
    }

    /// The least ℓ that wins. Never exceeds σ (any-feasible play needs at
    /// most σ guesses) nor the number of candidates.
    pub fn w_min(&self) -> Result<usize> {
        let ceiling = self.dict.sigma().min(self.secrets.len()).max(1);
        for ell in 1..ceiling {
            if self.decide(ell)? {
                return Ok(ell);
            }
        }
        Ok(ceiling)
    }

    /// A winning strategy within `ell` guesses, if one exists. Every subtree
    /// uses the fewest guesses that still win from its node.
    pub fn strategy_tree(&self, ell: usize) -> Result<Option<StrategyTree>> {
        if !self.decide(ell)? {
            return Ok(None);
        }
        self.timed(|| self.build(&self.universe(), clamp(ell)).map(Some))
    }

    fn build(&self, set: &WordSet, ell: u32) -> Result<StrategyTree> {
        let mut children = BTreeMap::new();
        let k = self.dict.k();
        if set.count() == 1 {
            let only = self.secrets[set.first().expect("non-empty")];
            children.insert(Marking::all_green(k), StrategyTree::Win);
            return Ok(StrategyTree::Guess {
                guess: only,
                children,
            });
        }
        let mut need = 2;
        while !self.wins(set, need)? {
            need += 1;
            assert!(need <= ell, "subtree must be winnable within its budget");
        }
        let p = self
            .find_winning_guess(set, need, true)?
            .expect("winnable set has a winning guess");
        for (class, block) in self.blocks(set, p) {
            let child = if class == self.green {
                StrategyTree::Win
            } else {
                self.build(&block, need - 1)?
            };
            children.insert(self.markings[class as usize].clone(), child);
        }
        Ok(StrategyTree::Guess {
            guess: self.pool[p],
            children,
        })
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.opts.node_budget {
            Some(b) if n > b.get() => Err(Error::BudgetExceeded { budget: b.get() }),
            _ => Ok(()),
        }
    }

    fn wins_root(&self, set: &WordSet, ell: u32) -> Result<bool> {
        if !self.parallel() {
            return self.wins(set, ell);
        }
        if let Some(answer) = self.trivial(set, ell) {
            return Ok(answer);
        }
        if let Some(answer) = self.memo_lookup(set, ell) {
            return Ok(answer);
        }
        self.tick()?;
        let found = self.find_winning_guess(set, ell, true)?.is_some();
        self.memo_store(set, ell, found);
        Ok(found)
    }

    fn trivial(&self, set: &WordSet, ell: u32) -> Option<bool> {
        if ell == 0 {
            return Some(false);
        }
        let n = set.count();
        if n <= 1 {
            return Some(true);
        }
        if ell == 1 {
            return Some(false);
        }
        None
    }

    fn wins(&self, set: &WordSet, ell: u32) -> Result<bool> {
        if let Some(answer) = self.trivial(set, ell) {
            return Ok(answer);
        }
        if let Some(answer) = self.memo_lookup(set, ell) {
            return Ok(answer);
        }
        self.tick()?;
        let found = self.find_sequential(set, ell, true)?.is_some();
        self.memo_store(set, ell, found);
        Ok(found)
    }

    fn memo_lookup(&self, set: &WordSet, ell: u32) -> Option<bool> {
        if !self.opts.memo_enabled {
            return None;
        }
        let b = *self.memo.get(set)?;
        let answer = if ell >= b.win_from {
            true
        } else if ell <= b.lose_upto {
            false
        } else {
            return None;
        };
        self.hits.fetch_add(1, Ordering::Relaxed);
        Some(answer)
    }

    fn memo_store(&self, set: &WordSet, ell: u32, won: bool) {
        if !self.opts.memo_enabled {
            return;
        }
        self.memo
            .entry(set.clone())
            .and_modify(|b| {
                if won {
                    b.win_from = b.win_from.min(ell);
                } else {
                    b.lose_upto = b.lose_upto.max(ell);
                }
            })
            .or_insert(if won {
                Bounds {
                    win_from: ell,
                    lose_upto: 0,
                }
            } else {
                Bounds {
                    win_from: u32::MAX,
                    lose_upto: ell,
                }
            });
    }

    /// Candidate pool entries for a node, in tie-break order.
    fn candidates<'a>(&'a self, set: &'a WordSet) -> Box<dyn Iterator<Item = usize> + 'a> {
        match self.opts.guess_mode {
            GuessMode::FullDictionary => Box::new(0..self.pool.len()),
            // in this mode the pool is the universe itself
            GuessMode::FeasibleOnly => Box::new(set.iter()),
        }
    }

    fn find_winning_guess(
        &self,
        set: &WordSet,
        ell: u32,
        skip_useless: bool,
    ) -> Result<Option<usize>> {
        if self.parallel() {
            let cands: Vec<usize> = self.candidates(set).collect();
            // without a budget `guess_wins` cannot fail
            return Ok(cands.into_par_iter().find_first(|&p| {
                self.guess_wins(set, p, ell, skip_useless)
                    .expect("unbudgeted search is infallible")
            }));
        }
        self.find_sequential(set, ell, skip_useless)
    }

    fn find_sequential(&self, set: &WordSet, ell: u32, skip_useless: bool) -> Result<Option<usize>> {
        for p in self.candidates(set) {
            if self.guess_wins(set, p, ell, skip_useless)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    /// A guess that is not a candidate and leaves `set` in one class only
    /// wastes a turn. If it could win, some informative guess wins with one
    /// guess fewer, hence also here, so skipping it never changes the answer.
    fn guess_wins(&self, set: &WordSet, p: usize, ell: u32, skip_useless: bool) -> Result<bool> {
        let blocks = self.blocks(set, p);
        if skip_useless && blocks.len() == 1 && blocks[0].0 != self.green {
            return Ok(false);
        }
        let mut open: Vec<WordSet> = blocks
            .into_iter()
            .filter(|(c, _)| *c != self.green)
            .map(|(_, b)| b)
            .collect();
        open.sort_by_key(|b| std::cmp::Reverse(b.count()));
        for block in &open {
            if !self.wins(block, ell - 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Marking classes of `set` under pool entry `p`, ordered by class id.
    fn blocks(&self, set: &WordSet, p: usize) -> Vec<(u32, WordSet)> {
        let m = self.secrets.len();
        let row = &self.classes[p * m..(p + 1) * m];
        let mut pairs: Vec<(u32, usize)> = set.iter().map(|s| (row[s], s)).collect();
        pairs.sort_unstable();
        let mut out: Vec<(u32, WordSet)> = Vec::new();
        for (c, s) in pairs {
            match out.last_mut() {
                Some((lc, block)) if *lc == c => block.insert(s),
                _ => {
                    let mut block = WordSet::empty(m);
                    block.insert(s);
                    out.push((c, block));
                }
            }
        }
        debug_assert!(self.pool_local[p].is_none_or(|l| !set.contains(l) || row[l] == self.green));
        out
    }
}

fn clamp(ell: usize) -> u32 {
    ell.min(u32::MAX as usize) as u32
}

pub fn decide(d: &Dictionary, ell: usize, opts: SolveOptions) -> Result<bool> {
    Solver::new(d, opts).decide(ell)
}

/// Optimal next guess for the candidate set `f`, as a dictionary index.
pub fn best_guess(
    d: &Dictionary,
    f: &FeasibleSet<'_>,
    ell: usize,
    opts: SolveOptions,
) -> Result<Option<usize>> {
    if f.is_empty() {
        return Err(Error::EmptyFeasibleSet);
    }
    Solver::with_universe(d, f.members(), opts).best_guess(ell)
}

pub fn strategy_tree(d: &Dictionary, ell: usize, opts: SolveOptions) -> Result<Option<StrategyTree>> {
    Solver::new(d, opts).strategy_tree(ell)
}

/// The fewest guesses that guarantee a win.
pub fn w_min(d: &Dictionary, opts: SolveOptions) -> Result<usize> {
    Solver::new(d, opts).w_min()
}

pub fn decide_constant_alphabet(d: &Dictionary, ell: usize) -> Result<bool> {
    Solver::new(d, SolveOptions::default()).decide_constant_alphabet(ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Alphabet, DictFormat, Symbol};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dict(text: &str) -> Dictionary {
        Dictionary::parse(text, DictFormat::Chars).unwrap()
    }

    fn modes() -> [SolveOptions; 2] {
        [SolveOptions::default(), SolveOptions::feasible_only()]
    }

    #[test]
    fn base_cases() {
        let single = dict("AB");
        for opts in modes() {
            assert!(decide(&single, 1, opts).unwrap());
            assert!(!decide(&single, 0, opts).unwrap());
            assert_eq!(w_min(&single, opts).unwrap(), 1);
        }
    }

    #[test]
    fn two_words() {
        let d = dict("AA\nBB");
        for opts in modes() {
            assert!(!decide(&d, 1, opts).unwrap());
            assert!(decide(&d, 2, opts).unwrap());
            assert_eq!(w_min(&d, opts).unwrap(), 2);
            let full = FeasibleSet::full(&d);
            assert_eq!(best_guess(&d, &full, 2, opts).unwrap(), Some(0));
            assert_eq!(best_guess(&d, &full, 1, opts).unwrap(), None);
        }
        let tree = strategy_tree(&d, 2, SolveOptions::default()).unwrap().unwrap();
        let StrategyTree::Guess { guess, children } = &tree else {
            panic!("root must guess")
        };
        assert_eq!(*guess, 0);
        assert_eq!(children[&Marking::all_green(2)], StrategyTree::Win);
        assert_eq!(
            children[&Marking::all_gray(2)].root_guess(),
            Some(1),
            "after 00 the tree guesses BB"
        );
        assert_eq!(tree.depth(), 2);
        assert!(strategy_tree(&d, 1, SolveOptions::default()).unwrap().is_none());
    }

    #[test]
    fn singleton_best_guess_and_tree() {
        let d = dict("AA\nBB\nCC");
        let f = FeasibleSet::from_indices(&d, [2]);
        assert_eq!(best_guess(&d, &f, 1, SolveOptions::default()).unwrap(), Some(2));
        let single = dict("XY");
        let tree = strategy_tree(&single, 3, SolveOptions::default()).unwrap().unwrap();
        assert_eq!(tree.depth(), 1);
        assert_eq!(tree.replay(&single, single.word(0)).unwrap(), Some(1));
        let empty = FeasibleSet::from_indices(&d, []);
        assert_eq!(
            best_guess(&d, &empty, 1, SolveOptions::default()),
            Err(Error::EmptyFeasibleSet)
        );
    }

    #[test]
    fn constant_alphabet_shortcut() {
        let d = dict("AAB\nBAC\nCCA");
        let solver = Solver::new(&d, SolveOptions::default());
        assert!(solver.decide_constant_alphabet(5).unwrap());
        assert_eq!(solver.stats().nodes, 0);

        let d = dict("AA\nBB\nCC\nDD");
        assert_eq!(
            decide_constant_alphabet(&d, 2).unwrap(),
            decide(&d, 2, SolveOptions::default()).unwrap()
        );
        assert!(decide_constant_alphabet(&dict("AB"), 1).unwrap());
    }

    #[test]
    fn budget_is_distinct_from_no() {
        let d = dict("AA\nBB\nCC\nDD\nEE\nFF");
        let opts = SolveOptions::default().with_budget(1);
        assert_eq!(decide(&d, 4, opts), Err(Error::BudgetExceeded { budget: 1 }));
        assert!(decide(&d, 6, SolveOptions::default()).unwrap());
    }

    #[test]
    fn informative_outside_word_helps_full_mode() {
        // Three candidates that only an outside word separates in one go.
        let d = dict("AXX\nBXX\nCXX\nABC");
        let f = FeasibleSet::from_indices(&d, [0, 1, 2]);
        assert_eq!(best_guess(&d, &f, 2, SolveOptions::default()).unwrap(), Some(3));
        assert_eq!(best_guess(&d, &f, 2, SolveOptions::feasible_only()).unwrap(), None);
    }

    fn random_dict(rng: &mut ChaCha8Rng, sigma: usize, k: usize, max: usize) -> Dictionary {
        let n = rng.gen_range(1..=max);
        let mut words = std::collections::BTreeSet::new();
        for _ in 0..n {
            words.insert(
                (0..k)
                    .map(|_| rng.gen_range(0..sigma) as Symbol)
                    .collect::<Vec<_>>(),
            );
        }
        let alphabet = Alphabet::new((0..sigma).map(|i| format!("{i}"))).unwrap();
        Dictionary::new(alphabet, words.into_iter().map(Word::new).collect()).unwrap()
    }

    #[test]
    fn monotone_and_mode_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let sigma = rng.gen_range(2..=4);
            let k = rng.gen_range(1..=3);
            let d = random_dict(&mut rng, sigma, k, 14);
            let full = Solver::new(&d, SolveOptions::default());
            let feas = Solver::new(&d, SolveOptions::feasible_only());
            let mut prev = false;
            for ell in 0..=sigma {
                let a = full.decide(ell).unwrap();
                let b = feas.decide(ell).unwrap();
                assert!(!prev || a, "monotonicity");
                assert!(!b || a, "feasible-only win implies full win");
                prev = a;
            }
            assert!(full.decide(sigma).unwrap());
            assert!(feas.decide(sigma).unwrap());
        }
    }

    #[test]
    fn memo_and_parallel_do_not_change_answers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let d = random_dict(&mut rng, 3, 3, 12);
            for mode in [GuessMode::FullDictionary, GuessMode::FeasibleOnly] {
                let base = SolveOptions {
                    guess_mode: mode,
                    ..Default::default()
                };
                let variants = [
                    base,
                    SolveOptions {
                        memo_enabled: false,
                        ..base
                    },
                    SolveOptions {
                        parallel: true,
                        ..base
                    },
                ];
                let answers: Vec<(usize, Option<usize>)> = variants
                    .iter()
                    .map(|&o| {
                        let s = Solver::new(&d, o);
                        let w = s.w_min().unwrap();
                        (w, s.best_guess(w).unwrap())
                    })
                    .collect();
                assert!(answers.windows(2).all(|p| p[0] == p[1]), "{answers:?}");
            }
        }
    }

    #[test]
    fn trees_replay_within_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let d = random_dict(&mut rng, 4, 3, 20);
            for opts in modes() {
                let s = Solver::new(&d, opts);
                let w = s.w_min().unwrap();
                let tree = s.strategy_tree(w).unwrap().expect("W wins");
                assert!(tree.depth() <= w);
                for secret in d.words() {
                    let used = tree.replay(&d, secret).unwrap().expect("tree covers secret");
                    assert!(used <= w);
                }
                if w > 1 {
                    assert!(s.strategy_tree(w - 1).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn tree_json_shape() {
        let d = dict("AA\nBB");
        let tree = strategy_tree(&d, 2, SolveOptions::default()).unwrap().unwrap();
        let v = tree.to_json(&d);
        assert_eq!(v["guess"], "AA");
        assert_eq!(v["children"]["22"], "win");
        assert_eq!(v["children"]["00"]["guess"], "BB");
    }

    #[test]
    fn duplicate_partitions_are_merged() {
        // EE and FF never match any candidate: both leave one class
        let d = dict("AB\nBA\nEE\nFF");
        let f = WordSet::from_indices(4, [0, 1]);
        let s = Solver::with_universe(&d, &f, SolveOptions::default());
        assert_eq!(s.distinct_guesses(), 3);
    }
}
