//! Brute-force references and claim verifiers.
//!
//! Nothing here calls into the solver's search internals: the decision
//! oracle is a literal recursion over every guess and every secret, with its
//! own counting-based marking routine. Everything is capped, and exceeding a
//! cap is an error rather than a long run.

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Dictionary, MarkColor, Symbol, Word};
use crate::reductions::{asc_to_wordle, graph_to_wordle, setcover_to_asc, Graph, SetFamily};
use crate::solver::{GuessMode, SolveOptions, Solver};
use crate::strategies::{run_policy, shrink_violation, Policy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest set family the cover oracles enumerate.
    pub sets: usize,
    /// Largest graph the domination oracle enumerates.
    pub vertices: usize,
    /// Largest dictionary the decision oracle explores.
    pub dictionary: usize,
    /// Largest guess count the decision oracle explores.
    pub guesses: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            sets: 20,
            vertices: 16,
            dictionary: 12,
            guesses: 3,
        }
    }
}

fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        return Err(Error::CapExceeded { what, value, cap });
    }
    Ok(())
}

fn set_masks(f: &SetFamily, caps: &Caps) -> Result<(Vec<u64>, u64)> {
    check_cap("set family size", f.len(), caps.sets)?;
    check_cap("universe size", f.universe(), 64)?;
    let masks = f
        .sets()
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << (e - 1)))
        .collect();
    let full = if f.universe() == 64 {
        u64::MAX
    } else {
        (1u64 << f.universe()) - 1
    };
    Ok((masks, full))
}

/// Smallest-first sub-family of at most `c` sets leaving at most `slack`
/// elements uncovered. Indices are 0-based positions in the family.
fn covering_subfamily(f: &SetFamily, c: usize, slack: u32, caps: &Caps) -> Result<Option<Vec<usize>>> {
    let (masks, full) = set_masks(f, caps)?;
    for size in 0..=c.min(masks.len()) {
        for pick in (0..masks.len()).combinations(size) {
            let union = pick.iter().fold(0u64, |u, &i| u | masks[i]);
            if (full & !union).count_ones() <= slack {
                return Ok(Some(pick));
            }
        }
    }
    Ok(None)
}

/// A sub-family of at most `c` sets covering the universe.
pub fn set_cover_witness(f: &SetFamily, c: usize, caps: &Caps) -> Result<Option<Vec<usize>>> {
    covering_subfamily(f, c, 0, caps)
}

/// A sub-family of at most `c` sets covering all but at most one element.
pub fn asc_witness(f: &SetFamily, c: usize, caps: &Caps) -> Result<Option<Vec<usize>>> {
    covering_subfamily(f, c, 1, caps)
}

pub fn brute_force_set_cover(f: &SetFamily, c: usize, caps: &Caps) -> Result<bool> {
    Ok(set_cover_witness(f, c, caps)?.is_some())
}

pub fn brute_force_asc(f: &SetFamily, c: usize, caps: &Caps) -> Result<bool> {
    Ok(asc_witness(f, c, caps)?.is_some())
}

/// Minimum dominating set, by enumerating vertex subsets in ascending size.
/// The returned vertices are 1-based.
pub fn min_dominating_set(g: &Graph, caps: &Caps) -> Result<Vec<usize>> {
    check_cap("vertex count", g.n(), caps.vertices)?;
    let n = g.n();
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | 1 << u))
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for size in 0..=n {
        for pick in (0..n).combinations(size) {
            if pick.iter().fold(0u32, |m, &v| m | closed[v]) == full {
                return Ok(pick.into_iter().map(|v| v + 1).collect());
            }
        }
    }
    unreachable!("the whole vertex set dominates")
}

pub fn domination_number(g: &Graph, caps: &Caps) -> Result<usize> {
    Ok(min_dominating_set(g, caps)?.len())
}

/// Marking by letter counts: greens first, then each remaining guess
/// position, left to right, turns yellow while unmatched copies of its
/// symbol remain in the secret.
pub fn reference_mark(secret: &[Symbol], guess: &[Symbol]) -> Vec<MarkColor> {
    let mut out = vec![MarkColor::Gray; guess.len()];
    let mut spare: BTreeMap<Symbol, usize> = BTreeMap::new();
    for (i, (&s, &g)) in secret.iter().zip(guess).enumerate() {
        if s == g {
            out[i] = MarkColor::Green;
        } else {
            *spare.entry(s).or_default() += 1;
        }
    }
    for (i, &g) in guess.iter().enumerate() {
        if out[i] == MarkColor::Green {
            continue;
        }
        if let Some(n) = spare.get_mut(&g).filter(|n| **n > 0) {
            *n -= 1;
            out[i] = MarkColor::Yellow;
        }
    }
    out
}

/// Exhaustive game search with no memo and no pruning. For every guess `p`
/// it checks every secret `w`, recursing on the words consistent with the
/// marking `w` gives to `p`.
pub fn brute_force_decide(d: &Dictionary, ell: usize, mode: GuessMode, caps: &Caps) -> Result<bool> {
    check_cap("dictionary size", d.len(), caps.dictionary)?;
    check_cap("guess count", ell, caps.guesses)?;
    let all: Vec<&[Symbol]> = d.words().iter().map(Word::symbols).collect();
    Ok(guesser_wins(&all, &all, ell, mode))
}

fn guesser_wins(dict: &[&[Symbol]], live: &[&[Symbol]], ell: usize, mode: GuessMode) -> bool {
    if ell == 0 {
        return false;
    }
    if live.len() == 1 {
        return true;
    }
    let pool = match mode {
        GuessMode::FullDictionary => dict,
        GuessMode::FeasibleOnly => live,
    };
    pool.iter().any(|&p| {
        live.iter().all(|&w| {
            let m = reference_mark(w, p);
            let rest: Vec<&[Symbol]> = live
                .iter()
                .copied()
                .filter(|&q| reference_mark(q, p) == m)
                .collect();
            guesser_wins(dict, &rest, ell - 1, mode)
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instance: String,
    pub measured: BTreeMap<String, i64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

struct ReportBuilder {
    claim: &'static str,
    instance: String,
    measured: BTreeMap<String, i64>,
    started: Instant,
}

impl ReportBuilder {
    fn new(claim: &'static str, instance: String) -> Self {
        Self {
            claim,
            instance,
            measured: BTreeMap::new(),
            started: Instant::now(),
        }
    }

    fn measure(&mut self, name: &str, value: impl TryInto<i64>) -> &mut Self {
        self.measured
            .insert(name.to_string(), value.try_into().unwrap_or(i64::MAX));
        self
    }

    fn finish(self, verdict: Verdict, witness: Option<Value>, detail: Option<Value>) -> VerificationReport {
        VerificationReport {
            claim: self.claim.to_string(),
            instance: self.instance,
            measured: self.measured,
            verdict,
            witness,
            detail,
            elapsed_ms: self.started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub const CLAIM_DOUBLING: &str = "set_cover_doubling";
pub const CLAIM_ASC_GADGET: &str = "asc_gadget";
pub const CLAIM_DOMINATION: &str = "domination_bound";
pub const CLAIM_ANY_FEASIBLE: &str = "any_feasible_bound";
pub const CLAIM_SOLVER_ORACLE: &str = "solver_oracle";

fn family_summary(f: &SetFamily, c: usize) -> String {
    format!("universe={} sets={:?} c={c}", f.universe(), f.sets())
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn subfamily_json(f: &SetFamily, pick: &[usize]) -> Value {
    Value::Array(pick.iter().map(|&i| json!(f.sets()[i])).collect())
}

/// Set cover with `c` sets exists iff the doubled family has an almost set
/// cover with `c` sets.
pub fn verify_doubling(f: &SetFamily, c: usize, caps: &Caps) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new(CLAIM_DOUBLING, family_summary(f, c));
    let doubled = setcover_to_asc(f);
    let cover = set_cover_witness(f, c, caps)?;
    let almost = asc_witness(&doubled, c, caps)?;
    rb.measure("set_cover", cover.is_some() as i64)
        .measure("almost_set_cover", almost.is_some() as i64);
    let ok = cover.is_some() == almost.is_some();
    let witness = (!ok).then(|| match (&cover, &almost) {
        (Some(pick), _) => json!({ "family": "original", "subfamily": subfamily_json(f, pick) }),
        (_, Some(pick)) => json!({ "family": "doubled", "subfamily": subfamily_json(&doubled, pick) }),
        _ => unreachable!(),
    });
    Ok(rb.finish(verdict(ok), witness, None))
}

/// An almost set cover with `c` sets exists iff the gadget dictionary is
/// winnable in `c + 1` guesses. Inputs whose gadget has repeated words are
/// reported as skipped.
pub fn verify_asc_gadget(f: &SetFamily, c: usize, caps: &Caps) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new(CLAIM_ASC_GADGET, family_summary(f, c));
    let inst = match asc_to_wordle(f, c) {
        Ok(inst) => inst,
        Err(Error::DuplicateWord(w)) => {
            return Ok(rb.finish(Verdict::Skipped, None, Some(json!({ "duplicate_word": w }))));
        }
        Err(e) => return Err(e),
    };
    let almost = asc_witness(f, c, caps)?;
    let solver = Solver::new(&inst.dictionary, SolveOptions::default());
    let wins = solver.decide(inst.max_guesses)?;
    rb.measure("almost_set_cover", almost.is_some() as i64)
        .measure("wordle", wins as i64)
        .measure("words", inst.dictionary.len())
        .measure("max_guesses", inst.max_guesses);
    // second opinion from the exhaustive search when the gadget is small
    let oracle = match brute_force_decide(&inst.dictionary, inst.max_guesses, GuessMode::FullDictionary, caps) {
        Ok(v) => Some(v),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(v) = oracle {
        rb.measure("wordle_oracle", v as i64);
    }
    let ok = almost.is_some() == wins && oracle.is_none_or(|v| v == wins);
    let witness = if ok {
        None
    } else if let Some(pick) = almost.as_ref().filter(|_| !wins) {
        Some(json!({
            "subfamily": subfamily_json(f, pick),
            "dictionary": (0..inst.dictionary.len()).map(|i| inst.dictionary.render_index(i)).collect::<Vec<_>>(),
        }))
    } else if !wins {
        Some(json!({ "solver": wins, "oracle": oracle }))
    } else {
        let tree = solver.strategy_tree(inst.max_guesses)?.expect("decided winnable");
        Some(json!({ "strategy": tree.to_json(&inst.dictionary) }))
    };
    Ok(rb.finish(verdict(ok), witness, None))
}

/// The fewest guesses for the domination gadget of a 4-regular graph lies
/// between its domination number and four more than that.
pub fn verify_domination_bound(g: &Graph, caps: &Caps) -> Result<VerificationReport> {
    let d = graph_to_wordle(g)?;
    verify_domination_bound_with(g, &d, caps)
}

/// As [`verify_domination_bound`], but measured on a caller-supplied dictionary in place
/// of the generated gadget. The report counts words missing from or added
/// to the gadget; the verdict depends on the bound alone.
pub fn verify_domination_bound_with(g: &Graph, d: &Dictionary, caps: &Caps) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new(
        CLAIM_DOMINATION,
        format!("n={} edges={:?}", g.n(), g.edges()),
    );
    let gadget = graph_to_wordle(g)?;
    let dominating = min_dominating_set(g, caps)?;
    let domination = dominating.len();
    let solver = Solver::new(
        d,
        SolveOptions {
            parallel: true,
            ..SolveOptions::default()
        },
    );
    let w = solver.w_min()?;
    let (missing, extra) = gadget_difference(&gadget, d);
    rb.measure("domination_number", domination)
        .measure("min_guesses", w)
        .measure("words", d.len())
        .measure("missing_words", missing.len())
        .measure("extra_words", extra.len());
    let ok = domination <= w && w <= domination + 4;
    let witness = if ok {
        None
    } else if w < domination {
        // a strategy faster than any dominating set
        let tree = solver.strategy_tree(w)?.expect("w_min wins");
        Some(json!({ "strategy": tree.to_json(d), "dominating_set": dominating }))
    } else {
        Some(json!({ "dominating_set": dominating }))
    };
    let detail = (!missing.is_empty() || !extra.is_empty())
        .then(|| json!({ "missing_words": missing, "extra_words": extra }));
    Ok(rb.finish(verdict(ok), witness, detail))
}

fn gadget_difference(gadget: &Dictionary, d: &Dictionary) -> (Vec<String>, Vec<String>) {
    let render_all = |x: &Dictionary| -> Vec<String> {
        let mut v: Vec<String> = x.words().iter().map(|w| render_tokens(x.alphabet(), w)).collect();
        v.sort();
        v
    };
    let (a, b) = (render_all(gadget), render_all(d));
    let missing = a.iter().filter(|w| b.binary_search(w).is_err()).cloned().collect();
    let extra = b.iter().filter(|w| a.binary_search(w).is_err()).cloned().collect();
    (missing, extra)
}

fn render_tokens(alphabet: &Alphabet, w: &Word) -> String {
    w.symbols()
        .iter()
        .map(|&s| alphabet.name(s).unwrap_or("?"))
        .join(",")
}

/// Plays lowest-index-feasible against every secret; passes iff every game
/// is won within σ guesses and each guess shrinks every position's symbol
/// set. The detail carries the per-position symbol sets of the longest game.
pub fn verify_any_feasible_bound(d: &Dictionary) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new(
        CLAIM_ANY_FEASIBLE,
        format!("words={} k={} sigma={}", d.len(), d.k(), d.sigma()),
    );
    let games = d
        .words()
        .par_iter()
        .map(|secret| run_policy(Policy::AnyFeasible, d, secret))
        .collect::<Result<Vec<_>>>()?;
    let mut violations = Vec::new();
    for (secret, t) in d.words().iter().zip(&games) {
        let over = !t.won || t.guess_count() > d.sigma();
        let shrink = t.history.steps().iter().enumerate().find_map(|(i, step)| {
            shrink_violation(&t.symbol_trace[i], &t.symbol_trace[i + 1], &step.guess, &step.marking)
                .map(|pos| (i, pos))
        });
        if over || shrink.is_some() {
            violations.push(json!({
                "secret": d.render(secret),
                "guesses": t.guesses.iter().map(|&g| d.render_index(g)).collect::<Vec<_>>(),
                "won": t.won,
                "shrink_violation": shrink.map(|(step, pos)| json!({ "step": step, "position": pos })),
            }));
        }
    }
    let (worst_secret, worst) = d
        .words()
        .iter()
        .zip(&games)
        .max_by_key(|(_, t)| t.guess_count())
        .expect("dictionary is non-empty");
    rb.measure("sigma", d.sigma())
        .measure("secrets", d.len())
        .measure("max_guesses", worst.guess_count())
        .measure("violations", violations.len());
    let trace: Vec<Vec<Vec<&str>>> = worst
        .symbol_trace
        .iter()
        .map(|per_pos| {
            per_pos
                .iter()
                .map(|set| set.iter().map(|&s| d.alphabet().name(s).unwrap_or("?")).collect())
                .collect()
        })
        .collect();
    let detail = json!({
        "secret": d.render(worst_secret),
        "guesses": worst.guesses.iter().map(|&g| d.render_index(g)).collect::<Vec<_>>(),
        "symbol_sets": trace,
    });
    let ok = violations.is_empty();
    let witness = (!ok).then_some(Value::Array(violations));
    Ok(rb.finish(verdict(ok), witness, Some(detail)))
}

/// The memoized solver agrees with [`brute_force_decide`].
pub fn verify_solver_oracle(d: &Dictionary, ell: usize, mode: GuessMode, caps: &Caps) -> Result<VerificationReport> {
    let words: Vec<String> = (0..d.len()).map(|i| d.render_index(i)).collect();
    let mut rb = ReportBuilder::new(
        CLAIM_SOLVER_ORACLE,
        format!("words={words:?} ell={ell} mode={mode:?}"),
    );
    let oracle = brute_force_decide(d, ell, mode, caps)?;
    let opts = SolveOptions {
        guess_mode: mode,
        ..SolveOptions::default()
    };
    let solver = Solver::new(d, opts);
    let fast = solver.decide(ell)?;
    rb.measure("oracle", oracle as i64).measure("solver", fast as i64);
    let ok = oracle == fast;
    let witness = (!ok).then(|| {
        json!({
            "dictionary": words,
            "max_guesses": ell,
            "guess_mode": mode,
        })
    });
    Ok(rb.finish(verdict(ok), witness, None))
}

/// Every family over `1..=n` (for each `n` up to `max_n`) of between one and
/// `max_sets` distinct subsets whose union is the whole universe.
pub fn set_families(max_n: usize, max_sets: usize) -> Vec<SetFamily> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let full = (1u32 << n) - 1;
        for size in 1..=max_sets {
            for pick in (0..=full).combinations(size) {
                if pick.iter().fold(0, |u, m| u | m) != full {
                    continue;
                }
                let sets = pick
                    .iter()
                    .map(|m| (1..=n).filter(|e| m & 1 << (e - 1) != 0).collect())
                    .collect();
                out.push(SetFamily::new(n, sets).expect("covering family"));
            }
        }
    }
    out
}

/// Every dictionary over an alphabet of exactly `sigma` symbols (named
/// `A`, `B`, ...) with words of length `k` and between one and `max_words`
/// words.
pub fn all_dictionaries(sigma: usize, k: usize, max_words: usize) -> Vec<Dictionary> {
    let alphabet = Alphabet::new((0..sigma).map(|i| ((b'A' + i as u8) as char).to_string()))
        .expect("letters are valid names");
    let universe: Vec<Word> = (0..k)
        .map(|_| 0..sigma as Symbol)
        .multi_cartesian_product()
        .map(Word::new)
        .collect();
    let universe = if k == 0 { vec![] } else { universe };
    let mut out = Vec::new();
    for size in 1..=max_words.min(universe.len()) {
        for pick in universe.iter().cloned().combinations(size) {
            out.push(Dictionary::new(alphabet.clone(), pick).expect("distinct words"));
        }
    }
    out
}

pub fn sweep_doubling(families: &[SetFamily], cs: &[usize], caps: &Caps) -> Result<Vec<VerificationReport>> {
    families
        .par_iter()
        .flat_map_iter(|f| cs.iter().map(move |&c| verify_doubling(f, c, caps)))
        .collect()
}

pub fn sweep_asc_gadget(families: &[SetFamily], cs: &[usize], caps: &Caps) -> Result<Vec<VerificationReport>> {
    families
        .par_iter()
        .flat_map_iter(|f| cs.iter().map(move |&c| verify_asc_gadget(f, c, caps)))
        .collect()
}

/// Solver against oracle on every dictionary with `σ ≤ max_sigma`,
/// `k ≤ max_k`, at most `max_words` words, for `ℓ ≤ max_ell`, in both guess
/// modes.
pub fn sweep_solver_oracle(
    max_sigma: usize,
    max_k: usize,
    max_words: usize,
    max_ell: usize,
    caps: &Caps,
) -> Result<Vec<VerificationReport>> {
    let dicts: Vec<Dictionary> = (1..=max_sigma)
        .flat_map(|s| (1..=max_k).flat_map(move |k| all_dictionaries(s, k, max_words)))
        .collect();
    dicts
        .par_iter()
        .flat_map_iter(|d| {
            (0..=max_ell).flat_map(move |ell| {
                [GuessMode::FullDictionary, GuessMode::FeasibleOnly]
                    .into_iter()
                    .map(move |mode| verify_solver_oracle(d, ell, mode, caps))
            })
        })
        .collect()
}
