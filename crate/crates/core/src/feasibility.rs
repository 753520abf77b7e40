//! Which dictionary words can still be the secret after a history.
//!
//! Two predicates are provided. [`is_feasible_exact`] re-marks the candidate
//! against every past guess and demands the observed markings back; it is
//! sound with repeated letters and is the default everywhere. The
//! [`is_feasible_by_rules`] predicate checks the four per-position rules (gray
//! exclusion, yellow position exclusion, green forcing, yellow presence).
//! Those rules carry no multiplicity information, so they accept a superset
//! of the exact answer; [`divergence_scan`] enumerates where the two differ.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::WordSet;
use crate::error::{Error, Result};
use crate::marking::{mark, mark_into};
use crate::model::{Dictionary, History, MarkColor, Marking, Symbol, Word};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FeasibilityMode {
    #[default]
    Exact,
    Rules,
}

/// A subset of a dictionary's words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSet<'d> {
    dict: &'d Dictionary,
    members: WordSet,
}

impl<'d> FeasibleSet<'d> {
    pub fn full(dict: &'d Dictionary) -> Self {
        Self {
            dict,
            members: WordSet::full(dict.len()),
        }
    }

    pub fn from_members(dict: &'d Dictionary, members: WordSet) -> Self {
        assert_eq!(members.capacity(), dict.len());
        Self { dict, members }
    }

    pub fn from_indices(dict: &'d Dictionary, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::from_members(dict, WordSet::from_indices(dict.len(), indices))
    }

    pub fn dictionary(&self) -> &'d Dictionary {
        self.dict
    }

    pub fn members(&self) -> &WordSet {
        &self.members
    }

    pub fn into_members(self) -> WordSet {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(index)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &'d Word> + '_ {
        let dict = self.dict;
        self.members.iter().map(move |i| dict.word(i))
    }
}

fn check_history(k: usize, h: &History) -> Result<()> {
    for step in h.steps() {
        if step.guess.len() != k || step.marking.len() != k {
            return Err(Error::IncompatibleWords {
                left: k,
                right: step.guess.len().max(step.marking.len()),
            });
        }
    }
    Ok(())
}

pub fn is_feasible_exact(candidate: &Word, h: &History) -> Result<bool> {
    check_history(candidate.len(), h)?;
    let mut scratch = vec![MarkColor::Gray; candidate.len()];
    Ok(exact_unchecked(candidate, h, &mut scratch))
}

fn exact_unchecked(candidate: &Word, h: &History, scratch: &mut [MarkColor]) -> bool {
    h.steps().iter().all(|step| {
        mark_into(candidate.symbols(), step.guess.symbols(), scratch);
        scratch == step.marking.colors()
    })
}

/// The four per-position rules, applied to every step of `h`:
///
/// 1. a symbol marked gray does not occur in the candidate. When the same
///    guess also marked that symbol green or yellow somewhere, the gray only
///    speaks for its own position, and the candidate must differ there.
/// 2. a yellow symbol does not sit at the position where it was marked.
/// 3. a green symbol sits at the position where it was marked.
/// 4. a yellow symbol occurs in the candidate at some other position.
pub fn is_feasible_by_rules(candidate: &Word, h: &History) -> Result<bool> {
    check_history(candidate.len(), h)?;
    Ok(h.steps()
        .iter()
        .all(|step| rules_step(candidate.symbols(), step.guess.symbols(), step.marking.colors())))
}

fn rules_step(cand: &[Symbol], guess: &[Symbol], colors: &[MarkColor]) -> bool {
    let k = cand.len();
    for i in 0..k {
        let g = guess[i];
        match colors[i] {
            MarkColor::Gray => {
                let also_hit = (0..k).any(|j| guess[j] == g && colors[j] != MarkColor::Gray);
                if also_hit {
                    if cand[i] == g {
                        return false;
                    }
                } else if cand.contains(&g) {
                    return false;
                }
            }
            MarkColor::Yellow => {
                if cand[i] == g {
                    return false;
                }
                if !(0..k).any(|t| t != i && cand[t] == g) {
                    return false;
                }
            }
            MarkColor::Green => {
                if cand[i] != g {
                    return false;
                }
            }
        }
    }
    true
}

pub fn filter_feasible<'d>(
    d: &'d Dictionary,
    h: &History,
    mode: FeasibilityMode,
) -> Result<FeasibleSet<'d>> {
    check_history(d.k(), h)?;
    let keep: Vec<bool> = d
        .words()
        .par_iter()
        .map_init(
            || vec![MarkColor::Gray; d.k()],
            |scratch, w| match mode {
                FeasibilityMode::Exact => exact_unchecked(w, h, scratch),
                FeasibilityMode::Rules => h
                    .steps()
                    .iter()
                    .all(|s| rules_step(w.symbols(), s.guess.symbols(), s.marking.colors())),
            },
        )
        .collect();
    Ok(FeasibleSet::from_indices(
        d,
        keep.iter().positions(|&k| k),
    ))
}

/// Splits `f` by the marking each member would give `guess`.
pub fn partition_by_marking<'d>(
    f: &FeasibleSet<'d>,
    guess: &Word,
) -> Result<BTreeMap<Marking, FeasibleSet<'d>>> {
    let d = f.dictionary();
    if guess.len() != d.k() {
        return Err(Error::IncompatibleWords {
            left: d.k(),
            right: guess.len(),
        });
    }
    let mut blocks: BTreeMap<Marking, WordSet> = BTreeMap::new();
    for i in f.indices() {
        let m = mark(d.word(i), guess)?;
        blocks
            .entry(m)
            .or_insert_with(|| WordSet::empty(d.len()))
            .insert(i);
    }
    Ok(blocks
        .into_iter()
        .map(|(m, s)| (m, FeasibleSet::from_members(d, s)))
        .collect())
}

/// One (secret, guess, candidate) triple where the two predicates disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub secret: Vec<Symbol>,
    pub guess: Vec<Symbol>,
    pub marking: String,
    pub candidate: Vec<Symbol>,
    pub exact: bool,
    pub rules: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DivergenceReport {
    pub sigma: usize,
    pub k: usize,
    pub triples_checked: usize,
    /// The per-position rules accept a word that re-marking rejects.
    pub rules_only: usize,
    /// Re-marking accepts a word the per-position rules reject. Must stay zero.
    pub exact_only: usize,
    pub examples: Vec<Divergence>,
}

/// Compares both predicates on every single-step history `(guess,
/// mark(secret, guess))` and every candidate over `σ^k`.
///
/// A dictionary only selects which triples occur, so scanning all triples
/// covers every dictionary over the same alphabet and length.
pub fn divergence_scan(sigma: usize, k: usize, keep_examples: usize) -> DivergenceReport {
    let words: Vec<Word> = (0..k)
        .map(|_| 0..sigma as Symbol)
        .multi_cartesian_product()
        .map(Word::new)
        .collect();
    let mut report = DivergenceReport {
        sigma,
        k,
        ..Default::default()
    };
    for secret in &words {
        for guess in &words {
            let m = mark(secret, guess).expect("equal lengths");
            let mut h = History::new();
            h.push(guess.clone(), m.clone()).expect("equal lengths");
            for candidate in &words {
                report.triples_checked += 1;
                let exact = is_feasible_exact(candidate, &h).expect("equal lengths");
                let rules = is_feasible_by_rules(candidate, &h).expect("equal lengths");
                if exact == rules {
                    continue;
                }
                if rules {
                    report.rules_only += 1;
                } else {
                    report.exact_only += 1;
                }
                if report.examples.len() < keep_examples {
                    report.examples.push(Divergence {
                        secret: secret.symbols().to_vec(),
                        guess: guess.symbols().to_vec(),
                        marking: m.to_digits(),
                        candidate: candidate.symbols().to_vec(),
                        exact,
                        rules,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marking::simulate_game;
    use crate::model::DictFormat;
    use proptest::prelude::*;

    const CANDIDATES: &str = "ABBEY\nANNEX\nAMAZE\nGAMES\nKEEPS";

    fn algae_history(d: &Dictionary) -> History {
        let mut h = History::new();
        h.push(
            d.parse_guess("ALGAE").unwrap(),
            Marking::parse("20001", 5).unwrap(),
        )
        .unwrap();
        h
    }

    #[test]
    fn worked_example_both_modes() {
        let d = Dictionary::parse(CANDIDATES, DictFormat::Chars).unwrap();
        let h = algae_history(&d);
        for (word, expected) in [
            ("ABBEY", true),
            ("ANNEX", true),
            ("AMAZE", false),
            ("GAMES", false),
            ("KEEPS", false),
        ] {
            let w = d.parse_word(word).unwrap();
            assert_eq!(is_feasible_exact(&w, &h).unwrap(), expected, "{word} exact");
            assert_eq!(is_feasible_by_rules(&w, &h).unwrap(), expected, "{word} rules");
        }
        for mode in [FeasibilityMode::Exact, FeasibilityMode::Rules] {
            let f = filter_feasible(&d, &h, mode).unwrap();
            let names: Vec<String> = f.words().map(|w| d.render(w)).collect();
            assert_eq!(names, ["ABBEY", "ANNEX"]);
        }
    }

    #[test]
    fn empty_history_keeps_everything() {
        let d = Dictionary::parse(CANDIDATES, DictFormat::Chars).unwrap();
        let h = History::new();
        for w in d.words() {
            assert!(is_feasible_exact(w, &h).unwrap());
            assert!(is_feasible_by_rules(w, &h).unwrap());
        }
        assert_eq!(filter_feasible(&d, &h, FeasibilityMode::Exact).unwrap().len(), 5);
    }

    #[test]
    fn full_game_replay_leaves_secret() {
        let d = Dictionary::parse(
            "ABBEY\nALGAE\nKEEPS\nORBIT\nBRIBE\nABBOT\nANNEX\nAMAZE\nGAMES\nKEBAB\nBABES",
            DictFormat::Chars,
        )
        .unwrap();
        let guesses: Vec<Word> = ["ALGAE", "KEEPS", "ORBIT", "BRIBE", "ABBOT", "ABBEY"]
            .iter()
            .map(|g| d.parse_word(g).unwrap())
            .collect();
        let secret = d.parse_word("ABBEY").unwrap();
        let game = simulate_game(&secret, &guesses).unwrap();
        let f = filter_feasible(&d, &game.history, FeasibilityMode::Exact).unwrap();
        assert_eq!(f.indices().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn partition_examples() {
        let d = Dictionary::parse(CANDIDATES, DictFormat::Chars).unwrap();
        let full = FeasibleSet::full(&d);
        let guess = d.word(2).clone();
        let blocks = partition_by_marking(&full, &guess).unwrap();
        let green = &blocks[&Marking::all_green(5)];
        assert_eq!(green.indices().collect::<Vec<_>>(), [2]);

        let pair = FeasibleSet::from_indices(&d, [0, 1]);
        let blocks = partition_by_marking(&pair, d.word(0)).unwrap();
        let annex_vs_abbey = mark(d.word(1), d.word(0)).unwrap();
        assert_eq!(annex_vs_abbey.to_digits(), "20020");
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[&annex_vs_abbey].indices().collect::<Vec<_>>(), [1]);
        assert_eq!(blocks[&Marking::all_green(5)].indices().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn incompatible_history() {
        let d = Dictionary::parse(CANDIDATES, DictFormat::Chars).unwrap();
        let mut h = History::new();
        h.push(Word::new(vec![0, 0]), Marking::all_gray(2)).unwrap();
        assert!(filter_feasible(&d, &h, FeasibilityMode::Exact).is_err());
        assert!(is_feasible_exact(d.word(0), &h).is_err());
        assert!(is_feasible_by_rules(d.word(0), &h).is_err());
        let full = FeasibleSet::full(&d);
        assert!(partition_by_marking(&full, &Word::new(vec![0])).is_err());
    }

    #[test]
    fn exhaustive_divergence_scan() {
        let mut total_rules_only = 0;
        for sigma in 1..=3 {
            for k in 1..=3 {
                let report = divergence_scan(sigma, k, 5);
                assert_eq!(report.triples_checked, sigma.pow(3 * k as u32));
                assert_eq!(report.exact_only, 0, "per-position rules must be necessary: {report:?}");
                total_rules_only += report.rules_only;
            }
        }
        // repeated letters make the per-position rules strictly weaker
        assert!(total_rules_only > 0);
        let report = divergence_scan(3, 3, 20);
        let path = std::env::temp_dir().join("feasibility_divergence_s3_k3.json");
        std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();
    }

    fn random_dictionary() -> impl Strategy<Value = Dictionary> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(sigma, k)| {
            prop::collection::btree_set(prop::collection::vec(0..sigma as Symbol, k), 1..25)
                .prop_map(move |words| {
                    let alphabet = crate::model::Alphabet::new(
                        (0..sigma).map(|i| ((b'a' + i as u8) as char).to_string()),
                    )
                    .unwrap();
                    Dictionary::new(alphabet, words.into_iter().map(Word::new).collect()).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn partition_is_disjoint_cover(d in random_dictionary(), pick in any::<prop::sample::Index>(), mask in any::<u64>()) {
            let f = FeasibleSet::from_indices(&d, (0..d.len()).filter(|i| mask >> (i % 64) & 1 == 1));
            let guess = d.word(pick.index(d.len())).clone();
            let blocks = partition_by_marking(&f, &guess).unwrap();
            let mut union = WordSet::empty(d.len());
            for (m, block) in &blocks {
                prop_assert!(!block.is_empty());
                prop_assert!(block.members().is_disjoint(&union));
                union.union_with(block.members());
                for w in block.words() {
                    prop_assert_eq!(&mark(w, &guess).unwrap(), m);
                }
            }
            prop_assert_eq!(&union, f.members());
        }

        #[test]
        fn secret_stays_feasible_in_both_modes(d in random_dictionary(), s in any::<prop::sample::Index>(), gs in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
            let secret = d.word(s.index(d.len())).clone();
            let guesses: Vec<Word> = gs.iter().map(|g| d.word(g.index(d.len())).clone()).collect();
            let game = simulate_game(&secret, &guesses).unwrap();
            let mut prefix = History::new();
            for step in game.history.steps() {
                prefix.push(step.guess.clone(), step.marking.clone()).unwrap();
                prop_assert!(is_feasible_exact(&secret, &prefix).unwrap());
                prop_assert!(is_feasible_by_rules(&secret, &prefix).unwrap());
                // exact implies rules for every word
                for w in d.words() {
                    if is_feasible_exact(w, &prefix).unwrap() {
                        prop_assert!(is_feasible_by_rules(w, &prefix).unwrap());
                    }
                }
            }
        }

        #[test]
        fn parallel_filter_matches_sequential(d in random_dictionary(), s in any::<prop::sample::Index>(), g in any::<prop::sample::Index>()) {
            let secret = d.word(s.index(d.len()));
            let guess = d.word(g.index(d.len())).clone();
            let mut h = History::new();
            h.push(guess.clone(), mark(secret, &guess).unwrap()).unwrap();
            let f = filter_feasible(&d, &h, FeasibilityMode::Exact).unwrap();
            let seq: Vec<usize> = (0..d.len()).filter(|&i| is_feasible_exact(d.word(i), &h).unwrap()).collect();
            prop_assert_eq!(f.indices().collect::<Vec<_>>(), seq);
        }
    }
}
