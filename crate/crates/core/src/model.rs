//! Value types shared across the engine: alphabets, words, dictionaries,
//! markings and guess histories.
//!
//! Symbols are interned to dense ids (`0..σ`) in alphabet order so that the
//! rest of the crate can index arrays and bitsets by symbol or word.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u16;

/// Surface name of the filler symbol used by the set-cover gadget.
pub const BOTTOM_TOKEN: &str = "_";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    ids: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidSymbol("alphabet has no symbols".into()));
        }
        if names.len() > Symbol::MAX as usize / 2 {
            return Err(Error::InvalidSymbol(format!(
                "alphabet of {} symbols is too large",
                names.len()
            )));
        }
        let mut ids = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            validate_symbol_name(name)?;
            if ids.insert(name.clone(), i as Symbol).is_some() {
                return Err(Error::InvalidSymbol(format!("`{name}` listed twice")));
            }
        }
        Ok(Self { names, ids })
    }

    /// σ, the number of symbols.
    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, symbol: Symbol) -> Option<&str> {
        self.names.get(symbol as usize).map(String::as_str)
    }

    pub fn id(&self, name: &str) -> Option<Symbol> {
        self.ids.get(name).copied()
    }

    /// True when every symbol is a single character, so words can be written
    /// without separators.
    pub fn is_single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }
}

fn validate_symbol_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::InvalidSymbol("empty symbol name".into()));
    }
    if name.contains(',') || name.chars().any(char::is_whitespace) {
        return Err(Error::InvalidSymbol(format!("`{name}` contains a separator")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[Symbol]> for Word {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(symbols: Vec<Symbol>) -> Self {
        Self(symbols)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DictFormat {
    /// One word per line, every character is a symbol.
    Chars,
    /// One word per line, symbols separated by commas.
    Tokens,
}

impl DictFormat {
    /// Tokens if any line carries a comma, chars otherwise.
    pub fn detect(text: &str) -> Self {
        if text.lines().any(|l| l.contains(',')) {
            DictFormat::Tokens
        } else {
            DictFormat::Chars
        }
    }
}

/// A non-empty list of distinct, equal-length words over an alphabet.
///
/// Immutable once built. Word indices are stable and are used as the
/// tie-break order everywhere.
#[derive(Debug, Clone)]
pub struct Dictionary {
    alphabet: Alphabet,
    k: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl PartialEq for Dictionary {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.words == other.words
    }
}

impl Eq for Dictionary {}

impl Dictionary {
    pub fn new(alphabet: Alphabet, words: Vec<Word>) -> Result<Self> {
        let first = words.first().ok_or(Error::EmptyDictionary)?;
        let k = first.len();
        if k == 0 {
            return Err(Error::LengthMismatch {
                line: 1,
                expected: 1,
                found: 0,
            });
        }
        let sigma = alphabet.size();
        let mut index = HashMap::with_capacity(words.len());
        for (i, word) in words.iter().enumerate() {
            if word.len() != k {
                return Err(Error::LengthMismatch {
                    line: i + 1,
                    expected: k,
                    found: word.len(),
                });
            }
            if let Some(&s) = word.symbols().iter().find(|&&s| s as usize >= sigma) {
                return Err(Error::InvalidSymbol(format!(
                    "symbol id {s} out of range for alphabet of size {sigma}"
                )));
            }
        }
        for (i, word) in words.iter().enumerate() {
            if index.insert(word.clone(), i).is_some() {
                return Err(Error::DuplicateWord(render_with(&alphabet, word)));
            }
        }
        Ok(Self {
            alphabet,
            k,
            words,
            index,
        })
    }

    /// Parses a dictionary file. The alphabet is the sorted set of distinct
    /// symbols that occur in it.
    pub fn parse(text: &str, format: DictFormat) -> Result<Self> {
        let mut rows: Vec<Vec<&str>> = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<&str> = match format {
                DictFormat::Chars => line
                    .char_indices()
                    .map(|(i, c)| &line[i..i + c.len_utf8()])
                    .collect(),
                DictFormat::Tokens => line.split(',').map(str::trim).collect(),
            };
            if let Some(expected) = rows.first().map(Vec::len) {
                if row.len() != expected {
                    return Err(Error::LengthMismatch {
                        line: rows.len() + 1,
                        expected,
                        found: row.len(),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::EmptyDictionary);
        }
        let distinct: BTreeSet<&str> = rows.iter().flatten().copied().collect();
        let alphabet = Alphabet::new(distinct)?;
        let words = rows
            .iter()
            .map(|row| {
                Word::new(
                    row.iter()
                        .map(|s| alphabet.id(s).expect("symbol interned above"))
                        .collect(),
                )
            })
            .collect();
        Self::new(alphabet, words)
    }

    pub fn read<R: Read>(mut reader: R, format: DictFormat) -> Result<Self> {
        let mut text = String::new();
        reader
            .read_to_string(&mut text)
            .map_err(|e| Error::InvalidSymbol(format!("unreadable input: {e}")))?;
        Self::parse(&text, format)
    }

    /// Serializes in the given file format, one word per line.
    pub fn to_text(&self, format: DictFormat) -> Result<String> {
        if format == DictFormat::Chars && !self.alphabet.is_single_char() {
            return Err(Error::InvalidSymbol(
                "multi-character symbols need the tokens format".into(),
            ));
        }
        let sep = match format {
            DictFormat::Chars => "",
            DictFormat::Tokens => ",",
        };
        let mut out = String::new();
        for word in &self.words {
            let names: Vec<&str> = word
                .symbols()
                .iter()
                .map(|&s| self.alphabet.name(s).unwrap_or("?"))
                .collect();
            out.push_str(&names.join(sep));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// σ, the alphabet size.
    pub fn sigma(&self) -> usize {
        self.alphabet.size()
    }

    /// Word length.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, index: usize) -> &Word {
        &self.words[index]
    }

    pub fn position(&self, word: &Word) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn render(&self, word: &Word) -> String {
        render_with(&self.alphabet, word)
    }

    pub fn render_index(&self, index: usize) -> String {
        self.render(&self.words[index])
    }

    /// Parses a word whose symbols must all belong to the alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let word = self
            .split_word(text)
            .into_iter()
            .map(|s| {
                self.alphabet
                    .id(s)
                    .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.check_len(Word::new(word))
    }

    /// Parses a guess that may use symbols outside the alphabet. Such symbols
    /// get ids `σ, σ+1, ...`; they never match a dictionary word, so every
    /// position holding one is gray against any secret.
    pub fn parse_guess(&self, text: &str) -> Result<Word> {
        let mut foreign: Vec<&str> = Vec::new();
        let sigma = self.sigma();
        let mut word = Vec::new();
        for s in self.split_word(text) {
            if s.is_empty() {
                return Err(Error::InvalidSymbol("empty symbol in guess".into()));
            }
            let id = match self.alphabet.id(s) {
                Some(id) => id,
                None => {
                    let slot = match foreign.iter().position(|f| *f == s) {
                        Some(p) => p,
                        None => {
                            foreign.push(s);
                            foreign.len() - 1
                        }
                    };
                    (sigma + slot) as Symbol
                }
            };
            word.push(id);
        }
        self.check_len(Word::new(word))
    }

    fn check_len(&self, word: Word) -> Result<Word> {
        if word.len() != self.k {
            return Err(Error::IncompatibleWords {
                left: self.k,
                right: word.len(),
            });
        }
        Ok(word)
    }

    fn split_word<'t>(&self, text: &'t str) -> Vec<&'t str> {
        let text = text.trim();
        if text.contains(',') {
            text.split(',').map(str::trim).collect()
        } else if self.alphabet.is_single_char() {
            text.char_indices()
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        } else {
            vec![text]
        }
    }

    /// Renames symbol `s` to `perm[s]`. `perm` must be a permutation of
    /// `0..σ`; the new alphabet keeps each old name attached to its letter.
    pub fn relabel(&self, perm: &[Symbol]) -> Result<Self> {
        let sigma = self.sigma();
        let mut seen = vec![false; sigma];
        if perm.len() != sigma
            || perm
                .iter()
                .any(|&p| (p as usize) >= sigma || std::mem::replace(&mut seen[p as usize], true))
        {
            return Err(Error::InvalidSymbol("not a permutation of the alphabet".into()));
        }
        let mut names = vec![String::new(); sigma];
        for (old, &new) in perm.iter().enumerate() {
            names[new as usize] = self.alphabet.names[old].clone();
        }
        let words = self
            .words
            .iter()
            .map(|w| Word::new(w.symbols().iter().map(|&s| perm[s as usize]).collect()))
            .collect();
        Self::new(Alphabet::new(names)?, words)
    }
}

fn render_with(alphabet: &Alphabet, word: &Word) -> String {
    let names = word.symbols().iter().map(|&s| alphabet.name(s).unwrap_or("?"));
    if alphabet.is_single_char() {
        names.collect()
    } else {
        names.collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum MarkColor {
    Gray = 0,
    Yellow = 1,
    Green = 2,
}

impl MarkColor {
    pub const ALL: [MarkColor; 3] = [MarkColor::Gray, MarkColor::Yellow, MarkColor::Green];

    pub fn digit(self) -> char {
        match self {
            MarkColor::Gray => '0',
            MarkColor::Yellow => '1',
            MarkColor::Green => '2',
        }
    }

    pub fn from_digit(c: char) -> Option<Self> {
        match c {
            '0' => Some(MarkColor::Gray),
            '1' => Some(MarkColor::Yellow),
            '2' => Some(MarkColor::Green),
            _ => None,
        }
    }
}

/// Per-position feedback for one guess.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Marking(Vec<MarkColor>);

impl Marking {
    pub fn new(colors: Vec<MarkColor>) -> Self {
        Self(colors)
    }

    pub fn all_green(k: usize) -> Self {
        Self(vec![MarkColor::Green; k])
    }

    pub fn all_gray(k: usize) -> Self {
        Self(vec![MarkColor::Gray; k])
    }

    pub fn colors(&self) -> &[MarkColor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_all_green(&self) -> bool {
        self.0.iter().all(|&c| c == MarkColor::Green)
    }

    pub fn to_digits(&self) -> String {
        self.0.iter().map(|c| c.digit()).collect()
    }

    /// Parses a digit string such as `20001`, requiring exactly `k` digits.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let marking = Self::from_digits(text)?;
        if marking.len() != k {
            return Err(Error::MarkingParse {
                text: text.to_string(),
                reason: format!("expected {k} digits, found {}", marking.len()),
            });
        }
        Ok(marking)
    }

    /// Parses a digit string of any non-zero length.
    pub fn from_digits(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::MarkingParse {
                text: text.to_string(),
                reason: "empty marking".into(),
            });
        }
        text.chars()
            .map(|c| {
                MarkColor::from_digit(c).ok_or_else(|| Error::MarkingParse {
                    text: text.to_string(),
                    reason: format!("`{c}` is not one of 0, 1, 2"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

impl From<Marking> for String {
    fn from(m: Marking) -> Self {
        m.to_digits()
    }
}

impl TryFrom<String> for Marking {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Self::from_digits(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub guess: Word,
    pub marking: Marking,
}

/// Guesses made so far with the marking each one received.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct History {
    steps: Vec<Step>,
}

impl History {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, guess: Word, marking: Marking) -> Result<()> {
        if guess.len() != marking.len() {
            return Err(Error::IncompatibleWords {
                left: guess.len(),
                right: marking.len(),
            });
        }
        if let Some(first) = self.steps.first() {
            if first.guess.len() != guess.len() {
                return Err(Error::IncompatibleWords {
                    left: first.guess.len(),
                    right: guess.len(),
                });
            }
        }
        self.steps.push(Step { guess, marking });
        Ok(())
    }

    pub fn pop(&mut self) -> Option<Step> {
        self.steps.pop()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

impl FromIterator<Step> for History {
    fn from_iter<T: IntoIterator<Item = Step>>(iter: T) -> Self {
        Self {
            steps: iter.into_iter().collect(),
        }
    }
}
