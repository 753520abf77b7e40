//! Instance generators for the three hardness constructions:
//!
//! * set cover → almost set cover, by doubling every element;
//! * almost set cover → Wordle, with one element-word per element and one
//!   set-word per set, played with `c + 1` guesses;
//! * 4-regular graph → Wordle with five-letter words, where the optimum
//!   number of guesses tracks the domination number.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Alphabet, Dictionary, Symbol, Word, BOTTOM_TOKEN};

/// Surface name of the shared "member" symbol in set-cover gadgets.
pub const ONE_TOKEN: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawSetFamily {
    universe: usize,
    sets: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawSetFamily::deserialize(de)?;
        SetFamily::new(raw.universe, raw.sets).map_err(serde::de::Error::custom)
    }
}

impl SetFamily {
    /// Elements are `1..=universe`; every element must belong to some set.
    /// Sets are normalized to sorted, duplicate-free lists.
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidSetFamily("universe must be non-empty".into()));
        }
        let mut covered = vec![false; universe + 1];
        let mut normalized = Vec::with_capacity(sets.len());
        for set in sets {
            let set: BTreeSet<usize> = set.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&e| e == 0 || e > universe) {
                return Err(Error::InvalidSetFamily(format!(
                    "element {bad} outside 1..={universe}"
                )));
            }
            for &e in &set {
                covered[e] = true;
            }
            normalized.push(set.into_iter().collect());
        }
        if let Some(e) = (1..=universe).find(|&e| !covered[e]) {
            return Err(Error::InvalidSetFamily(format!(
                "element {e} is not in the union of the sets"
            )));
        }
        Ok(Self {
            universe,
            sets: normalized,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSetFamily(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// 0-based sorted neighbor lists.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from 1-based edges. Self-loops and repeated edges are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} outside 1..={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !adj[u - 1].insert(v - 1) || !adj[v - 1].insert(u - 1) {
                return Err(Error::InvalidGraph(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(Self {
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Parses `n m` followed by `m` lines `u v`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidGraph("missing `n m` header".into()))?;
        let (n, m) = parse_pair(header)?;
        let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(Error::InvalidGraph(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Self::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// 1-based edges with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    /// Circulant graph: vertex `i` is adjacent to `i ± o (mod n)` for every
    /// offset `o`.
    pub fn circulant(n: usize, offsets: &[usize]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for &o in offsets {
                let j = (i + o) % n;
                if i != j {
                    edges.insert((i.min(j) + 1, i.max(j) + 1));
                }
            }
        }
        Self::from_edges(n, &edges.into_iter().collect::<Vec<_>>())
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..n).map(|u| (u, u + 1)).collect();
        Self::from_edges(n, &edges).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// 0-based neighbors of 0-based vertex `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let nums: Vec<usize> = line
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::InvalidGraph(format!("`{t}` is not a number")))
        })
        .collect::<Result<_>>()?;
    match nums[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::InvalidGraph(format!("expected two numbers in `{line}`"))),
    }
}

/// Replaces each element `u` by the pair `2u - 1, 2u`.
pub fn setcover_to_asc(f: &SetFamily) -> SetFamily {
    let sets = f
        .sets
        .iter()
        .map(|s| s.iter().flat_map(|&u| [2 * u - 1, 2 * u]).collect())
        .collect();
    SetFamily::new(2 * f.universe, sets).expect("doubling keeps the family valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordleInstance {
    pub dictionary: Dictionary,
    pub max_guesses: usize,
}

/// Almost-set-cover gadget. Alphabet `_, 1, s1..sn`; words have length `n`.
/// Element-word `i` holds `1` at position `i` and `s_i` elsewhere; the
/// set-word of `S` holds `1` on members of `S` and `_` elsewhere. Element
/// words come first, then set words in family order.
pub fn asc_to_wordle(f: &SetFamily, c: usize) -> Result<WordleInstance> {
    if c == 0 {
        return Err(Error::InvalidSetFamily("c must be at least 1".into()));
    }
    let n = f.universe;
    let mut names = vec![BOTTOM_TOKEN.to_string(), ONE_TOKEN.to_string()];
    names.extend((1..=n).map(|i| format!("s{i}")));
    let alphabet = Alphabet::new(names)?;
    let (bottom, one) = (0 as Symbol, 1 as Symbol);
    let element_symbol = |i: usize| (i + 1) as Symbol;

    let mut words = Vec::with_capacity(n + f.len());
    for i in 1..=n {
        words.push(Word::new(
            (1..=n)
                .map(|j| if i == j { one } else { element_symbol(i) })
                .collect(),
        ));
    }
    for set in &f.sets {
        words.push(Word::new(
            (1..=n)
                .map(|j| if set.binary_search(&j).is_ok() { one } else { bottom })
                .collect(),
        ));
    }
    Ok(WordleInstance {
        dictionary: Dictionary::new(alphabet, words)?,
        max_guesses: c + 1,
    })
}

/// Domination gadget for a 4-regular graph. For each vertex `v` (named by its
/// 1-based id) there is `w_v = v, neighbors ascending` and `w'_v = vvvvv`.
/// All `w_v` come first, then all `w'_v`.
pub fn graph_to_wordle(g: &Graph) -> Result<Dictionary> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) != 4) {
        return Err(Error::NotFourRegular {
            vertex: v + 1,
            degree: g.degree(v),
        });
    }
    let alphabet = Alphabet::new((1..=g.n()).map(|v| v.to_string()))?;
    let mut words = Vec::with_capacity(2 * g.n());
    for v in 0..g.n() {
        let mut w = vec![v as Symbol];
        w.extend(g.neighbors(v).iter().map(|&u| u as Symbol));
        words.push(Word::new(w));
    }
    for v in 0..g.n() {
        words.push(Word::new(vec![v as Symbol; 5]));
    }
    Dictionary::new(alphabet, words)
}

/// Sidecar written next to generated instances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub source: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_guesses: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub words: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
}
