//! Exact engine for the Wordle decision problem.
//!
//! The crate covers the feedback rule ([`marking`]), candidate filtering
//! ([`feasibility`]), exact worst-case search ([`solver`]), simple playing
//! policies ([`strategies`]), the hardness gadget generators
//! ([`reductions`]) and brute-force verifiers for them ([`oracles`]).

pub mod assistant;
pub mod bitset;
pub mod error;
pub mod feasibility;
pub mod marking;
pub mod model;
pub mod oracles;
pub mod reductions;
pub mod solver;
pub mod strategies;

pub use error::{Error, Result};
pub use model::{Alphabet, DictFormat, Dictionary, History, MarkColor, Marking, Symbol, Word};
