//! Stammering sequences: words, automatic and morphic sequences, subword
//! complexity, repetition witnesses, expansions and approximation audits.

pub mod approximants;
pub mod automata;
pub mod complexity;
pub mod error;
pub mod expansions;
pub mod morphisms;
pub mod numeric;
pub mod poly;
pub mod stammer;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Exponent, SequenceSource, Symbol, Word};
