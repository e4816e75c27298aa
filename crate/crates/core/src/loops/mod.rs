//! Loops on the fattened skeleton: words, realizations, the Goldman–Turaev
//! Lie bialgebra and its BV operator.

pub mod diagram;
pub mod formal;
pub mod goldman;
pub mod sample;
pub mod word;

pub use diagram::{Crossing, Location, LoopDiagram, Passage, Strand};
pub use formal::{FormalSum, WBasis, Wedge, WedgeSum};
pub use goldman::{
    extended_bracket, goldman_bracket, goldman_bracket_words, homology_class, intersection_pairing_h1, turaev_cobracket,
    turaev_cobracket_word, LoopAlgebra,
};
pub use word::{CyclicWord, Letter, PathWord};
