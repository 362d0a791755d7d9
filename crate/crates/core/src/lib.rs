//! Braid words for pretzel links.
//!
//! Converts any pretzel link `P(a_1, ..., a_n)` into an explicit braid word
//! whose closure is that link, using closed-form templates selected by the
//! number of entries and their parities, and machine-verifies each output
//! against independent link invariants: exact Kauffman brackets computed
//! two ways, component counts, and the Seifert-circle complexity criterion.

pub mod braid;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod pretzel;
pub mod render;

pub use braid::{BraidWord, IntSeq, Permutation};
pub use error::{Error, Result};
pub use pretzel::{CaseTag, CountPrediction, Pretzel, Synthesis};
