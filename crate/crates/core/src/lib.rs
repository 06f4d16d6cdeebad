//! Decision procedures for quantified propositional Gödel logic over the
//! truth-value set `{1 - 1/n : n >= 1} ∪ {1}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`syntax`]: formulas, parsing, printing, substitution and syntactic metrics.
//! * [`semantics`]: exact rank-encoded truth values and brute-force evaluation
//!   over finite and infinite truth-value sets.
//! * [`chains`]: `o`-normal forms, `o`-chains and chain/minimal normal forms.
//! * [`qelim`]: quantifier elimination, ground classification, the decision
//!   procedure and its verifiable rewrite trace.
//! * [`s1s`]: the reduction to the monadic second-order theory of one successor.
//! * [`cli`]: the `gqp` command-line front end.

pub mod chains;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod qelim;
pub mod s1s;
pub mod semantics;
pub mod syntax;

pub use error::{Error, Result};
pub use qelim::{decide, Trace, TraceStep, Verdict};
pub use semantics::{Space, TruthValue, Valuation};
pub use syntax::{Base, CircTerm, Formula};

/// Caps on the brute-force enumerations performed by the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of valuations any exhaustive check may visit.
    pub max_valuations: u64,
    /// Maximum number of chains any normal-form construction may produce.
    pub max_chains: u64,
}

impl Limits {
    pub const DEFAULT_MAX_VALUATIONS: u64 = 10_000_000;
    pub const DEFAULT_MAX_CHAINS: u64 = 1_000_000;
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_valuations: Self::DEFAULT_MAX_VALUATIONS,
            max_chains: Self::DEFAULT_MAX_CHAINS,
        }
    }
}
