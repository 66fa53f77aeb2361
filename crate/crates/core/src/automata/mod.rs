//! Machine models over plain and convolution alphabets, language
//! enumeration, relation audits and serialization.

pub mod audit;
pub mod engine;
pub mod fsa;
pub mod pda;
pub mod serialize;
pub mod stack;
pub mod symbols;
pub mod sync;

use thiserror::Error;

pub use audit::{check_related, completeness, relation_audit, AuditReport, MissedPair, RelationMachine, Representation, SpuriousWord};
pub use engine::Machine;
pub use fsa::{fsa_run, Fsa, SyncFsa};
pub use pda::{materialize_pda, pda_run, Configs, Move, Pda, PushdownMachine};
pub use stack::{sa_run, SaAction, StackAutomaton};
pub use symbols::{convolve, deconvolve, render_word, ConvolutionWord, Pair, Symbol, SymbolTable, PAD};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomataError {
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("invalid machine: {0}")]
    InvalidTable(String),
    #[error("illegal stack action: {0}")]
    IllegalAction(String),
    #[error("run bound exceeded: {bound} (limit {limit})")]
    BoundExceeded { bound: &'static str, limit: usize },
    #[error("resource cap exceeded: {what} (limit {limit})")]
    Cap { what: &'static str, limit: usize },
    #[error("nondeterministic configuration: {0}")]
    Nondeterministic(String),
}

/// Limits for pushdown and stack automaton runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunBounds {
    pub max_silent: usize,
    /// `None` means `10·|input| + 16`.
    pub max_stack: Option<usize>,
}

impl Default for RunBounds {
    fn default() -> Self {
        RunBounds { max_silent: 1000, max_stack: None }
    }
}

impl RunBounds {
    pub fn max_height(&self, input_len: usize) -> usize {
        self.max_stack.unwrap_or(10 * input_len + 16)
    }
}

/// Default ceiling on the number of words `enumerate_accepted` may return.
pub const DEFAULT_ENUM_CAP: usize = 2_000_000;
