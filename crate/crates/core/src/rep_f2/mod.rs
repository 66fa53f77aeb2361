//! The context-free representation of `Z₂ ≀ F₂` by bracketed words.

pub mod bullets;
pub mod language;
pub mod mult;
pub mod rep;
pub mod symbols;
pub mod tree;

use std::fmt;

use thiserror::Error;

use crate::automata::AutomataError;

pub use language::{f2_language_pda, LanguageMachine};
pub use mult::{f2_mult_pda, F2MultPda};
pub use rep::{f2_bounds_check, F2Rep};
pub use tree::{f2_decode, f2_encode};

/// The distinct ways a word can fail to be canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseIssue {
    UnknownSymbol,
    /// An unmatched bracket.
    Unbalanced,
    /// A bracket of the wrong type for its nesting level.
    Misassociated,
    MissingAnchor,
    DuplicateAnchor,
    /// Not exactly one origin and one lamplighter marker.
    MarkerCount,
    /// `(0`, `0)`, `[0` or `0]`.
    ForbiddenZero,
    /// `0` as the first or last letter.
    EdgeZero,
    /// Matched brackets with fewer than two letters between them.
    ShortSegment,
    /// A letter not allowed at its nesting level.
    Misplaced,
    NonCanonical,
}

impl fmt::Display for ParseIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseIssue::UnknownSymbol => "unknown symbol",
            ParseIssue::Unbalanced => "unbalanced brackets",
            ParseIssue::Misassociated => "bracket of the wrong kind for its level",
            ParseIssue::MissingAnchor => "segment without its D/E anchor",
            ParseIssue::DuplicateAnchor => "second anchor in one segment",
            ParseIssue::MarkerCount => "origin and lamplighter must each occur exactly once",
            ParseIssue::ForbiddenZero => "0 next to a bracket",
            ParseIssue::EdgeZero => "0 at the start or end of the word",
            ParseIssue::ShortSegment => "fewer than two letters between matched brackets",
            ParseIssue::Misplaced => "letter not allowed at this level",
            ParseIssue::NonCanonical => "not the canonical representative",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepF2Error {
    #[error("parse error at offset {offset}: {issue}")]
    Parse { offset: usize, issue: ParseIssue },
    #[error("wrong group: {0}")]
    WrongGroup(&'static str),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}
