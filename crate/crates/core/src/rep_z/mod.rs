//! Cayley automatic representations of `Z₂ ≀ Z` and `G ≀ Z`.

pub mod constants;
pub mod gpres;
pub mod gz;
pub mod lamplighter;

use thiserror::Error;

use crate::automata::AutomataError;
use crate::groups::GroupError;

pub use constants::{gz_constants, GzConstants};
pub use gpres::GPresentation;
pub use gz::{gz_decode, gz_encode, gz_mult_fsa, gz_to_ll, GzRep};
pub use lamplighter::{ll_decode, ll_encode, ll_length, ll_mult_fsa, ll_normal_form, LlRep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepZError {
    #[error("parse error at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },
    #[error("wrong group: {0}")]
    WrongGroup(&'static str),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unknown: {0}")]
    Unknown(String),
}
