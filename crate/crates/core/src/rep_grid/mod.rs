//! Indexed representation of `Z₂ ≀ Z²` along the square spiral.

pub mod code;
pub mod machines;
pub mod spiral;
pub mod sweep;

use thiserror::Error;

use crate::automata::audit::Searched;
use crate::automata::engine::Machine;
use crate::automata::{completeness, AuditReport, AutomataError, Pair, Representation, RunBounds};
use crate::groups::DistanceMap;

pub use code::{grid_bounds_check, grid_decode, grid_encode, grid_h_fsa, grid_language_fsa, GridBoundsReport, GridRep};
pub use machines::{grid_dir_sa, grid_x_sa, grid_y_sa, transpose_sa};
pub use spiral::{grid_shift, spiral, spiral_inv, Dir, GridPoint};
pub use sweep::{sweep, Relation, SweepReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepGridError {
    #[error("parse error at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },
    #[error("wrong group: {0}")]
    WrongGroup(&'static str),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

/// The relation a generator name stands for.
pub fn relation_of(gen: &str) -> Result<Relation, RepGridError> {
    match gen {
        "h" => Ok(Relation::Toggle),
        _ => Dir::from_generator(gen).map(Relation::Shift).ok_or_else(|| RepGridError::UnknownGenerator(gen.to_string())),
    }
}

/// Completeness over the ball, and soundness by [`sweep`] up to `maxconvlen`.
pub fn grid_relation_audit<M>(machine_id: &str, m: &M, gen: &str, ball: &DistanceMap, maxconvlen: usize) -> Result<AuditReport, RepGridError>
where
    M: Machine<Pair>,
{
    let rel = relation_of(gen)?;
    let rep = GridRep::new();
    let g = rep.spec().generator(gen).ok_or_else(|| RepGridError::UnknownGenerator(gen.to_string()))?;
    let bounds = RunBounds::default();
    let (checked_pairs, missed) = completeness(&Searched(m, bounds), &rep, &g, ball);
    let swept = sweep(m, rel, maxconvlen, &bounds, 16)?;
    Ok(AuditReport {
        machine: machine_id.to_string(),
        generator: gen.to_string(),
        checked_pairs,
        checked_words: usize::try_from(swept.accepted_words).unwrap_or(usize::MAX),
        missed,
        spurious: swept.spurious,
        pass: false,
    }
    .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{bfs_ball, GroupSpec};

    #[test]
    fn audits_on_small_ball() {
        let ball = bfs_ball(&GroupSpec::z2_wr_grid(), 3).unwrap();
        let h = grid_h_fsa().unwrap();
        let r = grid_relation_audit("grid:h", &h, "h", &ball, 12).unwrap();
        assert!(r.pass, "{r:?}");
        for dir in Dir::ALL {
            let m = grid_dir_sa(dir).unwrap();
            let r = grid_relation_audit(dir.generator(), &m, dir.generator(), &ball, 14).unwrap();
            assert!(r.pass, "{:?} {:?}", r.missed.first(), r.spurious.first());
            assert!(r.checked_words > 0);
        }
    }

    #[test]
    fn sweep_catches_the_wrong_relation() {
        let m = grid_dir_sa(Dir::Y).unwrap();
        let r = sweep(&m, Relation::Shift(Dir::X), 8, &RunBounds::default(), 4).unwrap();
        assert!(!r.spurious.is_empty());
        let h = grid_h_fsa().unwrap();
        let r = sweep(&h, Relation::Shift(Dir::X), 6, &RunBounds::default(), 4).unwrap();
        assert_eq!(r.spurious.len(), 4);
    }
}
