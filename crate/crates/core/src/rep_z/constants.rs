//! The constants `K₀`, `d_j` and `K` of a `G ≀ Z` representation, and the
//! word-length bounds they yield.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::gpres::GPresentation;
use super::gz::gz_encode;
use super::RepZError;
use crate::automata::{SyncFsa, PAD};
use crate::bounds::{check_bounds, q, BoundsReport, Sample};
use crate::groups::{format_element, DistanceMap, LampState};

/// Radius of the `G`-ball scanned for padding when `G = Z`.
pub const DEFAULT_G_RADIUS: i64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaddingBound {
    pub generator: String,
    /// Largest `||u| − |v||` seen on the `G`-ball.
    pub observed: u64,
    /// Longest run of padded pairs ending in an accepting state; `None` if unbounded.
    pub structural: Option<u64>,
    /// Agreed value, or `None` ("unknown") when the two disagree.
    pub value: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GzConstants {
    pub presentation: &'static str,
    pub k0: u64,
    pub d: Vec<PaddingBound>,
    pub k: Option<u64>,
    pub c: Option<u64>,
    #[serde(rename = "d_const")]
    pub d_const: Option<u64>,
    /// `None` when `K` is unknown and no upper-bound constants were given.
    pub report: Option<BoundsReport>,
}

fn g_ball(gp: GPresentation, radius: i64) -> Vec<LampState> {
    match gp {
        GPresentation::Z2 => vec![LampState::Bit(false), LampState::Bit(true)],
        GPresentation::ZBinary => (-radius..=radius).map(LampState::Int).collect(),
    }
}

/// Longest path of padded pairs into an accepting state over the reachable part.
pub fn longest_padded_tail(m: &SyncFsa) -> Option<u64> {
    let reach = m.reachable();
    let mut edges: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for ((from, p), tos) in &m.transitions {
        if reach.contains(from) && (p[0] == PAD || p[1] == PAD) {
            edges.entry(*from).or_default().extend(tos.iter().copied());
        }
    }
    // Iterated relaxation: the value at a state is the longest padded run
    // from it into acceptance; a path of more than `n` steps means a cycle.
    let n = m.num_states as u64;
    let mut best: BTreeMap<usize, u64> = m.accepting.iter().map(|&a| (a, 0)).collect();
    loop {
        let mut changed = false;
        for (from, tos) in &edges {
            let cand = tos.iter().filter_map(|t| best.get(t)).max().map(|v| v + 1);
            if let Some(c) = cand {
                if best.get(from).is_none_or(|&b| c > b) {
                    if c > n {
                        return None;
                    }
                    best.insert(*from, c);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(reach.iter().filter_map(|s| best.get(s)).copied().max().unwrap_or(0))
}

/// Computes `K₀`, `d_j` and `K` for `gp` and checks the length bounds on
/// `ball` (a ball of `G ≀ Z`). The upper bound `(C+D+2)|w| − 2` is checked
/// only when the caller supplies `(C, D)`.
pub fn gz_constants(gp: GPresentation, ball: &DistanceMap, cd: Option<(u64, u64)>, g_radius: i64) -> Result<GzConstants, RepZError> {
    let k0 = gp.identity_word().len() as u64;
    let values = g_ball(gp, g_radius);
    let mut d = Vec::new();
    for gen in gp.generators() {
        let step = gp.generator_value(gen).ok_or_else(|| RepZError::UnknownGenerator(gen.into()))?;
        let mut observed = 0;
        for v in &values {
            let next = v.mul(&step)?;
            let (Some(u), Some(w)) = (gp.encode(*v), gp.encode(next)) else {
                return Err(RepZError::WrongGroup("lamp value outside G"));
            };
            observed = observed.max(u.len().abs_diff(w.len()) as u64);
        }
        let structural = longest_padded_tail(&gp.generator_fsa(gen)?);
        let value = (structural == Some(observed)).then_some(observed);
        d.push(PaddingBound { generator: gen.to_string(), observed, structural, value });
    }
    let k = d.iter().try_fold(k0, |acc, b| b.value.map(|v| acc.max(v)));
    let lower = k.map(|k| (q(1, k as i64), q(-(k0 as i64), k as i64)));
    let upper = cd.map(|(c, dd)| (q((c + dd + 2) as i64, 1), q(-2, 1)));
    let report = if lower.is_some() || upper.is_some() {
        let samples = ball
            .iter()
            .map(|(g, dist)| Ok(Sample { element: format_element(g), word_len: gz_encode(gp, g)?.len() as u64, length: dist as u64 }))
            .collect::<Result<Vec<_>, RepZError>>()?;
        Some(check_bounds(lower, upper, samples))
    } else {
        None
    };
    Ok(GzConstants { presentation: gp.name(), k0, d, k, c: cd.map(|x| x.0), d_const: cd.map(|x| x.1), report })
}
