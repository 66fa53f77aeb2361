//! Exhaustive soundness check up to a convolution length.
//!
//! Enumerating accepted convolutions is hopeless at length 30, but whether
//! `u ⊗ v` is a genuine related pair only depends on a small summary of the
//! word read so far. Breadth-first search over (configuration set, summary)
//! pairs therefore covers every word of each length at once.

use std::collections::HashMap;
use std::hash::Hash;

use super::spiral::{spiral, Dir};
use crate::automata::engine::{self, Machine};
use crate::automata::{AutomataError, ConvolutionWord, Pair, RunBounds, SpuriousWord, PAD};

/// The relation being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Toggle,
    Shift(Dir),
}

/// What one tape has shown so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
struct Tape {
    started: bool,
    ended: bool,
    zero: bool,
    /// Position and lamp of its `C`.
    light: Option<(u32, bool)>,
    /// The other tape's lamp at that position.
    other_lamp: bool,
}

/// `None` once the word can no longer be a related pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Summary(Option<[Tape; 2]>);

fn lamp(c: u8) -> bool {
    matches!(c, b'1' | b'c')
}

impl Summary {
    fn start() -> Summary {
        Summary(Some([Tape::default(); 2]))
    }

    fn step(self, pos: u32, p: Pair) -> Summary {
        let Some(mut t) = self.0 else { return self };
        if p == [PAD, PAD] {
            return Summary(None);
        }
        let mut lights = [false; 2];
        for i in 0..2 {
            let c = p[i];
            let tape = &mut t[i];
            if c == PAD {
                if !tape.started {
                    return Summary(None);
                }
                tape.ended = true;
                continue;
            }
            if tape.ended || !matches!(c, b'0' | b'1' | b'C' | b'c') {
                return Summary(None);
            }
            tape.started = true;
            tape.zero = c == b'0';
            if matches!(c, b'C' | b'c') {
                if tape.light.is_some() {
                    return Summary(None);
                }
                tape.light = Some((pos, c == b'c'));
                tape.other_lamp = lamp(p[1 - i]);
                lights[i] = true;
            }
        }
        if !lights[0] && !lights[1] && lamp(p[0]) != lamp(p[1]) {
            return Summary(None);
        }
        Summary(Some(t))
    }

    fn verdict(self, rel: Relation) -> Result<(), String> {
        let t = self.0.ok_or("malformed, extra lamplighter, or lamps differ away from the lamplighters")?;
        for (i, tape) in t.iter().enumerate() {
            if !tape.started || tape.light.is_none() {
                return Err(format!("tape {} has no lamplighter", i + 1));
            }
            if tape.zero {
                return Err(format!("tape {} ends with 0", i + 1));
            }
        }
        let ((ku, lu), (kv, lv)) = (t[0].light.unwrap(), t[1].light.unwrap());
        let (pu, pv) = (spiral(ku as u64), spiral(kv as u64));
        match rel {
            Relation::Toggle => {
                if ku != kv || lu == lv {
                    return Err("not a single toggle at the lamplighter".into());
                }
            }
            Relation::Shift(d) => {
                let (dx, dy) = d.unit();
                if pv != (pu.0 + dx, pu.1 + dy) {
                    return Err(format!("lamplighter moves {pu:?} -> {pv:?}"));
                }
                if lu != t[0].other_lamp || lv != t[1].other_lamp {
                    return Err("lamp changes at a lamplighter cell".into());
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    /// Accepted words of length `1..=maxlen`; exact for deterministic machines.
    pub accepted_words: u128,
    /// Distinct (configuration set, summary) classes visited.
    pub classes: usize,
    pub spurious: Vec<SpuriousWord>,
}

fn closed<M: Machine<Pair>>(m: &M, set: Vec<M::Config>, b: &RunBounds, max_height: usize) -> Result<Vec<M::Config>, AutomataError> {
    let cl = engine::closure(m, set, b, max_height);
    if let Some(e) = cl.exceeded {
        return Err(e);
    }
    let mut out = cl.configs;
    out.sort_by_cached_key(|c| format!("{c:?}"));
    Ok(out)
}

/// (configuration set, summary) -> (word count, least witness)
type Layer<C> = HashMap<(Vec<C>, Summary), (u128, Vec<Pair>)>;

/// Checks every accepted convolution of length `≤ maxlen` against `rel`,
/// keeping at most `keep` counterexamples.
pub fn sweep<M>(m: &M, rel: Relation, maxlen: usize, b: &RunBounds, keep: usize) -> Result<SweepReport, AutomataError>
where
    M: Machine<Pair>,
    M::Config: Hash + Eq,
{
    let max_height = b.max_height(maxlen);
    let alphabet = m.alphabet();
    let root = closed(m, vec![m.initial()], b, max_height)?;
    let mut layer: Layer<M::Config> = HashMap::from([((root, Summary::start()), (1, vec![]))]);
    let mut report = SweepReport::default();
    for pos in 1..=maxlen as u32 {
        let mut next: Layer<M::Config> = HashMap::new();
        for ((configs, summary), (count, witness)) in &layer {
            for &a in &alphabet {
                let stepped: Vec<M::Config> = configs.iter().flat_map(|c| m.read(c, a)).collect();
                if stepped.is_empty() {
                    continue;
                }
                let cl = closed(m, stepped, b, max_height)?;
                let s = summary.step(pos, a);
                let mut w = witness.clone();
                w.push(a);
                // The least witness keeps reports independent of hash order.
                let e = next.entry((cl, s)).or_insert_with(|| (0, w.clone()));
                e.0 += count;
                if w < e.1 {
                    e.1 = w;
                }
            }
        }
        report.classes += next.len();
        let mut bad = Vec::new();
        for ((configs, summary), (count, witness)) in &next {
            if !configs.iter().any(|c| m.accepting(c)) {
                continue;
            }
            report.accepted_words += count;
            if let Err(reason) = summary.verdict(rel) {
                bad.push((witness, reason));
            }
        }
        bad.sort();
        bad.dedup_by(|a, b| a.0 == b.0);
        for (witness, reason) in bad.into_iter().take(keep.saturating_sub(report.spurious.len())) {
            report.spurious.push(SpuriousWord { word: ConvolutionWord(witness.clone()).to_string().replace('\n', "/"), reason });
        }
        layer = next;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{check_related, convolve, Representation};
    use crate::groups::{bfs_ball, wreath_mul};
    use crate::rep_grid::code::{grid_encode, GridRep};

    /// The summary verdict agrees with decoding on real pairs and on perturbations.
    #[test]
    fn verdict_matches_decoding() {
        let rep = GridRep::new();
        let ball = bfs_ball(rep.spec(), 3).unwrap();
        let rels = [("h", Relation::Toggle), ("x", Relation::Shift(Dir::X)), ("y-1", Relation::Shift(Dir::YInv))];
        for (name, rel) in rels {
            let gen = rep.spec().generator(name).unwrap();
            for g in ball.elements() {
                let u = grid_encode(g).unwrap();
                let v = grid_encode(&wreath_mul(g, &gen).unwrap()).unwrap();
                for (uu, vv) in [(u.clone(), v.clone()), (v.clone(), u.clone()), (u.clone(), u.clone())] {
                    let w = convolve(&uu, &vv);
                    let mut s = Summary::start();
                    for (i, &p) in w.pairs().iter().enumerate() {
                        s = s.step(i as u32 + 1, p);
                    }
                    assert_eq!(s.verdict(rel).is_ok(), check_related(&rep, &gen, w.pairs()).is_ok(), "{name} {:?}", w.pairs());
                }
            }
        }
    }
}
