//! Configuration-set simulation shared by pushdown and stack automata.

use std::collections::{HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use super::{AutomataError, RunBounds, Symbol};
use crate::par::par_map;

/// A machine seen as a transition system over configurations.
pub trait Machine<S: Symbol>: Sync {
    type Config: Clone + Eq + Hash + Send + Sync + Debug;

    fn alphabet(&self) -> Vec<S>;
    fn initial(&self) -> Self::Config;
    fn accepting(&self, c: &Self::Config) -> bool;
    fn silent(&self, c: &Self::Config) -> Vec<Self::Config>;
    fn read(&self, c: &Self::Config, a: S) -> Vec<Self::Config>;

    fn height(&self, _c: &Self::Config) -> usize {
        0
    }

    /// Symbols worth trying from `c`; a superset of those with a move.
    fn inputs(&self, _c: &Self::Config) -> Vec<S> {
        self.alphabet()
    }

    fn is_deterministic(&self) -> bool {
        false
    }

    /// A lower bound on the symbols still needed to accept from `c`;
    /// `None` if it never can. Only used to prune enumeration.
    fn min_remaining(&self, _c: &Self::Config) -> Option<usize> {
        Some(0)
    }
}

/// True if some configuration might still accept within `left` more symbols.
fn viable<S: Symbol, M: Machine<S>>(m: &M, set: &[M::Config], left: usize) -> bool {
    set.iter().any(|c| m.min_remaining(c).is_some_and(|r| r <= left))
}

pub(crate) struct Closure<C> {
    pub(crate) configs: Vec<C>,
    pub(crate) exceeded: Option<AutomataError>,
}

pub(crate) fn closure<S: Symbol, M: Machine<S>>(m: &M, seeds: Vec<M::Config>, b: &RunBounds, max_height: usize) -> Closure<M::Config> {
    let mut seen: HashSet<M::Config> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<(M::Config, usize)> = VecDeque::new();
    let mut exceeded = None;
    for c in seeds {
        if seen.insert(c.clone()) {
            queue.push_back((c, 0));
        }
    }
    while let Some((c, depth)) = queue.pop_front() {
        if m.height(&c) > max_height {
            exceeded = Some(AutomataError::BoundExceeded { bound: "stack height", limit: max_height });
            continue;
        }
        let succ = m.silent(&c);
        out.push(c);
        if succ.is_empty() {
            continue;
        }
        if depth >= b.max_silent {
            exceeded = Some(AutomataError::BoundExceeded { bound: "silent steps", limit: b.max_silent });
            continue;
        }
        for s in succ {
            if seen.insert(s.clone()) {
                queue.push_back((s, depth + 1));
            }
        }
    }
    Closure { configs: out, exceeded }
}

fn step<S: Symbol, M: Machine<S>>(m: &M, set: &[M::Config], a: S) -> Vec<M::Config> {
    let mut seen = HashSet::new();
    let mut next = Vec::new();
    for c in set {
        for d in m.read(c, a) {
            if seen.insert(d.clone()) {
                next.push(d);
            }
        }
    }
    next
}

/// Breadth-first configuration search: true iff some run ends in an
/// accepting state with the input exhausted.
pub fn run<S: Symbol, M: Machine<S>>(m: &M, w: &[S], b: &RunBounds) -> Result<bool, AutomataError> {
    let max_height = b.max_height(w.len());
    let mut exceeded = None;
    let mut cl = closure(m, vec![m.initial()], b, max_height);
    for &a in w {
        exceeded = exceeded.or(cl.exceeded.take());
        let next = step(m, &cl.configs, a);
        if next.is_empty() {
            return match exceeded {
                Some(e) => Err(e),
                None => Ok(false),
            };
        }
        cl = closure(m, next, b, max_height);
    }
    exceeded = exceeded.or(cl.exceeded.take());
    if cl.configs.iter().any(|c| m.accepting(c)) {
        return Ok(true);
    }
    match exceeded {
        Some(e) => Err(e),
        None => Ok(false),
    }
}

/// Single-path simulation for machines flagged deterministic.
pub fn run_direct<S: Symbol, M: Machine<S>>(m: &M, w: &[S], b: &RunBounds) -> Result<bool, AutomataError> {
    let max_height = b.max_height(w.len());
    let mut c = m.initial();
    let mut i = 0;
    let mut silent = 0usize;
    loop {
        if m.height(&c) > max_height {
            return Err(AutomataError::BoundExceeded { bound: "stack height", limit: max_height });
        }
        let mut succ = m.silent(&c);
        if i < w.len() {
            let read = m.read(&c, w[i]);
            if succ.len() + read.len() > 1 {
                return Err(AutomataError::Nondeterministic(format!("{} moves at input offset {i}", succ.len() + read.len())));
            }
            if let Some(d) = read.into_iter().next() {
                c = d;
                i += 1;
                silent = 0;
                continue;
            }
        } else if m.accepting(&c) {
            return Ok(true);
        }
        if succ.len() > 1 {
            return Err(AutomataError::Nondeterministic(format!("{} silent moves at input offset {i}", succ.len())));
        }
        match succ.pop() {
            Some(d) => {
                silent += 1;
                if silent > b.max_silent {
                    return Err(AutomataError::BoundExceeded { bound: "silent steps", limit: b.max_silent });
                }
                c = d;
            }
            None => return Ok(false),
        }
    }
}

/// Accepted words of length at most `maxlen`, in shortlex order, found by
/// depth-first search over closed configuration sets.
pub fn enumerate<S: Symbol, M: Machine<S>>(m: &M, maxlen: usize, b: &RunBounds, cap: usize) -> Result<Vec<Vec<S>>, AutomataError> {
    let max_height = b.max_height(maxlen);
    let root = closure(m, vec![m.initial()], b, max_height);
    if let Some(e) = root.exceeded {
        return Err(e);
    }
    let mut out = Vec::new();
    if root.configs.iter().any(|c| m.accepting(c)) {
        out.push(Vec::new());
    }
    if maxlen == 0 {
        return Ok(out);
    }
    let firsts = candidate_inputs(m, &root.configs);
    let branches = par_map(&firsts, |&a| {
        let next = step(m, &root.configs, a);
        let mut found = Vec::new();
        if next.is_empty() {
            return Ok(found);
        }
        let cl = closure(m, next, b, max_height);
        if let Some(e) = cl.exceeded {
            return Err(e);
        }
        if !viable(m, &cl.configs, maxlen - 1) {
            return Ok(found);
        }
        dfs(m, vec![a], cl.configs, maxlen, b, max_height, cap, &mut found)?;
        Ok(found)
    });
    for br in branches {
        out.extend(br?);
        if out.len() > cap {
            return Err(AutomataError::Cap { what: "accepted words", limit: cap });
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(out)
}

fn candidate_inputs<S: Symbol, M: Machine<S>>(m: &M, set: &[M::Config]) -> Vec<S> {
    let mut syms: Vec<S> = set.iter().flat_map(|c| m.inputs(c)).collect();
    syms.sort_unstable();
    syms.dedup();
    syms
}

#[allow(clippy::too_many_arguments)]
fn dfs<S: Symbol, M: Machine<S>>(
    m: &M,
    prefix: Vec<S>,
    set: Vec<M::Config>,
    maxlen: usize,
    b: &RunBounds,
    max_height: usize,
    cap: usize,
    out: &mut Vec<Vec<S>>,
) -> Result<(), AutomataError> {
    if set.iter().any(|c| m.accepting(c)) {
        out.push(prefix.clone());
        if out.len() > cap {
            return Err(AutomataError::Cap { what: "accepted words", limit: cap });
        }
    }
    if prefix.len() == maxlen {
        return Ok(());
    }
    for a in candidate_inputs(m, &set) {
        let next = step(m, &set, a);
        if next.is_empty() {
            continue;
        }
        let cl = closure(m, next, b, max_height);
        if let Some(e) = cl.exceeded {
            return Err(e);
        }
        if !viable(m, &cl.configs, maxlen - prefix.len() - 1) {
            continue;
        }
        let mut p = prefix.clone();
        p.push(a);
        dfs(m, p, cl.configs, maxlen, b, max_height, cap, out)?;
    }
    Ok(())
}
