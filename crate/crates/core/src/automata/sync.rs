//! Two-tape synchronous automata built from a deterministic language
//! validator and a deterministic transducer with bounded output delay.
//!
//! The product reads `u ⊗ v`, runs the validator and the transducer on `u`,
//! and matches the transducer's output stream against `v` through a FIFO
//! whose length is the current lag between the two streams.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use super::{AutomataError, Fsa, Pair, SyncFsa, PAD};

/// Deterministic acceptor of a language over ASCII letters.
pub trait Validator: Sync {
    type State: Clone + Eq + Hash + Ord + Debug + Send + Sync;
    fn alphabet(&self) -> Vec<u8>;
    fn start(&self) -> Self::State;
    fn step(&self, q: &Self::State, x: u8) -> Option<Self::State>;
    fn accepts(&self, q: &Self::State) -> bool;

    fn check(&self, w: &[u8]) -> bool {
        let mut q = self.start();
        for &x in w {
            match self.step(&q, x) {
                Some(r) => q = r,
                None => return false,
            }
        }
        self.accepts(&q)
    }
}

/// Deterministic sequential transducer; `None` means the input is rejected.
pub trait Transducer: Sync {
    type State: Clone + Eq + Hash + Ord + Debug + Send + Sync;
    fn start(&self) -> Self::State;
    fn step(&self, q: &Self::State, x: u8) -> Option<(Self::State, Vec<u8>)>;
    fn finish(&self, q: &Self::State) -> Option<Vec<u8>>;

    fn apply(&self, w: &[u8]) -> Option<Vec<u8>> {
        let mut q = self.start();
        let mut out = Vec::new();
        for &x in w {
            let (r, o) = self.step(&q, x)?;
            out.extend(o);
            q = r;
        }
        out.extend(self.finish(&q)?);
        Some(out)
    }
}

/// Pending symbols of whichever stream is ahead.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lag {
    /// Transducer output not yet matched on `v`.
    Produced(VecDeque<u8>),
    /// Letters of `v` not yet produced by the transducer.
    Read(VecDeque<u8>),
}

impl Lag {
    pub fn len(&self) -> usize {
        match self {
            Lag::Produced(q) | Lag::Read(q) => q.len(),
        }
    }

    pub fn produce(&mut self, o: u8) -> bool {
        match self {
            Lag::Read(q) if !q.is_empty() => q.pop_front() == Some(o),
            Lag::Produced(q) => {
                q.push_back(o);
                true
            }
            Lag::Read(_) => {
                *self = Lag::Produced(VecDeque::from([o]));
                true
            }
        }
    }

    pub fn read(&mut self, y: u8) -> bool {
        match self {
            Lag::Produced(q) if !q.is_empty() => q.pop_front() == Some(y),
            Lag::Read(q) => {
                q.push_back(y);
                true
            }
            Lag::Produced(_) => {
                *self = Lag::Read(VecDeque::from([y]));
                true
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SyncState<V, T> {
    pub val: V,
    pub tr: T,
    pub lag: Lag,
    pub u_done: bool,
    pub v_done: bool,
}

pub struct SyncProduct<'a, V: Validator, T: Transducer> {
    pub validator: &'a V,
    pub transducer: &'a T,
    pub max_lag: usize,
}

impl<'a, V: Validator, T: Transducer> SyncProduct<'a, V, T> {
    pub fn start(&self) -> SyncState<V::State, T::State> {
        SyncState { val: self.validator.start(), tr: self.transducer.start(), lag: Lag::Read(VecDeque::new()), u_done: false, v_done: false }
    }

    /// One synchronous step; `Ok(None)` rejects, `Err` reports a lag overflow.
    #[allow(clippy::type_complexity)]
    pub fn step(&self, s: &SyncState<V::State, T::State>, p: Pair) -> Result<Option<SyncState<V::State, T::State>>, AutomataError> {
        let mut s = s.clone();
        let [x, y] = p;
        if x == PAD && y == PAD {
            return Ok(None);
        }
        let mut produced = Vec::new();
        if x == PAD {
            if !s.u_done {
                if !self.validator.accepts(&s.val) {
                    return Ok(None);
                }
                match self.transducer.finish(&s.tr) {
                    Some(o) => produced = o,
                    None => return Ok(None),
                }
                s.u_done = true;
            }
        } else {
            if s.u_done {
                return Ok(None);
            }
            let Some(val) = self.validator.step(&s.val, x) else { return Ok(None) };
            let Some((tr, o)) = self.transducer.step(&s.tr, x) else { return Ok(None) };
            s.val = val;
            s.tr = tr;
            produced = o;
        }
        for o in produced {
            if !s.lag.produce(o) {
                return Ok(None);
            }
        }
        if y == PAD {
            s.v_done = true;
        } else {
            if s.v_done {
                return Ok(None);
            }
            if !s.lag.read(y) {
                return Ok(None);
            }
        }
        if s.v_done && matches!(s.lag, Lag::Produced(ref q) if !q.is_empty()) {
            return Ok(None);
        }
        if s.u_done && matches!(s.lag, Lag::Read(ref q) if !q.is_empty()) {
            return Ok(None);
        }
        if s.lag.len() > self.max_lag {
            return Err(AutomataError::Cap { what: "synchronous lag", limit: self.max_lag });
        }
        Ok(Some(s))
    }

    pub fn accepting(&self, s: &SyncState<V::State, T::State>) -> bool {
        if s.u_done {
            return s.lag.is_empty();
        }
        if !self.validator.accepts(&s.val) {
            return false;
        }
        let Some(tail) = self.transducer.finish(&s.tr) else { return false };
        let mut lag = s.lag.clone();
        if s.v_done {
            return lag.is_empty() && tail.is_empty();
        }
        tail.into_iter().all(|o| lag.produce(o)) && lag.is_empty()
    }

    pub fn pair_alphabet(&self) -> Vec<Pair> {
        let mut letters = self.validator.alphabet();
        letters.push(PAD);
        letters.sort_unstable();
        letters.dedup();
        let mut out = Vec::new();
        for &x in &letters {
            for &y in &letters {
                if !(x == PAD && y == PAD) {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    /// Explores the reachable product states and numbers them in BFS order.
    pub fn materialize(&self, cap: usize) -> Result<SyncFsa, AutomataError> {
        let alphabet = self.pair_alphabet();
        let start = self.start();
        let mut ids: HashMap<SyncState<V::State, T::State>, usize> = HashMap::new();
        let mut states = vec![start.clone()];
        ids.insert(start, 0);
        let mut transitions: BTreeMap<(usize, Pair), BTreeSet<usize>> = BTreeMap::new();
        let mut i = 0;
        while i < states.len() {
            let s = states[i].clone();
            for &p in &alphabet {
                if let Some(t) = self.step(&s, p)? {
                    let id = match ids.get(&t) {
                        Some(&id) => id,
                        None => {
                            let id = states.len();
                            if id >= cap {
                                return Err(AutomataError::Cap { what: "materialized states", limit: cap });
                            }
                            ids.insert(t.clone(), id);
                            states.push(t);
                            id
                        }
                    };
                    transitions.insert((i, p), BTreeSet::from([id]));
                }
            }
            i += 1;
        }
        let accepting = states.iter().enumerate().filter(|(_, s)| self.accepting(s)).map(|(i, _)| i).collect();
        let labels = states.iter().map(|s| format!("{s:?}")).collect();
        Ok(Fsa::new(alphabet, states.len(), 0, accepting, transitions)?.with_labels(labels))
    }
}

/// Builds the explicit validator DFA over single letters.
pub fn materialize_validator<V: Validator>(v: &V, cap: usize) -> Result<Fsa<u8>, AutomataError> {
    let mut alphabet = v.alphabet();
    alphabet.sort_unstable();
    let mut ids: HashMap<V::State, usize> = HashMap::new();
    let mut states = vec![v.start()];
    ids.insert(v.start(), 0);
    let mut transitions: BTreeMap<(usize, u8), BTreeSet<usize>> = BTreeMap::new();
    let mut i = 0;
    while i < states.len() {
        let s = states[i].clone();
        for &x in &alphabet {
            if let Some(t) = v.step(&s, x) {
                let id = match ids.get(&t) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        if id >= cap {
                            return Err(AutomataError::Cap { what: "materialized states", limit: cap });
                        }
                        ids.insert(t.clone(), id);
                        states.push(t);
                        id
                    }
                };
                transitions.insert((i, x), BTreeSet::from([id]));
            }
        }
        i += 1;
    }
    let accepting = states.iter().enumerate().filter(|(_, s)| v.accepts(s)).map(|(i, _)| i).collect();
    let labels = states.iter().map(|s| format!("{s:?}")).collect();
    Ok(Fsa::new(alphabet, states.len(), 0, accepting, transitions)?.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::convolve;

    /// Binary words without leading zeros (plus "0").
    struct NoLeadingZero;
    impl Validator for NoLeadingZero {
        type State = u8;
        fn alphabet(&self) -> Vec<u8> {
            b"01".to_vec()
        }
        fn start(&self) -> u8 {
            0
        }
        fn step(&self, q: &u8, x: u8) -> Option<u8> {
            match (q, x) {
                (0, b'0') => Some(1),
                (0, b'1') | (2, _) => Some(2),
                _ => None,
            }
        }
        fn accepts(&self, q: &u8) -> bool {
            *q != 0
        }
    }

    /// Drops the first letter and appends it at the end: a delay of one.
    struct Rotate;
    impl Transducer for Rotate {
        type State = Option<u8>;
        fn start(&self) -> Option<u8> {
            None
        }
        fn step(&self, q: &Option<u8>, x: u8) -> Option<(Option<u8>, Vec<u8>)> {
            Some(match q {
                None => (Some(x), vec![]),
                Some(f) => (Some(*f), vec![x]),
            })
        }
        fn finish(&self, q: &Option<u8>) -> Option<Vec<u8>> {
            Some(q.iter().copied().collect())
        }
    }

    #[test]
    fn product_matches_transducer_image() {
        let p = SyncProduct { validator: &NoLeadingZero, transducer: &Rotate, max_lag: 4 };
        let m = p.materialize(1000).unwrap();
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut all = Vec::new();
        for _ in 0..5 {
            let mut next = Vec::new();
            for w in &words {
                for &c in b"01" {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            all.extend(next.iter().cloned());
            words = next;
        }
        for u in &all {
            for v in &all {
                let expected = NoLeadingZero.check(u) && Rotate.apply(u).as_deref() == Some(v.as_slice());
                assert_eq!(m.run(convolve(u, v).pairs()).unwrap(), expected, "{u:?} {v:?}");
            }
        }
    }

    #[test]
    fn lag_overflow_is_an_error() {
        struct Doubler;
        impl Transducer for Doubler {
            type State = ();
            fn start(&self) {}
            fn step(&self, _: &(), x: u8) -> Option<((), Vec<u8>)> {
                Some(((), vec![x, x]))
            }
            fn finish(&self, _: &()) -> Option<Vec<u8>> {
                Some(vec![])
            }
        }
        let p = SyncProduct { validator: &NoLeadingZero, transducer: &Doubler, max_lag: 3 };
        assert!(matches!(p.materialize(1000), Err(AutomataError::Cap { .. })));
    }
}
