use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{AutomataError, Machine, Pair, Symbol};

/// Nondeterministic finite automaton with numbered states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsa<S: Symbol> {
    pub alphabet: Vec<S>,
    pub num_states: usize,
    pub initial: usize,
    pub accepting: BTreeSet<usize>,
    pub transitions: BTreeMap<(usize, S), BTreeSet<usize>>,
    /// Optional human-readable names, one per state when present.
    pub labels: Vec<String>,
}

/// Two-tape synchronous automaton.
pub type SyncFsa = Fsa<Pair>;

impl<S: Symbol> Fsa<S> {
    pub fn new(
        mut alphabet: Vec<S>,
        num_states: usize,
        initial: usize,
        accepting: BTreeSet<usize>,
        transitions: BTreeMap<(usize, S), BTreeSet<usize>>,
    ) -> Result<Self, AutomataError> {
        alphabet.sort_unstable();
        alphabet.dedup();
        let m = Fsa { alphabet, num_states, initial, accepting, transitions, labels: Vec::new() };
        m.validate()?;
        Ok(m)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn validate(&self) -> Result<(), AutomataError> {
        let bad_state = |q: usize| q >= self.num_states;
        if bad_state(self.initial) || self.accepting.iter().any(|&q| bad_state(q)) {
            return Err(AutomataError::InvalidTable("state out of range".into()));
        }
        for ((q, a), ts) in &self.transitions {
            if bad_state(*q) || ts.iter().any(|&t| bad_state(t)) {
                return Err(AutomataError::InvalidTable(format!("transition from {q} leaves the state set")));
            }
            if self.alphabet.binary_search(a).is_err() {
                return Err(AutomataError::UnknownSymbol(a.render()));
            }
        }
        if !self.labels.is_empty() && self.labels.len() != self.num_states {
            return Err(AutomataError::InvalidTable("label count differs from state count".into()));
        }
        Ok(())
    }

    pub fn is_deterministic(&self) -> bool {
        self.transitions.values().all(|ts| ts.len() <= 1)
    }

    pub fn successors(&self, q: usize, a: S) -> impl Iterator<Item = usize> + '_ {
        self.transitions.get(&(q, a)).into_iter().flatten().copied()
    }

    pub fn run(&self, w: &[S]) -> Result<bool, AutomataError> {
        let mut cur: BTreeSet<usize> = BTreeSet::from([self.initial]);
        for a in w {
            if self.alphabet.binary_search(a).is_err() {
                return Err(AutomataError::UnknownSymbol(a.render()));
            }
            cur = cur.iter().flat_map(|&q| self.successors(q, *a)).collect();
            if cur.is_empty() {
                return Ok(false);
            }
        }
        Ok(cur.iter().any(|q| self.accepting.contains(q)))
    }

    /// Least number of steps from each state to an accepting state.
    fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.num_states];
        for ((q, _), ts) in &self.transitions {
            for &t in ts {
                rev[t].push(*q);
            }
        }
        let mut dist = vec![None; self.num_states];
        let mut queue = VecDeque::new();
        for &q in &self.accepting {
            dist[q] = Some(0);
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap_or(0);
            for &p in &rev[q] {
                if dist[p].is_none() {
                    dist[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// Accepted words of length at most `maxlen`, shortlex. Only prefixes
    /// from which acceptance is still reachable in the remaining budget are
    /// explored.
    pub fn enumerate(&self, maxlen: usize, cap: usize) -> Result<Vec<Vec<S>>, AutomataError> {
        let dist = self.distance_to_accept();
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<S>, BTreeSet<usize>)> = vec![(Vec::new(), BTreeSet::from([self.initial]))];
        for len in 0..=maxlen {
            let mut next = Vec::new();
            for (w, set) in &layer {
                if set.iter().any(|q| self.accepting.contains(q)) {
                    out.push(w.clone());
                    if out.len() > cap {
                        return Err(AutomataError::Cap { what: "accepted words", limit: cap });
                    }
                }
                if len == maxlen {
                    continue;
                }
                let budget = maxlen - len - 1;
                for &a in &self.alphabet {
                    let t: BTreeSet<usize> = set.iter().flat_map(|&q| self.successors(q, a)).filter(|&t| matches!(dist[t], Some(d) if d <= budget)).collect();
                    if !t.is_empty() {
                        let mut x = w.clone();
                        x.push(a);
                        next.push((x, t));
                    }
                }
            }
            layer = next;
        }
        Ok(out)
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.initial]);
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &a in &self.alphabet {
                for t in self.successors(q, a) {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        seen
    }
}

impl SyncFsa {
    /// The converse relation: every pair symbol `(x, y)` becomes `(y, x)`.
    pub fn transpose(&self) -> SyncFsa {
        let mut alphabet: Vec<Pair> = self.alphabet.iter().map(|p| [p[1], p[0]]).collect();
        alphabet.sort_unstable();
        let transitions = self.transitions.iter().map(|((q, p), ts)| ((*q, [p[1], p[0]]), ts.clone())).collect();
        Fsa { alphabet, num_states: self.num_states, initial: self.initial, accepting: self.accepting.clone(), transitions, labels: self.labels.clone() }
    }
}

pub fn fsa_run<S: Symbol>(m: &Fsa<S>, w: &[S]) -> Result<bool, AutomataError> {
    m.run(w)
}

impl<S: Symbol> Machine<S> for Fsa<S> {
    type Config = usize;

    fn alphabet(&self) -> Vec<S> {
        self.alphabet.clone()
    }
    fn initial(&self) -> usize {
        self.initial
    }
    fn accepting(&self, c: &usize) -> bool {
        self.accepting.contains(c)
    }
    fn silent(&self, _c: &usize) -> Vec<usize> {
        Vec::new()
    }
    fn read(&self, c: &usize, a: S) -> Vec<usize> {
        self.successors(*c, a).collect()
    }
    fn is_deterministic(&self) -> bool {
        Fsa::is_deterministic(self)
    }
}
