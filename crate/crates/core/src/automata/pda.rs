use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;

use super::engine::{self, Machine};
use super::{AutomataError, RunBounds, Symbol};

/// One transition: optionally pop the top symbol, then push `push`
/// (last element ends on top).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move<Q, G> {
    pub to: Q,
    pub pop: bool,
    pub push: Vec<G>,
}

/// Any pushdown machine, explicit or generated on the fly.
pub trait PushdownMachine<S: Symbol>: Sync {
    type State: Clone + Eq + Hash + Ord + Send + Sync + Debug;
    type Stack: Clone + Eq + Hash + Ord + Send + Sync + Debug;

    fn input_alphabet(&self) -> Vec<S>;
    fn initial_state(&self) -> Self::State;
    fn is_final(&self, q: &Self::State) -> bool;
    /// Moves on `input` (`None` = silent) with `top` the current top of
    /// stack (`None` = empty stack). A move may pop only if `top` is `Some`.
    fn moves(&self, q: &Self::State, input: Option<S>, top: Option<&Self::Stack>) -> Vec<Move<Self::State, Self::Stack>>;

    /// A superset of the inputs that can lead to acceptance from `(q, stack)`.
    fn enabled_inputs(&self, _q: &Self::State, _stack: &[Self::Stack]) -> Vec<S> {
        self.input_alphabet()
    }

    fn deterministic(&self) -> bool {
        false
    }

    /// Lower bound on the symbols still needed to accept; see [`Machine::min_remaining`].
    fn min_remaining(&self, _q: &Self::State, _stack: &[Self::Stack]) -> Option<usize> {
        Some(0)
    }
}

fn apply<Q: Clone, G: Clone>(stack: &[G], m: Move<Q, G>) -> (Q, Vec<G>) {
    let mut s = stack.to_vec();
    if m.pop {
        s.pop();
    }
    s.extend(m.push);
    (m.to, s)
}

/// Views a pushdown machine as a configuration machine: `(state, stack)`.
pub struct Configs<'a, M>(pub &'a M);

impl<S: Symbol, M: PushdownMachine<S>> Machine<S> for Configs<'_, M> {
    type Config = (M::State, Vec<M::Stack>);

    fn alphabet(&self) -> Vec<S> {
        self.0.input_alphabet()
    }
    fn initial(&self) -> Self::Config {
        (self.0.initial_state(), Vec::new())
    }
    fn accepting(&self, c: &Self::Config) -> bool {
        self.0.is_final(&c.0)
    }
    fn silent(&self, c: &Self::Config) -> Vec<Self::Config> {
        self.0.moves(&c.0, None, c.1.last()).into_iter().map(|m| apply(&c.1, m)).collect()
    }
    fn read(&self, c: &Self::Config, a: S) -> Vec<Self::Config> {
        self.0.moves(&c.0, Some(a), c.1.last()).into_iter().map(|m| apply(&c.1, m)).collect()
    }
    fn height(&self, c: &Self::Config) -> usize {
        c.1.len()
    }
    fn inputs(&self, c: &Self::Config) -> Vec<S> {
        self.0.enabled_inputs(&c.0, &c.1)
    }
    fn is_deterministic(&self) -> bool {
        self.0.deterministic()
    }
    fn min_remaining(&self, c: &Self::Config) -> Option<usize> {
        self.0.min_remaining(&c.0, &c.1)
    }
}

pub type PdaKey<S> = (usize, Option<S>, Option<u8>);

/// Explicit pushdown automaton. A transition keyed on top `Some(X)` pops
/// `X`; one keyed on `None` leaves the stack untouched before pushing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pda<S: Symbol> {
    pub alphabet: Vec<S>,
    pub num_states: usize,
    pub initial: usize,
    pub accepting: BTreeSet<usize>,
    pub stack_alphabet: Vec<u8>,
    pub transitions: BTreeMap<PdaKey<S>, BTreeSet<(usize, Vec<u8>)>>,
    pub deterministic: bool,
    pub labels: Vec<String>,
}

impl<S: Symbol> Pda<S> {
    pub fn new(
        mut alphabet: Vec<S>,
        num_states: usize,
        initial: usize,
        accepting: BTreeSet<usize>,
        mut stack_alphabet: Vec<u8>,
        transitions: BTreeMap<PdaKey<S>, BTreeSet<(usize, Vec<u8>)>>,
        deterministic: bool,
    ) -> Result<Self, AutomataError> {
        alphabet.sort_unstable();
        alphabet.dedup();
        stack_alphabet.sort_unstable();
        stack_alphabet.dedup();
        let m = Pda { alphabet, num_states, initial, accepting, stack_alphabet, transitions, deterministic, labels: Vec::new() };
        m.validate()?;
        if deterministic {
            m.check_deterministic()?;
        }
        Ok(m)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    fn validate(&self) -> Result<(), AutomataError> {
        let bad = |q: usize| q >= self.num_states;
        if bad(self.initial) || self.accepting.iter().any(|&q| bad(q)) {
            return Err(AutomataError::InvalidTable("state out of range".into()));
        }
        let in_stack = |g: &u8| self.stack_alphabet.binary_search(g).is_ok();
        for ((q, a, top), ts) in &self.transitions {
            if bad(*q) {
                return Err(AutomataError::InvalidTable(format!("state {q} out of range")));
            }
            if let Some(a) = a {
                if self.alphabet.binary_search(a).is_err() {
                    return Err(AutomataError::UnknownSymbol(a.render()));
                }
            }
            if top.as_ref().is_some_and(|t| !in_stack(t)) {
                return Err(AutomataError::InvalidTable("unknown stack symbol".into()));
            }
            for (t, push) in ts {
                if bad(*t) || !push.iter().all(in_stack) {
                    return Err(AutomataError::InvalidTable(format!("bad target from state {q}")));
                }
            }
        }
        Ok(())
    }

    /// At most one applicable move in every configuration, counting silent
    /// moves against consuming ones.
    pub fn check_deterministic(&self) -> Result<(), AutomataError> {
        let count = |k: &PdaKey<S>| self.transitions.get(k).map_or(0, |s| s.len());
        let tops: Vec<Option<u8>> = std::iter::once(None).chain(self.stack_alphabet.iter().map(|&g| Some(g))).collect();
        for q in 0..self.num_states {
            for &top in &tops {
                let silent = count(&(q, None, None)) + top.map_or(0, |_| count(&(q, None, top)));
                if silent > 1 {
                    return Err(AutomataError::Nondeterministic(format!("state {q}: {silent} silent moves")));
                }
                for &a in &self.alphabet {
                    let n = count(&(q, Some(a), None)) + top.map_or(0, |_| count(&(q, Some(a), top)));
                    if n + silent > 1 {
                        return Err(AutomataError::Nondeterministic(format!(
                            "state {q}, input {}, top {:?}: {} moves",
                            a.render(),
                            top.map(|g| g as char),
                            n + silent
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.values().map(|s| s.len()).sum()
    }
}

impl<S: Symbol> PushdownMachine<S> for Pda<S> {
    type State = usize;
    type Stack = u8;

    fn input_alphabet(&self) -> Vec<S> {
        self.alphabet.clone()
    }
    fn initial_state(&self) -> usize {
        self.initial
    }
    fn is_final(&self, q: &usize) -> bool {
        self.accepting.contains(q)
    }
    fn moves(&self, q: &usize, input: Option<S>, top: Option<&u8>) -> Vec<Move<usize, u8>> {
        let mut out = Vec::new();
        if let Some(&t) = top {
            for (to, push) in self.transitions.get(&(*q, input, Some(t))).into_iter().flatten() {
                out.push(Move { to: *to, pop: true, push: push.clone() });
            }
        }
        for (to, push) in self.transitions.get(&(*q, input, None)).into_iter().flatten() {
            out.push(Move { to: *to, pop: false, push: push.clone() });
        }
        out
    }
    fn enabled_inputs(&self, q: &usize, _stack: &[u8]) -> Vec<S> {
        let mut v: Vec<S> = self.transitions.range((*q, None, None)..(*q + 1, None, None)).filter_map(|((_, a, _), _)| *a).collect();
        v.dedup();
        v
    }
    fn deterministic(&self) -> bool {
        self.deterministic
    }
}

/// Printable stack codes handed out by [`materialize_pda`], `#` excluded.
fn stack_code(i: usize) -> Option<u8> {
    (b'!'..=b'~').filter(|&c| c != b'#').nth(i)
}

/// Tabulates a generated pushdown machine with finitely many states and
/// stack symbols as an explicit [`Pda`].
pub fn materialize_pda<S: Symbol, M: PushdownMachine<S>>(m: &M, cap: usize) -> Result<Pda<S>, AutomataError> {
    use std::collections::HashMap;
    let alphabet = m.input_alphabet();
    let mut state_ids: HashMap<M::State, usize> = HashMap::new();
    let mut states: Vec<M::State> = Vec::new();
    let mut stack_ids: HashMap<M::Stack, u8> = HashMap::new();
    let mut stack_syms: Vec<M::Stack> = Vec::new();
    let mut transitions: BTreeMap<PdaKey<S>, BTreeSet<(usize, Vec<u8>)>> = BTreeMap::new();

    fn intern_state<Q: Clone + Eq + Hash>(ids: &mut HashMap<Q, usize>, v: &mut Vec<Q>, q: &Q, cap: usize) -> Result<usize, AutomataError> {
        if let Some(&i) = ids.get(q) {
            return Ok(i);
        }
        if v.len() >= cap {
            return Err(AutomataError::Cap { what: "materialized states", limit: cap });
        }
        ids.insert(q.clone(), v.len());
        v.push(q.clone());
        Ok(v.len() - 1)
    }
    fn intern_stack<G: Clone + Eq + Hash>(ids: &mut HashMap<G, u8>, v: &mut Vec<G>, g: &G) -> Result<u8, AutomataError> {
        if let Some(&c) = ids.get(g) {
            return Ok(c);
        }
        let c = stack_code(v.len()).ok_or(AutomataError::Cap { what: "stack symbols", limit: 93 })?;
        ids.insert(g.clone(), c);
        v.push(g.clone());
        Ok(c)
    }

    intern_state(&mut state_ids, &mut states, &m.initial_state(), cap)?;
    let inputs: Vec<Option<S>> = std::iter::once(None).chain(alphabet.iter().map(|&a| Some(a))).collect();
    // (state index, number of stack symbols already combined with it)
    let mut done: Vec<usize> = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        let mut qi = 0;
        while qi < states.len() {
            if done.len() <= qi {
                done.push(0);
            }
            let seen_tops = stack_syms.len();
            let first = done[qi];
            if first == seen_tops + 1 {
                qi += 1;
                continue;
            }
            changed = true;
            let q = states[qi].clone();
            // top index 0 is the empty stack, k > 0 is stack_syms[k - 1]
            for k in first..=seen_tops {
                let top = if k == 0 { None } else { Some(stack_syms[k - 1].clone()) };
                for &a in &inputs {
                    for mv in m.moves(&q, a, top.as_ref()) {
                        let to = intern_state(&mut state_ids, &mut states, &mv.to, cap)?;
                        let push = mv.push.iter().map(|g| intern_stack(&mut stack_ids, &mut stack_syms, g)).collect::<Result<Vec<u8>, _>>()?;
                        let key_top = if mv.pop { top.as_ref().map(|g| stack_ids[g]) } else { None };
                        if !mv.pop {
                            // A non-popping move must not depend on the top; record it once.
                            transitions.entry((qi, a, None)).or_default().insert((to, push));
                        } else {
                            transitions.entry((qi, a, key_top)).or_default().insert((to, push));
                        }
                    }
                }
            }
            done[qi] = seen_tops + 1;
            qi += 1;
        }
    }
    let accepting = states.iter().enumerate().filter(|(_, q)| m.is_final(q)).map(|(i, _)| i).collect();
    let labels = states.iter().map(|q| format!("{q:?}")).collect();
    let stack_alphabet = (0..stack_syms.len()).filter_map(stack_code).collect();
    Ok(Pda::new(alphabet, states.len(), 0, accepting, stack_alphabet, transitions, m.deterministic())?.with_labels(labels))
}

/// Runs `m` on `w`: direct simulation when the machine is flagged
/// deterministic, breadth-first configuration search otherwise.
pub fn pda_run<S: Symbol, M: PushdownMachine<S>>(m: &M, w: &[S], b: &RunBounds) -> Result<bool, AutomataError> {
    if m.deterministic() {
        engine::run_direct(&Configs(m), w, b)
    } else {
        engine::run(&Configs(m), w, b)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Deterministic Dyck language over the given bracket pairs.
    pub fn dyck(pairs: &[(u8, u8)]) -> Pda<u8> {
        // 0 start, 1 balanced (accepting), 2 inside, 3 after a close.
        let mut t: BTreeMap<PdaKey<u8>, BTreeSet<(usize, Vec<u8>)>> = BTreeMap::new();
        let mut add = |k: PdaKey<u8>, to: usize, push: Vec<u8>| {
            t.entry(k).or_default().insert((to, push));
        };
        add((0, None, None), 1, vec![b'Z']);
        let marks: Vec<u8> = (0..pairs.len()).map(|i| b'X' + i as u8).collect();
        for (i, &(open, close)) in pairs.iter().enumerate() {
            let g = marks[i];
            add((1, Some(open), Some(b'Z')), 2, vec![b'Z', g]);
            for &h in &marks {
                add((2, Some(open), Some(h)), 2, vec![h, g]);
            }
            add((2, Some(close), Some(g)), 3, vec![]);
        }
        add((3, None, Some(b'Z')), 1, vec![b'Z']);
        for &h in &marks {
            add((3, None, Some(h)), 2, vec![h]);
        }
        let mut alphabet: Vec<u8> = pairs.iter().flat_map(|&(o, c)| [o, c]).collect();
        alphabet.sort_unstable();
        let mut stack = marks.clone();
        stack.push(b'Z');
        Pda::new(alphabet, 4, 0, BTreeSet::from([1]), stack, t, true).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::dyck;
    use super::*;

    #[test]
    fn balanced_brackets() {
        let m = dyck(&[(b'(', b')')]);
        let b = RunBounds::default();
        assert!(pda_run(&m, b"(())", &b).unwrap());
        assert!(!pda_run(&m, b"(()", &b).unwrap());
        assert!(pda_run(&m, b"", &b).unwrap());
    }

    #[test]
    fn dyck_two() {
        let m = dyck(&[(b'(', b')'), (b'[', b']')]);
        let b = RunBounds::default();
        assert!(!pda_run(&m, b"([)]", &b).unwrap());
        assert!(pda_run(&m, b"([])[]", &b).unwrap());
    }

    #[test]
    fn dyck_one_enumeration() {
        let m = dyck(&[(b'(', b')')]);
        let words = engine::enumerate(&Configs(&m), 4, &RunBounds::default(), 100).unwrap();
        let expected: Vec<Vec<u8>> = vec![b"".to_vec(), b"()".to_vec(), b"(())".to_vec(), b"()()".to_vec()];
        assert_eq!(words, expected);
        for n in 0..6 {
            let a = engine::enumerate(&Configs(&m), n, &RunBounds::default(), 1000).unwrap();
            let c = engine::enumerate(&Configs(&m), n + 1, &RunBounds::default(), 1000).unwrap();
            assert!(a.iter().all(|w| c.contains(w)));
        }
    }

    #[test]
    fn deterministic_flag_agrees_with_search() {
        let m = dyck(&[(b'(', b')'), (b'[', b']')]);
        let b = RunBounds::default();
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for &c in b"()[]" {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            for w in &next {
                assert_eq!(engine::run_direct(&Configs(&m), w, &b).unwrap(), engine::run(&Configs(&m), w, &b).unwrap(), "{w:?}");
            }
            words = next;
        }
    }

    #[test]
    fn nondeterminism_is_detected() {
        let t = BTreeMap::from([((0, Some(b'a'), None), BTreeSet::from([(0, vec![])])), ((0, None, None), BTreeSet::from([(0, vec![b'X'])]))]);
        let err = Pda::new(vec![b'a'], 1, 0, BTreeSet::new(), vec![b'X'], t, true).unwrap_err();
        assert!(matches!(err, AutomataError::Nondeterministic(_)));
    }

    #[test]
    fn silent_loops_hit_the_bound() {
        let t = BTreeMap::from([((0, None, None), BTreeSet::from([(0, vec![b'X'])]))]);
        let m = Pda::new(vec![b'a'], 1, 0, BTreeSet::new(), vec![b'X'], t, false).unwrap();
        let err = pda_run(&m, b"a", &RunBounds::default()).unwrap_err();
        assert!(matches!(err, AutomataError::BoundExceeded { .. }));
    }
}
