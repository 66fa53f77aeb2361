use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::engine::{self, Machine};
use super::{AutomataError, RunBounds, Symbol};

/// What a stack automaton does with its stack and pointer on a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SaAction {
    Push(u8),
    Pop,
    Up,
    Down,
    Stay,
}

/// `(state, input or silent, symbol under the pointer or empty stack, pointer at top)`.
pub type SaKey<S> = (usize, Option<S>, Option<u8>, bool);

/// One-way (non-nested) stack automaton: the pointer may walk the stack
/// read-only; pushes and pops happen only with the pointer at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackAutomaton<S: Symbol> {
    pub alphabet: Vec<S>,
    pub num_states: usize,
    pub initial: usize,
    pub accepting: BTreeSet<usize>,
    pub stack_alphabet: Vec<u8>,
    pub transitions: BTreeMap<SaKey<S>, BTreeSet<(usize, SaAction)>>,
    pub labels: Vec<String>,
}

/// `(state, stack bottom-to-top, pointer index)`.
pub type SaConfig = (usize, Vec<u8>, usize);

impl<S: Symbol> StackAutomaton<S> {
    pub fn new(
        mut alphabet: Vec<S>,
        num_states: usize,
        initial: usize,
        accepting: BTreeSet<usize>,
        mut stack_alphabet: Vec<u8>,
        transitions: BTreeMap<SaKey<S>, BTreeSet<(usize, SaAction)>>,
    ) -> Result<Self, AutomataError> {
        alphabet.sort_unstable();
        alphabet.dedup();
        stack_alphabet.sort_unstable();
        stack_alphabet.dedup();
        let m = StackAutomaton { alphabet, num_states, initial, accepting, stack_alphabet, transitions, labels: Vec::new() };
        m.validate()?;
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
        for ((q, a, under, at_top), ts) in &self.transitions {
            if bad(*q) {
                return Err(AutomataError::InvalidTable(format!("state {q} out of range")));
            }
            if let Some(a) = a {
                if self.alphabet.binary_search(a).is_err() {
                    return Err(AutomataError::UnknownSymbol(a.render()));
                }
            }
            if let Some(g) = under {
                if self.stack_alphabet.binary_search(g).is_err() {
                    return Err(AutomataError::InvalidTable(format!("unknown stack symbol '{}'", *g as char)));
                }
            } else if !at_top {
                return Err(AutomataError::IllegalAction(format!("state {q}: empty stack with pointer below top")));
            }
            for (t, act) in ts {
                if bad(*t) {
                    return Err(AutomataError::InvalidTable(format!("target {t} out of range")));
                }
                let legal = match act {
                    SaAction::Push(g) => *at_top && self.stack_alphabet.binary_search(g).is_ok(),
                    SaAction::Pop => *at_top && under.is_some(),
                    SaAction::Up => !at_top,
                    SaAction::Down => under.is_some(),
                    SaAction::Stay => true,
                };
                if !legal {
                    return Err(AutomataError::IllegalAction(format!("state {q}: {act:?} with under={under:?}, at_top={at_top}")));
                }
            }
        }
        Ok(())
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.values().map(|s| s.len()).sum()
    }

    fn key(&self, c: &SaConfig, input: Option<S>) -> SaKey<S> {
        let (q, stack, ptr) = c;
        let under = stack.get(*ptr).copied();
        let at_top = stack.is_empty() || *ptr + 1 == stack.len();
        (*q, input, under, at_top)
    }

    fn apply(c: &SaConfig, to: usize, act: SaAction) -> Option<SaConfig> {
        let (_, stack, ptr) = c;
        let mut stack = stack.clone();
        let ptr = match act {
            SaAction::Push(g) => {
                stack.push(g);
                stack.len() - 1
            }
            SaAction::Pop => {
                stack.pop();
                stack.len().saturating_sub(1)
            }
            SaAction::Up => ptr + 1,
            SaAction::Down => ptr.checked_sub(1)?,
            SaAction::Stay => *ptr,
        };
        Some((to, stack, ptr))
    }

    fn successors(&self, c: &SaConfig, input: Option<S>) -> Vec<SaConfig> {
        self.transitions.get(&self.key(c, input)).into_iter().flatten().filter_map(|&(to, act)| Self::apply(c, to, act)).collect()
    }
}

impl<S: Symbol> Machine<S> for StackAutomaton<S> {
    type Config = SaConfig;

    fn alphabet(&self) -> Vec<S> {
        self.alphabet.clone()
    }
    fn initial(&self) -> SaConfig {
        (self.initial, Vec::new(), 0)
    }
    fn accepting(&self, c: &SaConfig) -> bool {
        self.accepting.contains(&c.0)
    }
    fn silent(&self, c: &SaConfig) -> Vec<SaConfig> {
        self.successors(c, None)
    }
    fn read(&self, c: &SaConfig, a: S) -> Vec<SaConfig> {
        self.successors(c, Some(a))
    }
    fn height(&self, c: &SaConfig) -> usize {
        c.1.len()
    }
    fn inputs(&self, c: &SaConfig) -> Vec<S> {
        let (q, under, at_top) = {
            let k = self.key(c, None);
            (k.0, k.2, k.3)
        };
        let mut v: Vec<S> = self
            .transitions
            .range((q, None, None, false)..(q + 1, None, None, false))
            .filter(|((_, a, u, t), _)| a.is_some() && *u == under && *t == at_top)
            .filter_map(|((_, a, _, _), _)| *a)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

pub fn sa_run<S: Symbol>(m: &StackAutomaton<S>, w: &[S], b: &RunBounds) -> Result<bool, AutomataError> {
    engine::run(m, w, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anbncn() -> StackAutomaton<u8> {
        use SaAction::*;
        let mut t: BTreeMap<SaKey<u8>, BTreeSet<(usize, SaAction)>> = BTreeMap::new();
        let mut add = |k: SaKey<u8>, to: usize, a: SaAction| {
            t.entry(k).or_default().insert((to, a));
        };
        add((0, None, None, true), 1, Push(b'Z'));
        add((1, Some(b'a'), Some(b'Z'), true), 1, Push(b'A'));
        add((1, Some(b'a'), Some(b'A'), true), 1, Push(b'A'));
        add((1, Some(b'b'), Some(b'A'), true), 2, Down);
        add((2, Some(b'b'), Some(b'A'), false), 2, Down);
        add((2, Some(b'c'), Some(b'Z'), false), 3, Up);
        add((3, Some(b'c'), Some(b'A'), false), 3, Up);
        add((3, None, Some(b'A'), true), 4, Stay);
        StackAutomaton::new(vec![b'a', b'b', b'c'], 5, 0, BTreeSet::from([4]), vec![b'A', b'Z'], t).unwrap()
    }

    #[test]
    fn empty_machine() {
        let m = StackAutomaton::<u8>::new(vec![b'a'], 1, 0, BTreeSet::from([0]), vec![b'I'], BTreeMap::new()).unwrap();
        let b = RunBounds::default();
        assert!(sa_run(&m, b"", &b).unwrap());
        assert!(!sa_run(&m, b"a", &b).unwrap());
    }

    #[test]
    fn anbncn_fixture_matches_counting() {
        let m = anbncn();
        let b = RunBounds::default();
        assert!(sa_run(&m, b"aabbcc", &b).unwrap());
        assert!(!sa_run(&m, b"aabbc", &b).unwrap());
        // Counting oracle over all words up to length 7.
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        for _ in 0..7 {
            let mut next = Vec::new();
            for w in &words {
                for &c in b"abc" {
                    let mut x = w.clone();
                    x.push(c);
                    next.push(x);
                }
            }
            for w in &next {
                let n = w.iter().take_while(|&&c| c == b'a').count();
                let expected = n > 0 && w.len() == 3 * n && w[n..2 * n].iter().all(|&c| c == b'b') && w[2 * n..].iter().all(|&c| c == b'c');
                assert_eq!(sa_run(&m, w, &b).unwrap(), expected, "{}", String::from_utf8_lossy(w));
            }
            words = next;
        }
    }

    #[test]
    fn illegal_actions_rejected_at_load() {
        let t = BTreeMap::from([((0, None, Some(b'I'), false), BTreeSet::from([(0, SaAction::Pop)]))]);
        let err = StackAutomaton::<u8>::new(vec![b'a'], 1, 0, BTreeSet::new(), vec![b'I'], t).unwrap_err();
        assert!(matches!(err, AutomataError::IllegalAction(_)));
        let t = BTreeMap::from([((0, None, Some(b'I'), true), BTreeSet::from([(0, SaAction::Up)]))]);
        assert!(StackAutomaton::<u8>::new(vec![b'a'], 1, 0, BTreeSet::new(), vec![b'I'], t).is_err());
    }
}
