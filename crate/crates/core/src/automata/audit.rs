use serde::Serialize;

use super::engine::{self, Machine};
use super::{convolve, deconvolve, AutomataError, ConvolutionWord, Pair, RunBounds, SyncFsa, DEFAULT_ENUM_CAP};
use crate::groups::{literal::format_element, wreath_mul, DistanceMap, GroupSpec, WreathElement};
use crate::par::par_map;

/// An encoding `ψ⁻¹` of a group into words, with its inverse.
pub trait Representation: Sync {
    fn name(&self) -> &str;
    fn spec(&self) -> &GroupSpec;
    fn encode(&self, g: &WreathElement) -> Vec<u8>;
    fn decode(&self, w: &[u8]) -> Result<WreathElement, String>;
}

/// A machine reading convolutions.
pub trait RelationMachine: Sync {
    fn accepts(&self, w: &[Pair]) -> Result<bool, AutomataError>;
    fn accepted_words(&self, maxlen: usize) -> Result<Vec<Vec<Pair>>, AutomataError>;
}

impl RelationMachine for SyncFsa {
    fn accepts(&self, w: &[Pair]) -> Result<bool, AutomataError> {
        self.run(w)
    }
    fn accepted_words(&self, maxlen: usize) -> Result<Vec<Vec<Pair>>, AutomataError> {
        self.enumerate(maxlen, DEFAULT_ENUM_CAP)
    }
}

/// Adapts any configuration machine over pairs, running it by search.
pub struct Searched<'a, M>(pub &'a M, pub RunBounds);

impl<M: Machine<Pair>> RelationMachine for Searched<'_, M> {
    fn accepts(&self, w: &[Pair]) -> Result<bool, AutomataError> {
        engine::run(self.0, w, &self.1)
    }
    fn accepted_words(&self, maxlen: usize) -> Result<Vec<Vec<Pair>>, AutomataError> {
        engine::enumerate(self.0, maxlen, &self.1, DEFAULT_ENUM_CAP)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MissedPair {
    pub element: String,
    pub u: String,
    pub v: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpuriousWord {
    pub word: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub machine: String,
    pub generator: String,
    pub checked_pairs: usize,
    pub checked_words: usize,
    pub missed: Vec<MissedPair>,
    pub spurious: Vec<SpuriousWord>,
    pub pass: bool,
}

impl AuditReport {
    pub fn finish(mut self) -> Self {
        self.pass = self.missed.is_empty() && self.spurious.is_empty();
        self
    }

    pub fn merge(mut self, other: AuditReport) -> Self {
        self.checked_pairs += other.checked_pairs;
        self.checked_words += other.checked_words;
        self.missed.extend(other.missed);
        self.spurious.extend(other.spurious);
        self.finish()
    }
}

fn ascii(w: &[u8]) -> String {
    String::from_utf8_lossy(w).into_owned()
}

/// Every `g` with `g` and `g·gen` in the ball must have its encoding pair accepted.
pub fn completeness<M: RelationMachine + ?Sized, R: Representation + ?Sized>(
    m: &M,
    rep: &R,
    gen: &WreathElement,
    ball: &DistanceMap,
) -> (usize, Vec<MissedPair>) {
    let results = par_map(ball.elements(), |g| {
        let h = wreath_mul(g, gen).ok()?;
        if !ball.contains(&h) {
            return None;
        }
        let (u, v) = (rep.encode(g), rep.encode(&h));
        let reason = match m.accepts(convolve(&u, &v).pairs()) {
            Ok(true) => return Some(None),
            Ok(false) => "rejected".to_string(),
            Err(e) => e.to_string(),
        };
        Some(Some(MissedPair { element: format_element(g), u: ascii(&u), v: ascii(&v), reason }))
    });
    let checked = results.iter().filter(|r| r.is_some()).count();
    (checked, results.into_iter().flatten().flatten().collect())
}

/// Checks that an accepted convolution is a genuine related pair of canonical words.
pub fn check_related<R: Representation + ?Sized>(rep: &R, gen: &WreathElement, w: &[Pair]) -> Result<(), String> {
    let (u, v) = deconvolve(w).ok_or("malformed padding")?;
    let gu = rep.decode(&u).map_err(|e| format!("left word: {e}"))?;
    let gv = rep.decode(&v).map_err(|e| format!("right word: {e}"))?;
    if rep.encode(&gu) != u || rep.encode(&gv) != v {
        return Err("non-canonical word".into());
    }
    let prod = wreath_mul(&gu, gen).map_err(|e| e.to_string())?;
    if prod != gv {
        return Err(format!("{} · gen = {}, not {}", format_element(&gu), format_element(&prod), format_element(&gv)));
    }
    Ok(())
}

pub fn soundness<R: Representation + ?Sized>(rep: &R, gen: &WreathElement, words: &[Vec<Pair>]) -> Vec<SpuriousWord> {
    par_map(words, |w| check_related(rep, gen, w).err().map(|reason| SpuriousWord { word: ConvolutionWord(w.clone()).to_string().replace('\n', "/"), reason }))
        .into_iter()
        .flatten()
        .collect()
}

/// Two-directional audit of a relation machine against group multiplication.
pub fn relation_audit<M: RelationMachine + ?Sized, R: Representation + ?Sized>(
    machine_id: &str,
    m: &M,
    rep: &R,
    gen_name: &str,
    ball: &DistanceMap,
    maxconvlen: usize,
) -> AuditReport {
    let mut report = AuditReport {
        machine: machine_id.to_string(),
        generator: gen_name.to_string(),
        checked_pairs: 0,
        checked_words: 0,
        missed: Vec::new(),
        spurious: Vec::new(),
        pass: false,
    };
    let Some(gen) = rep.spec().generator(gen_name) else {
        report.spurious.push(SpuriousWord { word: String::new(), reason: format!("unknown generator {gen_name}") });
        return report.finish();
    };
    let (checked, missed) = completeness(m, rep, &gen, ball);
    report.checked_pairs = checked;
    report.missed = missed;
    match m.accepted_words(maxconvlen) {
        Ok(words) => {
            report.checked_words = words.len();
            report.spurious = soundness(rep, &gen, &words);
        }
        Err(e) => report.spurious.push(SpuriousWord { word: String::new(), reason: format!("enumeration failed: {e}") }),
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::automata::Fsa;
    use crate::groups::{bfs_ball, BasePoint};

    /// Toy representation of Z₂ ≀ Z restricted to lamp-free elements at
    /// positions 0..: position k ↦ "1"^k "0".
    struct Unary(GroupSpec);
    impl Representation for Unary {
        fn name(&self) -> &str {
            "unary"
        }
        fn spec(&self) -> &GroupSpec {
            &self.0
        }
        fn encode(&self, g: &WreathElement) -> Vec<u8> {
            let k = g.pos.as_z().unwrap_or(0).max(0) as usize;
            let mut w = vec![b'1'; k];
            w.push(b'0');
            w
        }
        fn decode(&self, w: &[u8]) -> Result<WreathElement, String> {
            match w.split_last() {
                Some((b'0', ones)) if ones.iter().all(|&c| c == b'1') => Ok(WreathElement::at(BasePoint::Z(ones.len() as i64))),
                _ => Err("not unary".into()),
            }
        }
    }

    fn empty_machine() -> SyncFsa {
        Fsa::new(vec![*b"00"], 1, 0, BTreeSet::new(), BTreeMap::new()).unwrap()
    }

    fn universal_machine() -> SyncFsa {
        let alphabet = vec![*b"00", *b"01", *b"10", *b"11", *b"0#", *b"#0", *b"1#", *b"#1"];
        let t = alphabet.iter().map(|&p| ((0, p), BTreeSet::from([0]))).collect();
        Fsa::new(alphabet, 1, 0, BTreeSet::from([0]), t).unwrap()
    }

    #[test]
    fn empty_machine_misses_pairs() {
        let rep = Unary(GroupSpec::lamplighter());
        let ball = bfs_ball(rep.spec(), 1).unwrap();
        let r = relation_audit("empty", &empty_machine(), &rep, "h", &ball, 2);
        assert!(!r.missed.is_empty());
        assert!(!r.pass);
    }

    #[test]
    fn universal_machine_has_spurious_words() {
        let rep = Unary(GroupSpec::lamplighter());
        let ball = bfs_ball(rep.spec(), 1).unwrap();
        let r = relation_audit("all", &universal_machine(), &rep, "a", &ball, 2);
        assert!(!r.spurious.is_empty());
        assert!(!r.pass);
    }
}
