//! The lamplighter representation of `Z₂ ≀ Z`: one symbol per cell of the
//! window `ℓ..=r`, with the origin and the lamplighter marked.
//!
//! ASCII: `0 1` plain, `A a` origin, `C c` lamplighter, `B b` both; lowercase
//! marks a lit lamp.

use std::collections::BTreeSet;

use serde::Serialize;

use super::RepZError;
use crate::automata::sync::{SyncProduct, Transducer, Validator};
use crate::automata::{AutomataError, Representation, SyncFsa};
use crate::bounds::{check_bounds, q, BoundsReport, Sample};
use crate::groups::{format_element, BasePoint, DistanceMap, GroupSpec, LampConfig, WreathElement};

pub const LL_SYMBOLS: [u8; 8] = *b"01AaBbCc";

/// Extremes of the support and the window an encoding covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpanFrame {
    pub m: i64,
    pub n: i64,
    pub l: i64,
    pub r: i64,
}

impl SpanFrame {
    /// `m`, `n` are the least and greatest lit positions (both 0 when nothing is lit).
    pub fn of(lit: &BTreeSet<i64>, z: i64) -> SpanFrame {
        let m = lit.first().copied().unwrap_or(0);
        let n = lit.last().copied().unwrap_or(0);
        SpanFrame { m, n, l: m.min(z).min(0), r: n.max(z).max(0) }
    }
}

/// Lit positions and lamplighter position of an element of `Z₂ ≀ Z`.
pub fn ll_parts(g: &WreathElement) -> Result<(BTreeSet<i64>, i64), RepZError> {
    let z = g.pos.as_z().ok_or(RepZError::WrongGroup("expected base group Z"))?;
    let lit = g.lamps.keys().map(|p| p.as_z().ok_or(RepZError::WrongGroup("expected base group Z"))).collect::<Result<_, _>>()?;
    Ok((lit, z))
}

fn lit_symbol(base: u8, lit: bool) -> u8 {
    if lit {
        base.to_ascii_lowercase()
    } else {
        base
    }
}

pub fn ll_encode(g: &WreathElement) -> Result<Vec<u8>, RepZError> {
    let (lit, z) = ll_parts(g)?;
    let f = SpanFrame::of(&lit, z);
    Ok((f.l..=f.r)
        .map(|i| {
            let on = lit.contains(&i);
            match (i == 0, i == z) {
                (true, true) => lit_symbol(b'B', on),
                (true, false) => lit_symbol(b'A', on),
                (false, true) => lit_symbol(b'C', on),
                (false, false) => {
                    if on {
                        b'1'
                    } else {
                        b'0'
                    }
                }
            }
        })
        .collect())
}

pub fn ll_decode(w: &[u8]) -> Result<WreathElement, RepZError> {
    let perr = |offset: usize, reason: &str| RepZError::Parse { offset, reason: reason.to_string() };
    if w.is_empty() {
        return Err(perr(0, "empty word"));
    }
    let (mut origin, mut light, mut both) = (None, None, None);
    for (i, &c) in w.iter().enumerate() {
        let slot = match c {
            b'0' | b'1' => continue,
            b'A' | b'a' => &mut origin,
            b'C' | b'c' => &mut light,
            b'B' | b'b' => &mut both,
            _ => return Err(perr(i, "symbol outside {0,1,A,a,B,b,C,c}")),
        };
        if slot.is_some() {
            return Err(perr(i, "repeated marker"));
        }
        *slot = Some(i);
    }
    let (o, zi) = match (origin, light, both) {
        (None, None, Some(b)) => (b, b),
        (Some(a), Some(c), None) => (a, c),
        (_, _, Some(b)) => return Err(perr(b, "B-symbol together with A- or C-symbols")),
        (None, _, None) => return Err(perr(w.len(), "missing origin marker")),
        (Some(_), None, None) => return Err(perr(w.len(), "missing lamplighter marker")),
    };
    if w[0] == b'0' {
        return Err(perr(0, "word starts with 0"));
    }
    if w[w.len() - 1] == b'0' {
        return Err(perr(w.len() - 1, "word ends with 0"));
    }
    let lamps = w.iter().enumerate().filter(|(_, c)| c.is_ascii_lowercase() || **c == b'1').map(|(i, _)| BasePoint::Z(i as i64 - o as i64));
    Ok(WreathElement::new(LampConfig::lit(lamps), BasePoint::Z(zi as i64 - o as i64)))
}

/// Closed-form word length over `{a, a⁻¹, h}`.
pub fn ll_length(g: &WreathElement) -> Result<u64, RepZError> {
    let (lit, z) = ll_parts(g)?;
    let f = SpanFrame::of(&lit, z);
    let (neg, pos) = ((-f.m).max(0), f.n.max(0));
    let right_first = 2 * pos + neg + (z + neg).abs();
    let left_first = 2 * neg + pos + (z - pos).abs();
    Ok(lit.len() as u64 + right_first.min(left_first) as u64)
}

fn push_power(out: &mut Vec<&'static str>, k: i64) {
    let t = if k >= 0 { "a" } else { "a-1" };
    for _ in 0..k.unsigned_abs() {
        match out.last() {
            Some(&last) if last != "h" && last != t => {
                out.pop();
            }
            _ => out.push(t),
        }
    }
}

fn reduce_tokens(tokens: &[&'static str]) -> Vec<&'static str> {
    let mut out = Vec::new();
    for &t in tokens {
        match t {
            "a" => push_power(&mut out, 1),
            "a-1" => push_power(&mut out, -1),
            _ => out.push(t),
        }
    }
    out
}

fn a_k(out: &mut Vec<&'static str>, k: i64) {
    push_power(out, k);
    out.push("h");
    push_power(out, -k);
}

/// Left-first and right-first normal forms, freely reduced, as
/// space-separated generator tokens.
pub fn ll_normal_form(g: &WreathElement) -> Result<(String, String), RepZError> {
    let (lit, z) = ll_parts(g)?;
    let pos: Vec<i64> = lit.iter().copied().filter(|&i| i >= 0).collect();
    let neg: Vec<i64> = lit.iter().copied().filter(|&i| i < 0).rev().collect();
    let build = |first: &[i64], second: &[i64]| {
        let mut t = Vec::new();
        for &k in first.iter().chain(second) {
            a_k(&mut t, k);
        }
        push_power(&mut t, z);
        reduce_tokens(&t).join(" ")
    };
    Ok((build(&pos, &neg), build(&neg, &pos)))
}

/// Deterministic acceptor of the canonical words.
pub struct LlValidator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LlValState {
    started: bool,
    origin: bool,
    light: bool,
    both: bool,
    last_zero: bool,
}

impl Validator for LlValidator {
    type State = LlValState;

    fn alphabet(&self) -> Vec<u8> {
        LL_SYMBOLS.to_vec()
    }
    fn start(&self) -> LlValState {
        LlValState { started: false, origin: false, light: false, both: false, last_zero: false }
    }
    fn step(&self, q: &LlValState, x: u8) -> Option<LlValState> {
        let mut s = *q;
        if !s.started && x == b'0' {
            return None;
        }
        s.started = true;
        s.last_zero = x == b'0';
        let flag = match x {
            b'A' | b'a' => &mut s.origin,
            b'C' | b'c' => &mut s.light,
            b'B' | b'b' => &mut s.both,
            b'0' | b'1' => return Some(s),
            _ => return None,
        };
        if *flag {
            return None;
        }
        *flag = true;
        if s.both && (s.origin || s.light) {
            return None;
        }
        Some(s)
    }
    fn accepts(&self, q: &LlValState) -> bool {
        q.started && !q.last_zero && (q.both || (q.origin && q.light))
    }
}

/// Right multiplication by `a` as a left-to-right rewriting of the word.
pub struct LlShiftA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShiftState {
    Start,
    Before,
    Target,
    After,
}

impl Transducer for LlShiftA {
    type State = ShiftState;

    fn start(&self) -> ShiftState {
        ShiftState::Start
    }
    fn step(&self, q: &ShiftState, x: u8) -> Option<(ShiftState, Vec<u8>)> {
        use ShiftState::*;
        match (q, x) {
            // The lamplighter leaves an unlit leftmost cell: the window shrinks.
            (Start, b'C') => Some((Target, vec![])),
            (Before, b'C') => Some((Target, vec![b'0'])),
            (Start | Before, b'c') => Some((Target, vec![b'1'])),
            (Start | Before, b'B') => Some((Target, vec![b'A'])),
            (Start | Before, b'b') => Some((Target, vec![b'a'])),
            (Start | Before, _) => Some((Before, vec![x])),
            (Target, b'0') => Some((After, vec![b'C'])),
            (Target, b'1') => Some((After, vec![b'c'])),
            (Target, b'A') => Some((After, vec![b'B'])),
            (Target, b'a') => Some((After, vec![b'b'])),
            (Target, _) => None,
            (After, _) => Some((After, vec![x])),
        }
    }
    fn finish(&self, q: &ShiftState) -> Option<Vec<u8>> {
        match q {
            ShiftState::Target => Some(vec![b'C']),
            ShiftState::After => Some(vec![]),
            _ => None,
        }
    }
}

/// Right multiplication by `h`: toggles the lamp under the lamplighter.
pub struct LlToggle;

impl Transducer for LlToggle {
    type State = ();

    fn start(&self) {}
    fn step(&self, _: &(), x: u8) -> Option<((), Vec<u8>)> {
        let y = match x {
            b'C' => b'c',
            b'c' => b'C',
            b'B' => b'b',
            b'b' => b'B',
            _ => x,
        };
        Some(((), vec![y]))
    }
    fn finish(&self, _: &()) -> Option<Vec<u8>> {
        Some(vec![])
    }
}

const MACHINE_CAP: usize = 10_000;

/// Synchronous automaton for right multiplication by `a`, `a-1` or `h`.
pub fn ll_mult_fsa(gen: &str) -> Result<SyncFsa, RepZError> {
    let build = |m: Result<SyncFsa, AutomataError>| m.map_err(RepZError::Automata);
    match gen {
        "a" => build(SyncProduct { validator: &LlValidator, transducer: &LlShiftA, max_lag: 2 }.materialize(MACHINE_CAP)),
        "a-1" => Ok(ll_mult_fsa("a")?.transpose()),
        "h" => build(SyncProduct { validator: &LlValidator, transducer: &LlToggle, max_lag: 1 }.materialize(MACHINE_CAP)),
        _ => Err(RepZError::UnknownGenerator(gen.to_string())),
    }
}

/// Checks `|w| − 1 ≤ |g| ≤ 3|w| − 2` over a ball of `Z₂ ≀ Z`, with `|g|` taken from the ball.
pub fn ll_bounds_check(ball: &DistanceMap) -> Result<BoundsReport, RepZError> {
    let samples = ball
        .iter()
        .map(|(g, d)| Ok(Sample { element: format_element(g), word_len: ll_encode(g)?.len() as u64, length: d as u64 }))
        .collect::<Result<Vec<_>, RepZError>>()?;
    Ok(check_bounds(Some((q(1, 1), q(-1, 1))), Some((q(3, 1), q(-2, 1))), samples))
}

/// [`Representation`] handle for audits.
pub struct LlRep {
    spec: GroupSpec,
}

impl LlRep {
    pub fn new() -> Self {
        LlRep { spec: GroupSpec::lamplighter() }
    }
}

impl Default for LlRep {
    fn default() -> Self {
        Self::new()
    }
}

impl Representation for LlRep {
    fn name(&self) -> &str {
        "ll"
    }
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    fn encode(&self, g: &WreathElement) -> Vec<u8> {
        ll_encode(g).unwrap_or_default()
    }
    fn decode(&self, w: &[u8]) -> Result<WreathElement, String> {
        ll_decode(w).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::convolve;
    use crate::groups::{bfs_ball, wreath_mul};

    fn el(lit: &[i64], z: i64) -> WreathElement {
        WreathElement::new(LampConfig::lit(lit.iter().map(|&i| BasePoint::Z(i))), BasePoint::Z(z))
    }

    #[test]
    fn encode_examples() {
        assert_eq!(ll_encode(&el(&[], 0)).unwrap(), b"B");
        assert_eq!(ll_encode(&el(&[], 2)).unwrap(), b"A0C");
        assert_eq!(ll_encode(&el(&[-1, 1], 1)).unwrap(), b"1Ac");
    }

    #[test]
    fn decode_examples() {
        assert_eq!(ll_decode(b"B").unwrap(), el(&[], 0));
        assert_eq!(ll_decode(b"A0C").unwrap(), el(&[], 2));
        assert_eq!(ll_decode(b"c1A").unwrap(), el(&[-2, -1], -2));
    }

    #[test]
    fn decode_errors_name_offsets() {
        assert!(matches!(ll_decode(b"AB"), Err(RepZError::Parse { offset: 1, .. })));
        assert!(matches!(ll_decode(b"AA"), Err(RepZError::Parse { offset: 1, .. })));
        assert!(matches!(ll_decode(b"0B"), Err(RepZError::Parse { offset: 0, .. })));
        assert!(matches!(ll_decode(b"B0"), Err(RepZError::Parse { offset: 1, .. })));
        assert!(ll_decode(b"A1").is_err());
        assert!(ll_decode(b"").is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(ll_length(&el(&[], 0)).unwrap(), 0);
        assert_eq!(ll_length(&el(&[0], 0)).unwrap(), 1);
        assert_eq!(ll_length(&el(&[-1, 1], 0)).unwrap(), 6);
        assert_eq!(ll_length(&el(&[1], 0)).unwrap(), 3);
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(ll_normal_form(&el(&[], 0)).unwrap(), (String::new(), String::new()));
        assert_eq!(ll_normal_form(&el(&[0], 0)).unwrap(), ("h".into(), "h".into()));
        assert_eq!(ll_normal_form(&el(&[1], 0)).unwrap(), ("a h a-1".into(), "a h a-1".into()));
    }

    #[test]
    fn machines_on_examples() {
        let a = ll_mult_fsa("a").unwrap();
        assert!(a.run(convolve(b"B", b"AC").pairs()).unwrap());
        assert!(!a.run(convolve(b"B", b"B").pairs()).unwrap());
        let h = ll_mult_fsa("h").unwrap();
        assert!(h.run(convolve(b"1Ac", b"1AC").pairs()).unwrap());
        assert!(ll_mult_fsa("x").is_err());
    }

    #[test]
    fn transducers_agree_with_group_on_radius_five() {
        let spec = GroupSpec::lamplighter();
        let ball = bfs_ball(&spec, 5).unwrap();
        let a = spec.generator("a").unwrap();
        let h = spec.generator("h").unwrap();
        for g in ball.elements() {
            let w = ll_encode(g).unwrap();
            assert!(LlValidator.check(&w));
            assert_eq!(ll_decode(&w).unwrap(), *g);
            assert_eq!(LlShiftA.apply(&w).unwrap(), ll_encode(&wreath_mul(g, &a).unwrap()).unwrap());
            assert_eq!(LlToggle.apply(&w).unwrap(), ll_encode(&wreath_mul(g, &h).unwrap()).unwrap());
        }
    }
}
