//! Built-in automatic presentations of the lamp group `G` over `{0,1}`.

use crate::automata::sync::{SyncProduct, Transducer, Validator};
use crate::automata::{AutomataError, SyncFsa};
use crate::groups::{LampKind, LampState};

/// Which lamp group the presentation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GPresentation {
    /// `Z₂` with `L_G = {0, 1}` and generator `h`.
    Z2,
    /// `Z` as a sign bit followed by a magnitude written least significant
    /// bit first without trailing zeros; negative `n` stores `|n| − 1`.
    /// Generator `g1` adds one.
    ZBinary,
}

impl GPresentation {
    pub fn name(&self) -> &'static str {
        match self {
            GPresentation::Z2 => "z2",
            GPresentation::ZBinary => "z",
        }
    }

    pub fn lamp_kind(&self) -> LampKind {
        match self {
            GPresentation::Z2 => LampKind::Z2,
            GPresentation::ZBinary => LampKind::Z,
        }
    }

    pub fn identity_word(&self) -> Vec<u8> {
        vec![b'0']
    }

    pub fn generators(&self) -> Vec<&'static str> {
        match self {
            GPresentation::Z2 => vec!["h"],
            GPresentation::ZBinary => vec!["g1"],
        }
    }

    pub fn generator_value(&self, name: &str) -> Option<LampState> {
        match (self, name) {
            (GPresentation::Z2, "h") => Some(LampState::Bit(true)),
            (GPresentation::ZBinary, "g1") => Some(LampState::Int(1)),
            _ => None,
        }
    }

    pub fn encode(&self, v: LampState) -> Option<Vec<u8>> {
        match (self, v) {
            (GPresentation::Z2, LampState::Bit(b)) => Some(vec![if b { b'1' } else { b'0' }]),
            (GPresentation::ZBinary, LampState::Int(n)) => {
                let (sign, mut mag) = if n >= 0 { (b'0', n as u64) } else { (b'1', (-(n + 1)) as u64) };
                let mut w = vec![sign];
                while mag > 0 {
                    w.push(if mag & 1 == 1 { b'1' } else { b'0' });
                    mag >>= 1;
                }
                Some(w)
            }
            _ => None,
        }
    }

    pub fn decode(&self, w: &[u8]) -> Option<LampState> {
        if !self.in_language(w) {
            return None;
        }
        match self {
            GPresentation::Z2 => Some(LampState::Bit(w[0] == b'1')),
            GPresentation::ZBinary => {
                let mut mag: i64 = 0;
                for (i, &c) in w[1..].iter().enumerate() {
                    if c == b'1' {
                        mag = mag.checked_add(1i64.checked_shl(i as u32)?)?;
                    }
                }
                Some(LampState::Int(if w[0] == b'0' { mag } else { -mag - 1 }))
            }
        }
    }

    pub fn in_language(&self, w: &[u8]) -> bool {
        GLanguage(*self).check(w)
    }

    /// Synchronous automaton over `{0,1}` for right multiplication by a generator.
    pub fn generator_fsa(&self, name: &str) -> Result<SyncFsa, AutomataError> {
        if let Some(base) = name.strip_suffix("-1") {
            return Ok(self.generator_fsa(base)?.transpose());
        }
        if self.generator_value(name).is_none() {
            return Err(AutomataError::InvalidTable(format!("unknown generator {name}")));
        }
        SyncProduct { validator: &GLanguage(*self), transducer: &GStep(*self), max_lag: 2 }.materialize(1000)
    }
}

/// `L_G` as a deterministic automaton.
#[derive(Debug, Clone, Copy)]
pub struct GLanguage(pub GPresentation);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GLangState {
    Start,
    /// Sign read (or the single Z₂ letter).
    Sign,
    /// Last magnitude bit was 1.
    One,
    /// Last magnitude bit was 0.
    Zero,
}

impl Validator for GLanguage {
    type State = GLangState;

    fn alphabet(&self) -> Vec<u8> {
        b"01".to_vec()
    }
    fn start(&self) -> GLangState {
        GLangState::Start
    }
    fn step(&self, q: &GLangState, x: u8) -> Option<GLangState> {
        use GLangState::*;
        if x != b'0' && x != b'1' {
            return None;
        }
        match (self.0, q) {
            (_, Start) => Some(Sign),
            (GPresentation::Z2, _) => None,
            (GPresentation::ZBinary, _) => Some(if x == b'1' { One } else { Zero }),
        }
    }
    fn accepts(&self, q: &GLangState) -> bool {
        matches!(q, GLangState::Sign | GLangState::One)
    }
}

/// Right multiplication by the presentation's generator on `L_G`.
#[derive(Debug, Clone, Copy)]
pub struct GStep(pub GPresentation);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GStepState {
    Start,
    /// Non-negative, carry still pending.
    Carry,
    /// Negative sign read and held back.
    NegSign,
    /// Negative, borrow still pending.
    Borrow,
    /// A 0 held back because it might become a trailing zero.
    HeldZero,
    Copy,
}

impl Transducer for GStep {
    type State = GStepState;

    fn start(&self) -> GStepState {
        GStepState::Start
    }
    fn step(&self, q: &GStepState, x: u8) -> Option<(GStepState, Vec<u8>)> {
        use GStepState::*;
        match (self.0, q, x) {
            (GPresentation::Z2, Start, b'0') => Some((Copy, vec![b'1'])),
            (GPresentation::Z2, Start, b'1') => Some((Copy, vec![b'0'])),
            (GPresentation::Z2, _, _) => None,
            (_, Start, b'0') => Some((Carry, vec![b'0'])),
            (_, Start, b'1') => Some((NegSign, vec![])),
            (_, Carry, b'1') => Some((Carry, vec![b'0'])),
            (_, Carry, b'0') => Some((Copy, vec![b'1'])),
            (_, NegSign, b'0') => Some((Borrow, vec![b'1', b'1'])),
            (_, NegSign, b'1') => Some((HeldZero, vec![b'1'])),
            (_, Borrow, b'0') => Some((Borrow, vec![b'1'])),
            (_, Borrow, b'1') => Some((HeldZero, vec![])),
            (_, HeldZero, _) => Some((Copy, vec![b'0', x])),
            (_, Copy, _) => Some((Copy, vec![x])),
            _ => None,
        }
    }
    fn finish(&self, q: &GStepState) -> Option<Vec<u8>> {
        use GStepState::*;
        match q {
            Carry => Some(vec![b'1']),
            NegSign => Some(vec![b'0']),
            HeldZero | Copy => Some(vec![]),
            Start | Borrow => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::convolve;

    // Oracle: two's-complement-free formatting by repeated division.
    fn oracle_word(n: i64) -> String {
        let (sign, mag) = if n >= 0 { ('0', n) } else { ('1', -n - 1) };
        let mut s = sign.to_string();
        let mut m = mag;
        while m > 0 {
            s.push(if m % 2 == 1 { '1' } else { '0' });
            m /= 2;
        }
        s
    }

    #[test]
    fn binary_words() {
        let z = GPresentation::ZBinary;
        for (n, w) in [(0, "0"), (1, "01"), (2, "001"), (-1, "1"), (-2, "11"), (5, "0101")] {
            assert_eq!(z.encode(LampState::Int(n)).unwrap(), w.as_bytes());
            assert_eq!(z.decode(w.as_bytes()), Some(LampState::Int(n)));
        }
        assert!(!z.in_language(b""));
        assert!(!z.in_language(b"010"));
        assert!(z.in_language(b"1"));
    }

    #[test]
    fn increment_matches_arithmetic() {
        let z = GPresentation::ZBinary;
        let fsa = z.generator_fsa("g1").unwrap();
        let dec = z.generator_fsa("g1-1").unwrap();
        for n in -300..300 {
            let u = oracle_word(n);
            let v = oracle_word(n + 1);
            assert_eq!(GStep(z).apply(u.as_bytes()).unwrap(), v.as_bytes(), "n = {n}");
            assert!(fsa.run(convolve(u.as_bytes(), v.as_bytes()).pairs()).unwrap());
            assert!(!fsa.run(convolve(u.as_bytes(), u.as_bytes()).pairs()).unwrap());
            assert!(dec.run(convolve(v.as_bytes(), u.as_bytes()).pairs()).unwrap());
        }
    }

    #[test]
    fn z2_toggle() {
        let g = GPresentation::Z2;
        let fsa = g.generator_fsa("h").unwrap();
        assert!(fsa.run(convolve(b"0", b"1").pairs()).unwrap());
        assert!(fsa.run(convolve(b"1", b"0").pairs()).unwrap());
        assert!(!fsa.run(convolve(b"1", b"1").pairs()).unwrap());
        assert!(!g.in_language(b"01"));
    }
}
