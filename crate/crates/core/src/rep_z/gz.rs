//! The representation of `G ≀ Z`: per-cell `G`-words whose first letters
//! carry a tag. ASCII for a first letter 0/1: `u`/`U` cell start, `A`/`a`
//! origin, `B`/`b` origin with lamplighter, `C`/`c` lamplighter; `0`/`1` plain.

use std::collections::BTreeSet;

use super::gpres::{GLangState, GLanguage, GPresentation, GStep, GStepState};
use super::RepZError;
use crate::automata::sync::{SyncProduct, Transducer, Validator};
use crate::automata::{Representation, SyncFsa};
use crate::groups::{BasePoint, GroupSpec, LampConfig, LampKind, WreathElement};

pub const GZ_SYMBOLS: [u8; 10] = *b"01uUAaBbCc";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Start,
    Origin,
    Both,
    Light,
}

pub fn tag_of(c: u8) -> Option<(Tag, u8)> {
    let bit = |lower: bool| if lower { b'1' } else { b'0' };
    match c {
        b'u' | b'U' => Some((Tag::Start, bit(c == b'U'))),
        b'A' | b'a' => Some((Tag::Origin, bit(c == b'a'))),
        b'B' | b'b' => Some((Tag::Both, bit(c == b'b'))),
        b'C' | b'c' => Some((Tag::Light, bit(c == b'c'))),
        _ => None,
    }
}

pub fn tagged(tag: Tag, bit: u8) -> u8 {
    let one = bit == b'1';
    match (tag, one) {
        (Tag::Start, false) => b'u',
        (Tag::Start, true) => b'U',
        (Tag::Origin, false) => b'A',
        (Tag::Origin, true) => b'a',
        (Tag::Both, false) => b'B',
        (Tag::Both, true) => b'b',
        (Tag::Light, false) => b'C',
        (Tag::Light, true) => b'c',
    }
}

fn spec_for(g: GPresentation) -> GroupSpec {
    match g {
        GPresentation::Z2 => GroupSpec::lamplighter(),
        GPresentation::ZBinary => GroupSpec::z_wr_z(),
    }
}

pub fn gz_encode(gp: GPresentation, g: &WreathElement) -> Result<Vec<u8>, RepZError> {
    let z = g.pos.as_z().ok_or(RepZError::WrongGroup("expected base group Z"))?;
    let mut keys = BTreeSet::new();
    for (p, v) in g.lamps.iter() {
        keys.insert(p.as_z().ok_or(RepZError::WrongGroup("expected base group Z"))?);
        if v.kind() != gp.lamp_kind() {
            return Err(RepZError::WrongGroup("lamp value outside G"));
        }
    }
    let m = keys.first().copied().unwrap_or(0);
    let n = keys.last().copied().unwrap_or(0);
    let (l, r) = (m.min(z).min(0), n.max(z).max(0));
    let mut out = Vec::new();
    for i in l..=r {
        let cell = match g.lamps.get(&BasePoint::Z(i)) {
            Some(v) => gp.encode(*v).ok_or(RepZError::WrongGroup("lamp value outside G"))?,
            None => gp.identity_word(),
        };
        let tag = match (i == 0, i == z) {
            (true, true) => Tag::Both,
            (true, false) => Tag::Origin,
            (false, true) => Tag::Light,
            (false, false) => Tag::Start,
        };
        out.push(tagged(tag, cell[0]));
        out.extend_from_slice(&cell[1..]);
    }
    Ok(out)
}

pub fn gz_decode(gp: GPresentation, w: &[u8]) -> Result<WreathElement, RepZError> {
    let perr = |offset: usize, reason: String| RepZError::Parse { offset, reason };
    if w.is_empty() {
        return Err(perr(0, "empty word".into()));
    }
    // (offset, tag, plain cell word)
    let mut cells: Vec<(usize, Tag, Vec<u8>)> = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        match (tag_of(c), c) {
            (Some((tag, bit)), _) => cells.push((i, tag, vec![bit])),
            (None, b'0' | b'1') => match cells.last_mut() {
                Some(cell) => cell.2.push(c),
                None => return Err(perr(0, "word must start with a tagged letter".into())),
            },
            _ => return Err(perr(i, format!("unknown symbol '{}'", c as char))),
        }
    }
    let find = |t: Tag| -> Result<Option<usize>, RepZError> {
        let hits: Vec<usize> = cells.iter().enumerate().filter(|(_, c)| c.1 == t).map(|(k, _)| k).collect();
        match hits.as_slice() {
            [] => Ok(None),
            [k] => Ok(Some(*k)),
            [_, k, ..] => Err(perr(cells[*k].0, "repeated marker".into())),
        }
    };
    let (origin, light, both) = (find(Tag::Origin)?, find(Tag::Light)?, find(Tag::Both)?);
    let (o, zc) = match (origin, light, both) {
        (None, None, Some(b)) => (b, b),
        (Some(a), Some(c), None) => (a, c),
        (_, _, Some(b)) => return Err(perr(cells[b].0, "B-tag together with A- or C-tags".into())),
        _ => return Err(perr(w.len(), "missing origin or lamplighter marker".into())),
    };
    let id = gp.identity_word();
    let mut lamps = LampConfig::new();
    for (k, (off, tag, word)) in cells.iter().enumerate() {
        let v = gp.decode(word).ok_or_else(|| perr(*off, format!("cell {k} is not in L_G")))?;
        let edge = k == 0 || k + 1 == cells.len();
        if edge && *tag == Tag::Start && *word == id {
            return Err(perr(*off, format!("unmarked identity cell {k} at the window edge")));
        }
        lamps.set(BasePoint::Z(k as i64 - o as i64), v);
    }
    Ok(WreathElement::new(lamps, BasePoint::Z(zc as i64 - o as i64)))
}

/// Deterministic acceptor of the canonical `G ≀ Z` words.
#[derive(Debug, Clone, Copy)]
pub struct GzValidator(pub GPresentation);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GzValState {
    cell: Option<(Tag, GLangState)>,
    /// Letters of the current cell matched against the identity word; `None` once it differs.
    id_match: Option<u8>,
    first_cell: bool,
    origin: bool,
    light: bool,
    both: bool,
}

impl GzValidator {
    fn cell_is_identity(&self, s: &GzValState) -> bool {
        s.id_match == Some(self.0.identity_word().len() as u8)
    }

    fn close_cell_ok(&self, s: &GzValState) -> bool {
        match s.cell {
            None => true,
            Some((_, g)) => GLanguage(self.0).accepts(&g),
        }
    }
}

impl Validator for GzValidator {
    type State = GzValState;

    fn alphabet(&self) -> Vec<u8> {
        GZ_SYMBOLS.to_vec()
    }
    fn start(&self) -> GzValState {
        GzValState { cell: None, id_match: None, first_cell: false, origin: false, light: false, both: false }
    }
    fn step(&self, q: &GzValState, x: u8) -> Option<GzValState> {
        let lang = GLanguage(self.0);
        let id = self.0.identity_word();
        let mut s = *q;
        let advance_id = |m: Option<u8>, bit: u8| m.filter(|&k| id.get(k as usize) == Some(&bit)).map(|k| k + 1);
        if let Some((tag, bit)) = tag_of(x) {
            if !self.close_cell_ok(&s) {
                return None;
            }
            if let Some((Tag::Start, _)) = s.cell {
                if s.first_cell && self.cell_is_identity(&s) {
                    return None;
                }
            }
            s.first_cell = s.cell.is_none();
            let flag = match tag {
                Tag::Origin => Some(&mut s.origin),
                Tag::Light => Some(&mut s.light),
                Tag::Both => Some(&mut s.both),
                Tag::Start => None,
            };
            if let Some(f) = flag {
                if *f {
                    return None;
                }
                *f = true;
            }
            if s.both && (s.origin || s.light) {
                return None;
            }
            s.cell = Some((tag, lang.step(&lang.start(), bit)?));
            s.id_match = advance_id(Some(0), bit);
            Some(s)
        } else if x == b'0' || x == b'1' {
            let (tag, g) = s.cell?;
            s.cell = Some((tag, lang.step(&g, x)?));
            s.id_match = advance_id(s.id_match, x);
            Some(s)
        } else {
            None
        }
    }
    fn accepts(&self, q: &GzValState) -> bool {
        let Some((tag, _)) = q.cell else { return false };
        self.close_cell_ok(q) && !(tag == Tag::Start && self.cell_is_identity(q)) && (q.both || (q.origin && q.light))
    }
}

/// Right multiplication by `a`: the lamplighter tag moves one cell right.
#[derive(Debug, Clone, Copy)]
pub struct GzShiftA(pub GPresentation);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GzShiftState {
    Start,
    Before,
    /// The first cell is the lamplighter's and may turn out to be the
    /// identity word; its plain letters are held back.
    HoldFirst(Vec<u8>),
    Source,
    After,
}

impl GzShiftA {
    fn retarget(x: u8) -> Option<u8> {
        let (tag, bit) = tag_of(x)?;
        match tag {
            Tag::Start => Some(tagged(Tag::Light, bit)),
            Tag::Origin => Some(tagged(Tag::Both, bit)),
            _ => None,
        }
    }
}

impl Transducer for GzShiftA {
    type State = GzShiftState;

    fn start(&self) -> GzShiftState {
        GzShiftState::Start
    }
    fn step(&self, q: &GzShiftState, x: u8) -> Option<(GzShiftState, Vec<u8>)> {
        use GzShiftState::*;
        let tag = tag_of(x);
        match q {
            Start | Before => match tag {
                Some((Tag::Light, bit)) if *q == Start => Some((HoldFirst(vec![bit]), vec![])),
                Some((Tag::Light, bit)) => Some((Source, vec![tagged(Tag::Start, bit)])),
                Some((Tag::Both, bit)) => Some((Source, vec![tagged(Tag::Origin, bit)])),
                _ => Some((Before, vec![x])),
            },
            HoldFirst(held) => {
                if tag.is_some() {
                    let t = Self::retarget(x)?;
                    if *held == self.0.identity_word() {
                        return Some((After, vec![t]));
                    }
                    let mut out = vec![tagged(Tag::Start, held[0])];
                    out.extend_from_slice(&held[1..]);
                    out.push(t);
                    return Some((After, out));
                }
                let mut h = held.clone();
                h.push(x);
                if h.len() > self.0.identity_word().len() {
                    let mut out = vec![tagged(Tag::Start, h[0])];
                    out.extend_from_slice(&h[1..]);
                    Some((Source, out))
                } else {
                    Some((HoldFirst(h), vec![]))
                }
            }
            Source => match tag {
                Some(_) => Some((After, vec![Self::retarget(x)?])),
                None => Some((Source, vec![x])),
            },
            After => Some((After, vec![x])),
        }
    }
    fn finish(&self, q: &GzShiftState) -> Option<Vec<u8>> {
        match q {
            GzShiftState::Source => {
                let id = self.0.identity_word();
                let mut out = vec![tagged(Tag::Light, id[0])];
                out.extend_from_slice(&id[1..]);
                Some(out)
            }
            GzShiftState::After => Some(vec![]),
            _ => None,
        }
    }
}

/// Right multiplication by a generator of `G`: its automaton runs on the
/// lamplighter's cell and the tag is restored on the first output letter.
#[derive(Debug, Clone, Copy)]
pub struct GzLampStep(pub GPresentation);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GzLampState {
    Before,
    /// Inside the lamplighter cell; the tag to restore if nothing has been
    /// emitted yet.
    Cell(GStepState, Option<Tag>),
    After,
}

impl GzLampStep {
    fn emit(pending: &mut Option<Tag>, out: Vec<u8>) -> Vec<u8> {
        let mut out = out;
        if let (Some(t), Some(first)) = (*pending, out.first_mut()) {
            *first = tagged(t, *first);
            *pending = None;
        }
        out
    }

    fn close(&self, st: GStepState, pending: Option<Tag>) -> Option<Vec<u8>> {
        let mut p = pending;
        let out = Self::emit(&mut p, GStep(self.0).finish(&st)?);
        // An untagged cell start would corrupt the cell boundaries.
        if p.is_some() {
            return None;
        }
        Some(out)
    }
}

impl Transducer for GzLampStep {
    type State = GzLampState;

    fn start(&self) -> GzLampState {
        GzLampState::Before
    }
    fn step(&self, q: &GzLampState, x: u8) -> Option<(GzLampState, Vec<u8>)> {
        let g = GStep(self.0);
        match *q {
            GzLampState::Before => match tag_of(x) {
                Some((t @ (Tag::Light | Tag::Both), bit)) => {
                    let (st, out) = g.step(&g.start(), bit)?;
                    let mut pending = Some(t);
                    let out = Self::emit(&mut pending, out);
                    Some((GzLampState::Cell(st, pending), out))
                }
                _ => Some((GzLampState::Before, vec![x])),
            },
            GzLampState::Cell(st, pending) => {
                if tag_of(x).is_some() {
                    let mut out = self.close(st, pending)?;
                    out.push(x);
                    return Some((GzLampState::After, out));
                }
                let (st2, out) = g.step(&st, x)?;
                let mut p = pending;
                let out = Self::emit(&mut p, out);
                Some((GzLampState::Cell(st2, p), out))
            }
            GzLampState::After => Some((GzLampState::After, vec![x])),
        }
    }
    fn finish(&self, q: &GzLampState) -> Option<Vec<u8>> {
        match *q {
            GzLampState::Before => None,
            GzLampState::Cell(st, pending) => self.close(st, pending),
            GzLampState::After => Some(vec![]),
        }
    }
}

const MACHINE_CAP: usize = 20_000;

/// Synchronous automaton for `a`, `a-1`, or a generator of `G` (and its inverse).
pub fn gz_mult_fsa(gp: GPresentation, gen: &str) -> Result<SyncFsa, RepZError> {
    if let Some(base) = gen.strip_suffix("-1") {
        return Ok(gz_mult_fsa(gp, base)?.transpose());
    }
    let v = GzValidator(gp);
    let m = if gen == "a" {
        SyncProduct { validator: &v, transducer: &GzShiftA(gp), max_lag: 4 }.materialize(MACHINE_CAP)
    } else if gp.generators().contains(&gen) {
        SyncProduct { validator: &v, transducer: &GzLampStep(gp), max_lag: 4 }.materialize(MACHINE_CAP)
    } else {
        return Err(RepZError::UnknownGenerator(gen.to_string()));
    };
    m.map_err(RepZError::Automata)
}

/// [`Representation`] handle for `G ≀ Z`.
pub struct GzRep {
    pub g: GPresentation,
    spec: GroupSpec,
}

impl GzRep {
    pub fn new(g: GPresentation) -> Self {
        GzRep { g, spec: spec_for(g) }
    }
}

impl Representation for GzRep {
    fn name(&self) -> &str {
        match self.g {
            GPresentation::Z2 => "gz:z2",
            GPresentation::ZBinary => "gz:z",
        }
    }
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    fn encode(&self, g: &WreathElement) -> Vec<u8> {
        gz_encode(self.g, g).unwrap_or_default()
    }
    fn decode(&self, w: &[u8]) -> Result<WreathElement, String> {
        gz_decode(self.g, w).map_err(|e| e.to_string())
    }
}

/// The renaming under which the `G = Z₂` words coincide with the lamplighter words.
pub fn gz_to_ll(w: &[u8]) -> Vec<u8> {
    w.iter()
        .map(|&c| match c {
            b'u' => b'0',
            b'U' => b'1',
            _ => c,
        })
        .collect()
}

/// Lamp values of a `Z ≀ Z` element in a form suitable for the literal grammar.
pub fn lamp_kind_of(gp: GPresentation) -> LampKind {
    gp.lamp_kind()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::convolve;
    use crate::groups::LampState;

    fn zz(lamps: &[(i64, i64)], z: i64) -> WreathElement {
        WreathElement::new(LampConfig::from_entries(lamps.iter().map(|&(p, v)| (BasePoint::Z(p), LampState::Int(v)))), BasePoint::Z(z))
    }

    /// A toy presentation where fixed words stand for lamp values, used to
    /// replay the two worked examples with arbitrary cell words.
    fn tag_cells(cells: &[&str], origin: usize, light: usize) -> String {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            let bit = c.as_bytes()[0];
            let tag = match (k == origin, k == light) {
                (true, true) => Tag::Both,
                (true, false) => Tag::Origin,
                (false, true) => Tag::Light,
                _ => Tag::Start,
            };
            s.push(tagged(tag, bit) as char);
            s.push_str(&c[1..]);
        }
        s
    }

    #[test]
    fn worked_examples_layout() {
        assert_eq!(tag_cells(&["011", "1001", "01", "111"], 1, 2), "u11a001C1U11");
        assert_eq!(tag_cells(&["111", "000", "01"], 1, 1), "U11B00u1");
    }

    #[test]
    fn z_binary_round_trip_and_layout() {
        let g = zz(&[(-1, 2), (0, -1), (1, 3)], 1);
        let w = gz_encode(GPresentation::ZBinary, &g).unwrap();
        assert_eq!(w, b"u01aC11");
        assert_eq!(gz_decode(GPresentation::ZBinary, &w).unwrap(), g);
    }

    #[test]
    fn decode_errors() {
        let z = GPresentation::ZBinary;
        assert!(matches!(gz_decode(z, b"B0"), Err(RepZError::Parse { .. })));
        assert!(gz_decode(z, b"uB").is_err());
        assert!(gz_decode(z, b"AC").is_ok());
        assert!(gz_decode(z, b"BC").is_err());
        assert!(gz_decode(z, b"0B").is_err());
    }

    #[test]
    fn increment_machine_example() {
        let m = gz_mult_fsa(GPresentation::ZBinary, "g1").unwrap();
        let u = gz_encode(GPresentation::ZBinary, &zz(&[], 0)).unwrap();
        let v = gz_encode(GPresentation::ZBinary, &zz(&[(0, 1)], 0)).unwrap();
        assert_eq!((u.as_slice(), v.as_slice()), (&b"B"[..], &b"B1"[..]));
        assert!(m.run(convolve(&u, &v).pairs()).unwrap());
        let a = gz_mult_fsa(GPresentation::ZBinary, "a").unwrap();
        for w in [&b"B"[..], b"AC", b"B1", b"u1A0C"] {
            assert!(!a.run(convolve(w, w).pairs()).unwrap());
        }
    }

    #[test]
    fn z2_instance_matches_lamplighter() {
        use crate::groups::{bfs_ball, wreath_mul};
        use crate::rep_z::lamplighter::{ll_encode, LlShiftA};
        let spec = GroupSpec::lamplighter();
        let a = spec.generator("a").unwrap();
        for g in bfs_ball(&spec, 4).unwrap().elements() {
            let w = gz_encode(GPresentation::Z2, g).unwrap();
            assert_eq!(gz_to_ll(&w), ll_encode(g).unwrap());
            let ga = gz_encode(GPresentation::Z2, &wreath_mul(g, &a).unwrap()).unwrap();
            assert_eq!(GzShiftA(GPresentation::Z2).apply(&w).unwrap(), ga);
            assert_eq!(gz_to_ll(&ga), LlShiftA.apply(&ll_encode(g).unwrap()).unwrap());
        }
    }

    #[test]
    fn audits_on_small_balls() {
        use crate::automata::relation_audit;
        use crate::groups::bfs_ball;
        for gp in [GPresentation::Z2, GPresentation::ZBinary] {
            let rep = GzRep::new(gp);
            let ball = bfs_ball(rep.spec(), 3).unwrap();
            let mut gens = vec!["a".to_string(), "a-1".to_string()];
            for g in gp.generators() {
                gens.push(g.to_string());
                gens.push(format!("{g}-1"));
            }
            for gen in gens {
                let m = gz_mult_fsa(gp, &gen).unwrap();
                let r = relation_audit(&gen, &m, &rep, &gen, &ball, 5);
                assert!(r.pass, "{} {gen}: {:?} {:?}", gp.name(), r.missed.first(), r.spurious.first());
            }
        }
    }
}
