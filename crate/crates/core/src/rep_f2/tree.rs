//! Bracket trees: the encoding of `Z₂ ≀ F₂` elements and its parser.
//!
//! The root is the horizontal line through `e`. A cell with something of
//! interest (a lit lamp or the lamplighter) strictly below it in the
//! perpendicular direction gets a child segment, written in brackets around
//! the cell's own symbol: `( )` for vertical children, `[ ]` for horizontal.

use std::collections::BTreeMap;

use super::symbols::{info, symbol, Bracket, SymKind};
use super::{ParseIssue, RepF2Error};
use crate::groups::{BasePoint, FreeLetter, FreeWord, LampConfig, LampState, WreathElement};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cell {
    pub lit: bool,
    pub light: bool,
    pub child: Option<Segment>,
}

/// Cells of one line indexed by their offset from the line's anchor. For a
/// child segment the anchor (index 0) is the parent's cell and is not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Segment {
    pub cells: BTreeMap<i64, Cell>,
}

/// Direction of the lines at a given nesting depth: even depths are horizontal.
fn letter(depth: usize, positive: bool) -> FreeLetter {
    match (depth.is_multiple_of(2), positive) {
        (true, true) => FreeLetter::A,
        (true, false) => FreeLetter::AInv,
        (false, true) => FreeLetter::B,
        (false, false) => FreeLetter::BInv,
    }
}

fn child_bracket(depth: usize) -> Bracket {
    if depth.is_multiple_of(2) {
        Bracket::Round
    } else {
        Bracket::Square
    }
}

/// Splits a reduced word into exponents along alternating lines, starting
/// with the horizontal one (whose exponent may be zero).
pub fn syllables(w: &FreeWord) -> Vec<i64> {
    let mut out: Vec<i64> = vec![0];
    let mut horizontal = true;
    for &l in w.letters() {
        if l.is_horizontal() != horizontal {
            out.push(0);
            horizontal = !horizontal;
        }
        *out.last_mut().unwrap() += l.sign();
    }
    out
}

fn free_point(p: &BasePoint) -> Result<&FreeWord, RepF2Error> {
    p.as_free().ok_or(RepF2Error::WrongGroup("expected base group F2"))
}

/// Builds the bracket tree of `g`.
pub fn tree_of(g: &WreathElement) -> Result<Segment, RepF2Error> {
    let mut root = Segment::default();
    let mut points: Vec<(&FreeWord, bool, bool)> = Vec::new();
    for (p, v) in g.lamps.iter() {
        if !matches!(v, LampState::Bit(_)) {
            return Err(RepF2Error::WrongGroup("lamps must be in Z2"));
        }
        points.push((free_point(p)?, true, false));
    }
    points.push((free_point(&g.pos)?, false, true));
    for (w, lit, light) in points {
        let syl = syllables(w);
        let mut seg = &mut root;
        let mut cell = seg.cells.entry(syl[0]).or_default();
        for &e in &syl[1..] {
            seg = cell.child.get_or_insert_with(Segment::default);
            cell = seg.cells.entry(e).or_default();
        }
        cell.lit |= lit;
        cell.light |= light;
    }
    Ok(root)
}

fn write_segment(seg: &Segment, depth: usize, anchor: Option<u8>, out: &mut Vec<u8>) {
    let lo = seg.cells.keys().next().copied().unwrap_or(0).min(0);
    let hi = seg.cells.keys().next_back().copied().unwrap_or(0).max(0);
    for i in lo..=hi {
        match (i, anchor) {
            (0, Some(a)) => out.push(a),
            _ => {
                let default = Cell::default();
                write_cell(seg.cells.get(&i).unwrap_or(&default), depth, depth == 0 && i == 0, out)
            }
        }
    }
}

fn write_cell(c: &Cell, depth: usize, origin: bool, out: &mut Vec<u8>) {
    match &c.child {
        None => out.push(symbol(SymKind::Basic, c.lit, origin, c.light).expect("basic symbol")),
        Some(child) => {
            let kind = if depth.is_multiple_of(2) { SymKind::D } else { SymKind::E };
            let anchor = symbol(kind, c.lit, origin, c.light).expect("anchor symbol");
            let br = child_bracket(depth);
            out.push(br.open());
            write_segment(child, depth + 1, Some(anchor), out);
            out.push(br.close());
        }
    }
}

pub fn linearize(root: &Segment) -> Vec<u8> {
    let mut out = Vec::new();
    write_segment(root, 0, None, &mut out);
    out
}

pub fn f2_encode(g: &WreathElement) -> Result<Vec<u8>, RepF2Error> {
    Ok(linearize(&tree_of(g)?))
}

#[derive(Debug)]
struct Item {
    offset: usize,
    sym: u8,
    child: Option<Parsed>,
}

#[derive(Debug)]
struct Parsed {
    items: Vec<Item>,
    /// Index into `items` of the anchor (or the origin, at the root).
    anchor: usize,
}

struct Parser<'a> {
    w: &'a [u8],
    pos: usize,
}

fn err(offset: usize, issue: ParseIssue) -> RepF2Error {
    RepF2Error::Parse { offset, issue }
}

impl Parser<'_> {
    /// Parses the items of a segment at `depth`, stopping before its close bracket.
    fn segment(&mut self, depth: usize, open_at: usize) -> Result<Parsed, RepF2Error> {
        let mut items: Vec<Item> = Vec::new();
        let mut anchor: Option<usize> = None;
        loop {
            let Some(&c) = self.w.get(self.pos) else {
                if depth > 0 {
                    return Err(err(self.w.len(), ParseIssue::Unbalanced));
                }
                break;
            };
            let at = self.pos;
            let i = info(c).ok_or(err(at, ParseIssue::UnknownSymbol))?;
            match i.kind {
                SymKind::Close(br) => {
                    if depth == 0 {
                        return Err(err(at, ParseIssue::Unbalanced));
                    }
                    if br != child_bracket(depth - 1) {
                        return Err(err(at, ParseIssue::Misassociated));
                    }
                    break;
                }
                SymKind::Open(br) => {
                    if br != child_bracket(depth) {
                        return Err(err(at, ParseIssue::Misassociated));
                    }
                    self.pos += 1;
                    let child = self.segment(depth + 1, at)?;
                    self.pos += 1;
                    let sym = child.items[child.anchor].sym;
                    if i_origin(sym) {
                        set_anchor(&mut anchor, items.len(), at)?;
                    }
                    items.push(Item { offset: at, sym, child: Some(child) });
                }
                SymKind::Basic => {
                    if depth > 0 && !matches!(c, b'0' | b'1' | b'C' | b'c') {
                        return Err(err(at, ParseIssue::Misplaced));
                    }
                    if i.origin {
                        set_anchor(&mut anchor, items.len(), at)?;
                    }
                    self.pos += 1;
                    items.push(Item { offset: at, sym: c, child: None });
                }
                SymKind::D | SymKind::E => {
                    let want = if depth % 2 == 1 { SymKind::D } else { SymKind::E };
                    if depth == 0 || i.kind != want || (i.origin && depth != 1) {
                        return Err(err(at, ParseIssue::Misplaced));
                    }
                    set_anchor(&mut anchor, items.len(), at)?;
                    self.pos += 1;
                    items.push(Item { offset: at, sym: c, child: None });
                }
            }
        }
        let Some(anchor) = anchor else {
            return Err(err(open_at, ParseIssue::MissingAnchor));
        };
        if depth > 0 && items.len() < 2 {
            return Err(err(open_at, ParseIssue::ShortSegment));
        }
        for edge in [items.first(), items.last()].into_iter().flatten() {
            if edge.sym == b'0' {
                let issue = if depth == 0 { ParseIssue::EdgeZero } else { ParseIssue::ForbiddenZero };
                return Err(err(edge.offset, issue));
            }
        }
        Ok(Parsed { items, anchor })
    }
}

fn i_origin(sym: u8) -> bool {
    info(sym).is_some_and(|i| i.origin)
}

fn set_anchor(anchor: &mut Option<usize>, idx: usize, at: usize) -> Result<(), RepF2Error> {
    if anchor.is_some() {
        return Err(err(at, ParseIssue::DuplicateAnchor));
    }
    *anchor = Some(idx);
    Ok(())
}

fn collect(p: &Parsed, depth: usize, base: &FreeWord, lamps: &mut LampConfig, pos: &mut Option<FreeWord>) {
    for (k, item) in p.items.iter().enumerate() {
        if depth > 0 && k == p.anchor {
            continue;
        }
        let off = k as i64 - p.anchor as i64;
        let point = base.mul(&FreeWord::power(letter(depth, off > 0), off.abs()));
        let i = info(item.sym).expect("parsed symbol");
        if i.lit {
            lamps.set(BasePoint::Free(point.clone()), LampState::Bit(true));
        }
        if i.light {
            *pos = Some(point.clone());
        }
        if let Some(child) = &item.child {
            collect(child, depth + 1, &point, lamps, pos);
        }
    }
}

/// Counts origin and lamplighter markers; each must occur exactly once.
fn check_markers(w: &[u8]) -> Result<(), RepF2Error> {
    let (mut origin, mut light) = (0, 0);
    for (k, &c) in w.iter().enumerate() {
        let i = info(c).ok_or(err(k, ParseIssue::UnknownSymbol))?;
        origin += i.origin as usize;
        light += i.light as usize;
        if origin > 1 || light > 1 {
            return Err(err(k, ParseIssue::MarkerCount));
        }
    }
    if origin == 0 || light == 0 {
        return Err(err(w.len(), ParseIssue::MarkerCount));
    }
    Ok(())
}

pub fn f2_decode(w: &[u8]) -> Result<WreathElement, RepF2Error> {
    check_markers(w)?;
    let mut p = Parser { w, pos: 0 };
    let root = p.segment(0, 0)?;
    let mut lamps = LampConfig::new();
    let mut pos = None;
    collect(&root, 0, &FreeWord::identity(), &mut lamps, &mut pos);
    let g = WreathElement::new(lamps, BasePoint::Free(pos.expect("marker checked")));
    let back = f2_encode(&g)?;
    if back != w {
        let at = back.iter().zip(w).position(|(x, y)| x != y).unwrap_or(back.len().min(w.len()));
        return Err(err(at, ParseIssue::NonCanonical));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_element;
    use crate::groups::{BaseKind, LampKind};

    fn el(s: &str) -> WreathElement {
        parse_element(BaseKind::F2, LampKind::Z2, s).unwrap()
    }

    #[test]
    fn syllable_split() {
        let w = FreeWord::parse("a-1a-1bab-1").unwrap();
        assert_eq!(syllables(&w), vec![-2, 1, 1, -1]);
        assert_eq!(syllables(&FreeWord::parse("b").unwrap()), vec![0, 1]);
        assert_eq!(syllables(&FreeWord::identity()), vec![0]);
    }

    #[test]
    fn small_words() {
        assert_eq!(f2_encode(&el("pos=e;lamps=")).unwrap(), b"B");
        assert_eq!(f2_encode(&el("pos=a;lamps=")).unwrap(), b"AC");
        assert_eq!(f2_encode(&el("pos=b;lamps=")).unwrap(), b"(PC)");
        assert_eq!(f2_encode(&el("pos=ab;lamps=")).unwrap(), b"A(DC)");
        assert_eq!(f2_encode(&el("pos=ba;lamps=")).unwrap(), b"(P[EC])");
    }

    #[test]
    fn fig1_words_round_trip() {
        for w in [&b"11(1[1E1]P[E(cd)])([1E]D[1e])1"[..], b"(D1)a([1E]D[1s])1"] {
            let g = f2_decode(w).unwrap();
            assert_eq!(f2_encode(&g).unwrap(), w);
        }
    }

    #[test]
    fn parse_issues() {
        let issue = |w: &[u8]| match f2_decode(w) {
            Err(RepF2Error::Parse { issue, .. }) => issue,
            other => panic!("{other:?}"),
        };
        assert_eq!(issue(b"0B"), ParseIssue::EdgeZero);
        assert_eq!(issue(b"B0"), ParseIssue::EdgeZero);
        assert_eq!(issue(b"(D)B"), ParseIssue::ShortSegment);
        assert_eq!(issue(b"(0D1)B"), ParseIssue::ForbiddenZero);
        assert_eq!(issue(b"(1D0)B"), ParseIssue::ForbiddenZero);
        assert_eq!(issue(b"B(1D"), ParseIssue::Unbalanced);
        assert_eq!(issue(b"B)"), ParseIssue::Unbalanced);
        assert_eq!(issue(b"[1E]B"), ParseIssue::Misassociated);
        assert_eq!(issue(b"(11)B"), ParseIssue::MissingAnchor);
        assert_eq!(issue(b"(1DD)B"), ParseIssue::DuplicateAnchor);
        assert_eq!(issue(b"AB"), ParseIssue::MarkerCount);
        assert_eq!(issue(b"A"), ParseIssue::MarkerCount);
        assert_eq!(issue(b"(1A)C"), ParseIssue::Misplaced);
        assert_eq!(issue(b"x"), ParseIssue::UnknownSymbol);
    }
}
