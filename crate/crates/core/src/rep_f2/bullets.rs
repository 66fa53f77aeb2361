//! Named checks for the properties listed for the canonical language.
//!
//! Each predicate looks at one property only. Their conjunction is compared
//! with exact canonicity by [`bullet_gaps`], which enumerates every word up
//! to a length whose prefixes could still satisfy all of them.

use super::symbols::{info, is_a_symbol, is_b_symbol, is_c_symbol, is_d_symbol, is_e_symbol, SymKind, F2_SYMBOLS};
use super::tree::f2_decode;
use crate::par::par_map;

/// Bracket pairs `(open, close)` and, per position, the innermost pair
/// strictly enclosing it. `None` if the brackets do not match.
type Pairing = (Vec<(usize, usize)>, Vec<Option<usize>>);

fn pairs(w: &[u8]) -> Option<Pairing> {
    let mut out = Vec::new();
    let mut owner = vec![None; w.len()];
    let mut open: Vec<usize> = Vec::new();
    for (i, &c) in w.iter().enumerate() {
        match c {
            b'(' | b'[' => {
                owner[i] = open.last().copied();
                out.push((i, usize::MAX));
                open.push(out.len() - 1);
            }
            b')' | b']' => {
                let p = open.pop()?;
                if w[out[p].0] != if c == b')' { b'(' } else { b'[' } {
                    return None;
                }
                out[p].1 = i;
                owner[i] = open.last().copied();
            }
            _ => owner[i] = open.last().copied(),
        }
    }
    open.is_empty().then_some((out, owner))
}

/// Brackets balance and follow `S → SS | (T) | ε`, `T → TT | [S] | ε`.
pub fn brackets_generated(w: &[u8]) -> bool {
    let mut depth = 0usize;
    let mut open = Vec::new();
    for &c in w {
        match c {
            b'(' | b'[' => {
                if (c == b'(') != depth.is_multiple_of(2) {
                    return false;
                }
                open.push(c);
                depth += 1;
            }
            b')' | b']' => {
                if open.pop() != Some(if c == b')' { b'(' } else { b'[' }) {
                    return false;
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    open.is_empty()
}

/// Symbols sitting directly inside pair `p`.
fn own_symbols<'a>(w: &'a [u8], owner: &'a [Option<usize>], p: usize) -> impl Iterator<Item = u8> + 'a {
    w.iter().zip(owner).filter(move |(_, o)| **o == Some(p)).map(|(&c, _)| c).filter(|&c| !matches!(c, b'(' | b'[' | b')' | b']'))
}

fn anchored(w: &[u8], br: u8, anchor: fn(u8) -> bool) -> bool {
    let Some((ps, owner)) = pairs(w) else { return false };
    ps.iter().enumerate().filter(|(_, &(o, _))| w[o] == br).all(|(p, _)| {
        let own: Vec<u8> = own_symbols(w, &owner, p).collect();
        own.iter().filter(|&&c| anchor(c)).count() == 1 && own.iter().all(|&c| anchor(c) || matches!(c, b'0' | b'1' | b'C' | b'c'))
    })
}

/// Every `( )` pair holds exactly one D-symbol at its own level, and otherwise only `0 1 C c`.
pub fn round_pairs_anchored(w: &[u8]) -> bool {
    anchored(w, b'(', is_d_symbol)
}

/// Every `[ ]` pair holds exactly one E-symbol at its own level, and otherwise only `0 1 C c`.
pub fn square_pairs_anchored(w: &[u8]) -> bool {
    anchored(w, b'[', is_e_symbol)
}

/// The A- and B-flavoured D-symbols occur only directly inside a first-level `( )`.
pub fn flavoured_d_first_level(w: &[u8]) -> bool {
    let Some((ps, owner)) = pairs(w) else { return false };
    w.iter().zip(&owner).all(|(&c, o)| !matches!(c, b'P' | b'p' | b'Q' | b'q') || o.is_some_and(|p| w[ps[p].0] == b'(' && owner[ps[p].0].is_none()))
}

/// At least two symbols between every matched pair.
pub fn pairs_separated(w: &[u8]) -> bool {
    pairs(w).is_some_and(|(ps, _)| ps.iter().all(|&(o, c)| c - o > 2))
}

/// No `(0`, `0)`, `[0` or `0]`.
pub fn no_zero_by_bracket(w: &[u8]) -> bool {
    w.windows(2).all(|p| !matches!(p, [b'(' | b'[', b'0'] | [b'0', b')' | b']']))
}

/// The word neither starts nor ends with `0`.
pub fn no_zero_at_ends(w: &[u8]) -> bool {
    w.first() != Some(&b'0') && w.last() != Some(&b'0')
}

/// One B-symbol and no A- or C-symbols, or one A-symbol, one C-symbol and no B-symbols.
pub fn marker_counts(w: &[u8]) -> bool {
    let count = |f: fn(u8) -> bool| w.iter().filter(|&&c| f(c)).count();
    matches!((count(is_a_symbol), count(is_b_symbol), count(is_c_symbol)), (0, 1, 0) | (1, 0, 1))
}

pub type Bullet = (&'static str, fn(&[u8]) -> bool);

pub const BULLETS: [Bullet; 8] = [
    ("brackets_generated", brackets_generated),
    ("round_pairs_anchored", round_pairs_anchored),
    ("flavoured_d_first_level", flavoured_d_first_level),
    ("square_pairs_anchored", square_pairs_anchored),
    ("pairs_separated", pairs_separated),
    ("no_zero_by_bracket", no_zero_by_bracket),
    ("no_zero_at_ends", no_zero_at_ends),
    ("marker_counts", marker_counts),
];

/// Names of the bullets `w` fails.
pub fn failed_bullets(w: &[u8]) -> Vec<&'static str> {
    BULLETS.iter().filter(|(_, f)| !f(w)).map(|(n, _)| *n).collect()
}

pub fn all_bullets(w: &[u8]) -> bool {
    BULLETS.iter().all(|(_, f)| f(w))
}

/// The word is its own re-encoding.
pub fn is_canonical(w: &[u8]) -> bool {
    f2_decode(w).is_ok()
}

/// Incremental scan that rejects a prefix once no extension can pass all bullets.
#[derive(Debug, Clone, Default)]
struct Scan {
    /// Per open bracket: its symbol, anchors and symbols seen at its level.
    open: Vec<(u8, u8, usize)>,
    a: u8,
    b: u8,
    c: u8,
    last: Option<u8>,
}

const MAX_DEPTH: usize = 3;

impl Scan {
    fn push(&mut self, x: u8) -> bool {
        let prev = self.last.replace(x);
        if x == b'0' && matches!(prev, None | Some(b'(' | b'[')) {
            return false;
        }
        match x {
            b'(' | b'[' => {
                if (x == b'(') != self.open.len().is_multiple_of(2) || self.open.len() == MAX_DEPTH {
                    return false;
                }
                if let Some(top) = self.open.last_mut() {
                    top.2 += 1;
                }
                self.open.push((x, 0, 0));
                true
            }
            b')' | b']' => {
                if prev == Some(b'0') {
                    return false;
                }
                let Some((o, anchors, seen)) = self.open.pop() else { return false };
                if o != if x == b')' { b'(' } else { b'[' } || anchors != 1 || seen < 2 {
                    return false;
                }
                if let Some(top) = self.open.last_mut() {
                    top.2 += 1;
                }
                true
            }
            _ => {
                self.a += u8::from(is_a_symbol(x));
                self.b += u8::from(is_b_symbol(x));
                self.c += u8::from(is_c_symbol(x));
                if self.a > 1 || self.b > 1 || self.c > 1 || (self.b > 0 && self.a + self.c > 0) {
                    return false;
                }
                let depth = self.open.len();
                let Some(top) = self.open.last_mut() else { return true };
                top.2 += 1;
                let anchor = if top.0 == b'(' { is_d_symbol(x) } else { is_e_symbol(x) };
                if anchor {
                    top.1 += 1;
                    return top.1 == 1 && (depth == 1 || !matches!(x, b'P' | b'p' | b'Q' | b'q'));
                }
                matches!(x, b'0' | b'1' | b'C' | b'c')
            }
        }
    }
}

/// A word on which the bullets, canonicity and the language machine disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub word: String,
    pub canonical: bool,
    pub accepted: bool,
    pub failed: Vec<&'static str>,
}

#[derive(Debug, Clone, Default)]
pub struct GapReport {
    /// Words enumerated (those surviving the prefix filter).
    pub enumerated: usize,
    pub canonical: usize,
    /// Passing every bullet but not canonical, split by whether a D- or
    /// E-symbol sits outside all brackets.
    pub bullets_only_bare: usize,
    pub bullets_only_other: usize,
    /// Canonical words failing some bullet.
    pub canonical_only: usize,
    /// Words where the language machine and canonicity disagree.
    pub machine_mismatch: usize,
    pub examples: Vec<Gap>,
}

impl GapReport {
    fn add(&mut self, o: GapReport, keep: usize) {
        self.enumerated += o.enumerated;
        self.canonical += o.canonical;
        self.bullets_only_bare += o.bullets_only_bare;
        self.bullets_only_other += o.bullets_only_other;
        self.canonical_only += o.canonical_only;
        self.machine_mismatch += o.machine_mismatch;
        let room = keep.saturating_sub(self.examples.len());
        self.examples.extend(o.examples.into_iter().take(room));
    }

    fn visit(&mut self, w: &[u8], accepts: &(impl Fn(&[u8]) -> bool + ?Sized), keep: usize) {
        self.enumerated += 1;
        let canonical = is_canonical(w);
        let bullets = all_bullets(w);
        let accepted = accepts(w);
        self.canonical += usize::from(canonical);
        let mut odd = accepted != canonical;
        self.machine_mismatch += usize::from(odd);
        if canonical && !bullets {
            self.canonical_only += 1;
            odd = true;
        }
        if bullets && !canonical {
            if has_bare_anchor(w) {
                self.bullets_only_bare += 1;
            } else {
                self.bullets_only_other += 1;
                odd = true;
            }
        }
        if odd && self.examples.len() < keep {
            self.examples.push(Gap { word: String::from_utf8_lossy(w).into_owned(), canonical, accepted, failed: failed_bullets(w) });
        }
    }

    /// Bullets, canonicity and the machine agree, up to bare anchors.
    pub fn consistent(&self) -> bool {
        self.canonical_only == 0 && self.bullets_only_other == 0 && self.machine_mismatch == 0
    }
}

fn bare_anchor(scan: &Scan, x: u8) -> bool {
    scan.open.is_empty() && matches!(info(x), Some(i) if matches!(i.kind, SymKind::D | SymKind::E))
}

/// Enumerates every word of length `1..=maxlen` whose prefixes pass the
/// incremental bullet filter and compares the bullet conjunction, canonicity
/// and `accepts` on each. With `skip_bare`, prefixes with a D- or E-symbol
/// outside all brackets are not extended: such words are never canonical.
pub fn bullet_gaps<F>(maxlen: usize, skip_bare: bool, accepts: &F, keep: usize) -> GapReport
where
    F: Fn(&[u8]) -> bool + Sync + ?Sized,
{
    fn dfs<F: Fn(&[u8]) -> bool + ?Sized>(w: &mut Vec<u8>, scan: &Scan, cfg: (usize, bool, usize), accepts: &F, r: &mut GapReport) {
        r.visit(w, accepts, cfg.2);
        if w.len() == cfg.0 {
            return;
        }
        for &x in &F2_SYMBOLS {
            if cfg.1 && bare_anchor(scan, x) {
                continue;
            }
            let mut s = scan.clone();
            if s.push(x) {
                w.push(x);
                dfs(w, &s, cfg, accepts, r);
                w.pop();
            }
        }
    }
    let parts = par_map(&F2_SYMBOLS, |&x| {
        let mut r = GapReport::default();
        let mut s = Scan::default();
        if maxlen > 0 && !(skip_bare && bare_anchor(&s, x)) && s.push(x) {
            dfs(&mut vec![x], &s, (maxlen, skip_bare, keep), accepts, &mut r);
        }
        r
    });
    let mut total = GapReport::default();
    for p in parts {
        total.add(p, keep);
    }
    total
}

/// Whether a symbol is a D- or E-symbol lying outside every bracket pair.
pub fn has_bare_anchor(w: &[u8]) -> bool {
    let Some((_, owner)) = pairs(w) else { return false };
    w.iter().zip(&owner).any(|(&c, o)| o.is_none() && matches!(info(c), Some(i) if matches!(i.kind, SymKind::D | SymKind::E)))
}
