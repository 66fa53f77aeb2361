//! Deterministic pushdown recognition of the canonical words.
//!
//! The finite control tracks the segment being read; the stack saves the
//! enclosing segments. Canonicity is local: every segment holds its anchor
//! and one more item, and no segment starts or ends with a `0`.

use super::symbols::{info, Bracket, SymKind, F2_SYMBOLS};
use crate::automata::{materialize_pda, AutomataError, Move, Pda, PushdownMachine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegKind {
    Root,
    /// A vertical segment hanging off the root line.
    V1,
    /// A deeper vertical segment.
    V,
    /// A horizontal segment below the root.
    H,
}

impl SegKind {
    pub fn horizontal(self) -> bool {
        matches!(self, SegKind::Root | SegKind::H)
    }

    fn child(self, br: Bracket) -> Option<SegKind> {
        match (self, br) {
            (SegKind::Root, Bracket::Round) => Some(SegKind::V1),
            (SegKind::H, Bracket::Round) => Some(SegKind::V),
            (SegKind::V1 | SegKind::V, Bracket::Square) => Some(SegKind::H),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seg {
    pub kind: SegKind,
    pub anchor: bool,
    /// Items read so far, saturating at 2.
    pub items: u8,
    pub last_zero: bool,
}

impl Seg {
    fn new(kind: SegKind) -> Seg {
        Seg { kind, anchor: false, items: 0, last_zero: false }
    }

    fn push_item(&mut self, zero: bool) {
        self.items = (self.items + 1).min(2);
        self.last_zero = zero;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LangState {
    pub seg: Seg,
    pub origin: bool,
    pub light: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackOp<F> {
    Keep,
    Push(F),
    Pop,
}

pub fn lang_start() -> LangState {
    LangState { seg: Seg::new(SegKind::Root), origin: false, light: false }
}

pub fn lang_accepts(q: &LangState) -> bool {
    q.seg.kind == SegKind::Root && q.origin && q.light && q.seg.items > 0 && !q.seg.last_zero
}

/// One step on `x`; `parent` is the saved enclosing segment, needed only to close.
pub fn lang_step(q: &LangState, x: u8, parent: Option<&Seg>) -> Option<(LangState, StackOp<Seg>)> {
    let i = info(x)?;
    let mut s = *q;
    let mark = |s: &mut LangState| -> Option<()> {
        if (i.origin && s.origin) || (i.light && s.light) {
            return None;
        }
        s.origin |= i.origin;
        s.light |= i.light;
        Some(())
    };
    match i.kind {
        SymKind::Basic => {
            if x == b'0' && s.seg.items == 0 {
                return None;
            }
            if s.seg.kind != SegKind::Root && !matches!(x, b'0' | b'1' | b'C' | b'c') {
                return None;
            }
            mark(&mut s)?;
            s.seg.push_item(x == b'0');
            Some((s, StackOp::Keep))
        }
        SymKind::D | SymKind::E => {
            let ok = match i.kind {
                SymKind::D => s.seg.kind == SegKind::V1 || (s.seg.kind == SegKind::V && !i.origin),
                _ => s.seg.kind == SegKind::H,
            };
            if !ok || s.seg.anchor {
                return None;
            }
            mark(&mut s)?;
            s.seg.anchor = true;
            s.seg.push_item(false);
            Some((s, StackOp::Keep))
        }
        SymKind::Open(br) => {
            let child = s.seg.kind.child(br)?;
            let saved = s.seg;
            s.seg = Seg::new(child);
            Some((s, StackOp::Push(saved)))
        }
        SymKind::Close(br) => {
            let expected = if s.seg.kind.horizontal() { Bracket::Square } else { Bracket::Round };
            if s.seg.kind == SegKind::Root || br != expected || !s.seg.anchor || s.seg.items < 2 || s.seg.last_zero {
                return None;
            }
            let mut p = *parent?;
            p.push_item(false);
            s.seg = p;
            Some((s, StackOp::Pop))
        }
    }
}

/// Fewest further symbols that can complete an accepted word, given the
/// saved segments (innermost last).
pub fn lang_min_remaining(q: &LangState, saved: &[Seg]) -> usize {
    let mut seg = q.seg;
    let mut total = 0;
    for parent in saved.iter().rev() {
        total += (2 - seg.items as usize).max(usize::from(!seg.anchor || seg.last_zero)) + 1;
        seg = *parent;
        seg.push_item(false);
    }
    total += usize::from(seg.items == 0 || seg.last_zero);
    total.max(usize::from(!q.origin || !q.light))
}

/// The language DPDA, generated on the fly.
#[derive(Debug, Clone, Copy, Default)]
pub struct LanguageMachine;

impl PushdownMachine<u8> for LanguageMachine {
    type State = LangState;
    type Stack = Seg;

    fn input_alphabet(&self) -> Vec<u8> {
        F2_SYMBOLS.to_vec()
    }
    fn initial_state(&self) -> LangState {
        lang_start()
    }
    fn is_final(&self, q: &LangState) -> bool {
        lang_accepts(q)
    }
    fn moves(&self, q: &LangState, input: Option<u8>, top: Option<&Seg>) -> Vec<Move<LangState, Seg>> {
        let Some(x) = input else { return Vec::new() };
        match lang_step(q, x, top) {
            None => Vec::new(),
            Some((to, op)) => vec![match op {
                StackOp::Keep => Move { to, pop: false, push: vec![] },
                StackOp::Push(f) => Move { to, pop: false, push: vec![f] },
                StackOp::Pop => Move { to, pop: true, push: vec![] },
            }],
        }
    }
    fn deterministic(&self) -> bool {
        true
    }
    fn min_remaining(&self, q: &LangState, stack: &[Seg]) -> Option<usize> {
        Some(lang_min_remaining(q, stack))
    }
}

/// Checks a word with the generated machine.
pub fn in_language(w: &[u8]) -> bool {
    let mut q = lang_start();
    let mut stack: Vec<Seg> = Vec::new();
    for &x in w {
        let Some((r, op)) = lang_step(&q, x, stack.last()) else { return false };
        match op {
            StackOp::Keep => {}
            StackOp::Push(f) => stack.push(f),
            StackOp::Pop => {
                stack.pop();
            }
        }
        q = r;
    }
    lang_accepts(&q)
}

/// The language DPDA as an explicit table.
pub fn f2_language_pda() -> Result<Pda<u8>, AutomataError> {
    materialize_pda(&LanguageMachine, 10_000)
}
