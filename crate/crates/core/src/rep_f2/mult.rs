//! Pushdown machines for right multiplication by `h`, `a`, `b` and their
//! inverses.
//!
//! Each machine runs a deterministic pushdown transducer on the upper track
//! (validating it on the way) and matches its output against the lower track
//! through a bounded lag buffer. Multiplying by `a` or `b` moves the
//! lamplighter to the next item of a line: the old cell may drop out at the
//! left end of its segment, a segment may collapse to a single cell, or a
//! new two-cell segment may appear. Inverses swap the tracks.

use super::language::{lang_accepts, lang_min_remaining, lang_start, lang_step, LangState, Seg, SegKind, StackOp};
use super::symbols::{info, symbol, toggled, with_light, Bracket, SymKind, F2_SYMBOLS};
use super::RepF2Error;
use crate::automata::sync::Lag;
use crate::automata::{Move, Pair, PushdownMachine, PAD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Toggle,
    /// Move along horizontal lines (`a`) or vertical lines (`b`).
    Shift {
        horizontal: bool,
    },
}

/// What the lamplighter search has reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Act {
    Seek,
    /// The current segment's close hands the mark to the parent.
    Wait,
    /// The next item of the current segment takes the mark.
    MarkNext,
    Done,
}

/// Per-segment flags, saved on the stack with the validator's segment.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Local {
    pub on_close: bool,
    pub anchor_mark: bool,
}

/// Output held back while a segment might still collapse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Held {
    None,
    /// An opening bracket.
    Open(u8),
    /// An opening bracket whose first item, the lamplighter, was dropped.
    OpenDel(u8),
    /// As above, then the anchor: its marked form and its collapsed form.
    OpenDelAnchor(u8, u8, u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TState {
    pub lang: LangState,
    pub act: Act,
    pub local: Local,
    pub held: Held,
}

pub type Frame = (Seg, Local);

pub fn t_start() -> TState {
    TState { lang: lang_start(), act: Act::Seek, local: Local::default(), held: Held::None }
}

fn is_anchor(x: u8) -> bool {
    info(x).is_some_and(|i| matches!(i.kind, SymKind::D | SymKind::E))
}

/// One transducer step on `x` with the current top frame.
pub fn t_step(mode: Mode, q: &TState, x: u8, top: Option<&Frame>) -> Option<(TState, StackOp<Frame>, Vec<u8>)> {
    let (lang, op) = lang_step(&q.lang, x, top.map(|f| &f.0))?;
    let mut st = TState { lang, ..*q };
    let horizontal = match mode {
        Mode::Toggle => {
            let y = if info(x)?.light { toggled(x)? } else { x };
            let op = match op {
                StackOp::Keep => StackOp::Keep,
                StackOp::Push(s) => StackOp::Push((s, Local::default())),
                StackOp::Pop => StackOp::Pop,
            };
            st.act = Act::Done;
            return Some((st, op, vec![y]));
        }
        Mode::Shift { horizontal } => horizontal,
    };
    let mut out = Vec::new();
    match q.held {
        Held::None => {}
        Held::Open(br) => {
            if q.act == Act::Seek && x == b'C' {
                st.held = Held::OpenDel(br);
                st.act = Act::MarkNext;
                return Some((st, frame_op(op, q, top), out));
            }
            out.push(br);
            st.held = Held::None;
        }
        Held::OpenDel(br) => {
            if is_anchor(x) {
                let i = info(x)?;
                let collapsed = symbol(SymKind::Basic, i.lit, i.origin, true)?;
                st.held = Held::OpenDelAnchor(br, with_light(x, true)?, collapsed);
                return Some((st, frame_op(op, q, top), out));
            }
            out.push(br);
            st.held = Held::None;
        }
        Held::OpenDelAnchor(br, marked, collapsed) => {
            st.held = Held::None;
            st.act = Act::Done;
            if matches!(info(x)?.kind, SymKind::Close(_)) {
                out.push(collapsed);
                st.local = top?.1;
                return Some((st, StackOp::Pop, out));
            }
            out.push(br);
            out.push(marked);
        }
    }
    let i = info(x)?;
    // The segment an item or anchor belongs to, before this step.
    let seg_kind = q.lang.seg.kind;
    match i.kind {
        SymKind::Open(_) => {
            let mut child = Local::default();
            if st.act == Act::MarkNext {
                child.anchor_mark = true;
                st.act = Act::Done;
            }
            let StackOp::Push(saved) = op else { return None };
            let frame = (saved, st.local);
            st.local = child;
            if st.act == Act::Seek && st.lang.seg.kind.horizontal() == horizontal {
                st.held = Held::Open(x);
            } else {
                out.push(x);
            }
            return Some((st, StackOp::Push(frame), out));
        }
        SymKind::Close(_) => {
            if st.act == Act::MarkNext {
                out.push(b'C');
                st.act = Act::Done;
            }
            out.push(x);
            if st.local.on_close {
                st.act = Act::MarkNext;
            }
            st.local = top?.1;
            return Some((st, StackOp::Pop, out));
        }
        _ => {}
    }
    if st.local.anchor_mark && is_anchor(x) {
        st.local.anchor_mark = false;
        out.push(with_light(x, true)?);
    } else if st.act == Act::MarkNext {
        out.push(with_light(x, true)?);
        st.act = Act::Done;
    } else if st.act == Act::Seek && i.light {
        let own = seg_kind.horizontal() == horizontal;
        match (i.kind, own) {
            (SymKind::Basic, true) => {
                // An unlit lamplighter at the left end of the root leaves the window.
                if !(seg_kind == SegKind::Root && q.lang.seg.items == 0 && x == b'C') {
                    out.push(with_light(x, false)?);
                }
                st.act = Act::MarkNext;
            }
            (SymKind::Basic, false) => {
                let (br, kind) = if horizontal { (Bracket::Square, SymKind::E) } else { (Bracket::Round, SymKind::D) };
                out.extend([br.open(), symbol(kind, i.lit, i.origin, false)?, b'C', br.close()]);
                st.act = Act::Done;
            }
            (_, true) => {
                out.push(with_light(x, false)?);
                st.act = Act::MarkNext;
            }
            (_, false) => {
                out.push(with_light(x, false)?);
                st.local.on_close = true;
                st.act = Act::Wait;
            }
        }
    } else {
        out.push(x);
    }
    Some((st, frame_op(op, q, top), out))
}

/// Rewraps a validator stack operation for steps that do not touch the local flags.
fn frame_op(op: StackOp<Seg>, q: &TState, top: Option<&Frame>) -> StackOp<Frame> {
    match op {
        StackOp::Keep => StackOp::Keep,
        StackOp::Push(s) => StackOp::Push((s, q.local)),
        StackOp::Pop => {
            debug_assert!(top.is_some());
            StackOp::Pop
        }
    }
}

/// Output still owed once the upper track has ended.
pub fn t_finish(q: &TState) -> Option<Vec<u8>> {
    if !lang_accepts(&q.lang) || q.held != Held::None {
        return None;
    }
    match q.act {
        Act::MarkNext => Some(vec![b'C']),
        Act::Done => Some(vec![]),
        _ => None,
    }
}

/// Runs the transducer alone: the image of a canonical word, or `None`.
pub fn f2_transduce(mode: Mode, u: &[u8]) -> Option<Vec<u8>> {
    let mut q = t_start();
    let mut stack: Vec<Frame> = Vec::new();
    let mut out = Vec::new();
    for &x in u {
        let (r, op, o) = t_step(mode, &q, x, stack.last())?;
        match op {
            StackOp::Keep => {}
            StackOp::Push(f) => stack.push(f),
            StackOp::Pop => {
                stack.pop()?;
            }
        }
        out.extend(o);
        q = r;
    }
    out.extend(t_finish(&q)?);
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairState {
    pub t: TState,
    pub lag: Lag,
    pub u_done: bool,
    pub v_done: bool,
}

/// The relation machine for one generator.
#[derive(Debug, Clone)]
pub struct F2MultPda {
    pub generator: String,
    pub mode: Mode,
    /// Read `v ⊗ u` instead of `u ⊗ v`.
    pub transpose: bool,
    pub max_lag: usize,
}

/// One local edit per word: at most three symbols held back or inserted.
const MAX_LAG: usize = 3;

pub fn f2_mult_pda(gen: &str) -> Result<F2MultPda, RepF2Error> {
    let (base, transpose) = match gen.strip_suffix("-1") {
        Some(b) => (b, true),
        None => (gen, false),
    };
    let mode = match base {
        "h" => Mode::Toggle,
        "a" => Mode::Shift { horizontal: true },
        "b" => Mode::Shift { horizontal: false },
        _ => return Err(RepF2Error::UnknownGenerator(gen.to_string())),
    };
    let max_lag = if mode == Mode::Toggle { 0 } else { MAX_LAG };
    Ok(F2MultPda { generator: gen.to_string(), mode, transpose, max_lag })
}

impl F2MultPda {
    fn step(&self, s: &PairState, p: Pair, top: Option<&Frame>) -> Option<(PairState, StackOp<Frame>)> {
        let [x, y] = if self.transpose { [p[1], p[0]] } else { p };
        if x == PAD && y == PAD {
            return None;
        }
        let mut s = s.clone();
        let mut op = StackOp::Keep;
        let produced = if x == PAD {
            if s.u_done {
                Vec::new()
            } else {
                s.u_done = true;
                t_finish(&s.t)?
            }
        } else {
            if s.u_done {
                return None;
            }
            let (t, o, out) = t_step(self.mode, &s.t, x, top)?;
            s.t = t;
            op = o;
            out
        };
        for o in produced {
            if !s.lag.produce(o) {
                return None;
            }
        }
        if y == PAD {
            s.v_done = true;
        } else if s.v_done || !s.lag.read(y) {
            return None;
        }
        if s.v_done && matches!(s.lag, Lag::Produced(ref q) if !q.is_empty()) {
            return None;
        }
        if s.u_done && matches!(s.lag, Lag::Read(ref q) if !q.is_empty()) {
            return None;
        }
        if s.lag.len() > self.max_lag {
            return None;
        }
        Some((s, op))
    }
}

/// Upper-track symbols explored when checking whether a lower-track letter
/// can still be matched.
const LOOKAHEAD: usize = MAX_LAG + 2;

/// Whether some continuation of the upper track, at most `depth` symbols
/// long, makes the transducer emit `want` next. Answers `true` when the
/// search runs out, so it never rules out a reachable output.
fn can_emit(mode: Mode, t: &TState, stack: &[Frame], want: &[u8], depth: usize) -> bool {
    if want.is_empty() {
        return true;
    }
    if t_finish(t).is_some_and(|tail| tail.starts_with(want)) {
        return true;
    }
    if depth == 0 {
        return true;
    }
    F2_SYMBOLS.iter().any(|&x| {
        let Some((r, op, out)) = t_step(mode, t, x, stack.last()) else { return false };
        let k = out.len().min(want.len());
        if out[..k] != want[..k] {
            return false;
        }
        if out.len() >= want.len() {
            return true;
        }
        let mut next = stack.to_vec();
        match op {
            StackOp::Keep => {}
            StackOp::Push(f) => next.push(f),
            StackOp::Pop => {
                next.pop();
            }
        }
        can_emit(mode, &r, &next, &want[out.len()..], depth - 1)
    })
}

impl PushdownMachine<Pair> for F2MultPda {
    type State = PairState;
    type Stack = Frame;

    fn input_alphabet(&self) -> Vec<Pair> {
        let mut letters = F2_SYMBOLS.to_vec();
        letters.push(PAD);
        letters.sort_unstable();
        let mut out = Vec::new();
        for &x in &letters {
            for &y in &letters {
                if !(x == PAD && y == PAD) {
                    out.push([x, y]);
                }
            }
        }
        out
    }
    fn initial_state(&self) -> PairState {
        PairState { t: t_start(), lag: Lag::Read(Default::default()), u_done: false, v_done: false }
    }
    fn is_final(&self, s: &PairState) -> bool {
        if s.u_done {
            return s.lag.is_empty();
        }
        let Some(tail) = t_finish(&s.t) else { return false };
        let mut lag = s.lag.clone();
        if s.v_done {
            return lag.is_empty() && tail.is_empty();
        }
        tail.into_iter().all(|o| lag.produce(o)) && lag.is_empty()
    }
    fn moves(&self, q: &PairState, input: Option<Pair>, top: Option<&Frame>) -> Vec<Move<PairState, Frame>> {
        let Some(p) = input else { return Vec::new() };
        match self.step(q, p, top) {
            None => Vec::new(),
            Some((to, StackOp::Keep)) => vec![Move { to, pop: false, push: vec![] }],
            Some((to, StackOp::Push(f))) => vec![Move { to, pop: false, push: vec![f] }],
            Some((to, StackOp::Pop)) => vec![Move { to, pop: true, push: vec![] }],
        }
    }
    fn enabled_inputs(&self, s: &PairState, stack: &[Frame]) -> Vec<Pair> {
        let xs: Vec<u8> = if s.u_done {
            vec![PAD]
        } else {
            let parent = stack.last().map(|f| &f.0);
            let mut xs: Vec<u8> = F2_SYMBOLS.iter().copied().filter(|&x| lang_step(&s.t.lang, x, parent).is_some()).collect();
            xs.push(PAD);
            xs
        };
        let ys: Vec<u8> = match (&s.lag, s.v_done) {
            (_, true) => vec![PAD],
            (Lag::Produced(q), false) if !q.is_empty() => vec![q[0]],
            (lag, false) => {
                let mut want: Vec<u8> = match lag {
                    Lag::Read(q) => q.iter().copied().collect(),
                    Lag::Produced(_) => Vec::new(),
                };
                let mut ys = Vec::new();
                for &y in &F2_SYMBOLS {
                    want.push(y);
                    if s.u_done || can_emit(self.mode, &s.t, stack, &want, LOOKAHEAD) {
                        ys.push(y);
                    }
                    want.pop();
                }
                ys.push(PAD);
                ys
            }
        };
        let mut out = Vec::new();
        for &x in &xs {
            for &y in &ys {
                if !(x == PAD && y == PAD) {
                    out.push(if self.transpose { [y, x] } else { [x, y] });
                }
            }
        }
        out.sort_unstable();
        out
    }
    fn deterministic(&self) -> bool {
        true
    }
    fn min_remaining(&self, s: &PairState, stack: &[Frame]) -> Option<usize> {
        let u = if s.u_done {
            0
        } else {
            let saved: Vec<Seg> = stack.iter().map(|f| f.0).collect();
            lang_min_remaining(&s.t.lang, &saved)
        };
        let v = match &s.lag {
            Lag::Produced(q) => q.len(),
            Lag::Read(_) => 0,
        };
        Some(u.max(v))
    }
}
