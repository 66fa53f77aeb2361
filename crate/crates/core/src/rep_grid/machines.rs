//! Stack automata for right multiplication by `x` and `y`.
//!
//! While no lamplighter symbol has been read, the pointer bounces between
//! the bottom and the top of the stack, and the top is raised once per
//! bounce, so the height while reading position `m` is `⌈√m⌉`. At the first
//! `C`-bearing position `m` the pointer's place (fresh push, going down, at
//! the bottom, going up, back at the top), the parity of the height `n`, and
//! the tape holding that `C` fix where the other tape's `C` must be: either at
//! `m + 1` or at `m + 4n + c` for a small `c`. The far case is counted by
//! climbing to the top and popping once every four letters.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::code::grid_pair_alphabet;
use super::spiral::{grid_shift, Dir};
use crate::automata::stack::SaKey;
use crate::automata::{AutomataError, Pair, SaAction, StackAutomaton, PAD};

const BOTTOM: u8 = b'B';
const INNER: u8 = b'I';

/// Where the other tape's `C` sits relative to the first one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Offset {
    Next,
    /// `4n + c` positions later.
    Far(i8),
}

/// The pointer's place after reading position `m` of block `n`, where block
/// `n` is positions `(n−1)²+1 ..= n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// `n = 1`.
    Origin,
    First,
    Down,
    Bottom,
    Up,
    Last,
}

impl Place {
    /// Classifies position `m ≥ 1` directly.
    pub fn of(m: u64) -> (u64, Place) {
        let n = (m - 1).isqrt() + 1;
        let j = m - (n - 1) * (n - 1);
        let place = if n == 1 {
            Place::Origin
        } else if j == 1 {
            Place::First
        } else if j < n {
            Place::Down
        } else if j == n {
            Place::Bottom
        } else if j < 2 * n - 1 {
            Place::Up
        } else {
            Place::Last
        };
        (n, place)
    }
}

/// Offset table for one direction, keyed by (height odd, place, `C` first on the lower tape).
pub type OffsetTable = BTreeMap<(bool, Place, bool), Offset>;

pub fn offset_table(horizontal: bool) -> OffsetTable {
    use Offset::*;
    use Place::*;
    let rows: &[((bool, Place, bool), Offset)] = if horizontal {
        &[
            ((true, Origin, false), Next),
            ((true, Origin, true), Far(1)),
            ((false, First, false), Far(1)),
            ((false, Down, false), Far(1)),
            ((false, Bottom, false), Far(1)),
            ((false, Bottom, true), Next),
            ((false, Up, true), Next),
            ((false, Last, true), Next),
            ((true, First, true), Far(1)),
            ((true, Down, true), Far(1)),
            ((true, Bottom, true), Far(1)),
            ((true, Bottom, false), Next),
            ((true, Up, false), Next),
            ((true, Last, false), Next),
        ]
    } else {
        &[
            ((true, Origin, false), Far(-1)),
            ((true, Origin, true), Far(3)),
            ((false, First, false), Next),
            ((false, First, true), Far(-1)),
            ((false, Down, false), Next),
            ((false, Bottom, false), Far(3)),
            ((false, Up, false), Far(3)),
            ((false, Last, false), Far(3)),
            ((true, First, true), Next),
            ((true, First, false), Far(-1)),
            ((true, Down, true), Next),
            ((true, Bottom, true), Far(3)),
            ((true, Up, true), Far(3)),
            ((true, Last, true), Far(3)),
        ]
    };
    rows.iter().copied().collect()
}

/// The partner index the table predicts for a `C` at `m` on the given tape.
pub fn predicted_partner(table: &OffsetTable, m: u64, lower_first: bool) -> Option<u64> {
    let (n, place) = Place::of(m);
    match table.get(&(n % 2 == 1, place, lower_first))? {
        Offset::Next => Some(m + 1),
        Offset::Far(c) => Some((m as i64 + 4 * n as i64 + *c as i64) as u64),
    }
}

/// Checks the table against the spiral for every index up to `kmax`.
pub fn table_agrees(horizontal: bool, kmax: u64) -> bool {
    let table = offset_table(horizontal);
    let dir = if horizontal { Dir::X } else { Dir::Y };
    (1..=kmax).all(|k| {
        let k2 = grid_shift(k, dir);
        let (m, lower_first) = if k < k2 { (k, false) } else { (k2, true) };
        predicted_partner(&table, m, lower_first) == Some(k.max(k2))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Moved {
    Origin,
    First,
    Down,
    Up,
}

/// Per tape: whether it has ended, whether its last symbol is `0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Tapes {
    ended: [bool; 2],
    zero: [bool; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum St {
    /// Before any `C`; `up` is the pointer's direction, `odd` the height's parity.
    Clock {
        up: bool,
        odd: bool,
    },
    /// A `C` was just read on tape `first`; the move it made decides the place.
    Inspect {
        moved: Moved,
        odd: bool,
        first: usize,
        tapes: Tapes,
    },
    Climb {
        c: i8,
        first: usize,
        tapes: Tapes,
    },
    /// `k` letters into the current group of four; `extra` once the stack ran out early.
    Count {
        c: i8,
        k: u8,
        extra: bool,
        first: usize,
        tapes: Tapes,
    },
    Next {
        first: usize,
        tapes: Tapes,
    },
    Tail {
        tapes: Tapes,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Digit(bool),
    Light(bool),
    Pad,
}

impl Cell {
    fn of(c: u8) -> Option<Cell> {
        match c {
            b'0' => Some(Cell::Digit(false)),
            b'1' => Some(Cell::Digit(true)),
            b'C' => Some(Cell::Light(false)),
            b'c' => Some(Cell::Light(true)),
            PAD => Some(Cell::Pad),
            _ => None,
        }
    }

    fn lamp(self) -> bool {
        matches!(self, Cell::Digit(true) | Cell::Light(true))
    }
}

/// Updates the per-tape flags; `None` if a tape resumes after padding or
/// ends on a `0`.
fn advance(t: Tapes, cells: [Cell; 2]) -> Option<Tapes> {
    let mut t = t;
    for (i, cell) in cells.into_iter().enumerate() {
        match cell {
            Cell::Pad => {
                if !t.ended[i] && t.zero[i] {
                    return None;
                }
                t.ended[i] = true;
            }
            c => {
                if t.ended[i] {
                    return None;
                }
                t.zero[i] = c == Cell::Digit(false);
            }
        }
    }
    Some(t)
}

struct Builder {
    table: OffsetTable,
}

type Out = Vec<(St, SaAction)>;

impl Builder {
    fn clock(up: bool, odd: bool, under: Option<u8>, at_top: bool) -> (bool, bool, SaAction, Moved) {
        match (under, up, at_top) {
            (None, _, _) => (true, true, SaAction::Push(BOTTOM), Moved::Origin),
            (Some(_), true, true) => (false, !odd, SaAction::Push(INNER), Moved::First),
            (Some(_), true, false) => (true, odd, SaAction::Up, Moved::Up),
            (Some(BOTTOM), false, _) => (true, odd, SaAction::Up, Moved::Up),
            (Some(_), false, _) => (false, odd, SaAction::Down, Moved::Down),
        }
    }

    fn step(&self, s: St, input: Option<Pair>, under: Option<u8>, at_top: bool) -> Out {
        let Some(p) = input else { return self.silent(s, under, at_top) };
        let (Some(a), Some(b)) = (Cell::of(p[0]), Cell::of(p[1])) else { return vec![] };
        let cells = [a, b];
        let light = |i: usize| matches!(cells[i], Cell::Light(_));
        match s {
            St::Clock { up, odd } => {
                let (up2, odd2, act, moved) = Self::clock(up, odd, under, at_top);
                match cells {
                    [Cell::Digit(x), Cell::Digit(y)] if x == y => vec![(St::Clock { up: up2, odd: odd2 }, act)],
                    [Cell::Light(_), Cell::Digit(_)] | [Cell::Digit(_), Cell::Light(_)] if a.lamp() == b.lamp() => {
                        let first = usize::from(light(1));
                        vec![(St::Inspect { moved, odd: odd2, first, tapes: Tapes::default() }, act)]
                    }
                    _ => vec![],
                }
            }
            St::Inspect { .. } | St::Climb { .. } => vec![],
            St::Count { c, k, extra, first, tapes } => {
                let Some(tapes) = advance(tapes, cells) else { return vec![] };
                let other = 1 - first;
                if light(first) || a.lamp() != b.lamp() || cells[other] == Cell::Pad {
                    return vec![];
                }
                let empty = under.is_none();
                if light(other) {
                    let hit = empty && (k, extra) == if c == 1 { (0, false) } else { (2, c == 3) };
                    return if hit { vec![(St::Tail { tapes }, SaAction::Stay)] } else { vec![] };
                }
                let (k2, extra2, act) = match (k, empty) {
                    (0, false) => (1, extra, SaAction::Pop),
                    (0, true) if c == 3 && !extra => (1, true, SaAction::Stay),
                    (0, true) => return vec![],
                    (2, true) if c == -1 || extra => return vec![],
                    _ => ((k + 1) % 4, extra, SaAction::Stay),
                };
                vec![(St::Count { c, k: k2, extra: extra2, first, tapes }, act)]
            }
            St::Next { first, tapes } => {
                let Some(tapes) = advance(tapes, cells) else { return vec![] };
                if light(1 - first) && !light(first) && a.lamp() == b.lamp() {
                    vec![(St::Tail { tapes }, SaAction::Stay)]
                } else {
                    vec![]
                }
            }
            St::Tail { tapes } => {
                let Some(tapes) = advance(tapes, cells) else { return vec![] };
                if light(0) || light(1) || a.lamp() != b.lamp() {
                    return vec![];
                }
                vec![(St::Tail { tapes }, SaAction::Stay)]
            }
        }
    }

    fn silent(&self, s: St, under: Option<u8>, at_top: bool) -> Out {
        match s {
            St::Inspect { moved, odd, first, tapes } => {
                let place = match moved {
                    Moved::Origin => Place::Origin,
                    Moved::First => Place::First,
                    Moved::Down if under == Some(BOTTOM) => Place::Bottom,
                    Moved::Down => Place::Down,
                    Moved::Up if at_top => Place::Last,
                    Moved::Up => Place::Up,
                };
                match self.table.get(&(odd, place, first == 1)) {
                    None => vec![],
                    Some(Offset::Next) => vec![(St::Next { first, tapes }, SaAction::Stay)],
                    Some(&Offset::Far(c)) => vec![(St::Climb { c, first, tapes }, SaAction::Stay)],
                }
            }
            St::Climb { c, first, tapes } if at_top => vec![(St::Count { c, k: 0, extra: false, first, tapes }, SaAction::Stay)],
            St::Climb { .. } => vec![(s, SaAction::Up)],
            _ => vec![],
        }
    }

    fn accepting(s: St) -> bool {
        matches!(s, St::Tail { tapes } if (0..2).all(|i| tapes.ended[i] || !tapes.zero[i]))
    }
}

/// Explores the reachable states and tabulates every move.
fn build(horizontal: bool) -> Result<StackAutomaton<Pair>, AutomataError> {
    let b = Builder { table: offset_table(horizontal) };
    let start = St::Clock { up: true, odd: false };
    let mut ids: HashMap<St, usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut transitions: BTreeMap<SaKey<Pair>, BTreeSet<(usize, SaAction)>> = BTreeMap::new();
    let alphabet = grid_pair_alphabet();
    let inputs: Vec<Option<Pair>> = std::iter::once(None).chain(alphabet.iter().copied().map(Some)).collect();
    let views = [(None, true), (Some(BOTTOM), true), (Some(BOTTOM), false), (Some(INNER), true), (Some(INNER), false)];
    while let Some(s) = queue.pop_front() {
        let q = ids[&s];
        for &input in &inputs {
            for &(under, at_top) in &views {
                for (to, act) in b.step(s, input, under, at_top) {
                    let legal = match act {
                        SaAction::Push(_) => at_top,
                        SaAction::Pop => at_top && under.is_some(),
                        SaAction::Up => !at_top,
                        SaAction::Down => under.is_some() && under != Some(BOTTOM),
                        SaAction::Stay => true,
                    };
                    if !legal {
                        continue;
                    }
                    let next = ids.len();
                    let t = *ids.entry(to).or_insert_with(|| {
                        states.push(to);
                        queue.push_back(to);
                        next
                    });
                    transitions.entry((q, input, under, at_top)).or_default().insert((t, act));
                }
            }
        }
    }
    let accepting = states.iter().enumerate().filter(|(_, &s)| Builder::accepting(s)).map(|(i, _)| i).collect();
    let labels = states.iter().map(|s| format!("{s:?}")).collect();
    Ok(StackAutomaton::new(alphabet, states.len(), 0, accepting, vec![BOTTOM, INNER], transitions)?.with_labels(labels))
}

/// Swaps the two tapes of every transition.
pub fn transpose_sa(m: &StackAutomaton<Pair>) -> StackAutomaton<Pair> {
    let mut out = m.clone();
    out.alphabet = m.alphabet.iter().map(|p| [p[1], p[0]]).collect();
    out.alphabet.sort_unstable();
    out.transitions = m.transitions.iter().map(|(&(q, a, u, t), v)| ((q, a.map(|p| [p[1], p[0]]), u, t), v.clone())).collect();
    out
}

pub fn grid_x_sa() -> Result<StackAutomaton<Pair>, AutomataError> {
    build(true)
}

pub fn grid_y_sa() -> Result<StackAutomaton<Pair>, AutomataError> {
    build(false)
}

/// The machine for one of `x`, `x⁻¹`, `y`, `y⁻¹`.
pub fn grid_dir_sa(dir: Dir) -> Result<StackAutomaton<Pair>, AutomataError> {
    Ok(match dir {
        Dir::X => grid_x_sa()?,
        Dir::Y => grid_y_sa()?,
        Dir::XInv => transpose_sa(&grid_x_sa()?),
        Dir::YInv => transpose_sa(&grid_y_sa()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::engine::Machine;
    use crate::automata::{convolve, sa_run, RunBounds};

    #[test]
    fn tables_match_the_spiral() {
        assert!(table_agrees(true, 10_000));
        assert!(table_agrees(false, 10_000));
    }

    #[test]
    fn x_offsets_have_the_stated_form() {
        for k in 1..=10_000u64 {
            let k2 = grid_shift(k, Dir::X);
            let d = k.abs_diff(k2);
            let n = (k.min(k2) - 1).isqrt() + 1;
            assert!(d == 1 || d == 4 * n + 1, "{k} -> {k2}");
        }
    }

    #[test]
    fn height_law() {
        let m = grid_x_sa().unwrap();
        let mut c = m.initial();
        for i in 1..=400u64 {
            let next = m.read(&c, *b"00");
            assert_eq!(next.len(), 1);
            c = next.into_iter().next().unwrap();
            assert_eq!(m.height(&c) as u64, (i - 1).isqrt() + 1, "after {i} pairs");
        }
    }

    #[test]
    fn examples() {
        let b = RunBounds::default();
        let x = grid_x_sa().unwrap();
        let run = |m: &StackAutomaton<Pair>, u: &[u8], v: &[u8]| sa_run(m, convolve(u, v).pairs(), &b).unwrap();
        assert!(run(&x, b"C", b"0C"));
        assert!(run(&x, b"0C", b"0000000000C"));
        assert!(!run(&x, b"C", b"C"));
        let y = grid_y_sa().unwrap();
        assert!(run(&y, b"C", b"000C"));
        assert!(run(&y, b"0C", b"00C"));
        assert!(!run(&y, b"C", b"0C"));
        let xi = grid_dir_sa(Dir::XInv).unwrap();
        assert!(run(&xi, b"0C", b"C"));
    }
}
