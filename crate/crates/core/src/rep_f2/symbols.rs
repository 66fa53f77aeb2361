//! The 24-letter alphabet and its classification.
//!
//! ASCII: `0 1`, `D d` and `E e` plain anchors, `A a` origin, `B b` origin
//! with lamplighter, `C c` lamplighter, `P p` / `Q q` / `R r` the `D`-symbols
//! flavoured `A` / `B` / `C`, `S s` the `E`-symbol flavoured `C`, and the
//! four brackets. Lowercase means a lit lamp.

pub const F2_SYMBOLS: [u8; 24] = *b"()01AaBbCcDdEePpQqRrSs[]";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymKind {
    /// A cell without a child.
    Basic,
    /// A cell anchoring a vertical `( )` segment.
    D,
    /// A cell anchoring a horizontal `[ ]` segment.
    E,
    Open(Bracket),
    Close(Bracket),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    Round,
    Square,
}

impl Bracket {
    pub fn open(self) -> u8 {
        match self {
            Bracket::Round => b'(',
            Bracket::Square => b'[',
        }
    }
    pub fn close(self) -> u8 {
        match self {
            Bracket::Round => b')',
            Bracket::Square => b']',
        }
    }
}

/// What a cell symbol says about its cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymInfo {
    pub kind: SymKind,
    pub lit: bool,
    pub origin: bool,
    pub light: bool,
}

pub fn info(c: u8) -> Option<SymInfo> {
    let cell = |kind, origin, light| Some(SymInfo { kind, lit: c.is_ascii_lowercase() || c == b'1', origin, light });
    let bracket = |kind| Some(SymInfo { kind, lit: false, origin: false, light: false });
    match c {
        b'0' | b'1' => cell(SymKind::Basic, false, false),
        b'A' | b'a' => cell(SymKind::Basic, true, false),
        b'B' | b'b' => cell(SymKind::Basic, true, true),
        b'C' | b'c' => cell(SymKind::Basic, false, true),
        b'D' | b'd' => cell(SymKind::D, false, false),
        b'P' | b'p' => cell(SymKind::D, true, false),
        b'Q' | b'q' => cell(SymKind::D, true, true),
        b'R' | b'r' => cell(SymKind::D, false, true),
        b'E' | b'e' => cell(SymKind::E, false, false),
        b'S' | b's' => cell(SymKind::E, false, true),
        b'(' => bracket(SymKind::Open(Bracket::Round)),
        b')' => bracket(SymKind::Close(Bracket::Round)),
        b'[' => bracket(SymKind::Open(Bracket::Square)),
        b']' => bracket(SymKind::Close(Bracket::Square)),
        _ => None,
    }
}

/// The cell symbol with the given attributes, if the alphabet has one.
pub fn symbol(kind: SymKind, lit: bool, origin: bool, light: bool) -> Option<u8> {
    let upper = match (kind, origin, light) {
        (SymKind::Basic, false, false) => return Some(if lit { b'1' } else { b'0' }),
        (SymKind::Basic, true, false) => b'A',
        (SymKind::Basic, true, true) => b'B',
        (SymKind::Basic, false, true) => b'C',
        (SymKind::D, false, false) => b'D',
        (SymKind::D, true, false) => b'P',
        (SymKind::D, true, true) => b'Q',
        (SymKind::D, false, true) => b'R',
        (SymKind::E, false, false) => b'E',
        (SymKind::E, false, true) => b'S',
        _ => return None,
    };
    Some(if lit { upper.to_ascii_lowercase() } else { upper })
}

/// Same cell with the lamplighter flag replaced.
pub fn with_light(c: u8, light: bool) -> Option<u8> {
    let i = info(c)?;
    symbol(i.kind, i.lit, i.origin, light)
}

/// Same cell with its lamp toggled.
pub fn toggled(c: u8) -> Option<u8> {
    let i = info(c)?;
    symbol(i.kind, !i.lit, i.origin, i.light)
}

pub fn is_a_symbol(c: u8) -> bool {
    matches!(c, b'A' | b'a' | b'P' | b'p')
}
pub fn is_b_symbol(c: u8) -> bool {
    matches!(c, b'B' | b'b' | b'Q' | b'q')
}
pub fn is_c_symbol(c: u8) -> bool {
    matches!(c, b'C' | b'c' | b'R' | b'r' | b'S' | b's')
}
pub fn is_d_symbol(c: u8) -> bool {
    matches!(info(c), Some(SymInfo { kind: SymKind::D, .. }))
}
pub fn is_e_symbol(c: u8) -> bool {
    matches!(info(c), Some(SymInfo { kind: SymKind::E, .. }))
}
pub fn is_basic(c: u8) -> bool {
    matches!(info(c), Some(SymInfo { kind: SymKind::Basic, .. }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_as_listed() {
        let count = |f: fn(u8) -> bool| F2_SYMBOLS.iter().filter(|&&c| f(c)).count();
        assert_eq!(count(is_a_symbol), 4);
        assert_eq!(count(is_b_symbol), 4);
        assert_eq!(count(is_c_symbol), 6);
        assert_eq!(count(is_d_symbol), 8);
        assert_eq!(count(is_e_symbol), 4);
        assert_eq!(count(is_basic), 8);
    }

    #[test]
    fn symbol_inverts_info() {
        for &c in &F2_SYMBOLS {
            let i = info(c).unwrap();
            if !matches!(i.kind, SymKind::Open(_) | SymKind::Close(_)) {
                assert_eq!(symbol(i.kind, i.lit, i.origin, i.light), Some(c));
            }
        }
        assert_eq!(with_light(b'D', true), Some(b'R'));
        assert_eq!(with_light(b'q', false), Some(b'p'));
        assert_eq!(toggled(b'S'), Some(b's'));
        assert_eq!(symbol(SymKind::E, false, true, false), None);
    }
}
