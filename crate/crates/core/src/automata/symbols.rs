use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::AutomataError;

/// Padding symbol ⋄.
pub const PAD: u8 = b'#';

/// A letter of a convolution alphabet: two ASCII codes, `#` for padding.
pub type Pair = [u8; 2];

/// Input letters a machine can read. Every letter has a fixed ASCII rendering.
pub trait Symbol: Copy + Eq + Hash + Ord + Debug + Send + Sync + 'static {
    fn render(&self) -> String;
}

impl Symbol for u8 {
    fn render(&self) -> String {
        (*self as char).to_string()
    }
}

impl Symbol for Pair {
    fn render(&self) -> String {
        format!("{}{}", self[0] as char, self[1] as char)
    }
}

pub fn render_word<S: Symbol>(w: &[S]) -> String {
    w.iter().map(Symbol::render).collect::<Vec<_>>().join(if std::mem::size_of::<S>() > 1 { " " } else { "" })
}

/// Named symbols with distinct one-character serializations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTable {
    entries: Vec<(String, u8)>,
}

impl SymbolTable {
    pub fn new<I, N>(entries: I) -> Result<Self, AutomataError>
    where
        I: IntoIterator<Item = (N, u8)>,
        N: Into<String>,
    {
        let entries: Vec<(String, u8)> = entries.into_iter().map(|(n, c)| (n.into(), c)).collect();
        let mut seen = BTreeSet::new();
        for (name, c) in &entries {
            if *c == PAD {
                return Err(AutomataError::InvalidTable(format!("'#' is reserved for padding (symbol {name})")));
            }
            if !c.is_ascii_graphic() {
                return Err(AutomataError::InvalidTable(format!("symbol {name} is not printable ASCII")));
            }
            if !seen.insert(*c) {
                return Err(AutomataError::InvalidTable(format!("duplicate ASCII code '{}'", *c as char)));
            }
        }
        Ok(SymbolTable { entries })
    }

    pub fn codes(&self) -> Vec<u8> {
        self.entries.iter().map(|(_, c)| *c).collect()
    }

    pub fn name_of(&self, c: u8) -> Option<&str> {
        self.entries.iter().find(|(_, x)| *x == c).map(|(n, _)| n.as_str())
    }

    pub fn contains(&self, c: u8) -> bool {
        self.entries.iter().any(|(_, x)| *x == c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All pairs over `Σ ∪ {#}` except `(#, #)`, in lexicographic order.
    pub fn pair_alphabet(&self) -> Vec<Pair> {
        let mut padded = self.codes();
        padded.push(PAD);
        padded.sort_unstable();
        let mut out = Vec::new();
        for &x in &padded {
            for &y in &padded {
                if !(x == PAD && y == PAD) {
                    out.push([x, y]);
                }
            }
        }
        out
    }
}

/// A padded pairing `u ⊗ v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConvolutionWord(pub Vec<Pair>);

impl ConvolutionWord {
    pub fn pairs(&self) -> &[Pair] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> ConvolutionWord {
        ConvolutionWord(self.0.iter().map(|p| [p[1], p[0]]).collect())
    }
}

impl fmt::Display for ConvolutionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: String = self.0.iter().map(|p| p[0] as char).collect();
        let bottom: String = self.0.iter().map(|p| p[1] as char).collect();
        write!(f, "{top}\n{bottom}")
    }
}

pub fn convolve(u: &[u8], v: &[u8]) -> ConvolutionWord {
    let n = u.len().max(v.len());
    ConvolutionWord((0..n).map(|i| [u.get(i).copied().unwrap_or(PAD), v.get(i).copied().unwrap_or(PAD)]).collect())
}

/// Inverse of [`convolve`]; `None` if padding is not a proper suffix of one side.
pub fn deconvolve(w: &[Pair]) -> Option<(Vec<u8>, Vec<u8>)> {
    let mut u = Vec::new();
    let mut v = Vec::new();
    let (mut u_done, mut v_done) = (false, false);
    for p in w {
        if p[0] == PAD && p[1] == PAD {
            return None;
        }
        for (side, done, out) in [(p[0], &mut u_done, &mut u), (p[1], &mut v_done, &mut v)] {
            if side == PAD {
                *done = true;
            } else if *done {
                return None;
            } else {
                out.push(side);
            }
        }
    }
    Some((u, v))
}
