use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::spiral::{spiral, spiral_inv, GridPoint};
use super::RepGridError;
use crate::automata::{AutomataError, Fsa, Pair, Representation, SyncFsa, PAD};
use crate::bounds::{check_bounds, q, BoundsReport, Sample, Q};
use crate::groups::{format_element, BasePoint, DistanceMap, GroupSpec, LampConfig, WreathElement};

pub const GRID_SYMBOLS: [u8; 4] = *b"01Cc";

/// Every pair over `0 1 C c` and padding, except two paddings.
pub fn grid_pair_alphabet() -> Vec<Pair> {
    let letters = [b'0', b'1', b'C', b'c', PAD];
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

fn parts(g: &WreathElement) -> Result<(BTreeSet<GridPoint>, GridPoint), RepGridError> {
    let wrong = || RepGridError::WrongGroup("expected base group Z²");
    let z = g.pos.as_grid().ok_or_else(wrong)?;
    let lit = g.lamps.keys().map(|p| p.as_grid().ok_or_else(wrong)).collect::<Result<_, _>>()?;
    Ok((lit, z))
}

/// The `k`-th symbol describes cell `t(k)`; the word stops at the last lit
/// lamp or the lamplighter, whichever comes later.
pub fn grid_encode(g: &WreathElement) -> Result<Vec<u8>, RepGridError> {
    let (lit, z) = parts(g)?;
    let kz = spiral_inv(z);
    let len = lit.iter().map(|&p| spiral_inv(p)).chain([kz]).max().unwrap_or(1);
    Ok((1..=len)
        .map(|k| {
            let on = lit.contains(&spiral(k));
            match (k == kz, on) {
                (true, false) => b'C',
                (true, true) => b'c',
                (false, false) => b'0',
                (false, true) => b'1',
            }
        })
        .collect())
}

pub fn grid_decode(w: &[u8]) -> Result<WreathElement, RepGridError> {
    let perr = |offset: usize, reason: &str| RepGridError::Parse { offset, reason: reason.to_string() };
    if w.is_empty() {
        return Err(perr(0, "empty word"));
    }
    let mut lit = Vec::new();
    let mut z = None;
    for (i, &c) in w.iter().enumerate() {
        let p = spiral(i as u64 + 1);
        match c {
            b'0' => {}
            b'1' => lit.push(p),
            b'C' | b'c' => {
                if z.replace(p).is_some() {
                    return Err(perr(i, "second lamplighter symbol"));
                }
                if c == b'c' {
                    lit.push(p);
                }
            }
            _ => return Err(perr(i, "symbol outside {0,1,C,c}")),
        }
    }
    if w.last() == Some(&b'0') {
        return Err(perr(w.len() - 1, "trailing 0"));
    }
    let z = z.ok_or_else(|| perr(w.len(), "no lamplighter symbol"))?;
    let pt = |(x, y): GridPoint| BasePoint::Grid(x, y);
    Ok(WreathElement::new(LampConfig::lit(lit.into_iter().map(pt)), pt(z)))
}

/// Exactly one `C`/`c`, last symbol not `0`.
pub fn grid_language_fsa() -> Result<Fsa<u8>, AutomataError> {
    // 0: before the C, 1: last symbol nonzero, 2: last symbol 0.
    let mut t: BTreeMap<(usize, u8), BTreeSet<usize>> = BTreeMap::new();
    let mut add = |q: usize, a: u8, r: usize| {
        t.entry((q, a)).or_default().insert(r);
    };
    for a in *b"01" {
        add(0, a, 0);
    }
    for a in *b"Cc" {
        add(0, a, 1);
    }
    for q in [1, 2] {
        add(q, b'0', 2);
        add(q, b'1', 1);
    }
    Ok(Fsa::new(GRID_SYMBOLS.to_vec(), 3, 0, BTreeSet::from([1]), t)?.with_labels(vec!["pre".into(), "ok".into(), "zero".into()]))
}

/// `u ⊗ v` with `u, v` canonical and equal except for `C ↔ c` at the lamplighter.
pub fn grid_h_fsa() -> Result<SyncFsa, AutomataError> {
    let mut t: BTreeMap<(usize, Pair), BTreeSet<usize>> = BTreeMap::new();
    let mut add = |q: usize, a: Pair, r: usize| {
        t.entry((q, a)).or_default().insert(r);
    };
    add(0, *b"00", 0);
    add(0, *b"11", 0);
    add(0, *b"Cc", 1);
    add(0, *b"cC", 1);
    for q in [1, 2] {
        add(q, *b"00", 2);
        add(q, *b"11", 1);
    }
    Ok(Fsa::new(grid_pair_alphabet(), 3, 0, BTreeSet::from([1]), t)?.with_labels(vec!["pre".into(), "ok".into(), "zero".into()]))
}

/// [`Representation`] handle for `Z₂ ≀ Z²`.
pub struct GridRep {
    spec: GroupSpec,
}

impl GridRep {
    pub fn new() -> Self {
        GridRep { spec: GroupSpec::z2_wr_grid() }
    }
}

impl Default for GridRep {
    fn default() -> Self {
        Self::new()
    }
}

impl Representation for GridRep {
    fn name(&self) -> &str {
        "grid"
    }
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    fn encode(&self, g: &WreathElement) -> Vec<u8> {
        grid_encode(g).unwrap_or_default()
    }
    fn decode(&self, w: &[u8]) -> Result<WreathElement, String> {
        grid_decode(w).map_err(|e| e.to_string())
    }
}

/// One member of the family `g_r = ({(0,−r) ↦ 1}, (0,0))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub r: u64,
    pub word_len: u64,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridBoundsReport {
    pub bounds: BoundsReport,
    pub family: Vec<Witness>,
    /// `|w(g_r)| / |g_r|` strictly increases along the family.
    pub ratios_increasing: bool,
    pub pass: bool,
}

/// Word length of a single lit lamp at `p` with the lamplighter at the origin:
/// walk out, toggle, walk back.
pub fn single_lamp_length(p: GridPoint) -> u64 {
    2 * (p.0.unsigned_abs() + p.1.unsigned_abs()) + 1
}

pub fn witness_family(rmax: u64) -> Vec<Witness> {
    (1..=rmax)
        .map(|r| {
            let p = (0, -(r as i64));
            Witness { r, word_len: spiral_inv(p), length: single_lamp_length(p) }
        })
        .collect()
}

/// Checks `|g| ≤ 2|w| − 1` over the ball and the witness family up to `rmax`.
pub fn grid_bounds_check(ball: &DistanceMap, rmax: u64) -> Result<GridBoundsReport, RepGridError> {
    let samples = ball
        .iter()
        .map(|(g, d)| Ok(Sample { element: format_element(g), word_len: grid_encode(g)?.len() as u64, length: d as u64 }))
        .collect::<Result<Vec<_>, RepGridError>>()?;
    let bounds = check_bounds(None, Some((q(2, 1), q(-1, 1))), samples);
    let family = witness_family(rmax);
    let ratios: Vec<Q> = family.iter().map(|w| Q::new(w.word_len as i64, w.length as i64)).collect();
    let ratios_increasing = ratios.windows(2).all(|p| p[0] < p[1]);
    let pass = bounds.pass && ratios_increasing;
    Ok(GridBoundsReport { bounds, family, ratios_increasing, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{convolve, fsa_run};
    use crate::groups::bfs_ball;

    fn el(lit: &[GridPoint], z: GridPoint) -> WreathElement {
        WreathElement::new(LampConfig::lit(lit.iter().map(|&(x, y)| BasePoint::Grid(x, y))), BasePoint::Grid(z.0, z.1))
    }

    #[test]
    fn examples() {
        assert_eq!(grid_encode(&el(&[], (0, 0))).unwrap(), b"C");
        assert_eq!(grid_encode(&el(&[(0, 0)], (0, 0))).unwrap(), b"c");
        assert_eq!(grid_encode(&el(&[(1, 1)], (0, 0))).unwrap(), b"C01");
        assert_eq!(grid_encode(&el(&[], (1, 0))).unwrap(), b"0C");
        for w in [&b"C"[..], b"c", b"C01"] {
            assert_eq!(grid_encode(&grid_decode(w).unwrap()).unwrap(), w);
        }
    }

    #[test]
    fn decode_errors() {
        let offset = |w: &[u8]| match grid_decode(w) {
            Err(RepGridError::Parse { offset, .. }) => offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(offset(b""), 0);
        assert_eq!(offset(b"CC"), 1);
        assert_eq!(offset(b"C0"), 1);
        assert_eq!(offset(b"01"), 2);
        assert_eq!(offset(b"C2"), 1);
    }

    #[test]
    fn automata_examples() {
        let l = grid_language_fsa().unwrap();
        assert!(fsa_run(&l, b"C").unwrap());
        assert!(!fsa_run(&l, b"C0").unwrap());
        assert!(!fsa_run(&l, b"00").unwrap());
        let h = grid_h_fsa().unwrap();
        assert!(h.run(convolve(b"C", b"c").pairs()).unwrap());
        assert!(!h.run(convolve(b"C", b"C").pairs()).unwrap());
    }

    #[test]
    fn witness_lengths_agree_with_bfs() {
        let ball = bfs_ball(&GroupSpec::z2_wr_grid(), 5).unwrap();
        for w in witness_family(2) {
            let g = el(&[(0, -(w.r as i64))], (0, 0));
            assert_eq!(ball.get(&g), Some(w.length as u32));
        }
        let fam = witness_family(2);
        assert_eq!((fam[1].word_len, fam[1].length), (23, 5));
    }

    #[test]
    fn bounds_on_small_ball() {
        let ball = bfs_ball(&GroupSpec::z2_wr_grid(), 3).unwrap();
        let r = grid_bounds_check(&ball, 8).unwrap();
        assert!(r.pass, "{:?}", r.bounds.violations);
    }
}
