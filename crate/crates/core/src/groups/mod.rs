//! Exact arithmetic in the wreath products `A ≀ B` used throughout the crate:
//! lamps in `Z₂` or `Z`, base group `Z`, `F₂` or `Z²`.
//!
//! Elements are pairs `(f, b)` with `f` a finitely supported lamp
//! configuration and `b` the lamplighter position, multiplied by
//! `(f, b)·(f′, b′) = (f·f′^(b⁻¹), b·b′)` where `f′^(b⁻¹)(x) = f′(b⁻¹x)`.

mod bfs;
pub mod free;
pub mod literal;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bfs::{bfs_ball, bfs_ball_with_cap, DistanceMap, DEFAULT_BALL_CAP};
pub use free::{free_reduce, FreeLetter, FreeWord};
pub use literal::{format_element, parse_element};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("base group mismatch: {0:?} vs {1:?}")]
    BaseMismatch(BaseKind, BaseKind),
    #[error("lamp group mismatch: {0:?} vs {1:?}")]
    LampMismatch(LampKind, LampKind),
    #[error("ball too large: visited {visited} elements (cap {cap}) before finishing radius {radius}")]
    BallTooLarge { visited: usize, cap: usize, radius: u32 },
    #[error("parse error at offset {offset}: {reason}")]
    Parse { offset: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseKind {
    Z,
    F2,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LampKind {
    /// Lamps in Z₂: a lamp is either unlit or lit.
    Z2,
    /// Lamps in Z, for the generic `G ≀ Z` instance with `G = Z`.
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasePoint {
    Z(i64),
    Grid(i64, i64),
    Free(FreeWord),
}

impl BasePoint {
    pub fn identity(kind: BaseKind) -> BasePoint {
        match kind {
            BaseKind::Z => BasePoint::Z(0),
            BaseKind::Grid => BasePoint::Grid(0, 0),
            BaseKind::F2 => BasePoint::Free(FreeWord::identity()),
        }
    }

    pub fn kind(&self) -> BaseKind {
        match self {
            BasePoint::Z(_) => BaseKind::Z,
            BasePoint::Grid(..) => BaseKind::Grid,
            BasePoint::Free(_) => BaseKind::F2,
        }
    }

    pub fn mul(&self, other: &BasePoint) -> Result<BasePoint, GroupError> {
        match (self, other) {
            (BasePoint::Z(x), BasePoint::Z(y)) => Ok(BasePoint::Z(x + y)),
            (BasePoint::Grid(a, b), BasePoint::Grid(c, d)) => Ok(BasePoint::Grid(a + c, b + d)),
            (BasePoint::Free(u), BasePoint::Free(v)) => Ok(BasePoint::Free(u.mul(v))),
            _ => Err(GroupError::BaseMismatch(self.kind(), other.kind())),
        }
    }

    pub fn inverse(&self) -> BasePoint {
        match self {
            BasePoint::Z(x) => BasePoint::Z(-x),
            BasePoint::Grid(a, b) => BasePoint::Grid(-a, -b),
            BasePoint::Free(w) => BasePoint::Free(w.inverse()),
        }
    }

    pub fn as_z(&self) -> Option<i64> {
        match self {
            BasePoint::Z(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_grid(&self) -> Option<(i64, i64)> {
        match self {
            BasePoint::Grid(x, y) => Some((*x, *y)),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreeWord> {
        match self {
            BasePoint::Free(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Z(x) => write!(f, "{x}"),
            BasePoint::Grid(x, y) => write!(f, "({x},{y})"),
            BasePoint::Free(w) => write!(f, "{w}"),
        }
    }
}

/// Value of a single lamp. Only non-identity values are ever stored in a
/// [`LampConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LampState {
    Bit(bool),
    Int(i64),
}

impl LampState {
    pub fn identity(kind: LampKind) -> LampState {
        match kind {
            LampKind::Z2 => LampState::Bit(false),
            LampKind::Z => LampState::Int(0),
        }
    }

    pub fn kind(&self) -> LampKind {
        match self {
            LampState::Bit(_) => LampKind::Z2,
            LampState::Int(_) => LampKind::Z,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, LampState::Bit(false) | LampState::Int(0))
    }

    pub fn mul(&self, other: &LampState) -> Result<LampState, GroupError> {
        match (self, other) {
            (LampState::Bit(a), LampState::Bit(b)) => Ok(LampState::Bit(a ^ b)),
            (LampState::Int(a), LampState::Int(b)) => Ok(LampState::Int(a + b)),
            _ => Err(GroupError::LampMismatch(self.kind(), other.kind())),
        }
    }

    pub fn inverse(&self) -> LampState {
        match self {
            LampState::Bit(b) => LampState::Bit(*b),
            LampState::Int(a) => LampState::Int(-a),
        }
    }
}

/// Finitely supported lamp configuration; keys with identity values are absent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LampConfig {
    entries: BTreeMap<BasePoint, LampState>,
}

impl LampConfig {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a canonical configuration, dropping identity values.
    pub fn from_entries<I: IntoIterator<Item = (BasePoint, LampState)>>(it: I) -> Self {
        let mut c = LampConfig::new();
        for (k, v) in it {
            c.set(k, v);
        }
        c
    }

    pub fn lit<I: IntoIterator<Item = BasePoint>>(points: I) -> Self {
        Self::from_entries(points.into_iter().map(|p| (p, LampState::Bit(true))))
    }

    pub fn get(&self, p: &BasePoint) -> Option<&LampState> {
        self.entries.get(p)
    }

    pub fn is_lit(&self, p: &BasePoint) -> bool {
        self.entries.contains_key(p)
    }

    pub fn set(&mut self, p: BasePoint, v: LampState) {
        if v.is_identity() {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasePoint, &LampState)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BasePoint> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WreathElement {
    pub lamps: LampConfig,
    pub pos: BasePoint,
}

impl WreathElement {
    pub fn identity(base: BaseKind) -> Self {
        WreathElement { lamps: LampConfig::new(), pos: BasePoint::identity(base) }
    }

    pub fn new(lamps: LampConfig, pos: BasePoint) -> Self {
        WreathElement { lamps, pos }
    }

    /// The base-group element `(∅, b)`.
    pub fn at(pos: BasePoint) -> Self {
        WreathElement { lamps: LampConfig::new(), pos }
    }

    pub fn base_kind(&self) -> BaseKind {
        self.pos.kind()
    }

    pub fn is_identity(&self) -> bool {
        self.lamps.is_empty() && self.pos == BasePoint::identity(self.pos.kind())
    }
}

/// `(f, b)·(f′, b′) = (f·f′^(b⁻¹), b·b′)`.
pub fn wreath_mul(x: &WreathElement, y: &WreathElement) -> Result<WreathElement, GroupError> {
    if x.base_kind() != y.base_kind() {
        return Err(GroupError::BaseMismatch(x.base_kind(), y.base_kind()));
    }
    let mut lamps = x.lamps.clone();
    for (k, v) in y.lamps.iter() {
        let target = x.pos.mul(k)?;
        let merged = match lamps.get(&target) {
            Some(cur) => cur.mul(v)?,
            None => *v,
        };
        lamps.set(target, merged);
    }
    Ok(WreathElement { lamps, pos: x.pos.mul(&y.pos)? })
}

/// `(f, b)⁻¹ = (x ↦ f(bx)⁻¹, b⁻¹)`.
pub fn wreath_inv(x: &WreathElement) -> WreathElement {
    let binv = x.pos.inverse();
    let lamps = LampConfig::from_entries(x.lamps.iter().map(|(k, v)| {
        let key = binv.mul(k).expect("same base kind");
        (key, v.inverse())
    }));
    WreathElement { lamps, pos: binv }
}

/// A finite generating set for one of the supported wreath products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub base: BaseKind,
    pub lamp: LampKind,
    pub generators: Vec<(String, WreathElement)>,
}

impl GroupSpec {
    /// Z₂ ≀ Z over `{a, h}`.
    pub fn lamplighter() -> Self {
        GroupSpec {
            base: BaseKind::Z,
            lamp: LampKind::Z2,
            generators: vec![
                ("a".into(), WreathElement::at(BasePoint::Z(1))),
                ("h".into(), WreathElement::new(LampConfig::lit([BasePoint::Z(0)]), BasePoint::Z(0))),
            ],
        }
    }

    /// Z ≀ Z over `{a, g1}` where `g1` adds 1 to the lamp under the lamplighter.
    pub fn z_wr_z() -> Self {
        GroupSpec {
            base: BaseKind::Z,
            lamp: LampKind::Z,
            generators: vec![
                ("a".into(), WreathElement::at(BasePoint::Z(1))),
                ("g1".into(), WreathElement::new(LampConfig::from_entries([(BasePoint::Z(0), LampState::Int(1))]), BasePoint::Z(0))),
            ],
        }
    }

    /// Z₂ ≀ F₂ over `{a, b, h}`.
    pub fn z2_wr_f2() -> Self {
        let e = BasePoint::Free(FreeWord::identity());
        GroupSpec {
            base: BaseKind::F2,
            lamp: LampKind::Z2,
            generators: vec![
                ("a".into(), WreathElement::at(BasePoint::Free(FreeWord::letter(FreeLetter::A)))),
                ("b".into(), WreathElement::at(BasePoint::Free(FreeWord::letter(FreeLetter::B)))),
                ("h".into(), WreathElement::new(LampConfig::lit([e.clone()]), e)),
            ],
        }
    }

    /// Z₂ ≀ Z² over `{x, y, h}`.
    pub fn z2_wr_grid() -> Self {
        GroupSpec {
            base: BaseKind::Grid,
            lamp: LampKind::Z2,
            generators: vec![
                ("x".into(), WreathElement::at(BasePoint::Grid(1, 0))),
                ("y".into(), WreathElement::at(BasePoint::Grid(0, 1))),
                ("h".into(), WreathElement::new(LampConfig::lit([BasePoint::Grid(0, 0)]), BasePoint::Grid(0, 0))),
            ],
        }
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement::identity(self.base)
    }

    /// Looks up a generator by name; `x-1` style names give inverses.
    pub fn generator(&self, name: &str) -> Option<WreathElement> {
        if let Some(base) = name.strip_suffix("-1") {
            return self.generator(base).map(|g| wreath_inv(&g));
        }
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| g.clone())
    }

    /// Generators together with their inverses, self-inverse ones listed once.
    pub fn symmetric_generators(&self) -> Vec<(String, WreathElement)> {
        let mut out = Vec::new();
        for (name, g) in &self.generators {
            out.push((name.clone(), g.clone()));
            let inv = wreath_inv(g);
            if inv != *g {
                out.push((format!("{name}-1"), inv));
            }
        }
        out
    }

    /// Evaluates a sequence of generator names.
    pub fn evaluate<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<WreathElement, String> {
        let mut acc = self.identity();
        for n in names {
            let g = self.generator(n).ok_or_else(|| format!("unknown generator '{n}'"))?;
            acc = wreath_mul(&acc, &g).map_err(|e| e.to_string())?;
        }
        Ok(acc)
    }
}
