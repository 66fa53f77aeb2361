//! The counterclockwise square spiral `t: N → Z²`, starting `t(1) = (0,0)`,
//! `t(2) = (1,0)`. Ring `r ≥ 1` occupies indices `(2r−1)²+1 ..= (2r+1)²`:
//! up the right side from `(r, −r+1)`, left along the top, down the left
//! side, then right along the bottom to `(r, −r)`.

pub type GridPoint = (i64, i64);

/// Ring of index `k ≥ 1`; ring 0 is the origin alone.
pub fn ring(k: u64) -> u64 {
    assert!(k >= 1, "spiral indices start at 1");
    (k - 1).isqrt().div_ceil(2)
}

pub fn spiral(k: u64) -> GridPoint {
    let r = ring(k);
    if r == 0 {
        return (0, 0);
    }
    let ri = r as i64;
    let side = 2 * ri;
    let i = (k - (2 * r - 1).pow(2)) as i64 - 1;
    match i / side {
        0 => (ri, -ri + 1 + i),
        1 => (ri - 1 - (i - side), ri),
        2 => (-ri, ri - 1 - (i - 2 * side)),
        _ => (-ri + 1 + (i - 3 * side), -ri),
    }
}

pub fn spiral_inv(p: GridPoint) -> u64 {
    let (x, y) = p;
    let r = x.abs().max(y.abs());
    if r == 0 {
        return 1;
    }
    let base = (2 * r - 1).pow(2);
    let side = 2 * r;
    let off = if x == r && y > -r {
        y + r
    } else if y == r {
        side + (r - x)
    } else if x == -r {
        2 * side + (r - y)
    } else {
        3 * side + (x + r)
    };
    (base + off) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    X,
    XInv,
    Y,
    YInv,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::X, Dir::XInv, Dir::Y, Dir::YInv];

    pub fn unit(self) -> GridPoint {
        match self {
            Dir::X => (1, 0),
            Dir::XInv => (-1, 0),
            Dir::Y => (0, 1),
            Dir::YInv => (0, -1),
        }
    }

    pub fn generator(self) -> &'static str {
        match self {
            Dir::X => "x",
            Dir::XInv => "x-1",
            Dir::Y => "y",
            Dir::YInv => "y-1",
        }
    }

    pub fn from_generator(s: &str) -> Option<Dir> {
        Dir::ALL.into_iter().find(|d| d.generator() == s)
    }
}

pub fn grid_shift(k: u64, dir: Dir) -> u64 {
    let (x, y) = spiral(k);
    let (dx, dy) = dir.unit();
    spiral_inv((x + dx, y + dy))
}
