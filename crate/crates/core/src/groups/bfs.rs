use std::collections::HashMap;

use super::{wreath_mul, GroupError, GroupSpec, WreathElement};
use crate::par::par_map;

pub const DEFAULT_BALL_CAP: usize = 5_000_000;

/// Exact word lengths for every element of a ball around the identity.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    pub radius: u32,
    entries: HashMap<WreathElement, u32>,
    order: Vec<WreathElement>,
}

impl DistanceMap {
    pub fn get(&self, g: &WreathElement) -> Option<u32> {
        self.entries.get(g).copied()
    }

    pub fn contains(&self, g: &WreathElement) -> bool {
        self.entries.contains_key(g)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements in BFS order; within a layer they are sorted.
    pub fn elements(&self) -> &[WreathElement] {
        &self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WreathElement, u32)> {
        self.order.iter().map(move |g| (g, self.entries[g]))
    }

    /// Elements at distance at most `r`, in BFS order.
    pub fn within(&self, r: u32) -> impl Iterator<Item = &WreathElement> {
        self.order.iter().filter(move |g| self.entries[*g] <= r)
    }
}

pub fn bfs_ball(spec: &GroupSpec, radius: u32) -> Result<DistanceMap, GroupError> {
    bfs_ball_with_cap(spec, radius, DEFAULT_BALL_CAP)
}

pub fn bfs_ball_with_cap(spec: &GroupSpec, radius: u32, cap: usize) -> Result<DistanceMap, GroupError> {
    let gens: Vec<WreathElement> = spec.symmetric_generators().into_iter().map(|(_, g)| g).collect();
    let id = spec.identity();
    let mut entries = HashMap::new();
    entries.insert(id.clone(), 0);
    let mut order = vec![id.clone()];
    let mut frontier = vec![id];
    for d in 1..=radius {
        let expanded = par_map(&frontier, |g| gens.iter().map(|s| wreath_mul(g, s)).collect::<Result<Vec<_>, _>>());
        let mut next = Vec::new();
        for nbrs in expanded {
            for n in nbrs? {
                if !entries.contains_key(&n) {
                    entries.insert(n.clone(), d);
                    next.push(n);
                    if entries.len() > cap {
                        return Err(GroupError::BallTooLarge { visited: entries.len(), cap, radius: d });
                    }
                }
            }
        }
        next.sort();
        order.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(DistanceMap { radius, entries, order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{BasePoint, LampConfig};

    #[test]
    fn small_lamplighter_balls() {
        let spec = GroupSpec::lamplighter();
        let b0 = bfs_ball(&spec, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.get(&spec.identity()), Some(0));

        let b1 = bfs_ball(&spec, 1).unwrap();
        assert_eq!(b1.len(), 4);
        for n in ["a", "a-1", "h"] {
            assert_eq!(b1.get(&spec.generator(n).unwrap()), Some(1));
        }

        let b3 = bfs_ball(&spec, 3).unwrap();
        let g = WreathElement::new(LampConfig::lit([BasePoint::Z(1)]), BasePoint::Z(0));
        assert_eq!(b3.get(&g), Some(3));
    }

    #[test]
    fn cap_is_reported() {
        let err = bfs_ball_with_cap(&GroupSpec::lamplighter(), 6, 50).unwrap_err();
        assert!(matches!(err, GroupError::BallTooLarge { cap: 50, .. }));
    }

    #[test]
    fn neighbours_differ_by_at_most_one() {
        for spec in [GroupSpec::lamplighter(), GroupSpec::z2_wr_f2(), GroupSpec::z2_wr_grid()] {
            let ball = bfs_ball(&spec, 4).unwrap();
            let gens = spec.symmetric_generators();
            for (g, d) in ball.iter().filter(|(_, d)| *d < 4) {
                for (_, s) in &gens {
                    let e = ball.get(&wreath_mul(g, s).unwrap()).unwrap();
                    assert!(e.abs_diff(d) <= 1);
                }
            }
        }
    }

    #[test]
    fn ball_is_deterministic() {
        let spec = GroupSpec::z2_wr_grid();
        let a = bfs_ball(&spec, 3).unwrap();
        let b = bfs_ball(&spec, 3).unwrap();
        assert_eq!(a.elements(), b.elements());
    }
}
