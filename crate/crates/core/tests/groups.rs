use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;
use wreathauto::groups::{bfs_ball, format_element, parse_element, wreath_inv, wreath_mul, DistanceMap, GroupSpec};

fn specs() -> [GroupSpec; 4] {
    [GroupSpec::lamplighter(), GroupSpec::z_wr_z(), GroupSpec::z2_wr_f2(), GroupSpec::z2_wr_grid()]
}

fn balls(radius: u32) -> &'static [(GroupSpec, DistanceMap)] {
    static R3: OnceLock<Vec<(GroupSpec, DistanceMap)>> = OnceLock::new();
    static R4: OnceLock<Vec<(GroupSpec, DistanceMap)>> = OnceLock::new();
    let cell = if radius == 3 { &R3 } else { &R4 };
    cell.get_or_init(|| specs().into_iter().map(|s| (s.clone(), bfs_ball(&s, radius).unwrap())).collect())
}

proptest! {
    #[test]
    fn multiplication_is_associative(which in 0usize..4, i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let (_, ball) = &balls(3)[which];
        let e = ball.elements();
        let (x, y, z) = (i.get(e), j.get(e), k.get(e));
        let left = wreath_mul(&wreath_mul(x, y).unwrap(), z).unwrap();
        let right = wreath_mul(x, &wreath_mul(y, z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverses_cancel(which in 0usize..4, i in any::<Index>()) {
        let (spec, ball) = &balls(4)[which];
        let x = i.get(ball.elements());
        prop_assert_eq!(wreath_mul(x, &wreath_inv(x)).unwrap(), spec.identity());
        prop_assert_eq!(wreath_mul(&wreath_inv(x), x).unwrap(), spec.identity());
    }

    #[test]
    fn literals_round_trip(which in 0usize..4, i in any::<Index>()) {
        let (spec, ball) = &balls(4)[which];
        let x = i.get(ball.elements());
        prop_assert_eq!(&parse_element(spec.base, spec.lamp, &format_element(x)).unwrap(), x);
    }

    #[test]
    fn neighbours_differ_by_at_most_one(which in 0usize..4, i in any::<Index>()) {
        let (spec, ball) = &balls(4)[which];
        let x = i.get(ball.elements());
        let d = ball.get(x).unwrap();
        for (_, s) in spec.symmetric_generators() {
            let y = wreath_mul(x, &s).unwrap();
            match ball.get(&y) {
                Some(e) => prop_assert!(d.abs_diff(e) <= 1),
                None => prop_assert_eq!(d, ball.radius),
            }
        }
    }
}
