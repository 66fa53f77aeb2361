use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;
use wreathauto::groups::{bfs_ball, wreath_mul, BasePoint, DistanceMap, FreeLetter, FreeWord, GroupSpec, LampConfig, WreathElement};
use wreathauto::rep_f2::bullets::is_canonical;
use wreathauto::rep_f2::language::in_language;
use wreathauto::rep_f2::{f2_decode, f2_encode};
use wreathauto::rep_z::ll_encode;

fn ball5() -> &'static DistanceMap {
    static B: OnceLock<DistanceMap> = OnceLock::new();
    B.get_or_init(|| bfs_ball(&GroupSpec::z2_wr_f2(), 5).unwrap())
}

/// S → SS | (T) | ε and T → TT | [S] | ε: round and square brackets alternate by depth.
fn grammar_accepts(w: &[u8]) -> bool {
    let mut stack = Vec::new();
    for &c in w {
        match c {
            b'(' if stack.last() != Some(&b'(') => stack.push(b'('),
            b'[' if stack.last() == Some(&b'(') => stack.push(b'['),
            b')' => {
                if stack.pop() != Some(b'(') {
                    return false;
                }
            }
            b']' => {
                if stack.pop() != Some(b'[') {
                    return false;
                }
            }
            b'(' | b'[' => return false,
            _ => {}
        }
    }
    stack.is_empty()
}

/// The image of `a^k`-supported elements of `Z₂ ≀ Z` in `Z₂ ≀ F₂`.
fn embed(g: &WreathElement) -> WreathElement {
    let power = |k: i64| {
        let letter = if k >= 0 { FreeLetter::A } else { FreeLetter::AInv };
        BasePoint::Free((0..k.unsigned_abs()).fold(FreeWord::identity(), |w, _| w.mul(&FreeWord::letter(letter))))
    };
    let lamps = LampConfig::lit(g.lamps.keys().map(|p| power(p.as_z().unwrap())));
    WreathElement::new(lamps, power(g.pos.as_z().unwrap()))
}

#[test]
fn radius_five_round_trip_and_membership() {
    for g in ball5().elements() {
        let w = f2_encode(g).unwrap();
        assert_eq!(&f2_decode(&w).unwrap(), g);
        assert!(is_canonical(&w) && in_language(&w), "{}", String::from_utf8_lossy(&w));
        assert!(grammar_accepts(&w), "{}", String::from_utf8_lossy(&w));
    }
}

#[test]
fn h_subgroup_encodes_as_the_lamplighter() {
    for g in bfs_ball(&GroupSpec::lamplighter(), 6).unwrap().elements() {
        assert_eq!(f2_encode(&embed(g)).unwrap(), ll_encode(g).unwrap());
    }
}

#[test]
fn grammar_examples() {
    assert!(grammar_accepts(b"(A[D0])()"));
    assert!(!grammar_accepts(b"[A]"));
    assert!(!grammar_accepts(b"((A))"));
    assert!(!grammar_accepts(b"(A"));
}

proptest! {
    #[test]
    fn step_property(i in any::<Index>()) {
        let spec = GroupSpec::z2_wr_f2();
        let g = i.get(ball5().elements());
        let n = f2_encode(g).unwrap().len() as i64;
        for (name, s) in spec.symmetric_generators() {
            let m = f2_encode(&wreath_mul(g, &s).unwrap()).unwrap().len() as i64;
            if name == "h" {
                prop_assert_eq!(m, n);
            } else {
                prop_assert!((m - n).abs() <= 3, "{} {} -> {}", name, n, m);
            }
        }
    }

    #[test]
    fn single_symbol_edits_stay_out_or_round_trip(i in any::<Index>(), pos in any::<Index>(), c in proptest::sample::select(b"()01AaBbCcDdEePpQqRrSs[]".to_vec())) {
        let g = i.get(ball5().elements());
        let mut w = f2_encode(g).unwrap();
        let k = pos.index(w.len());
        w[k] = c;
        match f2_decode(&w) {
            Ok(h) => prop_assert_eq!(f2_encode(&h).unwrap(), w.clone()),
            Err(_) => prop_assert!(!in_language(&w)),
        }
        prop_assert_eq!(in_language(&w), is_canonical(&w));
    }
}
