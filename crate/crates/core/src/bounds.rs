//! Checking `λ|w| + μ ≤ |g| ≤ ξ|w| + δ` between word lengths and group lengths.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn ser_q<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_pair<S: Serializer>(x: &Option<(Q, Q)>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some((a, b)) => [a.to_string(), b.to_string()].serialize(s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

/// One checked element: its literal, `|w|` and `|g|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub element: String,
    pub word_len: u64,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub side: Side,
    pub element: String,
    pub word_len: u64,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    #[serde(serialize_with = "ser_q")]
    pub lambda: Option<Q>,
    #[serde(serialize_with = "ser_q")]
    pub mu: Option<Q>,
    #[serde(serialize_with = "ser_q")]
    pub xi: Option<Q>,
    #[serde(serialize_with = "ser_q")]
    pub delta: Option<Q>,
    pub checked: usize,
    pub violations: Vec<Violation>,
    /// Elements attaining the lower bound with equality (first few, in ball order).
    pub lower_witnesses: Vec<Sample>,
    pub lower_witness_count: usize,
    pub upper_witnesses: Vec<Sample>,
    pub upper_witness_count: usize,
    /// Smallest and largest observed `|g| / |w|`.
    #[serde(serialize_with = "ser_pair")]
    pub ratio_range: Option<(Q, Q)>,
    pub pass: bool,
}

const WITNESS_KEEP: usize = 8;

/// Checks every sample against the optional lower bound `(λ, μ)` and upper bound `(ξ, δ)`.
pub fn check_bounds<I>(lower: Option<(Q, Q)>, upper: Option<(Q, Q)>, samples: I) -> BoundsReport
where
    I: IntoIterator<Item = Sample>,
{
    let mut rep = BoundsReport {
        lambda: lower.map(|b| b.0),
        mu: lower.map(|b| b.1),
        xi: upper.map(|b| b.0),
        delta: upper.map(|b| b.1),
        checked: 0,
        violations: Vec::new(),
        lower_witnesses: Vec::new(),
        lower_witness_count: 0,
        upper_witnesses: Vec::new(),
        upper_witness_count: 0,
        ratio_range: None,
        pass: true,
    };
    for s in samples {
        rep.checked += 1;
        let w = Q::from_integer(s.word_len as i64);
        let g = Q::from_integer(s.length as i64);
        if s.word_len > 0 {
            let r = g / w;
            rep.ratio_range = Some(match rep.ratio_range {
                None => (r, r),
                Some((lo, hi)) => (lo.min(r), hi.max(r)),
            });
        }
        let mut side = |bound: Option<(Q, Q)>, which: Side| {
            let Some((k, c)) = bound else { return };
            let b = k * w + c;
            let ok = match which {
                Side::Lower => b <= g,
                Side::Upper => g <= b,
            };
            if !ok {
                rep.violations.push(Violation { side: which, element: s.element.clone(), word_len: s.word_len, length: s.length });
            } else if b == g {
                let (list, count) = match which {
                    Side::Lower => (&mut rep.lower_witnesses, &mut rep.lower_witness_count),
                    Side::Upper => (&mut rep.upper_witnesses, &mut rep.upper_witness_count),
                };
                *count += 1;
                if list.len() < WITNESS_KEEP {
                    list.push(s.clone());
                }
            }
        };
        side(lower, Side::Lower);
        side(upper, Side::Upper);
    }
    rep.pass = rep.violations.is_empty();
    rep
}
