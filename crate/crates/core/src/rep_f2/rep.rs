use super::tree::{f2_decode, f2_encode};
use super::RepF2Error;
use crate::automata::Representation;
use crate::bounds::{check_bounds, q, BoundsReport, Sample};
use crate::groups::{format_element, DistanceMap, GroupSpec, WreathElement};

/// [`Representation`] handle for `Z₂ ≀ F₂`.
pub struct F2Rep {
    spec: GroupSpec,
}

impl F2Rep {
    pub fn new() -> Self {
        F2Rep { spec: GroupSpec::z2_wr_f2() }
    }
}

impl Default for F2Rep {
    fn default() -> Self {
        Self::new()
    }
}

impl Representation for F2Rep {
    fn name(&self) -> &str {
        "f2"
    }
    fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    fn encode(&self, g: &WreathElement) -> Vec<u8> {
        f2_encode(g).unwrap_or_default()
    }
    fn decode(&self, w: &[u8]) -> Result<WreathElement, String> {
        f2_decode(w).map_err(|e| e.to_string())
    }
}

/// Checks `(1/3)|w| − 1/3 ≤ |g| ≤ 3|w| − 2` over a ball of `Z₂ ≀ F₂`.
pub fn f2_bounds_check(ball: &DistanceMap) -> Result<BoundsReport, RepF2Error> {
    let samples = ball
        .iter()
        .map(|(g, d)| Ok(Sample { element: format_element(g), word_len: f2_encode(g)?.len() as u64, length: d as u64 }))
        .collect::<Result<Vec<_>, RepF2Error>>()?;
    Ok(check_bounds(Some((q(1, 3), q(-1, 3))), Some((q(3, 1), q(-2, 1))), samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::bfs_ball;

    #[test]
    fn bounds_on_small_ball() {
        let ball = bfs_ball(&GroupSpec::z2_wr_f2(), 3).unwrap();
        let r = f2_bounds_check(&ball).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert!(r.lower_witness_count > 0 && r.upper_witness_count > 0);
    }
}
