//! Text literals for wreath elements, e.g. `pos=1;lamps=-1,1`,
//! `pos=(0,0);lamps=(1,1)`, `pos=ab-1;lamps=e,a` or `pos=0;lamps=2:-3`.

use super::{BaseKind, BasePoint, FreeWord, GroupError, LampConfig, LampKind, LampState, WreathElement};

fn perr(offset: usize, reason: impl Into<String>) -> GroupError {
    GroupError::Parse { offset, reason: reason.into() }
}

fn parse_int(s: &str, offset: usize) -> Result<i64, GroupError> {
    s.trim().parse::<i64>().map_err(|_| perr(offset, format!("expected integer, found '{}'", s.trim())))
}

fn parse_point(base: BaseKind, s: &str, offset: usize) -> Result<BasePoint, GroupError> {
    match base {
        BaseKind::Z => Ok(BasePoint::Z(parse_int(s, offset)?)),
        BaseKind::F2 => FreeWord::parse(s).map(BasePoint::Free).map_err(|e| perr(offset, e)),
        BaseKind::Grid => {
            let t = s.trim();
            let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| perr(offset, format!("expected (x,y), found '{t}'")))?;
            let (x, y) = inner.split_once(',').ok_or_else(|| perr(offset, "expected two coordinates"))?;
            Ok(BasePoint::Grid(parse_int(x, offset + 1)?, parse_int(y, offset + 1 + x.len() + 1)?))
        }
    }
}

/// Splits a lamp list on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

pub fn parse_element(base: BaseKind, lamp: LampKind, s: &str) -> Result<WreathElement, GroupError> {
    let s = s.trim();
    let rest = s.strip_prefix("pos=").ok_or_else(|| perr(0, "literal must start with 'pos='"))?;
    let semi = rest.find(';').ok_or_else(|| perr(s.len(), "missing ';lamps='"))?;
    let pos = parse_point(base, &rest[..semi], 4)?;
    let lamps_off = 4 + semi + 1;
    let lamps_str = rest[semi + 1..].strip_prefix("lamps=").ok_or_else(|| perr(lamps_off, "expected 'lamps='"))?;
    let list_off = lamps_off + 6;
    let mut lamps = LampConfig::new();
    if !lamps_str.trim().is_empty() {
        for (off, item) in split_top_level(lamps_str) {
            let at = list_off + off;
            let (point, value) = match lamp {
                LampKind::Z2 => (parse_point(base, item, at)?, LampState::Bit(true)),
                LampKind::Z => {
                    let (p, v) = item.rsplit_once(':').ok_or_else(|| perr(at, format!("expected position:value, found '{item}'")))?;
                    (parse_point(base, p, at)?, LampState::Int(parse_int(v, at + p.len() + 1)?))
                }
            };
            if lamps.get(&point).is_some() {
                return Err(perr(at, format!("duplicate lamp '{}'", item.trim())));
            }
            lamps.set(point, value);
        }
    }
    Ok(WreathElement::new(lamps, pos))
}

pub fn format_element(g: &WreathElement) -> String {
    let lamps: Vec<String> = g
        .lamps
        .iter()
        .map(|(p, v)| match v {
            LampState::Bit(_) => p.to_string(),
            LampState::Int(x) => format!("{p}:{x}"),
        })
        .collect();
    format!("pos={};lamps={}", g.pos, lamps.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lamplighter_literals() {
        let g = parse_element(BaseKind::Z, LampKind::Z2, "pos=1;lamps=-1,1").unwrap();
        assert_eq!(g.pos, BasePoint::Z(1));
        assert_eq!(g.lamps.len(), 2);
        assert_eq!(format_element(&g), "pos=1;lamps=-1,1");
        let e = parse_element(BaseKind::Z, LampKind::Z2, "pos=0;lamps=").unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn other_literals_round_trip() {
        let cases = [
            (BaseKind::Grid, LampKind::Z2, "pos=(0,0);lamps=(0,-2),(1,1)"),
            (BaseKind::F2, LampKind::Z2, "pos=ab-1;lamps=e,a"),
            (BaseKind::Z, LampKind::Z, "pos=0;lamps=-2:3,2:-1"),
        ];
        for (b, l, s) in cases {
            let g = parse_element(b, l, s).unwrap();
            assert_eq!(format_element(&g), s);
        }
    }

    #[test]
    fn errors_have_offsets() {
        let err = parse_element(BaseKind::Z, LampKind::Z2, "pos=x;lamps=").unwrap_err();
        assert_eq!(err, GroupError::Parse { offset: 4, reason: "expected integer, found 'x'".into() });
        assert!(parse_element(BaseKind::Z, LampKind::Z2, "pos=0;lamps=1,1").is_err());
        assert!(parse_element(BaseKind::Z, LampKind::Z2, "lamps=").is_err());
    }
}
