use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the four generators of F₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FreeLetter {
    A,
    AInv,
    B,
    BInv,
}

impl FreeLetter {
    pub const ALL: [FreeLetter; 4] = [FreeLetter::A, FreeLetter::AInv, FreeLetter::B, FreeLetter::BInv];

    pub fn inverse(self) -> FreeLetter {
        match self {
            FreeLetter::A => FreeLetter::AInv,
            FreeLetter::AInv => FreeLetter::A,
            FreeLetter::B => FreeLetter::BInv,
            FreeLetter::BInv => FreeLetter::B,
        }
    }

    /// True for `a` and `a⁻¹`.
    pub fn is_horizontal(self) -> bool {
        matches!(self, FreeLetter::A | FreeLetter::AInv)
    }

    /// +1 for `a`/`b`, -1 for the inverses.
    pub fn sign(self) -> i64 {
        match self {
            FreeLetter::A | FreeLetter::B => 1,
            FreeLetter::AInv | FreeLetter::BInv => -1,
        }
    }

    fn token(self) -> &'static str {
        match self {
            FreeLetter::A => "a",
            FreeLetter::AInv => "a-1",
            FreeLetter::B => "b",
            FreeLetter::BInv => "b-1",
        }
    }
}

/// A freely reduced word over `{a, a⁻¹, b, b⁻¹}`.
///
/// The only constructor paths go through [`free_reduce`] or the reducing
/// multiplication, so no value ever holds an adjacent inverse pair.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord(Vec<FreeLetter>);

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce<I: IntoIterator<Item = FreeLetter>>(letters: I) -> FreeWord {
    let mut out: Vec<FreeLetter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    FreeWord(out)
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(l: FreeLetter) -> Self {
        FreeWord(vec![l])
    }

    /// `g^k` for a single generator letter.
    pub fn power(l: FreeLetter, k: i64) -> Self {
        let letter = if k >= 0 { l } else { l.inverse() };
        FreeWord(vec![letter; k.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn push_letter(&self, l: FreeLetter) -> FreeWord {
        let mut v = self.0.clone();
        if v.last() == Some(&l.inverse()) {
            v.pop();
        } else {
            v.push(l);
        }
        FreeWord(v)
    }

    /// Parses the `ab-1a` notation; `e` (or the empty string) is the identity.
    pub fn parse(s: &str) -> Result<FreeWord, String> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(FreeWord::identity());
        }
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let base = match bytes[i] {
                b'a' => FreeLetter::A,
                b'b' => FreeLetter::B,
                c => return Err(format!("unexpected '{}' at offset {i} in free word", c as char)),
            };
            i += 1;
            if bytes[i..].starts_with(b"-1") {
                letters.push(base.inverse());
                i += 2;
            } else {
                letters.push(base);
            }
        }
        Ok(free_reduce(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for l in &self.0 {
            f.write_str(l.token())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use FreeLetter::*;

    // Cancels one pair per sweep until a sweep changes nothing.
    fn fixpoint_reduce(mut v: Vec<FreeLetter>) -> Vec<FreeLetter> {
        loop {
            let pos = v.windows(2).position(|w| w[0] == w[1].inverse());
            match pos {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce([A, B, BInv]).letters(), &[A]);
        assert!(free_reduce([]).is_empty());
        assert_eq!(free_reduce([A, AInv, A]).letters(), fixpoint_reduce(vec![A, AInv, A]).as_slice());
        assert_eq!(free_reduce([A, AInv, A]).letters(), &[A]);
    }

    #[test]
    fn parse_and_display() {
        let w = FreeWord::parse("ab-1a").unwrap();
        assert_eq!(w.letters(), &[A, BInv, A]);
        assert_eq!(w.to_string(), "ab-1a");
        assert_eq!(FreeWord::parse("e").unwrap(), FreeWord::identity());
        assert_eq!(FreeWord::parse("aa-1").unwrap().to_string(), "e");
        assert!(FreeWord::parse("ac").is_err());
    }

    proptest::proptest! {
        #[test]
        fn reduce_matches_fixpoint_and_is_idempotent(raw in proptest::collection::vec(0u8..4, 0..24)) {
            let letters: Vec<FreeLetter> = raw.iter().map(|&i| FreeLetter::ALL[i as usize]).collect();
            let r = free_reduce(letters.clone());
            let expected = fixpoint_reduce(letters);
            proptest::prop_assert_eq!(r.letters(), expected.as_slice());
            proptest::prop_assert_eq!(free_reduce(r.letters().iter().copied()), r.clone());
            proptest::prop_assert!(r.mul(&r.inverse()).is_empty());
        }
    }
}
