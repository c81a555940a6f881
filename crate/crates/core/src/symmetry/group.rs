//! The group `<g, h>` of order 16 with `gh = hg^3`, optionally extended by
//! the involution `s` (which commutes with `g` and satisfies `s h s = h^3`).

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// Normal form `g^a h^b s^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse group word `{0}`")]
pub struct WordError(pub String);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 0, b: 0, c: 0 };
    pub const G: GroupElement = GroupElement { a: 1, b: 0, c: 0 };
    pub const H: GroupElement = GroupElement { a: 0, b: 1, c: 0 };
    pub const S: GroupElement = GroupElement { a: 0, b: 0, c: 1 };

    pub fn new(a: u8, b: u8, c: u8) -> Self {
        GroupElement { a: a % 4, b: b % 4, c: c % 2 }
    }

    pub fn pow(self, n: u32) -> GroupElement {
        (0..n).fold(GroupElement::IDENTITY, |acc, _| acc.mul(self))
    }

    pub fn inv(self) -> GroupElement {
        Self::all_extended().into_iter().find(|w| w.mul(self) == GroupElement::IDENTITY).expect("finite group")
    }

    pub fn order(self) -> u32 {
        (1..=8).find(|&n| self.pow(n) == GroupElement::IDENTITY).expect("order divides 8")
    }

    /// The 16 elements of `<g, h>` in normal-form order.
    pub fn all() -> Vec<GroupElement> {
        (0..4).flat_map(|a| (0..4).map(move |b| GroupElement::new(a, b, 0))).collect()
    }

    /// The 32 elements of `<g, h, s>`.
    pub fn all_extended() -> Vec<GroupElement> {
        (0..2).flat_map(|c| Self::all().into_iter().map(move |w| GroupElement { c, ..w })).collect()
    }

    /// Parses a word in `g`, `h`, `s` with optional exponents, e.g. `g h^3 g`.
    pub fn parse(word: &str) -> Result<GroupElement, WordError> {
        let err = || WordError(word.to_string());
        let mut acc = GroupElement::IDENTITY;
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut k = 0;
        while k < chars.len() {
            let gen = match chars[k] {
                'g' => GroupElement::G,
                'h' => GroupElement::H,
                's' => GroupElement::S,
                '1' if chars.len() == 1 => return Ok(acc),
                _ => return Err(err()),
            };
            k += 1;
            let mut exp = 1;
            if k < chars.len() && chars[k] == '^' {
                k += 1;
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                exp = chars[start..k].iter().collect::<String>().parse().map_err(|_| err())?;
            }
            acc = acc.mul(gen.pow(exp));
        }
        Ok(acc)
    }
}

/// `(g^a h^b s^c)(g^d h^e s^f) = g^(a + (-1)^b d) h^(b + (-1)^c e) s^(c+f)`.
impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, other: GroupElement) -> GroupElement {
        let d = if self.b.is_multiple_of(2) { other.a } else { (4 - other.a) % 4 };
        let e = if self.c == 0 { other.b } else { (4 - other.b) % 4 };
        GroupElement::new(self.a + d, self.b + e, self.c + other.c)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("g", self.a), ("h", self.b), ("s", self.c)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let (g, h, s) = (GroupElement::G, GroupElement::H, GroupElement::S);
        assert_eq!(g.order(), 4);
        assert_eq!(h.order(), 4);
        assert_eq!(g.mul(h), h.mul(g.pow(3)));
        assert_eq!(s.mul(g), g.mul(s));
        assert_eq!(s.mul(h).mul(s), h.pow(3));
        assert_eq!(GroupElement::all().len(), 16);
    }

    #[test]
    fn associative_with_inverses() {
        let all = GroupElement::all_extended();
        for &x in &all {
            assert_eq!(x.mul(x.inv()), GroupElement::IDENTITY);
            for &y in &all {
                for &z in &all {
                    assert_eq!(x.mul(y).mul(z), x.mul(y.mul(z)));
                }
            }
        }
    }

    #[test]
    fn involutions_of_the_base_group() {
        let twos: Vec<_> = GroupElement::all().into_iter().filter(|w| w.order() == 2).collect();
        assert_eq!(twos, vec![GroupElement::new(0, 2, 0), GroupElement::new(2, 0, 0), GroupElement::new(2, 2, 0)]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(GroupElement::parse("g h^3 g").unwrap(), GroupElement::G.mul(GroupElement::H.pow(3)).mul(GroupElement::G));
        assert_eq!(GroupElement::parse("g^2h^2").unwrap().to_string(), "g^2 h^2");
        assert_eq!(GroupElement::parse("1").unwrap(), GroupElement::IDENTITY);
        assert!(GroupElement::parse("gx").is_err());
    }
}
