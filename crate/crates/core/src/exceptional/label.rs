//! Carter labels of Weyl group classes and names of unipotent classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const COMBINING_TILDE: char = '\u{303}';

/// Rewrites the accepted spellings into canonical form: `A~`, `~A`, `tA`
/// and `A` + combining tilde become `Ã`, a double quote becomes `''`, and
/// whitespace is dropped.
pub fn normalize(s: &str) -> String {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = String::with_capacity(s.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        match c {
            '"' => out.push_str("''"),
            '\u{2019}' | '\u{2032}' => out.push('\''),
            '~' | 't' if next.is_some_and(is_family) => {
                push_tilde(&mut out, next.unwrap());
                i += 1;
            }
            _ if is_family(c) && matches!(next, Some('~') | Some(COMBINING_TILDE)) => {
                push_tilde(&mut out, c);
                i += 1;
            }
            _ => out.push(c),
        }
        i += 1;
    }
    out
}

fn is_family(c: char) -> bool {
    matches!(c, 'A'..='G')
}

fn push_tilde(out: &mut String, family: char) {
    if family == 'A' {
        out.push('Ã');
    } else {
        out.push(family);
        out.push(COMBINING_TILDE);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CarterComponent {
    pub multiplier: u32,
    /// One of `A`..`G`.
    pub family: char,
    /// Short-root version, written with a tilde.
    pub tilde: bool,
    pub subscript: u32,
    /// Contents of a trailing `(...)`, e.g. `a_1`.
    pub parenthetical: Option<String>,
    pub primes: u8,
}

impl CarterComponent {
    pub fn rank(&self) -> u32 {
        self.multiplier * self.subscript
    }
}

impl fmt::Display for CarterComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplier != 1 {
            write!(f, "{}", self.multiplier)?;
        }
        let mut head = String::new();
        push_tilde_or_plain(&mut head, self.family, self.tilde);
        write!(f, "{head}_{}", self.subscript)?;
        if let Some(p) = &self.parenthetical {
            write!(f, "({p})")?;
        }
        for _ in 0..self.primes {
            f.write_str("'")?;
        }
        Ok(())
    }
}

fn push_tilde_or_plain(out: &mut String, family: char, tilde: bool) {
    if tilde {
        push_tilde(out, family);
    } else {
        out.push(family);
    }
}

/// Carter's name for a conjugacy class of a Weyl group, e.g.
/// `D_4(a_1)+2A_1` or `A_3+2A_1''`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CarterLabel {
    raw: String,
    components: Vec<CarterComponent>,
}

impl CarterLabel {
    pub fn parse(s: &str) -> Result<Self> {
        let raw = normalize(s);
        if raw.is_empty() {
            return Err(Error::Parse("empty Carter label".into()));
        }
        let components = raw
            .split('+')
            .map(|part| parse_component(part).map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let label = CarterLabel { raw, components };
        debug_assert_eq!(label.to_canonical(), label.raw);
        Ok(label)
    }

    pub fn as_str(&self) -> &str {
        &self.raw
    }

    pub fn components(&self) -> &[CarterComponent] {
        &self.components
    }

    /// Sum of multiplier times subscript; parentheticals and primes do not
    /// count. Equals the codimension of the fixed space.
    pub fn rank(&self) -> u32 {
        self.components.iter().map(CarterComponent::rank).sum()
    }

    fn to_canonical(&self) -> String {
        self.components
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }
}

fn parse_component(s: &str) -> std::result::Result<CarterComponent, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let digits = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().ok())?
    };
    let multiplier = digits(&mut i).unwrap_or(1);
    if multiplier == 0 {
        return Err("zero multiplier".into());
    }
    let (family, tilde) = match chars.get(i) {
        Some('Ã') => ('A', true),
        Some(&c) if is_family(c) => {
            if chars.get(i + 1) == Some(&COMBINING_TILDE) {
                i += 1;
                (c, true)
            } else {
                (c, false)
            }
        }
        _ => return Err(format!("expected a family letter in {s:?}")),
    };
    i += 1;
    if chars.get(i) != Some(&'_') {
        return Err(format!("expected '_' after the family letter in {s:?}"));
    }
    i += 1;
    let subscript = digits(&mut i).ok_or_else(|| format!("expected a rank subscript in {s:?}"))?;
    let mut parenthetical = None;
    if chars.get(i) == Some(&'(') {
        let close = chars[i..]
            .iter()
            .position(|&c| c == ')')
            .ok_or_else(|| format!("unclosed parenthesis in {s:?}"))?;
        let inner: String = chars[i + 1..i + close].iter().collect();
        if inner.is_empty() {
            return Err(format!("empty parenthetical in {s:?}"));
        }
        parenthetical = Some(inner);
        i += close + 1;
    }
    let mut primes = 0u8;
    while chars.get(i) == Some(&'\'') {
        primes += 1;
        i += 1;
    }
    if i != chars.len() {
        return Err(format!("trailing characters in {s:?}"));
    }
    Ok(CarterComponent {
        multiplier,
        family,
        tilde,
        subscript,
        parenthetical,
        primes,
    })
}

impl fmt::Display for CarterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

impl FromStr for CarterLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CarterLabel::parse(s)
    }
}

impl Serialize for CarterLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.raw)
    }
}

impl<'de> Deserialize<'de> for CarterLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CarterLabel::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Name of a unipotent class, e.g. `F_4(a_3)` or `(Ã_1)_3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct UnipotentName(String);

impl UnipotentName {
    pub fn new(s: &str) -> Result<Self> {
        let n = normalize(s);
        if n.is_empty() {
            return Err(Error::Parse("empty unipotent class name".into()));
        }
        Ok(UnipotentName(n))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// For names of the form `(X)_p`, the prime `p`.
    pub fn bad_prime(&self) -> Option<u32> {
        let rest = self.0.strip_prefix('(')?;
        let close = rest.rfind(")_")?;
        rest[close + 2..].parse().ok()
    }
}

impl TryFrom<String> for UnipotentName {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        UnipotentName::new(&s)
    }
}

impl From<UnipotentName> for String {
    fn from(n: UnipotentName) -> String {
        n.0
    }
}

impl fmt::Display for UnipotentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for UnipotentName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        UnipotentName::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(CarterLabel::parse("4A_1").unwrap().rank(), 4);
        assert_eq!(CarterLabel::parse("A_0").unwrap().rank(), 0);
        assert_eq!(CarterLabel::parse("D_6(a_2)+A_1").unwrap().rank(), 7);
        assert_eq!(CarterLabel::parse("2D_4(a_1)").unwrap().rank(), 8);
        assert_eq!(CarterLabel::parse("A_5+A_1''").unwrap().rank(), 6);
    }

    #[test]
    fn components() {
        let l = CarterLabel::parse("D_4(a_1)+2A_1").unwrap();
        let c = l.components();
        assert_eq!(c.len(), 2);
        assert_eq!((c[0].family, c[0].subscript, c[0].parenthetical.as_deref()), ('D', 4, Some("a_1")));
        assert_eq!((c[1].multiplier, c[1].family, c[1].subscript), (2, 'A', 1));
        let l = CarterLabel::parse("A_3+2A_1''").unwrap();
        assert_eq!(l.components()[1].primes, 2);
        assert_eq!(l.as_str(), "A_3+2A_1''");
    }

    #[test]
    fn aliases() {
        let canon = CarterLabel::parse("Ã_1").unwrap();
        for alias in ["A~_1", "~A_1", "tA_1", "A\u{303}_1"] {
            assert_eq!(CarterLabel::parse(alias).unwrap(), canon, "{alias}");
        }
        assert!(canon.components()[0].tilde);
        assert_eq!(
            CarterLabel::parse("A_3+2A_1\"").unwrap(),
            CarterLabel::parse("A_3+2A_1''").unwrap()
        );
        assert_eq!(CarterLabel::parse("A_2 + tA_1").unwrap().as_str(), "A_2+Ã_1");
    }

    #[test]
    fn parse_failures() {
        for bad in ["", "A1", "H_2", "A_", "A_1(", "A_1()", "0A_1", "A_1x", "A_1++A_1"] {
            assert!(CarterLabel::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn unipotent_names() {
        let n = UnipotentName::new("(tA_1)_3").unwrap();
        assert_eq!(n.as_str(), "(Ã_1)_3");
        assert_eq!(n.bad_prime(), Some(3));
        assert_eq!(UnipotentName::new("(C_3(a_1))_2").unwrap().bad_prime(), Some(2));
        assert_eq!(UnipotentName::new("(A_5+A_1)''").unwrap().bad_prime(), None);
        assert_eq!(UnipotentName::new("D_8\"").unwrap().as_str(), "D_8''");
        assert!(UnipotentName::new("  ").is_err());
    }
}
