//! Orthogonal case. Jordan types in which every even part has even
//! multiplicity are hit by pairs `(r, p)` with `r` in `R` and `p` paired.
//! The halving bijection [`xi`] / [`xi_prime`] relates `R` to ordinary
//! partitions, which is how Weyl group classes enter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{FamilyTag, Partition, Splits};
use crate::type_c::unique_min_by_key;

/// `nu mod 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(nu: u32) -> Self {
        if nu % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn value(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl From<Parity> for u8 {
    fn from(k: Parity) -> u8 {
        k.value() as u8
    }
}

impl TryFrom<u8> for Parity {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("parity must be 0 or 1, got {v}"))),
        }
    }
}

/// `r` in `R`, `p` paired.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawRp")]
pub struct PairRpBd {
    r: Partition,
    p: Partition,
}

#[derive(Deserialize)]
struct RawRp {
    r: Partition,
    p: Partition,
}

impl TryFrom<RawRp> for PairRpBd {
    type Error = Error;

    fn try_from(raw: RawRp) -> Result<Self> {
        PairRpBd::new(raw.r, raw.p)
    }
}

impl PairRpBd {
    pub fn new(r: Partition, p: Partition) -> Result<Self> {
        r.require(FamilyTag::R)?;
        p.require(FamilyTag::PTilde)?;
        Ok(PairRpBd { r, p })
    }

    pub fn r(&self) -> &Partition {
        &self.r
    }

    pub fn p(&self) -> &Partition {
        &self.p
    }

    pub fn nu(&self) -> u32 {
        self.r.size() + self.p.size()
    }
}

impl fmt::Display for PairRpBd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={};p={}", self.r, self.p)
    }
}

impl FromStr for PairRpBd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (r, p) = crate::type_c::parse_rp(s)?;
        PairRpBd::new(r, p)
    }
}

/// The halved form `(p', p)` with `2|p'| + |p| + kappa = nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPp")]
pub struct PairPp {
    pprime: Partition,
    p: Partition,
    kappa: Parity,
}

#[derive(Deserialize)]
struct RawPp {
    pprime: Partition,
    p: Partition,
    kappa: Parity,
}

impl TryFrom<RawPp> for PairPp {
    type Error = Error;

    fn try_from(raw: RawPp) -> Result<Self> {
        PairPp::new(raw.pprime, raw.p, raw.kappa)
    }
}

impl PairPp {
    pub fn new(pprime: Partition, p: Partition, kappa: Parity) -> Result<Self> {
        if kappa == Parity::Even {
            pprime.require(FamilyTag::P0)?;
        }
        p.require(FamilyTag::PTilde)?;
        Ok(PairPp { pprime, p, kappa })
    }

    pub fn pprime(&self) -> &Partition {
        &self.pprime
    }

    pub fn p(&self) -> &Partition {
        &self.p
    }

    pub fn kappa(&self) -> Parity {
        self.kappa
    }

    /// `2|p'| + |p| + kappa`; its parity is `kappa` by construction.
    pub fn nu(&self) -> u32 {
        2 * self.pprime.size() + self.p.size() + self.kappa.value()
    }
}

impl fmt::Display for PairPp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p'={};p={};k={}", self.pprime, self.p, self.kappa.value())
    }
}

impl FromStr for PairPp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = crate::parse_fields(s, &["p'", "p", "k"])?;
        let kappa = match fields[2].trim() {
            "0" => Parity::Even,
            "1" => Parity::Odd,
            other => return Err(Error::Parse(format!("k must be 0 or 1, got {other:?}"))),
        };
        PairPp::new(fields[0].parse()?, fields[1].parse()?, kappa)
    }
}

/// Doubles `pprime` with a +1/-1 correction at the "record" positions and
/// pads with a trailing 1 when `len + kappa` is odd. Lands in `R`.
pub fn xi(pprime: &Partition, kappa: Parity) -> Result<Partition> {
    if kappa == Parity::Even {
        pprime.require(FamilyTag::P0)?;
    }
    let parts = pprime.parts();
    let sigma = parts.len();
    let mut out = Vec::with_capacity(sigma + 1);
    for (i, &x) in parts.iter().enumerate() {
        let t = i + 1;
        // parts are sorted, so "smaller than every earlier part" only needs
        // the previous part and "larger than every later part" the next one
        let shift: i64 = if t % 2 == 1 && (t == 1 || x < parts[i - 1]) {
            1
        } else if t % 2 == 0 && (t == sigma || x > parts[i + 1]) {
            -1
        } else {
            0
        };
        out.push((2 * i64::from(x) + shift) as u32);
    }
    if (sigma as u32 + kappa.value()) % 2 == 1 {
        out.push(1);
    }
    let r = Partition::from_decreasing(out)
        .map_err(|e| Error::Contradiction(format!("xi({pprime}) not decreasing: {e}")))?;
    if !r.is_in(FamilyTag::R) {
        return Err(Error::Contradiction(format!("xi({pprime}) = {r} is outside R")));
    }
    Ok(r)
}

/// Inverse of [`xi`].
pub fn xi_prime(r: &Partition, kappa: Parity) -> Result<Partition> {
    r.require(FamilyTag::R)?;
    if r.size() % 2 != kappa.value() {
        return Err(Error::InvalidPair(format!(
            "|{r}| = {} does not have parity {}",
            r.size(),
            kappa.value()
        )));
    }
    let parts = r.parts();
    let mut keep = parts.len();
    if parts.last() == Some(&kappa.value()) {
        keep -= 1;
    }
    let halves: Vec<u32> = parts[..keep]
        .iter()
        .enumerate()
        .map(|(i, &x)| (i64::from(x) + zeta(i + 1, x)) as u32 / 2)
        .collect();
    let pprime = Partition::from_decreasing(halves)
        .map_err(|e| Error::Contradiction(format!("xi'({r}) not decreasing: {e}")))?;
    if xi(&pprime, kappa)? != *r {
        return Err(Error::Contradiction(format!("xi(xi'({r})) != {r}")));
    }
    Ok(pprime)
}

/// `(-1)^k` for odd `x`, 0 for even `x`; `k` is 1-based.
pub(crate) fn zeta(k: usize, x: u32) -> i64 {
    match (x % 2, k % 2) {
        (0, _) => 0,
        (_, 0) => 1,
        _ => -1,
    }
}

pub fn iota_bd(x: &PairRpBd) -> Result<Partition> {
    let c = x.r.merge(&x.p);
    if !c.is_in(FamilyTag::Q) {
        return Err(Error::Contradiction(format!(
            "merge of {x} is {c}, which is outside Q"
        )));
    }
    Ok(c)
}

/// Fault injection for the section: forces every copy of the given even
/// part value into `r`, whatever the gap condition says. Only used to show
/// that the checks in [`crate::verify`] can fail.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SectionOverride {
    pub keep_even_in_r: Option<u32>,
}

pub fn iota_prime_bd(c: &Partition) -> Result<PairRpBd> {
    iota_prime_bd_with(c, SectionOverride::default())
}

/// Section with an optional [`SectionOverride`].
pub fn iota_prime_bd_with(c: &Partition, fault: SectionOverride) -> Result<PairRpBd> {
    c.require(FamilyTag::Q)?;
    let runs = c.runs();

    // Odd values first. `d` is the 1-based position at which the run of `e`
    // starts inside the odd subsequence of `c`.
    let mut in_r: Vec<(u32, usize)> = Vec::with_capacity(runs.len());
    let mut odd_seen = 0usize;
    for &(e, q) in runs.iter().filter(|(e, _)| e % 2 == 1) {
        let d = odd_seen + 1;
        let m = if q % 2 == 1 {
            1
        } else if d % 2 == 0 {
            2
        } else {
            0
        };
        in_r.push((e, m));
        odd_seen += q;
    }
    let r_odd: Vec<u32> = in_r
        .iter()
        .flat_map(|&(e, m)| std::iter::repeat(e).take(m))
        .collect();

    // Even values, decided against the complete odd part of r.
    for &(e, q) in runs.iter().filter(|(e, _)| e % 2 == 0) {
        let to_p = gap_condition(e, &r_odd) && fault.keep_even_in_r != Some(e);
        in_r.push((e, if to_p { 0 } else { q }));
    }

    let mut r = Vec::new();
    let mut p = Vec::new();
    for (e, q) in runs {
        let m = in_r.iter().find(|(v, _)| *v == e).map_or(0, |&(_, m)| m);
        r.extend(std::iter::repeat(e).take(m));
        p.extend(std::iter::repeat(e).take(q - m));
    }
    let r = Partition::from_sorted_unchecked(r);
    let p = Partition::from_sorted_unchecked(p);
    if !r.is_in(FamilyTag::R) {
        return Err(Error::Contradiction(format!("section of {c} gives r = {r} outside R")));
    }
    let pair = PairRpBd::new(r, p)?;
    if iota_bd(&pair)? != *c {
        return Err(Error::Contradiction(format!("section of {c} does not map back")));
    }
    Ok(pair)
}

/// True when the even value `e` sits in a gap `r^{2v} > e > r^{2v+1}` of the
/// odd parts, reading `r^0 = infinity` and `r^{s+1} = 0`.
fn gap_condition(e: u32, r_odd: &[u32]) -> bool {
    let s = r_odd.len();
    (0..=s / 2).any(|v| {
        let above = if v == 0 { u32::MAX } else { r_odd[2 * v - 1] };
        let below = if 2 * v < s { r_odd[2 * v] } else { 0 };
        above > e && e > below
    })
}

/// Lazy enumeration of the fiber over `c`.
pub fn fiber_bd_iter(c: &Partition) -> Result<impl Iterator<Item = PairRpBd>> {
    c.require(FamilyTag::Q)?;
    // an odd value occurs at most twice in a member of R
    let splits = Splits::new(c, |e, q| {
        if e % 2 == 1 {
            (0..=2usize).filter(|m| (q as i64 - *m as i64) % 2 == 0).collect()
        } else {
            (0..=q).rev().filter(|m| (q - m) % 2 == 0).collect()
        }
    });
    Ok(splits.filter_map(|(r, p)| PairRpBd::new(r, p).ok()))
}

pub fn fiber_bd(c: &Partition) -> Result<Vec<PairRpBd>> {
    Ok(fiber_bd_iter(c)?.collect())
}

/// The fiber element with the fewest parts in `p`.
pub fn psi_bd(c: &Partition) -> Result<PairRpBd> {
    let best = unique_min_by_key(fiber_bd_iter(c)?, |x| x.p.len())
        .map_err(|n| Error::Contradiction(format!("fiber over {c} has {n} minimisers")))?;
    let section = iota_prime_bd(c)?;
    if best != section {
        return Err(Error::Contradiction(format!(
            "fiber minimum {best} differs from section {section} over {c}"
        )));
    }
    Ok(best)
}

/// `(p', p) -> (xi(p'), p)`.
pub fn dot_to_plain(x: &PairPp) -> Result<PairRpBd> {
    PairRpBd::new(xi(&x.pprime, x.kappa)?, x.p.clone())
}

/// `(r, p) -> (xi'(r), p)`, with `kappa` taken from `|r| + |p|`.
pub fn plain_to_dot(x: &PairRpBd) -> Result<PairPp> {
    let kappa = Parity::of(x.nu());
    PairPp::new(xi_prime(&x.r, kappa)?, x.p.clone(), kappa)
}

/// Whether an even-size Jordan type is very even (all parts even).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DClass {
    VeryEven,
    Ordinary,
}

pub fn restrict_d(c: &Partition) -> Result<DClass> {
    if c.size() % 2 != 0 {
        return Err(Error::InvalidJordanType(format!(
            "{c} has odd size {}; very-even classification needs even size",
            c.size()
        )));
    }
    c.require(FamilyTag::Q)?;
    Ok(if c.is_in(FamilyTag::E) {
        DClass::VeryEven
    } else {
        DClass::Ordinary
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn pair(r: &str, q: &str) -> PairRpBd {
        PairRpBd::new(p(r), p(q)).unwrap()
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi(&p("2"), Parity::Odd).unwrap(), p("5"));
        assert_eq!(xi(&p("1,1"), Parity::Odd).unwrap(), p("3,1,1"));
        assert_eq!(xi(&p("2,2"), Parity::Even).unwrap(), p("5,3"));
        assert_eq!(xi(&p("-"), Parity::Even).unwrap(), p("-"));
        assert!(xi(&p("2"), Parity::Even).is_err());
    }

    #[test]
    fn xi_prime_examples() {
        assert_eq!(xi_prime(&p("5"), Parity::Odd).unwrap(), p("2"));
        assert_eq!(xi_prime(&p("3,1,1"), Parity::Odd).unwrap(), p("1,1"));
        assert_eq!(xi_prime(&p("5,3"), Parity::Even).unwrap(), p("2,2"));
        assert!(xi_prime(&p("3,3"), Parity::Even).is_err());
        assert!(xi_prime(&p("5"), Parity::Even).is_err());
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota_bd(&pair("5,3", "2,2")).unwrap(), p("5,3,2,2"));
        assert_eq!(iota_bd(&pair("-", "3,3,1,1")).unwrap(), p("3,3,1,1"));
        assert_eq!(iota_bd(&pair("5,1", "3,3")).unwrap(), p("5,3,3,1"));
    }

    #[test]
    fn section_examples() {
        assert_eq!(iota_prime_bd(&p("3,2,2")).unwrap(), pair("3,2,2", "-"));
        assert_eq!(iota_prime_bd(&p("5,3,2,2")).unwrap(), pair("5,3", "2,2"));
        assert_eq!(iota_prime_bd(&p("5,3,3,1")).unwrap(), pair("5,3,3,1", "-"));
        assert_eq!(iota_prime_bd(&p("3,3,1,1")).unwrap(), pair("-", "3,3,1,1"));
        assert!(iota_prime_bd(&p("2")).is_err());
    }

    #[test]
    fn section_very_even_is_identity() {
        assert_eq!(iota_prime_bd(&p("4,4,2,2")).unwrap(), pair("-", "4,4,2,2"));
        assert_eq!(iota_prime_bd(&p("-")).unwrap(), pair("-", "-"));
    }

    #[test]
    fn gap_condition_cases() {
        assert!(gap_condition(2, &[]));
        assert!(gap_condition(6, &[5, 3]));
        assert!(gap_condition(2, &[5, 3]));
        assert!(!gap_condition(4, &[5, 3]));
        assert!(!gap_condition(2, &[3]));
        assert!(gap_condition(4, &[7, 5, 3, 1]));
    }

    #[test]
    fn fault_injection_changes_section() {
        let c = p("5,3,2,2");
        let faulty = iota_prime_bd_with(&c, SectionOverride { keep_even_in_r: Some(2) });
        // r = (5,3,2,2) has an even last part, so the section breaks
        assert!(matches!(faulty, Err(Error::Contradiction(_))));
    }

    #[test]
    fn fiber_examples() {
        let mut f = fiber_bd(&p("5,3,3,1")).unwrap();
        f.sort();
        let mut want = vec![pair("5,3,3,1", "-"), pair("5,1", "3,3")];
        want.sort();
        assert_eq!(f, want);
        assert_eq!(fiber_bd(&p("5,3,2,2")).unwrap(), vec![pair("5,3", "2,2")]);
        assert_eq!(fiber_bd(&p("3,3")).unwrap(), vec![pair("-", "3,3")]);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_bd(&p("5,3,3,1")).unwrap(), pair("5,3,3,1", "-"));
        assert_eq!(psi_bd(&p("3,3,1,1")).unwrap(), pair("-", "3,3,1,1"));
        assert_eq!(psi_bd(&p("3,2,2")).unwrap(), pair("3,2,2", "-"));
    }

    #[test]
    fn dot_to_plain_examples() {
        let x = PairPp::new(p("2"), p("-"), Parity::Odd).unwrap();
        assert_eq!(dot_to_plain(&x).unwrap(), pair("5", "-"));
        let x = PairPp::new(p("-"), p("3,3"), Parity::Even).unwrap();
        assert_eq!(dot_to_plain(&x).unwrap(), pair("-", "3,3"));
        let x = PairPp::new(p("2,2"), p("1,1"), Parity::Even).unwrap();
        assert_eq!(dot_to_plain(&x).unwrap(), pair("5,3", "1,1"));
        assert_eq!(plain_to_dot(&pair("5,3", "1,1")).unwrap(), x);
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(restrict_d(&p("2,2")).unwrap(), DClass::VeryEven);
        assert_eq!(restrict_d(&p("5,3,2,2")).unwrap(), DClass::Ordinary);
        assert_eq!(restrict_d(&p("4,4,2,2")).unwrap(), DClass::VeryEven);
        assert!(restrict_d(&p("3,2,2")).is_err());
    }

    #[test]
    fn pp_text_form() {
        let x: PairPp = "p'=1;p=1,1;k=1".parse().unwrap();
        assert_eq!(x.nu(), 5);
        assert_eq!(x.to_string(), "p'=1;p=1,1;k=1");
        assert!("p'=1;p=1,1;k=0".parse::<PairPp>().is_err());
        assert!("p'=1;p=1,1;k=2".parse::<PairPp>().is_err());
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta(1, 5), -1);
        assert_eq!(zeta(2, 3), 1);
        assert_eq!(zeta(3, 4), 0);
    }
}
