//! Partitions and the membership predicates used by the classical maps.
//!
//! A [`Partition`] is always stored weakly decreasing with positive parts.
//! The families of [`FamilyTag`] are decidable predicates on partitions:
//!
//! | tag      | condition                                                    |
//! |----------|--------------------------------------------------------------|
//! | `P1`     | any partition                                                |
//! | `P0`     | even number of parts                                         |
//! | `PTilde` | even number of parts, `p1 = p2, p3 = p4, ...`                |
//! | `T`      | every odd part value has even multiplicity                   |
//! | `S`      | every part even                                              |
//! | `Q`      | every even part value has even multiplicity                  |
//! | `R`      | member of `Q` satisfying the odd-part conditions (see below) |
//! | `E`      | member of `PTilde` with every part even                      |
//!
//! For `R`, write `r^1 >= ... >= r^s` for the odd parts. A nonempty member
//! has an odd first part, an odd last part when the length is even,
//! `r^u > r^{u+1}` for odd `u`, and no part strictly between `r^u` and
//! `r^{u+1}` for even `u`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing finite sequence of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts `parts` into weakly decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// Accepts `parts` only if already weakly decreasing and positive.
    pub fn from_decreasing(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "not a weakly decreasing positive sequence: {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && !parts.contains(&0));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, e: u32) -> usize {
        self.0.iter().filter(|&&x| x == e).count()
    }

    /// Distinct part values with their multiplicities, largest value first.
    pub fn runs(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Multiset union of the parts.
    pub fn merge(&self, other: &Partition) -> Partition {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] >= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Partition(out)
    }

    /// Odd parts in decreasing order.
    pub fn odd_parts(&self) -> Vec<u32> {
        self.0.iter().copied().filter(|x| x % 2 == 1).collect()
    }

    pub fn is_in(&self, tag: FamilyTag) -> bool {
        match tag {
            FamilyTag::P1 => true,
            FamilyTag::P0 => self.len() % 2 == 0,
            FamilyTag::PTilde => self.is_paired(),
            FamilyTag::T => self.runs().iter().all(|&(v, m)| v % 2 == 0 || m % 2 == 0),
            FamilyTag::S => self.0.iter().all(|x| x % 2 == 0),
            FamilyTag::Q => self.runs().iter().all(|&(v, m)| v % 2 == 1 || m % 2 == 0),
            FamilyTag::R => self.is_r(),
            FamilyTag::E => self.is_paired() && self.0.iter().all(|x| x % 2 == 0),
        }
    }

    pub fn is_member(&self, family: &Family) -> bool {
        family.size.is_none_or(|n| self.size() == n) && self.is_in(family.tag)
    }

    pub(crate) fn require(&self, tag: FamilyTag) -> Result<()> {
        if self.is_in(tag) {
            Ok(())
        } else {
            Err(Error::NotMember {
                partition: self.clone(),
                family: tag,
            })
        }
    }

    fn is_paired(&self) -> bool {
        self.len() % 2 == 0 && self.0.chunks(2).all(|pair| pair[0] == pair[1])
    }

    fn is_r(&self) -> bool {
        if !self.is_in(FamilyTag::Q) {
            return false;
        }
        let parts = &self.0;
        let tau = parts.len();
        if tau == 0 {
            return true;
        }
        if parts[0] % 2 == 0 {
            return false;
        }
        if tau % 2 == 0 && parts[tau - 1] % 2 == 0 {
            return false;
        }
        let odd = self.odd_parts();
        // `u` is 1-based: odd[u - 1] = r^u.
        for u in 1..odd.len() {
            let (hi, lo) = (odd[u - 1], odd[u]);
            if u % 2 == 1 {
                if hi <= lo {
                    return false;
                }
            } else if parts.iter().any(|&x| hi > x && x > lo) {
                return false;
            }
        }
        true
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    P1,
    P0,
    PTilde,
    T,
    S,
    Q,
    R,
    E,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::P1 => "P1",
            FamilyTag::P0 => "P0",
            FamilyTag::PTilde => "P~",
            FamilyTag::T => "T",
            FamilyTag::S => "S",
            FamilyTag::Q => "Q",
            FamilyTag::R => "R",
            FamilyTag::E => "E",
        };
        f.write_str(s)
    }
}

/// A family predicate, optionally restricted to partitions of a fixed size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub tag: FamilyTag,
    pub size: Option<u32>,
}

impl Family {
    pub fn of(tag: FamilyTag) -> Self {
        Family { tag, size: None }
    }

    pub fn sized(tag: FamilyTag, n: u32) -> Self {
        Family { tag, size: Some(n) }
    }
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
pub fn partitions_of(n: u32) -> Partitions {
    Partitions {
        current: if n == 0 { Some(Vec::new()) } else { Some(vec![n]) },
    }
}

/// Iterator returned by [`partitions_of`].
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition(cur.clone());
        // Next in reverse lex order: strip trailing 1s, decrement the last
        // part > 1 and refill the remainder greedily.
        let mut parts = cur;
        let mut ones = 0u32;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let k = last - 1;
            let mut rem = ones + last;
            while rem > 0 {
                let x = k.min(rem);
                parts.push(x);
                rem -= x;
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

/// Lazily enumerates ways of splitting the multiset of parts of a partition
/// into two partitions `(r, p)`.
///
/// For every distinct part value `e` with multiplicity `q`, `allowed(e, q)`
/// lists how many copies of `e` may go to `r`; the rest go to `p`.
pub struct Splits {
    runs: Vec<(u32, usize)>,
    choices: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    done: bool,
}

impl Splits {
    pub fn new(c: &Partition, mut allowed: impl FnMut(u32, usize) -> Vec<usize>) -> Self {
        let runs = c.runs();
        let choices: Vec<Vec<usize>> = runs
            .iter()
            .map(|&(e, q)| {
                let mut v = allowed(e, q);
                v.retain(|&m| m <= q);
                v
            })
            .collect();
        let done = choices.iter().any(|v| v.is_empty());
        let cursor = vec![0; runs.len()];
        Splits {
            runs,
            choices,
            cursor,
            done,
        }
    }
}

impl Iterator for Splits {
    type Item = (Partition, Partition);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut r = Vec::new();
        let mut p = Vec::new();
        for (k, &(e, q)) in self.runs.iter().enumerate() {
            let m = self.choices[k][self.cursor[k]];
            r.extend(std::iter::repeat(e).take(m));
            p.extend(std::iter::repeat(e).take(q - m));
        }
        // advance the odometer, last run fastest
        let mut k = self.runs.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cursor[k] += 1;
            if self.cursor[k] < self.choices[k].len() {
                break;
            }
            self.cursor[k] = 0;
        }
        Some((Partition(r), Partition(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn multiplicity_counts() {
        assert_eq!(p(&[3, 3]).multiplicity(3), 2);
        assert_eq!(Partition::empty().multiplicity(5), 0);
        assert_eq!(p(&[5, 4, 4, 3, 3, 1]).multiplicity(4), 2);
    }

    #[test]
    fn merge_examples() {
        assert_eq!(p(&[4, 2]).merge(&p(&[3, 3])), p(&[4, 3, 3, 2]));
        assert_eq!(Partition::empty().merge(&p(&[2, 2])), p(&[2, 2]));
        assert_eq!(p(&[5, 1]).merge(&p(&[3, 3])).parts(), &[5, 3, 3, 1]);
    }

    #[test]
    fn membership_examples() {
        assert!(p(&[3, 3]).is_in(FamilyTag::T));
        assert!(!p(&[3, 2]).is_in(FamilyTag::T));
        assert!(p(&[5, 4, 4, 3, 3, 1]).is_in(FamilyTag::R));
        assert!(!p(&[3, 3]).is_in(FamilyTag::R));
        assert!(p(&[2, 2]).is_in(FamilyTag::E));
        assert!(!p(&[2, 1, 1]).is_in(FamilyTag::PTilde));
        assert!(Partition::empty().is_in(FamilyTag::R));
    }

    #[test]
    fn r_boundary_conditions() {
        // even first part
        assert!(!p(&[4, 4, 3]).is_in(FamilyTag::R));
        // even length with even last part
        assert!(!p(&[5, 3, 2, 2]).is_in(FamilyTag::R));
        // even u with a part strictly between the equal-index neighbours
        assert!(!p(&[7, 5, 4, 4, 3]).is_in(FamilyTag::R));
        // odd u with a part strictly between is fine
        assert!(p(&[7, 4, 4, 3, 1]).is_in(FamilyTag::R));
        // not in Q
        assert!(!p(&[3, 2]).is_in(FamilyTag::R));
    }

    #[test]
    fn sized_family() {
        let f = Family::sized(FamilyTag::T, 4);
        assert!(p(&[2, 2]).is_member(&f));
        assert!(!p(&[3, 3]).is_member(&f));
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(Partition::empty().to_string(), "-");
        assert_eq!("5,4,4,3,3,1".parse::<Partition>().unwrap(), p(&[5, 4, 4, 3, 3, 1]));
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let q: Partition = serde_json::from_str("[1,3,3]").unwrap();
        assert_eq!(q.parts(), &[3, 3, 1]);
        assert!(serde_json::from_str::<Partition>("[0]").is_err());
    }

    #[test]
    fn from_decreasing_rejects_unsorted() {
        assert!(Partition::from_decreasing(vec![1, 2]).is_err());
        assert!(Partition::from_decreasing(vec![2, 1]).is_ok());
    }

    #[test]
    fn splits_cover_all_choices() {
        let c = p(&[2, 2, 1, 1]);
        let all: Vec<_> = Splits::new(&c, |_, q| (0..=q).collect()).collect();
        assert_eq!(all.len(), 9);
        for (r, q) in &all {
            assert_eq!(r.merge(q), c);
        }
        assert_eq!(Splits::new(&Partition::empty(), |_, _| vec![0]).count(), 1);
        assert_eq!(Splits::new(&c, |_, _| vec![]).count(), 0);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for q in partitions_of(7) {
            assert_eq!(q.size(), 7);
        }
    }
}
