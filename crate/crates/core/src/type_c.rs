//! Symplectic case: pairs `(r, p)` with `r` all even and `p` paired map onto
//! the Jordan types in which every odd part has even multiplicity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{FamilyTag, Partition, Splits};

/// `r` has only even parts, `p` is paired.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct PairRp {
    r: Partition,
    p: Partition,
}

#[derive(Deserialize)]
struct RawPair {
    r: Partition,
    p: Partition,
}

impl TryFrom<RawPair> for PairRp {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        PairRp::new(raw.r, raw.p)
    }
}

impl PairRp {
    pub fn new(r: Partition, p: Partition) -> Result<Self> {
        r.require(FamilyTag::S)?;
        p.require(FamilyTag::PTilde)?;
        Ok(PairRp { r, p })
    }

    pub fn r(&self) -> &Partition {
        &self.r
    }

    pub fn p(&self) -> &Partition {
        &self.p
    }

    /// `|r| + |p|`.
    pub fn nu(&self) -> u32 {
        self.r.size() + self.p.size()
    }
}

impl fmt::Display for PairRp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={};p={}", self.r, self.p)
    }
}

impl FromStr for PairRp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (r, p) = parse_rp(s)?;
        PairRp::new(r, p)
    }
}

/// Parses `r=<partition>;p=<partition>`.
pub(crate) fn parse_rp(s: &str) -> Result<(Partition, Partition)> {
    let fields = crate::parse_fields(s, &["r", "p"])?;
    Ok((fields[0].parse()?, fields[1].parse()?))
}

pub fn iota_c(x: &PairRp) -> Result<Partition> {
    let c = x.r.merge(&x.p);
    if !c.is_in(FamilyTag::T) {
        return Err(Error::Contradiction(format!(
            "merge of {x} is {c}, which is outside T"
        )));
    }
    Ok(c)
}

/// Odd parts go to `p`, even parts go to `r`.
pub fn iota_prime_c(c: &Partition) -> Result<PairRp> {
    c.require(FamilyTag::T)?;
    let (even, odd): (Vec<u32>, Vec<u32>) = c.parts().iter().partition(|&&x| x % 2 == 0);
    let pair = PairRp::new(
        Partition::from_sorted_unchecked(even),
        Partition::from_sorted_unchecked(odd),
    )?;
    if iota_c(&pair)? != *c {
        return Err(Error::Contradiction(format!("section of {c} does not map back")));
    }
    Ok(pair)
}

/// Lazy enumeration of the fiber over `c`.
pub fn fiber_c_iter(c: &Partition) -> Result<impl Iterator<Item = PairRp>> {
    c.require(FamilyTag::T)?;
    // odd values stay entirely in p; an even value sends an even number of
    // copies to p
    let splits = Splits::new(c, |e, q| {
        if e % 2 == 1 {
            vec![0]
        } else {
            (0..=q).rev().filter(|m| (q - m) % 2 == 0).collect()
        }
    });
    Ok(splits.filter_map(|(r, p)| PairRp::new(r, p).ok()))
}

pub fn fiber_c(c: &Partition) -> Result<Vec<PairRp>> {
    Ok(fiber_c_iter(c)?.collect())
}

/// The fiber element with the fewest parts in `p`.
pub fn psi_c(c: &Partition) -> Result<PairRp> {
    let best = unique_min_by_key(fiber_c_iter(c)?, |x| x.p.len())
        .map_err(|n| Error::Contradiction(format!("fiber over {c} has {n} minimisers")))?;
    let section = iota_prime_c(c)?;
    if best != section {
        return Err(Error::Contradiction(format!(
            "fiber minimum {best} differs from section {section} over {c}"
        )));
    }
    Ok(best)
}

/// Returns the unique minimiser, or the number of minimisers when that is
/// not exactly one.
pub(crate) fn unique_min_by_key<T, K: Ord>(
    items: impl IntoIterator<Item = T>,
    key: impl Fn(&T) -> K,
) -> std::result::Result<T, usize> {
    let mut best: Option<(K, T)> = None;
    let mut ties = 0usize;
    for item in items {
        let k = key(&item);
        match &best {
            Some((bk, _)) if k > *bk => {}
            Some((bk, _)) if k == *bk => ties += 1,
            _ => {
                best = Some((k, item));
                ties = 0;
            }
        }
    }
    match best {
        Some((_, t)) if ties == 0 => Ok(t),
        Some(_) => Err(ties + 1),
        None => Err(0),
    }
}
