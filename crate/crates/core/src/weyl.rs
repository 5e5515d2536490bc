//! Conjugacy classes of the Weyl groups of types B, C and D, their
//! encodings as partition pairs, and the classical map and section.
//!
//! A class of `W(B_n) = W(C_n)` is a signed cycle type: the lengths of the
//! positive cycles and of the negative cycles of a signed permutation of
//! `n` letters. `W(D_n)` keeps the classes with an even number of negative
//! cycles; those with no negative cycle and only even positive cycles split
//! into two classes, both represented here by one cycle type.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, FamilyTag, Partition};
use crate::type_bd::{self, PairPp, Parity};
use crate::type_c::{self, PairRp};

/// Largest rank accepted by [`m_c_matrix`].
pub const MATRIX_RANK_BOUND: u32 = 10;
/// Largest rank accepted by [`enumerate_classes`].
pub const ENUMERATION_RANK_BOUND: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    B,
    C,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        })
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::Parse(format!("unknown series {other:?}"))),
        }
    }
}

/// A classical group: `SO_{2n+1}`, `Sp_{2n}` or `SO_{2n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupKind {
    pub series: Series,
    pub rank: u32,
}

impl GroupKind {
    pub fn new(series: Series, rank: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidGroup(format!("{series}_0 has rank 0")));
        }
        Ok(GroupKind { series, rank })
    }

    /// The group acting on a space of dimension `nu`.
    pub fn from_nu(series: Series, nu: u32) -> Result<Self> {
        let odd = nu % 2 == 1;
        match series {
            Series::B if !odd => Err(Error::InvalidGroup(format!("type B needs odd nu, got {nu}"))),
            Series::C | Series::D if odd => {
                Err(Error::InvalidGroup(format!("type {series} needs even nu, got {nu}")))
            }
            _ => GroupKind::new(series, nu / 2),
        }
    }

    /// Dimension of the natural representation.
    pub fn nu(&self) -> u32 {
        match self.series {
            Series::B => 2 * self.rank + 1,
            Series::C | Series::D => 2 * self.rank,
        }
    }

    pub fn epsilon(&self) -> Epsilon {
        match self.series {
            Series::C => Epsilon::Symplectic,
            Series::B | Series::D => Epsilon::Orthogonal,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycleType {
    pub positive: Partition,
    pub negative: Partition,
}

impl SignedCycleType {
    pub fn new(positive: Partition, negative: Partition) -> Self {
        SignedCycleType { positive, negative }
    }

    pub fn rank(&self) -> u32 {
        self.positive.size() + self.negative.size()
    }

    /// True for the type-D classes that split in `W(D_n)`; their fibers are
    /// singletons and they sit outside the minimality checks.
    pub fn excluded_from_theorem(&self, series: Series) -> bool {
        series == Series::D
            && self.negative.is_empty()
            && self.positive.parts().iter().all(|x| x % 2 == 0)
    }

    fn check_for(&self, g: &GroupKind) -> Result<()> {
        if self.rank() != g.rank {
            return Err(Error::RankMismatch {
                class_rank: self.rank(),
                group_rank: g.rank,
            });
        }
        if g.series == Series::D && self.negative.len() % 2 != 0 {
            return Err(Error::DParity(self.negative.len()));
        }
        Ok(())
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pos={};neg={}", self.positive, self.negative)
    }
}

impl FromStr for SignedCycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields = crate::parse_fields(s, &["pos", "neg"])?;
        Ok(SignedCycleType::new(fields[0].parse()?, fields[1].parse()?))
    }
}

/// Sign of the invariant bilinear form: -1 symplectic, +1 orthogonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Epsilon {
    Symplectic,
    Orthogonal,
}

impl From<Epsilon> for i8 {
    fn from(e: Epsilon) -> i8 {
        match e {
            Epsilon::Symplectic => -1,
            Epsilon::Orthogonal => 1,
        }
    }
}

impl TryFrom<i8> for Epsilon {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            -1 => Ok(Epsilon::Symplectic),
            1 => Ok(Epsilon::Orthogonal),
            _ => Err(Error::Parse(format!("epsilon must be +1 or -1, got {v}"))),
        }
    }
}

/// Jordan block sizes of a unipotent element of `Sp` or `SO`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawJordan")]
pub struct JordanType {
    parts: Partition,
    epsilon: Epsilon,
}

#[derive(Deserialize)]
struct RawJordan {
    parts: Partition,
    epsilon: Epsilon,
}

impl TryFrom<RawJordan> for JordanType {
    type Error = Error;

    fn try_from(raw: RawJordan) -> Result<Self> {
        JordanType::new(raw.parts, raw.epsilon)
    }
}

impl JordanType {
    pub fn new(parts: Partition, epsilon: Epsilon) -> Result<Self> {
        let family = match epsilon {
            Epsilon::Symplectic => FamilyTag::T,
            Epsilon::Orthogonal => FamilyTag::Q,
        };
        if !parts.is_in(family) {
            let why = match epsilon {
                Epsilon::Symplectic => "odd parts must have even multiplicity",
                Epsilon::Orthogonal => "even parts must have even multiplicity",
            };
            return Err(Error::InvalidJordanType(format!("{parts}: {why}")));
        }
        Ok(JordanType { parts, epsilon })
    }

    /// Validates `parts` as a Jordan type for `g`, including the size.
    pub fn for_group(parts: Partition, g: &GroupKind) -> Result<Self> {
        if parts.size() != g.nu() {
            return Err(Error::InvalidJordanType(format!(
                "{parts} has size {} but {g} acts on dimension {}",
                parts.size(),
                g.nu()
            )));
        }
        JordanType::new(parts, g.epsilon())
    }

    pub fn parts(&self) -> &Partition {
        &self.parts
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn nu(&self) -> u32 {
        self.parts.size()
    }

    /// Orthogonal, even dimension, every part even.
    pub fn is_very_even(&self) -> bool {
        self.epsilon == Epsilon::Orthogonal && self.nu() % 2 == 0 && self.parts.is_in(FamilyTag::E)
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.parts.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassEncoding {
    Symplectic(PairRp),
    Orthogonal(PairPp),
}

impl ClassEncoding {
    /// The paired partition `p`, whose half-length is `m_C`.
    pub fn p(&self) -> &Partition {
        match self {
            ClassEncoding::Symplectic(x) => x.p(),
            ClassEncoding::Orthogonal(x) => x.p(),
        }
    }
}

impl fmt::Display for ClassEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassEncoding::Symplectic(x) => x.fmt(f),
            ClassEncoding::Orthogonal(x) => x.fmt(f),
        }
    }
}

fn doubled(p: &Partition) -> Partition {
    let parts: Vec<u32> = p.parts().iter().flat_map(|&x| [x, x]).collect();
    Partition::from_sorted_unchecked(parts)
}

fn undoubled(p: &Partition) -> Result<Partition> {
    if !p.is_in(FamilyTag::PTilde) {
        return Err(Error::NotMember {
            partition: p.clone(),
            family: FamilyTag::PTilde,
        });
    }
    Ok(Partition::from_sorted_unchecked(
        p.parts().iter().step_by(2).copied().collect(),
    ))
}

/// Reads a class as a permutation of `[1, nu]` commuting with `i -> nu+1-i`.
/// A negative `d`-cycle becomes one stable `2d`-cycle, a positive `d`-cycle
/// a swapped pair of `d`-cycles.
pub fn encode_class(w: &SignedCycleType, g: &GroupKind) -> Result<ClassEncoding> {
    w.check_for(g)?;
    let p = doubled(&w.positive);
    match g.series {
        Series::C => {
            let r = Partition::from_sorted_unchecked(
                w.negative.parts().iter().map(|&d| 2 * d).collect(),
            );
            Ok(ClassEncoding::Symplectic(PairRp::new(r, p)?))
        }
        Series::B | Series::D => Ok(ClassEncoding::Orthogonal(PairPp::new(
            w.negative.clone(),
            p,
            Parity::of(g.nu()),
        )?)),
    }
}

/// Inverse of [`encode_class`].
pub fn decode_class(x: &ClassEncoding) -> Result<SignedCycleType> {
    match x {
        ClassEncoding::Symplectic(pair) => {
            let negative = Partition::from_sorted_unchecked(
                pair.r().parts().iter().map(|&x| x / 2).collect(),
            );
            Ok(SignedCycleType::new(undoubled(pair.p())?, negative))
        }
        ClassEncoding::Orthogonal(pair) => Ok(SignedCycleType::new(
            undoubled(pair.p())?,
            pair.pprime().clone(),
        )),
    }
}

/// Dimension of the fixed space on the reflection representation: every
/// positive cycle fixes one line, negative cycles fix nothing.
pub fn m_c_formula(w: &SignedCycleType) -> u32 {
    w.positive.len() as u32
}

/// Fixed-space dimension of one concrete signed permutation matrix in the
/// class, computed as the exact nullity of `w - 1`.
///
/// Cycles are laid out on consecutive coordinates; a negative cycle carries
/// its sign flip on its last coordinate.
pub fn m_c_matrix(w: &SignedCycleType, g: &GroupKind) -> Result<u32> {
    w.check_for(g)?;
    if g.rank > MATRIX_RANK_BOUND {
        return Err(Error::RankBound {
            rank: g.rank,
            bound: MATRIX_RANK_BOUND,
        });
    }
    let n = g.rank as usize;
    let mut a = vec![vec![0i64; n]; n];
    let mut start = 0usize;
    let cycles = w
        .positive
        .parts()
        .iter()
        .map(|&d| (d as usize, 1i64))
        .chain(w.negative.parts().iter().map(|&d| (d as usize, -1i64)));
    for (d, sign) in cycles {
        for k in 0..d {
            let col = start + k;
            let (row, s) = if k + 1 < d { (col + 1, 1) } else { (start, sign) };
            a[row][col] += s;
        }
        start += d;
    }
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= 1;
    }
    Ok((n - integer_rank(a)) as u32)
}

/// Rank over the rationals by fraction-free row reduction.
pub(crate) fn integer_rank(mut a: Vec<Vec<i64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        for i in rank + 1..rows {
            if a[i][col] == 0 {
                continue;
            }
            let (top, lead) = (a[rank][col], a[i][col]);
            for j in col..cols {
                a[i][j] = top * a[i][j] - lead * a[rank][j];
            }
            let g = a[i].iter().fold(0i64, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                a[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn phi_classical(w: &SignedCycleType, g: &GroupKind) -> Result<JordanType> {
    let parts = match encode_class(w, g)? {
        ClassEncoding::Symplectic(x) => type_c::iota_c(&x)?,
        ClassEncoding::Orthogonal(x) => type_bd::iota_bd(&type_bd::dot_to_plain(&x)?)?,
    };
    JordanType::for_group(parts, g)
}

/// The class of smallest fixed-space dimension in the fiber over `j`.
pub fn psi_classical(j: &JordanType, g: &GroupKind) -> Result<SignedCycleType> {
    let j = JordanType::for_group(j.parts.clone(), g)?;
    let encoding = match g.series {
        Series::C => ClassEncoding::Symplectic(type_c::psi_c(&j.parts)?),
        Series::B | Series::D => {
            ClassEncoding::Orthogonal(type_bd::plain_to_dot(&type_bd::psi_bd(&j.parts)?)?)
        }
    };
    let w = decode_class(&encoding)?;
    if phi_classical(&w, g)? != j {
        return Err(Error::Contradiction(format!("phi(psi({j})) != {j} in {g}")));
    }
    Ok(w)
}

/// Every class of `W(g)` in a deterministic order. Split type-D classes
/// appear once.
pub fn enumerate_classes(g: &GroupKind) -> Result<Vec<SignedCycleType>> {
    if g.rank > ENUMERATION_RANK_BOUND {
        return Err(Error::RankBound {
            rank: g.rank,
            bound: ENUMERATION_RANK_BOUND,
        });
    }
    let mut out = Vec::new();
    for k in (0..=g.rank).rev() {
        for pos in partitions_of(k) {
            for neg in partitions_of(g.rank - k) {
                if g.series == Series::D && neg.len() % 2 != 0 {
                    continue;
                }
                out.push(SignedCycleType::new(pos.clone(), neg));
            }
        }
    }
    Ok(out)
}

/// Number of conjugacy classes of `W(g)`, counting each split class twice.
pub fn class_count(g: &GroupKind) -> Result<usize> {
    Ok(enumerate_classes(g)?
        .iter()
        .map(|w| if w.excluded_from_theorem(g.series) { 2 } else { 1 })
        .sum())
}

/// Every unipotent Jordan type for `g`.
pub fn jordan_types(g: &GroupKind) -> Vec<JordanType> {
    partitions_of(g.nu())
        .filter_map(|c| JordanType::new(c, g.epsilon()).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(s: &str) -> SignedCycleType {
        s.parse().unwrap()
    }

    fn g(series: Series, n: u32) -> GroupKind {
        GroupKind::new(series, n).unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        let c2 = g(Series::C, 2);
        assert_eq!(encode_class(&cls("pos=2;neg=-"), &c2).unwrap().to_string(), "r=-;p=2,2");
        assert_eq!(encode_class(&cls("pos=-;neg=2"), &c2).unwrap().to_string(), "r=4;p=-");
        let b2 = g(Series::B, 2);
        assert_eq!(
            encode_class(&cls("pos=1;neg=1"), &b2).unwrap().to_string(),
            "p'=1;p=1,1;k=1"
        );
    }

    #[test]
    fn encode_errors() {
        assert!(matches!(
            encode_class(&cls("pos=1;neg=-"), &g(Series::C, 2)),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            encode_class(&cls("pos=3;neg=1"), &g(Series::D, 4)),
            Err(Error::DParity(1))
        ));
    }

    #[test]
    fn m_c_examples() {
        assert_eq!(m_c_formula(&cls("pos=2,1;neg=-")), 2);
        assert_eq!(m_c_formula(&cls("pos=-;neg=3")), 0);
        assert_eq!(m_c_formula(&cls("pos=1,1,1,1;neg=-")), 4);
        let b2 = g(Series::B, 2);
        assert_eq!(m_c_matrix(&cls("pos=1,1;neg=-"), &b2).unwrap(), 2);
        assert_eq!(m_c_matrix(&cls("pos=-;neg=1,1"), &b2).unwrap(), 0);
        assert_eq!(m_c_matrix(&cls("pos=2;neg=-"), &b2).unwrap(), 1);
        assert_eq!(m_c_matrix(&cls("pos=2,1;neg=-"), &g(Series::B, 3)).unwrap(), 2);
        assert_eq!(m_c_matrix(&cls("pos=-;neg=3"), &g(Series::B, 3)).unwrap(), 0);
    }

    #[test]
    fn m_c_matrix_rank_bound() {
        let w = SignedCycleType::new(p("11"), Partition::empty());
        assert!(matches!(
            m_c_matrix(&w, &g(Series::B, 11)),
            Err(Error::RankBound { .. })
        ));
    }

    #[test]
    fn integer_rank_small() {
        assert_eq!(integer_rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(integer_rank(vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(integer_rank(vec![vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(integer_rank(vec![vec![2, 3, 5], vec![4, 6, 10], vec![1, 0, 1]]), 2);
    }

    #[test]
    fn phi_examples() {
        let c2 = g(Series::C, 2);
        assert_eq!(phi_classical(&cls("pos=-;neg=2"), &c2).unwrap().parts(), &p("4"));
        assert_eq!(phi_classical(&cls("pos=2;neg=-"), &c2).unwrap().parts(), &p("2,2"));
        let b2 = g(Series::B, 2);
        assert_eq!(phi_classical(&cls("pos=1;neg=1"), &b2).unwrap().parts(), &p("3,1,1"));
    }

    #[test]
    fn psi_examples() {
        let c2 = g(Series::C, 2);
        let j = JordanType::for_group(p("2,2"), &c2).unwrap();
        assert_eq!(psi_classical(&j, &c2).unwrap(), cls("pos=-;neg=1,1"));

        let b2 = g(Series::B, 2);
        let j = JordanType::for_group(p("3,1,1"), &b2).unwrap();
        assert_eq!(psi_classical(&j, &b2).unwrap(), cls("pos=-;neg=1,1"));

        let j = JordanType::for_group(p("1,1,1,1,1"), &b2).unwrap();
        assert_eq!(psi_classical(&j, &b2).unwrap(), cls("pos=1,1;neg=-"));
    }

    #[test]
    fn psi_very_even_returns_split_class() {
        let d4 = g(Series::D, 4);
        let j = JordanType::for_group(p("4,4"), &d4).unwrap();
        let w = psi_classical(&j, &d4).unwrap();
        assert_eq!(w, cls("pos=4;neg=-"));
        assert!(w.excluded_from_theorem(Series::D));
    }

    #[test]
    fn jordan_type_validation() {
        assert!(JordanType::new(p("3,2"), Epsilon::Symplectic).is_err());
        assert!(JordanType::new(p("2,1"), Epsilon::Orthogonal).is_err());
        assert!(JordanType::for_group(p("3,1"), &g(Series::B, 2)).is_err());
        assert!(JordanType::new(p("4,4"), Epsilon::Orthogonal).unwrap().is_very_even());
    }

    #[test]
    fn class_enumeration_examples() {
        assert_eq!(enumerate_classes(&g(Series::C, 2)).unwrap().len(), 5);
        assert_eq!(enumerate_classes(&g(Series::B, 1)).unwrap().len(), 2);
        let d4 = enumerate_classes(&g(Series::D, 4)).unwrap();
        assert!(d4.iter().all(|w| w.negative.len() % 2 == 0));
        assert_eq!(d4.len(), 11);
        assert_eq!(class_count(&g(Series::D, 4)).unwrap(), 13);
        assert!(enumerate_classes(&g(Series::B, 13)).is_err());
    }

    #[test]
    fn group_kind_from_nu() {
        assert_eq!(GroupKind::from_nu(Series::B, 5).unwrap().rank, 2);
        assert!(GroupKind::from_nu(Series::B, 4).is_err());
        assert!(GroupKind::from_nu(Series::D, 5).is_err());
        assert!(GroupKind::from_nu(Series::C, 0).is_err());
    }

    #[test]
    fn class_text_round_trip() {
        let w = cls("pos=2,1;neg=-");
        assert_eq!(w.to_string(), "pos=2,1;neg=-");
        assert_eq!(w.to_string().parse::<SignedCycleType>().unwrap(), w);
    }
}
