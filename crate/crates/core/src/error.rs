use thiserror::Error;

use crate::partition::{FamilyTag, Partition};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("partition {partition} is not a member of {family}")]
    NotMember {
        partition: Partition,
        family: FamilyTag,
    },

    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("rank mismatch: class has rank {class_rank}, group has rank {group_rank}")]
    RankMismatch { class_rank: u32, group_rank: u32 },

    #[error("type D classes need an even number of negative cycles, got {0}")]
    DParity(usize),

    #[error("rank {rank} exceeds the supported bound {bound}")]
    RankBound { rank: u32, bound: u32 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid Jordan type: {0}")]
    InvalidJordanType(String),

    /// An internal assertion that the theory guarantees failed.
    #[error("internal contradiction: {0}")]
    Contradiction(String),

    #[error("unknown Carter label {label:?} in {group} table")]
    UnknownLabel { group: String, label: String },

    #[error("unknown unipotent class {name:?} in {group} table")]
    UnknownName { group: String, name: String },

    #[error("no {tag} table for {group}")]
    UnsupportedCharacteristic { group: String, tag: String },

    #[error("table data: {0}")]
    TableData(String),
}
