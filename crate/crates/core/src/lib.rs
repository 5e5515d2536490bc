//! Weyl-group conjugacy classes to unipotent classes.
//!
//! The map from conjugacy classes of a Weyl group to unipotent classes of
//! the corresponding reductive group, together with its section picking,
//! in every fiber, the unique class whose fixed space on the reflection
//! representation is smallest.
//!
//! * [`partition`], [`type_c`], [`type_bd`]: the partition combinatorics
//!   behind the classical types.
//! * [`weyl`]: signed cycle types, their encodings, fixed-space dimensions
//!   and the classical map and section.
//! * [`exceptional`]: the tables for `G2`, `F4`, `E6`, `E7` and `E8`,
//!   including the bad-characteristic variants.
//! * [`verify`]: exhaustive sweeps that check the minimality statement.
//! * [`cli`]: the `weyl2uni` command line.

pub mod cli;
pub mod error;
pub mod exceptional;
pub mod partition;
pub mod type_bd;
pub mod type_c;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use partition::{Family, FamilyTag, Partition};

/// Splits `k1=v1;k2=v2;...` and returns the values in the order of `keys`.
/// Every key must appear exactly once, in that order.
pub(crate) fn parse_fields<'a>(s: &'a str, keys: &[&str]) -> Result<Vec<&'a str>> {
    let items: Vec<&str> = s.trim().split(';').collect();
    if items.len() != keys.len() {
        return Err(Error::Parse(format!(
            "expected fields {} in {s:?}",
            keys.join(";")
        )));
    }
    items
        .iter()
        .zip(keys)
        .map(|(item, key)| {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("missing '=' in {item:?}")))?;
            if k.trim() != *key {
                return Err(Error::Parse(format!("expected field {key:?}, got {:?}", k.trim())));
            }
            Ok(v.trim())
        })
        .collect()
}
