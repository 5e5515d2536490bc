//! The map from Weyl group classes to unipotent classes for the simple
//! exceptional groups, stored as data.
//!
//! Each table is a list of lines `[a, b, ..., r] -> s`: the classes
//! `a, b, ..., r` (Carter labels) are exactly the classes mapped to the
//! unipotent class `s`, and `a` is the one of smallest fixed-space
//! dimension. Tables for characteristic 2 or 3 are the good-characteristic
//! table with some lines split.

mod label;
mod table;

pub use label::{normalize, CarterComponent, CarterLabel, UnipotentName};
pub use table::{
    carter_rank, load_table, load_table_from, m_c_exceptional, phi_exceptional, psi_exceptional,
    verify_table, CharTag, ExceptionalGroup, MapTable, TableData, TableLine, TableRecord,
    TableFailure, TableReport, EMBEDDED_TABLES,
};
