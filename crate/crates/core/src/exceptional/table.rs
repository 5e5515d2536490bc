use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::label::{CarterLabel, UnipotentName};
use crate::error::{Error, Result};

/// The tables shipped with the crate, in the line-oriented TSV format read
/// by [`TableData::parse`].
pub const EMBEDDED_TABLES: &str = include_str!("../../data/exceptional.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalGroup {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl ExceptionalGroup {
    pub const ALL: [ExceptionalGroup; 5] = [
        ExceptionalGroup::G2,
        ExceptionalGroup::F4,
        ExceptionalGroup::E6,
        ExceptionalGroup::E7,
        ExceptionalGroup::E8,
    ];

    pub fn weyl_rank(self) -> u32 {
        match self {
            ExceptionalGroup::G2 => 2,
            ExceptionalGroup::F4 => 4,
            ExceptionalGroup::E6 => 6,
            ExceptionalGroup::E7 => 7,
            ExceptionalGroup::E8 => 8,
        }
    }

    /// Number of conjugacy classes of the Weyl group.
    pub fn class_count(self) -> usize {
        match self {
            ExceptionalGroup::G2 => 6,
            ExceptionalGroup::F4 => 25,
            ExceptionalGroup::E6 => 25,
            ExceptionalGroup::E7 => 60,
            ExceptionalGroup::E8 => 112,
        }
    }

    /// Characteristic tags with a table.
    pub fn tags(self) -> &'static [CharTag] {
        match self {
            ExceptionalGroup::G2 => &[CharTag::Good, CharTag::P3],
            ExceptionalGroup::F4 => &[CharTag::Good, CharTag::P2],
            ExceptionalGroup::E6 => &[CharTag::Good],
            ExceptionalGroup::E7 => &[CharTag::Good, CharTag::P2],
            ExceptionalGroup::E8 => &[CharTag::Good, CharTag::P2, CharTag::P3],
        }
    }

    /// The table to use in characteristic `p` (0 for characteristic zero).
    pub fn tag_for_characteristic(self, p: u32) -> CharTag {
        let tag = match p {
            2 => CharTag::P2,
            3 => CharTag::P3,
            _ => CharTag::Good,
        };
        if self.tags().contains(&tag) {
            tag
        } else {
            CharTag::Good
        }
    }

    /// Number of unipotent classes, i.e. of table lines.
    pub fn image_count(self, tag: CharTag) -> Option<usize> {
        use CharTag::*;
        use ExceptionalGroup::*;
        match (self, tag) {
            (G2, Good) => Some(5),
            (G2, P3) => Some(6),
            (F4, Good) => Some(16),
            (F4, P2) => Some(20),
            (E6, Good) => Some(21),
            (E7, Good) => Some(45),
            (E7, P2) => Some(46),
            (E8, Good) => Some(70),
            (E8, P2) => Some(74),
            (E8, P3) => Some(71),
            _ => None,
        }
    }
}

impl fmt::Display for ExceptionalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ExceptionalGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "G2" => Ok(ExceptionalGroup::G2),
            "F4" => Ok(ExceptionalGroup::F4),
            "E6" => Ok(ExceptionalGroup::E6),
            "E7" => Ok(ExceptionalGroup::E7),
            "E8" => Ok(ExceptionalGroup::E8),
            other => Err(Error::Parse(format!("unknown exceptional group {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharTag {
    Good,
    P2,
    P3,
}

impl CharTag {
    pub fn prime(self) -> Option<u32> {
        match self {
            CharTag::Good => None,
            CharTag::P2 => Some(2),
            CharTag::P3 => Some(3),
        }
    }
}

impl fmt::Display for CharTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharTag::Good => "good",
            CharTag::P2 => "p2",
            CharTag::P3 => "p3",
        })
    }
}

impl FromStr for CharTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "good" => Ok(CharTag::Good),
            "p2" => Ok(CharTag::P2),
            "p3" => Ok(CharTag::P3),
            other => Err(Error::Parse(format!("unknown characteristic tag {other:?}"))),
        }
    }
}

/// One record of the data file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRecord {
    pub group: ExceptionalGroup,
    pub tag: CharTag,
    pub labels: Vec<CarterLabel>,
    pub image: UnipotentName,
    pub line_no: usize,
}

/// All records of a data file.
#[derive(Debug, Clone)]
pub struct TableData {
    records: Vec<TableRecord>,
}

impl TableData {
    /// Parses `<group>\t<tag>\t<label>{,<label>}\t<name>` records; blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 4 {
                return Err(Error::TableData(format!(
                    "line {line_no}: expected 4 tab-separated columns, got {}",
                    cols.len()
                )));
            }
            let at = |e: Error| Error::TableData(format!("line {line_no}: {e}"));
            let labels = cols[2]
                .split(',')
                .map(CarterLabel::parse)
                .collect::<Result<Vec<_>>>()
                .map_err(at)?;
            records.push(TableRecord {
                group: cols[0].parse().map_err(at)?,
                tag: cols[1].parse().map_err(at)?,
                labels,
                image: UnipotentName::new(cols[3]).map_err(at)?,
                line_no,
            });
        }
        Ok(TableData { records })
    }

    pub fn embedded() -> Result<Self> {
        TableData::parse(EMBEDDED_TABLES)
    }

    pub fn records(&self) -> &[TableRecord] {
        &self.records
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableLine {
    pub labels: Vec<CarterLabel>,
    pub image: UnipotentName,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapTable {
    pub group: ExceptionalGroup,
    pub characteristic: CharTag,
    pub weyl_rank: u32,
    pub lines: Vec<TableLine>,
}

impl MapTable {
    /// Builds the table for `(group, tag)` from `data` without checking the
    /// table invariants; see [`verify_table`].
    pub fn assemble(data: &TableData, group: ExceptionalGroup, tag: CharTag) -> Result<Self> {
        let base: Vec<&TableRecord> = data
            .records
            .iter()
            .filter(|r| r.group == group && r.tag == CharTag::Good)
            .collect();
        if base.is_empty() {
            return Err(Error::TableData(format!("no good-characteristic table for {group}")));
        }
        let line = |r: &TableRecord| TableLine {
            labels: r.labels.clone(),
            image: r.image.clone(),
        };
        let mut lines = Vec::new();
        if tag == CharTag::Good {
            lines.extend(base.iter().map(|r| line(r)));
        } else {
            let patches: Vec<&TableRecord> = data
                .records
                .iter()
                .filter(|r| r.group == group && r.tag == tag)
                .collect();
            if patches.is_empty() {
                return Err(Error::UnsupportedCharacteristic {
                    group: group.to_string(),
                    tag: tag.to_string(),
                });
            }
            let mut used = vec![false; patches.len()];
            for b in &base {
                let hits: Vec<usize> = (0..patches.len())
                    .filter(|&k| patches[k].labels.iter().any(|l| b.labels.contains(l)))
                    .collect();
                if hits.is_empty() {
                    lines.push(line(b));
                    continue;
                }
                let mut covered = 0;
                for &k in &hits {
                    let patch = patches[k];
                    if !patch.labels.iter().all(|l| b.labels.contains(l)) {
                        return Err(Error::TableData(format!(
                            "line {}: replacement straddles several {group} lines",
                            patch.line_no
                        )));
                    }
                    covered += patch.labels.len();
                    used[k] = true;
                    lines.push(line(patch));
                }
                if covered != b.labels.len() {
                    return Err(Error::TableData(format!(
                        "line {}: replacement lines do not cover exactly the labels of the replaced line",
                        b.line_no
                    )));
                }
            }
            if let Some(k) = used.iter().position(|u| !u) {
                return Err(Error::TableData(format!(
                    "line {}: replacement matches no {group} line",
                    patches[k].line_no
                )));
            }
        }
        Ok(MapTable {
            group,
            characteristic: tag,
            weyl_rank: group.weyl_rank(),
            lines,
        })
    }

    pub fn labels(&self) -> impl Iterator<Item = &CarterLabel> {
        self.lines.iter().flat_map(|l| l.labels.iter())
    }

    pub fn images(&self) -> impl Iterator<Item = &UnipotentName> {
        self.lines.iter().map(|l| &l.image)
    }

    /// The table in the data-file format.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let labels: Vec<&str> = l.labels.iter().map(CarterLabel::as_str).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                self.group,
                self.characteristic,
                labels.join(","),
                l.image
            ));
        }
        out
    }
}

/// Assembles and verifies the table; any failed invariant is an error.
pub fn load_table_from(data: &TableData, group: ExceptionalGroup, tag: CharTag) -> Result<MapTable> {
    let table = MapTable::assemble(data, group, tag)?;
    let report = verify_table(&table);
    if !report.passed() {
        return Err(Error::TableData(format!(
            "{group} ({tag}) fails its invariants: {}",
            report
                .failures
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    Ok(table)
}

/// [`load_table_from`] on the embedded data.
pub fn load_table(group: ExceptionalGroup, tag: CharTag) -> Result<MapTable> {
    load_table_from(&TableData::embedded()?, group, tag)
}

pub fn phi_exceptional<'t>(t: &'t MapTable, c: &CarterLabel) -> Result<&'t UnipotentName> {
    t.lines
        .iter()
        .find(|l| l.labels.contains(c))
        .map(|l| &l.image)
        .ok_or_else(|| Error::UnknownLabel {
            group: t.group.to_string(),
            label: c.to_string(),
        })
}

/// The first label of the line for `u`.
pub fn psi_exceptional<'t>(t: &'t MapTable, u: &UnipotentName) -> Result<&'t CarterLabel> {
    t.lines
        .iter()
        .find(|l| l.image == *u)
        .map(|l| &l.labels[0])
        .ok_or_else(|| Error::UnknownName {
            group: t.group.to_string(),
            name: u.to_string(),
        })
}

pub fn carter_rank(c: &CarterLabel) -> u32 {
    c.rank()
}

/// Fixed-space dimension: Weyl rank minus the rank of the label.
pub fn m_c_exceptional(t: &MapTable, c: &CarterLabel) -> Result<u32> {
    t.weyl_rank.checked_sub(c.rank()).ok_or_else(|| {
        Error::InvalidGroup(format!(
            "{c} has rank {} but {} has rank {}",
            c.rank(),
            t.group,
            t.weyl_rank
        ))
    })
}

/// A failed table invariant; `line` indexes [`MapTable::lines`] when the
/// failure belongs to one line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFailure {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for TableFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub group: ExceptionalGroup,
    pub characteristic: CharTag,
    pub labels: usize,
    pub images: usize,
    pub failures: Vec<TableFailure>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every table invariant and lists the failures.
pub fn verify_table(t: &MapTable) -> TableReport {
    let mut failures: Vec<TableFailure> = Vec::new();
    let global = |message: String| TableFailure { line: None, message };
    let show = |l: &TableLine| {
        let labels: Vec<&str> = l.labels.iter().map(CarterLabel::as_str).collect();
        format!("[{}] -> {}", labels.join(","), l.image)
    };

    for (idx, l) in t.lines.iter().enumerate() {
        let at = |message: String| TableFailure {
            line: Some(idx),
            message,
        };
        let Some((first, rest)) = l.labels.split_first() else {
            failures.push(at(format!("empty line -> {}", l.image)));
            continue;
        };
        for x in rest {
            if x.rank() >= first.rank() {
                failures.push(at(format!(
                    "{}: {first} (rank {}) does not strictly exceed {x} (rank {})",
                    show(l),
                    first.rank(),
                    x.rank()
                )));
            }
        }
        for x in &l.labels {
            if x.rank() > t.weyl_rank {
                failures.push(at(format!("{}: {x} has rank above {}", show(l), t.weyl_rank)));
            }
        }
        match (l.image.bad_prime(), t.characteristic.prime()) {
            (Some(p), Some(q)) if p == q => {}
            (Some(p), _) => failures.push(at(format!(
                "{}: name subscripted by {p} in the {} table",
                show(l),
                t.characteristic
            ))),
            _ => {}
        }
    }

    let mut seen = HashSet::new();
    let mut label_count = 0;
    for x in t.labels() {
        label_count += 1;
        if !seen.insert(x) {
            failures.push(global(format!("label {x} listed twice")));
        }
    }
    if label_count != t.group.class_count() {
        failures.push(global(format!(
            "{label_count} labels, expected {} classes of W({})",
            t.group.class_count(),
            t.group
        )));
    }

    let mut names = HashSet::new();
    let mut image_count = 0;
    for u in t.images() {
        image_count += 1;
        if !names.insert(u) {
            failures.push(global(format!("unipotent class {u} listed twice")));
        }
        match psi_exceptional(t, u).and_then(|c| phi_exceptional(t, c)) {
            Ok(back) if back == u => {}
            Ok(back) => failures.push(global(format!("phi(psi({u})) = {back}"))),
            Err(e) => failures.push(global(e.to_string())),
        }
    }
    match t.group.image_count(t.characteristic) {
        Some(n) if n == image_count => {}
        Some(n) => failures.push(global(format!("{image_count} unipotent classes, expected {n}"))),
        None => failures.push(global(format!(
            "no {} table expected for {}",
            t.characteristic, t.group
        ))),
    }

    TableReport {
        group: t.group,
        characteristic: t.characteristic,
        labels: label_count,
        images: image_count,
        failures,
    }
}
