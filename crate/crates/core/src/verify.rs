//! Exhaustive sweeps checking that every fiber of the map has a unique
//! element of smallest fixed-space dimension, and that this element is the
//! one the section picks.
//!
//! Classical types are checked twice: on the partition side (fibers of the
//! multiset union, minimising the number of parts of `p`) and on the class
//! side (fibers of the classical map over enumerated Weyl group classes,
//! minimising `m_C`). The bridge check ties the two together by comparing
//! `m_C` computed three ways. Exceptional tables are checked line by line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exceptional::{verify_table, CharTag, ExceptionalGroup, MapTable, TableData};
use crate::partition::{partitions_of, FamilyTag, Partition};
use crate::type_bd::{self, PairRpBd};
use crate::type_c::{self, PairRp};
use crate::weyl::{self, GroupKind, Series, SignedCycleType};

/// Default upper bound on `max_nu`.
pub const DEFAULT_NU_CAP: u32 = 30;
/// Largest rank for which the class-side sweep enumerates classes.
pub const CLASS_SWEEP_RANK: u32 = weyl::ENUMERATION_RANK_BOUND;
/// Largest rank for the `m_C` bridge check.
pub const BRIDGE_RANK: u32 = 7;
/// Type-D class-side checks start here (dimension 8).
pub const D_MIN_RANK: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Target {
    Classical(Series),
    Exceptional(ExceptionalGroup),
}

impl Target {
    pub fn all() -> Vec<Target> {
        let mut v: Vec<Target> = [Series::B, Series::C, Series::D]
            .into_iter()
            .map(Target::Classical)
            .collect();
        v.extend(ExceptionalGroup::ALL.into_iter().map(Target::Exceptional));
        v
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(series) = s.parse::<Series>() {
            return Ok(Target::Classical(series));
        }
        s.parse::<ExceptionalGroup>().map(Target::Exceptional)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Classical(s) => s.fmt(f),
            Target::Exceptional(g) => g.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub targets: BTreeSet<Target>,
    pub max_nu: u32,
    /// Tags of the exceptional tables to check; empty means all.
    pub characteristics: BTreeSet<CharTag>,
    pub format: ReportFormat,
    pub nu_cap: u32,
}

impl SweepConfig {
    pub fn new(targets: impl IntoIterator<Item = Target>, max_nu: u32) -> Result<Self> {
        let cfg = SweepConfig {
            targets: targets.into_iter().collect(),
            max_nu,
            characteristics: BTreeSet::new(),
            format: ReportFormat::Text,
            nu_cap: DEFAULT_NU_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn all(max_nu: u32) -> Result<Self> {
        SweepConfig::new(Target::all(), max_nu)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nu > self.nu_cap {
            return Err(Error::RankBound {
                rank: self.max_nu,
                bound: self.nu_cap,
            });
        }
        Ok(())
    }

    fn series(&self) -> Vec<Series> {
        self.targets
            .iter()
            .filter_map(|t| match t {
                Target::Classical(s) => Some(*s),
                Target::Exceptional(_) => None,
            })
            .collect()
    }

    fn wants_tag(&self, tag: CharTag) -> bool {
        self.characteristics.is_empty() || self.characteristics.contains(&tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    /// Number of fibers, classes or table lines examined.
    pub checked: usize,
    pub skipped: usize,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiberWitness {
    pub element: String,
    pub m_c: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub subject: String,
    pub message: String,
    pub fiber: Vec<FiberWitness>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Combines two reports; the result is sorted, so merging is
    /// insensitive to order.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.checks.extend(other.checks);
        self.counterexamples.extend(other.counterexamples);
        self.elapsed_ms = self.elapsed_ms.max(other.elapsed_ms);
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self.counterexamples.sort();
        self
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            };
            write!(f, "{status} {} ({} checked", c.name, c.checked)?;
            if c.skipped > 0 {
                write!(f, ", {} skipped", c.skipped)?;
            }
            writeln!(f, ")")?;
            for n in &c.notes {
                writeln!(f, "  note: {n}")?;
            }
        }
        for cx in &self.counterexamples {
            writeln!(f, "counterexample [{}] {}: {}", cx.check, cx.subject, cx.message)?;
            for w in &cx.fiber {
                writeln!(f, "  {} m_C={}", w.element, w.m_c)?;
            }
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict}: {} checks, {} counterexamples", self.checks.len(), self.counterexamples.len())
    }
}

/// Accumulates one named check.
struct Tally {
    name: String,
    checked: usize,
    skipped: usize,
    notes: Vec<String>,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            checked: 0,
            skipped: 0,
            notes: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn fail(&mut self, subject: impl fmt::Display, message: impl Into<String>, fiber: Vec<FiberWitness>) {
        self.counterexamples.push(Counterexample {
            check: self.name.clone(),
            subject: subject.to_string(),
            message: message.into(),
            fiber,
        });
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.notes.extend(other.notes);
        self.counterexamples.extend(other.counterexamples);
    }

    fn into_report(mut self) -> VerificationReport {
        self.counterexamples.sort();
        let status = if self.counterexamples.is_empty() {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        VerificationReport {
            checks: vec![CheckOutcome {
                name: self.name,
                status,
                checked: self.checked,
                skipped: self.skipped,
                notes: self.notes,
            }],
            counterexamples: self.counterexamples,
            elapsed_ms: 0,
        }
    }
}

trait FiberElement: PartialEq + fmt::Display {
    fn p(&self) -> &Partition;

    fn witness(&self) -> FiberWitness {
        FiberWitness {
            element: self.to_string(),
            m_c: (self.p().len() / 2) as u32,
        }
    }
}

impl FiberElement for PairRp {
    fn p(&self) -> &Partition {
        PairRp::p(self)
    }
}

impl FiberElement for PairRpBd {
    fn p(&self) -> &Partition {
        PairRpBd::p(self)
    }
}

/// Checks one fiber against the section's candidate. Stops at the first
/// other element whose `p` is no longer than the candidate's: that element
/// and the candidate already refute uniqueness or minimality.
fn check_fiber<X: FiberElement, I: Iterator<Item = X>>(
    tally: &mut Tally,
    c: &Partition,
    candidate: Result<X>,
    fiber: impl Fn() -> Result<I>,
) {
    tally.checked += 1;
    let full = || -> Vec<FiberWitness> {
        let mut w: Vec<_> = fiber().map(|it| it.map(|x| x.witness()).collect()).unwrap_or_default();
        w.sort();
        w
    };
    let candidate = match candidate {
        Ok(x) => x,
        Err(e) => {
            tally.fail(c, format!("section failed: {e}"), full());
            return;
        }
    };
    let k = candidate.p().len();
    let mut contains_candidate = false;
    let elements = match fiber() {
        Ok(it) => it,
        Err(e) => {
            tally.fail(c, format!("fiber enumeration failed: {e}"), Vec::new());
            return;
        }
    };
    for x in elements {
        if x == candidate {
            contains_candidate = true;
        } else if x.p().len() <= k {
            tally.fail(
                c,
                format!("{x} has m_C {} <= m_C {} of the section value {candidate}", x.p().len() / 2, k / 2),
                full(),
            );
            return;
        }
    }
    if !contains_candidate {
        tally.fail(c, format!("section value {candidate} is not in the fiber"), full());
    }
}

/// Partition-side sweep for the symplectic case over every even `nu` up to
/// `max_nu`, using `section` as the candidate minimiser.
pub fn check_symplectic_fibers(
    max_nu: u32,
    section: &(dyn Fn(&Partition) -> Result<PairRp> + Sync),
) -> VerificationReport {
    let nus: Vec<u32> = (0..=max_nu).filter(|n| n % 2 == 0).collect();
    let parts: Vec<Tally> = nus
        .par_iter()
        .map(|&nu| {
            let mut t = Tally::new("");
            for c in partitions_of(nu).filter(|c| c.is_in(FamilyTag::T)) {
                check_fiber(&mut t, &c, section(&c), || type_c::fiber_c_iter(&c));
            }
            t
        })
        .collect();
    let mut tally = Tally::new("C fibers (partition side)");
    parts.into_iter().for_each(|t| tally.absorb(t));
    tally.into_report()
}

/// Partition-side sweep for the orthogonal case: odd `nu` for `B`, even
/// `nu` for `D` with very even Jordan types skipped.
pub fn check_orthogonal_fibers(
    series: Series,
    max_nu: u32,
    section: &(dyn Fn(&Partition) -> Result<PairRpBd> + Sync),
) -> VerificationReport {
    let parity = if series == Series::B { 1 } else { 0 };
    let nus: Vec<u32> = (0..=max_nu).filter(|n| n % 2 == parity).collect();
    let parts: Vec<Tally> = nus
        .par_iter()
        .map(|&nu| {
            let mut t = Tally::new("");
            let mut very_even = 0;
            for c in partitions_of(nu).filter(|c| c.is_in(FamilyTag::Q)) {
                if series == Series::D && c.is_in(FamilyTag::E) {
                    very_even += 1;
                    continue;
                }
                check_fiber(&mut t, &c, section(&c), || type_bd::fiber_bd_iter(&c));
            }
            if very_even > 0 {
                t.skipped += very_even;
                t.notes.push(format!("nu={nu}: {very_even} very even Jordan types skipped"));
            }
            t
        })
        .collect();
    let mut tally = Tally::new(format!("{series} fibers (partition side)"));
    parts.into_iter().for_each(|t| tally.absorb(t));
    tally.into_report()
}

/// Class-side check for one group: every Jordan type is hit, and its fiber
/// has a unique class of smallest `m_C`, equal to the section.
fn check_group_classes(g: &GroupKind) -> Tally {
    let mut t = Tally::new("");
    let classes = match weyl::enumerate_classes(g) {
        Ok(c) => c,
        Err(e) => {
            t.fail(g, e.to_string(), Vec::new());
            return t;
        }
    };
    let mut fibers: BTreeMap<Partition, Vec<SignedCycleType>> = BTreeMap::new();
    for w in classes {
        match weyl::phi_classical(&w, g) {
            Ok(j) => fibers.entry(j.parts().clone()).or_default().push(w),
            Err(e) => t.fail(format!("{g} {w}"), format!("map failed: {e}"), Vec::new()),
        }
    }
    let witnesses = |ws: &[SignedCycleType]| -> Vec<FiberWitness> {
        ws.iter()
            .map(|w| FiberWitness {
                element: w.to_string(),
                m_c: weyl::m_c_formula(w),
            })
            .collect()
    };
    for j in weyl::jordan_types(g) {
        t.checked += 1;
        let subject = format!("{g} {j}");
        let Some(fiber) = fibers.get(j.parts()) else {
            t.fail(subject, "no class maps here", Vec::new());
            continue;
        };
        if j.is_very_even() {
            t.skipped += 1;
            if fiber.len() != 1 || !fiber[0].excluded_from_theorem(g.series) {
                t.fail(subject, "very even fiber is not a single split class", witnesses(fiber));
            }
            continue;
        }
        let min = fiber.iter().map(weyl::m_c_formula).min().unwrap_or(0);
        let minimisers: Vec<&SignedCycleType> =
            fiber.iter().filter(|w| weyl::m_c_formula(w) == min).collect();
        if minimisers.len() != 1 {
            t.fail(subject, format!("{} classes attain m_C = {min}", minimisers.len()), witnesses(fiber));
            continue;
        }
        match weyl::psi_classical(&j, g) {
            Ok(w) if &w == minimisers[0] => {}
            Ok(w) => t.fail(subject, format!("section gives {w}, minimum is {}", minimisers[0]), witnesses(fiber)),
            Err(e) => t.fail(subject, format!("section failed: {e}"), witnesses(fiber)),
        }
    }
    t
}

fn max_rank(series: Series, max_nu: u32) -> u32 {
    match series {
        Series::B => max_nu.saturating_sub(1) / 2,
        Series::C | Series::D => max_nu / 2,
    }
}

fn min_rank(series: Series) -> u32 {
    if series == Series::D {
        D_MIN_RANK
    } else {
        1
    }
}

/// Class-side sweep for one series over ranks up to [`CLASS_SWEEP_RANK`].
pub fn check_classes(series: Series, max_nu: u32) -> VerificationReport {
    let top = max_rank(series, max_nu).min(CLASS_SWEEP_RANK);
    let ranks: Vec<u32> = (min_rank(series)..=top).collect();
    let parts: Vec<Tally> = ranks
        .par_iter()
        .map(|&n| match GroupKind::new(series, n) {
            Ok(g) => check_group_classes(&g),
            Err(e) => {
                let mut t = Tally::new("");
                t.fail(format!("{series}{n}"), e.to_string(), Vec::new());
                t
            }
        })
        .collect();
    let mut tally = Tally::new(format!("{series} fibers (class side)"));
    parts.into_iter().for_each(|t| tally.absorb(t));
    if top < max_rank(series, max_nu) {
        tally.notes.push(format!("class side limited to rank {top}"));
    }
    tally.into_report()
}

/// Both sides of the minimality check for every classical series in `cfg`.
pub fn check_theorem_classical(cfg: &SweepConfig) -> VerificationReport {
    let mut report = VerificationReport::default();
    for series in cfg.series() {
        let side = match series {
            Series::C => check_symplectic_fibers(cfg.max_nu, &type_c::iota_prime_c),
            Series::B | Series::D => check_orthogonal_fibers(series, cfg.max_nu, &type_bd::iota_prime_bd),
        };
        report = report.merge(side).merge(check_classes(series, cfg.max_nu));
    }
    report
}

/// `m_C` three ways: number of positive cycles, nullity of `w - 1`, and
/// half the length of `p` in the class encoding.
pub fn check_bridge(cfg: &SweepConfig) -> VerificationReport {
    let mut report = VerificationReport::default();
    for series in cfg.series() {
        let mut tally = Tally::new(format!("{series} m_C bridge"));
        let top = max_rank(series, cfg.max_nu).min(BRIDGE_RANK);
        let first = if series == Series::D { 2 } else { 1 };
        for n in first..=top {
            let Ok(g) = GroupKind::new(series, n) else { continue };
            let classes = weyl::enumerate_classes(&g).unwrap_or_default();
            for w in classes {
                tally.checked += 1;
                let formula = weyl::m_c_formula(&w);
                let matrix = weyl::m_c_matrix(&w, &g);
                let encoded = weyl::encode_class(&w, &g).map(|x| (x.p().len() / 2) as u32);
                match (matrix, encoded) {
                    (Ok(m), Ok(e)) if m == formula && e == formula => {}
                    (m, e) => tally.fail(
                        format!("{g} {w}"),
                        format!("formula {formula}, matrix {m:?}, encoding {e:?}"),
                        Vec::new(),
                    ),
                }
            }
        }
        report = report.merge(tally.into_report());
    }
    report
}

/// Table checks for every exceptional group and characteristic in `cfg`.
pub fn check_exceptional(cfg: &SweepConfig) -> VerificationReport {
    match TableData::embedded() {
        Ok(data) => check_exceptional_with(cfg, &data),
        Err(e) => {
            let mut t = Tally::new("exceptional data");
            t.fail("embedded tables", e.to_string(), Vec::new());
            t.into_report()
        }
    }
}

/// [`check_exceptional`] against the given table data.
pub fn check_exceptional_with(cfg: &SweepConfig, data: &TableData) -> VerificationReport {
    let mut report = VerificationReport::default();
    for target in &cfg.targets {
        let Target::Exceptional(group) = *target else { continue };
        let good_labels = MapTable::assemble(data, group, CharTag::Good)
            .ok()
            .map(|t| t.labels().map(|l| l.as_str().to_owned()).collect::<BTreeSet<_>>());
        for &tag in group.tags() {
            if !cfg.wants_tag(tag) {
                continue;
            }
            let mut tally = Tally::new(format!("{group} table ({tag})"));
            let subject = format!("{group} ({tag})");
            let table = match MapTable::assemble(data, group, tag) {
                Ok(t) => t,
                Err(e) => {
                    tally.fail(subject, e.to_string(), Vec::new());
                    report = report.merge(tally.into_report());
                    continue;
                }
            };
            tally.checked = table.lines.len();
            for failure in verify_table(&table).failures {
                let (subject, fiber) = match failure.line.map(|i| &table.lines[i]) {
                    Some(line) => (
                        format!("{subject} {}", line.image),
                        line.labels
                            .iter()
                            .map(|l| FiberWitness {
                                element: l.to_string(),
                                m_c: table.weyl_rank.saturating_sub(l.rank()),
                            })
                            .collect(),
                    ),
                    None => (subject.clone(), Vec::new()),
                };
                tally.fail(subject, failure.message, fiber);
            }
            let labels: BTreeSet<String> = table.labels().map(|l| l.as_str().to_owned()).collect();
            if good_labels.as_ref() != Some(&labels) {
                tally.fail(subject, "label set differs from the good-characteristic table", Vec::new());
            }
            report = report.merge(tally.into_report());
        }
    }
    report
}

/// Every check selected by `cfg`, with wall-clock timing.
pub fn verify_all(cfg: &SweepConfig) -> Result<VerificationReport> {
    verify_all_with(cfg, &TableData::embedded()?)
}

/// [`verify_all`] with the exceptional tables taken from `data`.
pub fn verify_all_with(cfg: &SweepConfig, data: &TableData) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = check_theorem_classical(cfg)
        .merge(check_bridge(cfg))
        .merge(check_exceptional_with(cfg, data));
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}
