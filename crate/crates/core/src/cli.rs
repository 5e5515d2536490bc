//! Command-line front end. [`run`] takes the full argument vector and
//! writes to the given streams, so it can be driven from tests.
//!
//! Exit codes: 0 on success, 1 on a domain error or a failed `verify`,
//! 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::exceptional::{
    load_table_from, m_c_exceptional, phi_exceptional, psi_exceptional, CarterLabel, CharTag,
    ExceptionalGroup, MapTable, TableData, UnipotentName,
};
use crate::partition::Partition;
use crate::type_bd;
use crate::type_c;
use crate::verify::{verify_all_with, ReportFormat, SweepConfig, Target, DEFAULT_NU_CAP};
use crate::weyl::{self, ClassEncoding, GroupKind, JordanType, Series, SignedCycleType};

/// Environment variable naming a table file to use instead of the
/// embedded one.
pub const TABLE_PATH_VAR: &str = "WEYL2UNI_TABLE_PATH";

#[derive(Debug, Parser)]
#[command(name = "weyl2uni", version, about = "Weyl group classes to unipotent classes and back")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    /// Only for `table`.
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Image of a Weyl group class.
    Phi(ClassOrLabel),
    /// The class of smallest fixed-space dimension mapping to a unipotent class.
    Psi(JordanOrName),
    /// All classes mapping to a Jordan type, by increasing m_C.
    Fiber(SeriesJordan),
    /// Pair-of-partitions encoding of a classical class.
    Encode(SeriesClass),
    /// Fixed-space dimension of a class.
    Mc(ClassOrLabel),
    /// Print an exceptional table.
    Table(TableArgs),
    /// Run the verification sweeps.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ClassOrLabel {
    #[arg(long, conflicts_with_all = ["group", "label", "p"], requires = "class")]
    pub series: Option<Series>,
    /// Signed cycle type, e.g. "pos=2;neg=1,1".
    #[arg(long, requires = "series")]
    pub class: Option<SignedCycleType>,
    #[arg(long, requires = "label")]
    pub group: Option<ExceptionalGroup>,
    /// Carter label, e.g. "D_4(a_1)" or "tA_1".
    #[arg(long, requires = "group")]
    pub label: Option<String>,
    /// Characteristic; omitted means good characteristic.
    #[arg(long, requires = "group")]
    pub p: Option<u32>,
}

#[derive(Debug, Args)]
pub struct JordanOrName {
    #[arg(long, conflicts_with_all = ["group", "name", "p"], requires = "jordan")]
    pub series: Option<Series>,
    /// Dimension of the natural representation; defaults to the size of the Jordan type.
    #[arg(long, requires = "series")]
    pub nu: Option<u32>,
    #[arg(long, requires = "series")]
    pub jordan: Option<Partition>,
    #[arg(long, requires = "name")]
    pub group: Option<ExceptionalGroup>,
    /// Unipotent class name, e.g. "C_3(a_1)".
    #[arg(long, requires = "group")]
    pub name: Option<String>,
    #[arg(long, requires = "group")]
    pub p: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SeriesJordan {
    #[arg(long)]
    pub series: Series,
    #[arg(long)]
    pub nu: Option<u32>,
    #[arg(long)]
    pub jordan: Partition,
}

#[derive(Debug, Args)]
pub struct SeriesClass {
    #[arg(long)]
    pub series: Series,
    #[arg(long)]
    pub class: SignedCycleType,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub group: ExceptionalGroup,
    #[arg(long)]
    pub p: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Every classical series and exceptional group.
    #[arg(long, conflicts_with = "series", required_unless_present = "series")]
    pub all: bool,
    /// Comma-separated subset of B,C,D,G2,F4,E6,E7,E8.
    #[arg(long, value_delimiter = ',')]
    pub series: Vec<Target>,
    #[arg(long, default_value_t = 12)]
    pub max_nu: u32,
    /// Exceptional table tags to check (good, p2, p3); default all.
    #[arg(long = "tags", value_delimiter = ',')]
    pub tags: Vec<CharTag>,
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// Already reported on the output stream.
    Silent,
    /// The reader went away; not an error.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Domain(Error::Parse(format!("output: {e}")))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) | Err(Failure::Closed) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Silent) => 1,
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let format = cli.format;
    if format == Format::Tsv && !matches!(cli.command, Command::Table(_)) {
        return Err(Failure::Usage("--format tsv applies only to `table`".into()));
    }
    let json = format == Format::Json;
    match &cli.command {
        Command::Phi(a) => phi(a, json, out),
        Command::Psi(a) => psi(a, json, out),
        Command::Fiber(a) => fiber(a, json, out),
        Command::Encode(a) => encode(a, json, out),
        Command::Mc(a) => mc(a, json, out),
        Command::Table(a) => table(a, format, out),
        Command::Verify(a) => verify(a, json, out),
    }
}

fn emit(out: &mut dyn Write, json: bool, text: impl std::fmt::Display, value: impl Serialize) -> Outcome {
    if json {
        let s = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
        writeln!(out, "{s}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn table_data() -> std::result::Result<TableData, Error> {
    match std::env::var_os(TABLE_PATH_VAR) {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::TableData(format!("cannot read {}: {e}", path.to_string_lossy()))
            })?;
            TableData::parse(&text)
        }
        None => TableData::embedded(),
    }
}

fn exceptional_table(group: ExceptionalGroup, p: Option<u32>) -> std::result::Result<MapTable, Error> {
    let tag = p.map_or(CharTag::Good, |p| group.tag_for_characteristic(p));
    load_table_from(&table_data()?, group, tag)
}

fn group_of(series: Series, w: &SignedCycleType) -> std::result::Result<GroupKind, Error> {
    GroupKind::new(series, w.rank())
}

fn phi(a: &ClassOrLabel, json: bool, out: &mut dyn Write) -> Outcome {
    match (a.series, &a.class, a.group, &a.label) {
        (Some(series), Some(w), None, None) => {
            let g = group_of(series, w)?;
            let j = weyl::phi_classical(w, &g)?;
            emit(out, json, &j, json!({ "group": g.to_string(), "class": w.to_string(), "jordan": j }))
        }
        (None, None, Some(group), Some(label)) => {
            let t = exceptional_table(group, a.p)?;
            let c = CarterLabel::parse(label)?;
            let u = phi_exceptional(&t, &c)?;
            emit(out, json, u, json!({ "group": group, "characteristic": t.characteristic, "label": c, "image": u }))
        }
        _ => Err(Failure::Usage("give either --series and --class or --group and --label".into())),
    }
}

fn jordan_group(series: Series, nu: Option<u32>, parts: &Partition) -> std::result::Result<(GroupKind, JordanType), Error> {
    let nu = nu.unwrap_or(parts.size());
    let g = GroupKind::from_nu(series, nu)?;
    let j = JordanType::for_group(parts.clone(), &g)?;
    Ok((g, j))
}

fn psi(a: &JordanOrName, json: bool, out: &mut dyn Write) -> Outcome {
    match (a.series, &a.jordan, a.group, &a.name) {
        (Some(series), Some(parts), None, None) => {
            let (g, j) = jordan_group(series, a.nu, parts)?;
            let w = weyl::psi_classical(&j, &g)?;
            emit(out, json, &w, json!({ "group": g.to_string(), "jordan": j, "class": w.to_string(), "m_c": weyl::m_c_formula(&w) }))
        }
        (None, None, Some(group), Some(name)) => {
            let t = exceptional_table(group, a.p)?;
            let u = UnipotentName::new(name)?;
            let c = psi_exceptional(&t, &u)?;
            emit(out, json, c, json!({ "group": group, "characteristic": t.characteristic, "name": u, "label": c, "m_c": m_c_exceptional(&t, c)? }))
        }
        _ => Err(Failure::Usage("give either --series and --jordan or --group and --name".into())),
    }
}

#[derive(Serialize)]
struct FiberEntry {
    class: String,
    encoding: String,
    m_c: u32,
}

fn fiber(a: &SeriesJordan, json: bool, out: &mut dyn Write) -> Outcome {
    let (g, j) = jordan_group(a.series, a.nu, &a.jordan)?;
    let encodings: Vec<ClassEncoding> = match a.series {
        Series::C => type_c::fiber_c(j.parts())?.into_iter().map(ClassEncoding::Symplectic).collect(),
        Series::B | Series::D => type_bd::fiber_bd(j.parts())?
            .iter()
            .map(|x| type_bd::plain_to_dot(x).map(ClassEncoding::Orthogonal))
            .collect::<std::result::Result<_, _>>()?,
    };
    let mut entries = Vec::with_capacity(encodings.len());
    for e in encodings {
        let w = weyl::decode_class(&e)?;
        entries.push(FiberEntry {
            class: w.to_string(),
            encoding: e.to_string(),
            m_c: weyl::m_c_formula(&w),
        });
    }
    // The minimiser is unique, so sorting by m_C puts the section value first.
    entries.sort_by(|x, y| (x.m_c, &x.class).cmp(&(y.m_c, &y.class)));
    if json {
        return emit(out, true, "", json!({ "group": g.to_string(), "jordan": j, "fiber": entries }));
    }
    for e in &entries {
        writeln!(out, "{}\tm_C={}\t{}", e.class, e.m_c, e.encoding)?;
    }
    Ok(())
}

fn encode(a: &SeriesClass, json: bool, out: &mut dyn Write) -> Outcome {
    let g = group_of(a.series, &a.class)?;
    let e = weyl::encode_class(&a.class, &g)?;
    emit(out, json, &e, &e)
}

fn mc(a: &ClassOrLabel, json: bool, out: &mut dyn Write) -> Outcome {
    match (a.series, &a.class, a.group, &a.label) {
        (Some(series), Some(w), None, None) => {
            let g = group_of(series, w)?;
            let m = weyl::m_c_formula(w);
            if g.rank <= weyl::MATRIX_RANK_BOUND {
                debug_assert_eq!(weyl::m_c_matrix(w, &g).ok(), Some(m));
            }
            emit(out, json, m, json!({ "group": g.to_string(), "class": w.to_string(), "m_c": m }))
        }
        (None, None, Some(group), Some(label)) => {
            let t = exceptional_table(group, a.p)?;
            let c = CarterLabel::parse(label)?;
            let m = m_c_exceptional(&t, &c)?;
            emit(out, json, m, json!({ "group": group, "label": c, "m_c": m }))
        }
        _ => Err(Failure::Usage("give either --series and --class or --group and --label".into())),
    }
}

fn table(a: &TableArgs, format: Format, out: &mut dyn Write) -> Outcome {
    let t = exceptional_table(a.group, a.p)?;
    match format {
        Format::Json => emit(out, true, "", &t),
        Format::Text | Format::Tsv => {
            write!(out, "{}", t.to_tsv())?;
            Ok(())
        }
    }
}

fn verify(a: &VerifyArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let targets = if a.all { Target::all() } else { a.series.clone() };
    if a.max_nu > DEFAULT_NU_CAP {
        return Err(Failure::Usage(format!("--max-nu is capped at {DEFAULT_NU_CAP}")));
    }
    let mut cfg = SweepConfig::new(targets, a.max_nu)?;
    cfg.characteristics = a.tags.iter().copied().collect();
    cfg.format = if json { ReportFormat::Json } else { ReportFormat::Text };
    let report = verify_all_with(&cfg, &table_data()?)?;
    if json {
        emit(out, true, "", &report)?;
    } else {
        writeln!(out, "{report}")?;
        if !report.passed() {
            let dump = serde_json::to_string_pretty(&report.counterexamples)
                .map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(out, "{dump}")?;
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Silent)
    }
}
