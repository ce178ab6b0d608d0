//! Command-line front end. Every subcommand is a thin chain over the library;
//! exit codes are 0 on success, 1 when a verification fails, 2 on usage or
//! domain errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::census::{
    appendix_listing, bfile, enumerate_involutions, reconcile, run_census_parallel, CensusError,
    CensusQuery, GroupBy,
};
use crate::fine_structure::{classify, skeleton_decomposition, FineClass, StructureError};
use crate::motzkin::{involution_of_path, path_of_involution, LabelledMotzkinPath, PathError};
use crate::perm::{PermError, Permutation};
use crate::series::gf::{Expansion, NamedSeries};
use crate::series::{SeriesError, DEFAULT_ORDER};

pub const SERIES_ORDER_ENV: &str = "FINEINV_SERIES_ORDER";

#[derive(Debug, Parser)]
#[command(
    name = "fineinv",
    version,
    about = "Fine structure of involutions avoiding 4321 or 3412"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum By {
    /// One bucket for the whole class.
    None,
    /// By fine class token.
    Class,
    /// By number of fixed points.
    Fixed,
    /// By class and number of fixed points, keyed `class/k`.
    ClassFixed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ListFormat {
    Lines,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesFormat {
    /// The truncated series as an expression.
    Text,
    /// `n a(n)` per line; bivariate series print `n k a(n,k)`.
    Bfile,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count involutions of length N avoiding the given patterns.
    Count {
        #[arg(long)]
        n: usize,
        /// Comma-separated patterns of length 3 or 4, e.g. 4321,132.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
        #[arg(long, value_enum, default_value = "none")]
        by: By,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Witnesses kept per bucket in JSON output.
        #[arg(long, default_value_t = crate::census::DEFAULT_WITNESS_CAP)]
        witnesses: usize,
    },
    /// List involutions of length N avoiding the given patterns.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
        /// `lines`: one per line; `csv`: permutation,fixed_points,class; `json`: array.
        #[arg(long, value_enum, default_value = "lines")]
        format: ListFormat,
    },
    /// Print the fine class token and, when there is one, the decomposition.
    Classify { perm: String },
    /// Print the labelled Motzkin path of an involution.
    Path {
        perm: String,
        /// Also render the path as ASCII art.
        #[arg(long)]
        draw: bool,
    },
    /// Print the involution of a labelled path such as UUD[2]D.
    Unpath { path: String },
    /// Print the reverse-complement.
    Rc { perm: String },
    /// Expand a named generating function.
    Series {
        name: String,
        #[arg(long, env = SERIES_ORDER_ENV, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: SeriesFormat,
    },
    /// Compare census counts with series coefficients up to length MAX.
    Reconcile {
        name: String,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// List the simple involutions of length N avoiding 4321, for 5 <= N <= 10.
    Appendix {
        #[arg(long)]
        n: usize,
    },
}

/// A failure with the token printed on standard error.
#[derive(Debug)]
struct Failure {
    token: &'static str,
    message: String,
    code: u8,
}

fn perm_token(e: &PermError) -> &'static str {
    match e {
        PermError::NotABijection { .. } => "NotABijection",
        PermError::Empty => "Empty",
        PermError::NotAnInvolution(_) => "NotAnInvolution",
        PermError::Parse(_) => "ParseError",
    }
}

fn path_token(e: &PathError) -> &'static str {
    match e {
        PathError::Empty => "EmptyPath",
        PathError::NegativeHeight { .. } => "NegativeHeight",
        PathError::NonzeroFinalHeight { .. } => "NonzeroFinalHeight",
        PathError::LabelOutOfRange { .. } => "LabelOutOfRange",
        PathError::LabelCountMismatch { .. } => "LabelCountMismatch",
        PathError::Parse(_) => "ParseError",
        PathError::Perm(p) => perm_token(p),
    }
}

fn structure_token(e: &StructureError) -> &'static str {
    match e {
        StructureError::NotAnInvolution(_) => "NotAnInvolution",
        StructureError::OutOfDomain(_) => "OutOfDomain",
        StructureError::ArityMismatch { .. } => "ArityMismatch",
        StructureError::PositionOutOfRange { .. } => "PositionOutOfRange",
        StructureError::Undecomposable => "Undecomposable",
        StructureError::NotADyckPath(_) => "NotADyckPath",
        StructureError::NotUnitary(_) => "NotUnitary",
        StructureError::NotIrreducible(_) => "NotIrreducible",
        StructureError::Path(p) => path_token(p),
        StructureError::Perm(p) => perm_token(p),
    }
}

fn series_token(e: &SeriesError) -> &'static str {
    match e {
        SeriesError::DivisionByNonUnit => "DivisionByNonUnit",
        SeriesError::BadConstantTerm(_) => "BadConstantTerm",
        SeriesError::NonzeroInnerConstant => "NonzeroInnerConstant",
        SeriesError::LowOrderNonzero { .. } => "LowOrderNonzero",
        SeriesError::InternalMismatch { .. } => "InternalMismatch",
        SeriesError::UnknownSeries(_) => "UnknownSeries",
    }
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        Failure::domain(perm_token(&e), e.to_string())
    }
}

impl From<PathError> for Failure {
    fn from(e: PathError) -> Self {
        Failure::domain(path_token(&e), e.to_string())
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::domain(structure_token(&e), e.to_string())
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        let code = if matches!(e, SeriesError::InternalMismatch { .. }) {
            1
        } else {
            2
        };
        Failure {
            token: series_token(&e),
            message: e.to_string(),
            code,
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Series(s) => s.into(),
            CensusError::ZeroLength => Failure::domain("ZeroLength", e.to_string()),
            CensusError::BadPattern(..) => Failure::domain("BadPattern", e.to_string()),
            CensusError::OutOfRange(_) => Failure::domain("OutOfRange", e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            token: "IoError",
            message: e.to_string(),
            code: 2,
        }
    }
}

impl Failure {
    fn domain(token: &'static str, message: String) -> Self {
        Failure {
            token,
            message,
            code: 2,
        }
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    Ok(s.parse::<Permutation>()?)
}

fn parse_involution(s: &str) -> Result<Permutation, Failure> {
    let p = parse_perm(s)?;
    if !p.is_involution() {
        return Err(PermError::NotAnInvolution(p).into());
    }
    Ok(p)
}

fn query(n: usize, avoid: &[String], group_by: GroupBy) -> Result<CensusQuery, Failure> {
    let patterns = avoid
        .iter()
        .map(|s| parse_perm(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CensusQuery::new(n, patterns, group_by)?)
}

/// Parse `args` (program name first), run the subcommand writing to `out`,
/// and return the exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{}", e.render());
            return 2;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}: {}", f.token, f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8, Failure> {
    match command {
        Command::Count {
            n,
            avoid,
            by,
            format,
            witnesses,
        } => {
            let group_by = match by {
                By::None => GroupBy::None,
                By::Class => GroupBy::FineClass,
                By::Fixed => GroupBy::FixedPoints,
                By::ClassFixed => GroupBy::FineClassAndFixedPoints,
            };
            let mut q = query(n, &avoid, group_by)?;
            q.witness_cap = witnesses;
            let report = run_census_parallel(&q);
            let text = match format {
                TableFormat::Text => report.to_text(),
                TableFormat::Csv => report.to_csv(),
                TableFormat::Json => report.to_json() + "\n",
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Enumerate { n, avoid, format } => {
            let q = query(n, &avoid, GroupBy::None)?;
            let mut all: Vec<Permutation> = enumerate_involutions(&q).collect();
            all.sort();
            match format {
                ListFormat::Lines => {
                    for p in &all {
                        writeln!(out, "{}", p.to_compact())?;
                    }
                }
                ListFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["permutation", "fixed_points", "class"])
                        .map_err(|e| Failure::domain("IoError", e.to_string()))?;
                    for p in &all {
                        let class = crate::fine_structure::classify_unchecked(p);
                        w.write_record([
                            p.to_compact(),
                            p.fixed_point_count().to_string(),
                            class.to_string(),
                        ])
                        .map_err(|e| Failure::domain("IoError", e.to_string()))?;
                    }
                    let bytes = w
                        .into_inner()
                        .map_err(|e| Failure::domain("IoError", e.to_string()))?;
                    out.write_all(&bytes)?;
                }
                ListFormat::Json => {
                    let list: Vec<String> = all.iter().map(|p| p.to_compact()).collect();
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&list).expect("string list")
                    )?;
                }
            }
        }
        Command::Classify { perm } => {
            let p = parse_perm(&perm)?;
            let class = classify(&p)?;
            writeln!(out, "{class}")?;
            if !matches!(class, FineClass::One | FineClass::Simple) {
                writeln!(out, "{}", skeleton_decomposition(&p)?)?;
            }
        }
        Command::Path { perm, draw } => {
            let p = parse_involution(&perm)?;
            let path = path_of_involution(&p)?;
            writeln!(out, "{path}")?;
            if draw {
                writeln!(out, "{}", path.draw())?;
            }
        }
        Command::Unpath { path } => {
            let path: LabelledMotzkinPath = path.parse()?;
            writeln!(out, "{}", involution_of_path(&path).to_compact())?;
        }
        Command::Rc { perm } => {
            let p = parse_perm(&perm)?;
            writeln!(out, "{}", p.reverse_complement().to_compact())?;
        }
        Command::Series {
            name,
            order,
            format,
        } => {
            let name: NamedSeries = name.parse()?;
            write_series(name, order, format, out)?;
        }
        Command::Reconcile { name, max, format } => {
            let name: NamedSeries = name.parse()?;
            let report = reconcile(name, max)?;
            let text = match format {
                TableFormat::Text => report.to_text(),
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let io = |e: csv::Error| Failure::domain("IoError", e.to_string());
                    w.write_record(["n", "census", "series", "result", "witness"])
                        .map_err(io)?;
                    for r in &report.rows {
                        w.write_record([
                            r.n.to_string(),
                            r.census_text(),
                            r.series_text(),
                            (if r.pass { "pass" } else { "fail" }).to_string(),
                            r.witness
                                .as_ref()
                                .map(|p| p.to_compact())
                                .unwrap_or_default(),
                        ])
                        .map_err(io)?;
                    }
                    let bytes = w
                        .into_inner()
                        .map_err(|e| Failure::domain("IoError", e.to_string()))?;
                    String::from_utf8(bytes).expect("utf-8 csv")
                }
                TableFormat::Json => {
                    let rows: Vec<_> = report
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "n": r.n,
                                "census": r.census_text(),
                                "series": r.series_text(),
                                "pass": r.pass,
                                "witness": r.witness.as_ref().map(|p| p.to_compact()),
                            })
                        })
                        .collect();
                    let doc = json!({"series": name.name(), "max": max, "pass": report.all_pass(), "rows": rows});
                    serde_json::to_string_pretty(&doc).expect("json value") + "\n"
                }
            };
            out.write_all(text.as_bytes())?;
            if !report.all_pass() {
                return Ok(1);
            }
        }
        Command::Appendix { n } => {
            for p in appendix_listing(n)? {
                writeln!(out, "{}", p.to_compact())?;
            }
        }
    }
    Ok(0)
}

fn write_series(
    name: NamedSeries,
    order: usize,
    format: SeriesFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    match (name.expand(order)?, format) {
        (Expansion::Univariate(s), SeriesFormat::Text) => writeln!(out, "{s}")?,
        (Expansion::Univariate(s), SeriesFormat::Bfile) => {
            out.write_all(bfile(s.coeff_strings().into_iter().enumerate()).as_bytes())?;
        }
        (Expansion::Univariate(s), SeriesFormat::Json) => {
            let doc =
                json!({"name": name.name(), "order": order, "coefficients": s.coeff_strings()});
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("json value")
            )?;
        }
        (Expansion::Bivariate(b), SeriesFormat::Text) => {
            out.write_all(b.row_listing().as_bytes())?
        }
        (Expansion::Bivariate(b), SeriesFormat::Bfile) => {
            for (i, row) in b.coeff_strings().into_iter().enumerate() {
                for (k, c) in row.into_iter().enumerate() {
                    if c != "0" {
                        writeln!(out, "{i} {k} {c}")?;
                    }
                }
            }
        }
        (Expansion::Bivariate(b), SeriesFormat::Json) => {
            let doc =
                json!({"name": name.name(), "order": order, "coefficients": b.coeff_strings()});
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("json value")
            )?;
        }
    }
    Ok(())
}
