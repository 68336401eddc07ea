//! Atomic output and numeric CSV ingestion.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::{CliError, CliResult};

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|source| CliError::Output { path: PathBuf::from("<stdout>"), source });
    };
    let fail = |source| CliError::Output { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// `report.json` + `grid` → `report.grid.csv`.
pub fn sibling(path: &Path, tag: &str) -> PathBuf {
    let mut name = OsString::from(path.file_stem().unwrap_or_default());
    name.push(format!(".{tag}.csv"));
    path.with_file_name(name)
}

/// Renders `10^t` in scientific notation without leaving the log domain, so
/// magnitudes beyond `f64` survive the round trip.
pub fn format_from_log10(t: f64) -> String {
    let mut exponent = t.floor();
    let mut mantissa = 10f64.powf(t - exponent);
    if format!("{mantissa:.15}").starts_with("10") {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    format!("{mantissa:.15}e{}", exponent as i64)
}

/// `log10` of a decimal literal. `Ok(None)` for zero, negative or
/// non-finite values; literals outside `f64` range are handled exactly.
pub fn parse_log10(text: &str) -> Result<Option<f64>, ()> {
    let text = text.trim();
    let v: f64 = text.parse().map_err(|_| ())?;
    if v.is_nan() || v < 0.0 {
        return Ok(None);
    }
    if v > 0.0 && v.is_finite() {
        return Ok(Some(snap(v.log10())));
    }
    // zero or infinite: possibly an exponent beyond f64 range
    let Some((mantissa, exponent)) = text.split_once(['e', 'E']) else {
        return Ok(None);
    };
    let m: f64 = mantissa.parse().map_err(|_| ())?;
    let e: i64 = exponent.trim_start_matches('+').parse().map_err(|_| ())?;
    if m > 0.0 && m.is_finite() {
        Ok(Some(snap(m.log10() + e as f64)))
    } else {
        Ok(None)
    }
}

fn snap(t: f64) -> f64 {
    let r = t.round();
    if (t - r).abs() <= 4.0 * f64::EPSILON * r.abs().max(1.0) {
        r
    } else {
        t
    }
}

/// Column selector: an index from 0, or a header name.
enum Column {
    Index(usize),
    Name(String),
}

#[derive(Debug)]
pub struct Ingested {
    /// `log10` of each positive value.
    pub log10: Vec<f64>,
    /// Zero, negative, blank or non-finite entries.
    pub excluded: usize,
}

pub fn read_column(input: &Path, column: &str) -> CliResult<Ingested> {
    let mut raw = String::new();
    let src = input.display();
    if input == Path::new("-") {
        io::stdin().read_to_string(&mut raw).map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
    } else {
        File::open(input)
            .and_then(|mut f| f.read_to_string(&mut raw))
            .map_err(|e| CliError::Input(format!("cannot read {src}: {e}")))?;
    }
    let selector = match column.parse::<usize>() {
        Ok(i) => Column::Index(i),
        Err(_) => Column::Name(column.to_string()),
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(raw.as_bytes());
    let mut records = reader.records().enumerate().peekable();
    let index = match &selector {
        Column::Index(i) => *i,
        Column::Name(name) => {
            let (_, header) = records.next().ok_or_else(|| CliError::Input(format!("{src}: no rows")))?;
            let header = header.map_err(|e| CliError::Input(format!("{src}: {e}")))?;
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| CliError::Input(format!("{src}: no column named {name:?}")))?
        }
    };
    let mut out = Ingested { log10: Vec::new(), excluded: 0 };
    let mut first = matches!(selector, Column::Index(_));
    for (line, record) in records {
        let record = record.map_err(|e| CliError::Input(format!("{src}: {e}")))?;
        let field = record.get(index).unwrap_or("");
        let is_first = std::mem::take(&mut first);
        if field.is_empty() {
            out.excluded += 1;
            continue;
        }
        match parse_log10(field) {
            Ok(Some(t)) => out.log10.push(t),
            Ok(None) => out.excluded += 1,
            // a non-numeric first row is a header
            Err(()) if is_first => {}
            Err(()) => {
                return Err(CliError::Input(format!("{src}: line {}: cannot parse {field:?} as a number", line + 1)))
            }
        }
    }
    if out.log10.is_empty() {
        return Err(CliError::Input(format!("{src}: no positive values in column {column}")));
    }
    Ok(out)
}
