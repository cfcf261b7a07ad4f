//! On-disk coefficient tables.
//!
//! Format (UTF-8): a header line `# label=<s> weight=<k> level=<N>`, then one
//! `p,a_p` line per prime in ascending order. Values are exact integers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{build_table, EigenvalueTable, NewformSpec, Source};
use crate::error::{Error, Result};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "HECKE_SIGNS_CACHE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableFile {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub rows: Vec<(u64, i128)>,
}

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::MalformedTable { path: path.to_path_buf(), reason: reason.into() }
}

pub fn parse_table(path: &Path, text: &str) -> Result<TableFile> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| malformed(path, "empty file"))?;
    let header =
        header.strip_prefix('#').ok_or_else(|| malformed(path, "missing '# label=… weight=… level=…' header"))?;
    let (mut label, mut weight, mut level) = (None, None, None);
    for field in header.split_whitespace() {
        let (key, value) =
            field.split_once('=').ok_or_else(|| malformed(path, format!("bad header field {field:?}")))?;
        match key {
            "label" => label = Some(value.to_string()),
            "weight" => weight = value.parse().ok(),
            "level" => level = value.parse().ok(),
            _ => {}
        }
    }
    let (label, weight, level) = match (label, weight, level) {
        (Some(l), Some(w), Some(n)) => (l, w, n),
        _ => return Err(malformed(path, "header needs label, weight and level")),
    };
    let mut rows: Vec<(u64, i128)> = Vec::new();
    for (i, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line == "p,a_p" {
            continue;
        }
        let (p, ap) =
            line.split_once(',').ok_or_else(|| malformed(path, format!("line {}: expected 'p,a_p'", i + 1)))?;
        let p: u64 = p.trim().parse().map_err(|_| malformed(path, format!("line {}: bad prime", i + 1)))?;
        let ap: i128 = ap.trim().parse().map_err(|_| malformed(path, format!("line {}: bad integer", i + 1)))?;
        if rows.last().is_some_and(|&(q, _)| q >= p) {
            return Err(malformed(path, format!("line {}: primes must be strictly ascending", i + 1)));
        }
        rows.push((p, ap));
    }
    Ok(TableFile { label, weight, level, rows })
}

pub fn read_table_file(path: &Path) -> Result<TableFile> {
    let text = fs::read_to_string(path)?;
    parse_table(path, &text)
}

pub fn render_table(table: &EigenvalueTable) -> String {
    let spec = table.spec();
    let mut out = format!("# label={} weight={} level={}\n", spec.label, spec.weight, spec.level);
    for e in table.entries() {
        let _ = writeln!(out, "{},{}", e.p, e.ap);
    }
    out
}

/// Writes via a temporary file and a rename so readers never see a partial table.
pub fn write_table_file(path: &Path, table: &EigenvalueTable) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("csv.tmp");
    fs::write(&tmp, render_table(table))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Spec of an explicit table file, taken from its header.
pub fn spec_from_table_file(path: &Path) -> Result<NewformSpec> {
    let file = read_table_file(path)?;
    NewformSpec::new(file.label, file.weight, file.level, Source::ExplicitTable(path.to_path_buf()), true)
}

/// Directory of cached tables, one file per `(label, prime_limit)`.
#[derive(Clone, Debug)]
pub struct CoefficientCache {
    dir: PathBuf,
    allow_build: bool,
}

impl CoefficientCache {
    pub fn new(dir: impl Into<PathBuf>, allow_build: bool) -> Self {
        Self { dir: dir.into(), allow_build }
    }

    /// Uses `$HECKE_SIGNS_CACHE` when set, otherwise `default_dir`.
    pub fn from_env_or(default_dir: impl Into<PathBuf>, allow_build: bool) -> Self {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::new(dir, allow_build),
            _ => Self::new(default_dir, allow_build),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, label: &str, prime_limit: u64) -> PathBuf {
        self.dir.join(format!("{label}_{prime_limit}.csv"))
    }

    /// Loads the cached table, or builds and persists it.
    pub fn load_or_build(&self, spec: &NewformSpec, prime_limit: u64) -> Result<EigenvalueTable> {
        let path = self.path_for(&spec.label, prime_limit);
        if path.exists() {
            let file = read_table_file(&path)?;
            if file.label != spec.label || file.weight != spec.weight || file.level != spec.level {
                return Err(malformed(&path, "header does not match the requested form"));
            }
            return EigenvalueTable::from_integer_coefficients(spec.clone(), prime_limit, file.rows);
        }
        if !self.allow_build {
            return Err(Error::CacheMiss(path.display().to_string()));
        }
        let table = build_table(spec, prime_limit)?;
        write_table_file(&path, &table)?;
        Ok(table)
    }
}
