//! Run configuration: a sectioned `key = value` text format.
//!
//! ```text
//! # comments start with '#'
//! [space]
//! q = 2
//! blocks = 3, 3
//! lambda = 1, 2
//!
//! [gcc]
//! levels = 1
//! chain.1 = repetition          # codes from the largest down, joined by '>'
//! chain.2 = full
//! outer.1 = full
//!
//! [limits]
//! max_codewords = 1048576
//! max_ambient = 4194304
//!
//! [output]
//! format = csv
//! path = table.csv
//!
//! [search]
//! inner = repetition, parity, hamming, full
//! outer = full, mother:parity
//! max_levels = 2
//! ```
//!
//! Inner codes are a family name used at its forced dimension
//! (`repetition`, `parity`, `hamming`, `full`), `rs:K` for a Reed-Solomon
//! code of dimension `K`, `zero`, or `file:PATH` for a generator-matrix file.
//! Outer codes are `full`, `mother:FAMILY`, `mother:rs:K` or `file:PATH`.
//! Relative paths are resolved against the config file's directory. Unknown
//! sections and keys are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use whm::code::CodeFamily;
use whm::construct::search::{OuterChoice, SearchMenu};
use whm::oracle::OracleLimits;
use whm::WeightedSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => err(format!("unknown output format {other:?} (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSpec {
    /// A family at its forced dimension.
    Named(CodeFamily),
    /// A family with an explicit dimension.
    Sized(CodeFamily, usize),
    Zero,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OuterSpec {
    Choice(OuterChoice),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GccSpec {
    pub levels: usize,
    /// Per block, one code per level.
    pub chains: Vec<Vec<CodeSpec>>,
    pub outers: Vec<OuterSpec>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutputSpec {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub space: WeightedSpace,
    pub gcc: Option<GccSpec>,
    pub limits: OracleLimits,
    pub output: OutputSpec,
    pub search: Option<SearchMenu>,
}

const SECTIONS: &[&str] = &["space", "gcc", "limits", "output", "search"];

type Sections = BTreeMap<String, BTreeMap<String, (usize, String)>>;

fn split_sections(text: &str) -> Result<Sections, ConfigError> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim();
            if !SECTIONS.contains(&name) {
                return err(format!("line {lineno}: unknown section [{name}]"));
            }
            if sections.contains_key(name) {
                return err(format!("line {lineno}: section [{name}] appears twice"));
            }
            sections.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let Some(section) = &current else {
            return err(format!("line {lineno}: key outside of any section"));
        };
        let Some((key, value)) = line.split_once('=') else {
            return err(format!("line {lineno}: expected `key = value`"));
        };
        let key = key.trim().to_string();
        let entries = sections.get_mut(section).unwrap();
        if entries.contains_key(&key) {
            return err(format!("line {lineno}: key {key:?} repeated in [{section}]"));
        }
        entries.insert(key, (lineno, value.trim().to_string()));
    }
    Ok(sections)
}

fn number<T: FromStr>(key: &str, line: usize, v: &str) -> Result<T, ConfigError> {
    v.trim().parse().or_else(|_| err(format!("line {line}: {key} must be a non-negative integer, got {v:?}")))
}

fn list<T: FromStr>(key: &str, line: usize, v: &str) -> Result<Vec<T>, ConfigError> {
    v.split(',').map(|x| number(key, line, x)).collect()
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p.trim());
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn code_spec(s: &str, base: &Path, line: usize) -> Result<CodeSpec, ConfigError> {
    let s = s.trim();
    if let Some(path) = s.strip_prefix("file:") {
        return Ok(CodeSpec::File(resolve(base, path)));
    }
    if s == "zero" {
        return Ok(CodeSpec::Zero);
    }
    let (name, dim) = match s.split_once(':') {
        Some((n, k)) => (n, Some(number::<usize>("code dimension", line, k)?)),
        None => (s, None),
    };
    let family: CodeFamily = name.parse().map_err(|e: whm::Error| ConfigError(format!("line {line}: {e}")))?;
    match (family, dim) {
        (CodeFamily::Custom, _) => err(format!("line {line}: give custom codes as file:PATH")),
        (_, Some(k)) => Ok(CodeSpec::Sized(family, k)),
        (CodeFamily::ReedSolomon, None) => err(format!("line {line}: Reed-Solomon codes need a dimension, e.g. rs:3")),
        (_, None) => Ok(CodeSpec::Named(family)),
    }
}

fn outer_spec(s: &str, base: &Path, line: usize) -> Result<OuterSpec, ConfigError> {
    match s.trim().strip_prefix("file:") {
        Some(path) => Ok(OuterSpec::File(resolve(base, path))),
        None => s.parse().map(OuterSpec::Choice).map_err(|e: whm::Error| ConfigError(format!("line {line}: {e}"))),
    }
}

fn take<'a>(
    entries: &'a BTreeMap<String, (usize, String)>,
    section: &str,
    key: &str,
) -> Result<&'a (usize, String), ConfigError> {
    entries.get(key).ok_or_else(|| ConfigError(format!("[{section}] is missing {key:?}")))
}

fn check_keys(
    entries: &BTreeMap<String, (usize, String)>,
    section: &str,
    known: impl Fn(&str) -> bool,
) -> Result<(), ConfigError> {
    match entries.iter().find(|(k, _)| !known(k)) {
        Some((k, (line, _))) => err(format!("line {line}: unknown key {k:?} in [{section}]")),
        None => Ok(()),
    }
}

/// Index `i` in `1..=max` from `prefix.i`.
fn indexed(key: &str, prefix: &str, max: usize) -> Option<usize> {
    let i: usize = key.strip_prefix(prefix)?.parse().ok()?;
    (1..=max).contains(&i).then_some(i)
}

/// Parses a config; `base` is the directory that relative paths refer to.
pub fn parse(text: &str, base: &Path) -> Result<RunConfig, ConfigError> {
    let sections = split_sections(text)?;
    let empty = BTreeMap::new();

    let space_entries = sections.get("space").ok_or_else(|| ConfigError("missing [space] section".into()))?;
    check_keys(space_entries, "space", |k| matches!(k, "q" | "blocks" | "lambda"))?;
    let (ql, q) = take(space_entries, "space", "q")?;
    let (bl, blocks) = take(space_entries, "space", "blocks")?;
    let (ll, lambda) = take(space_entries, "space", "lambda")?;
    let q: u32 = number("q", *ql, q)?;
    let blocks: Vec<usize> = list("blocks", *bl, blocks)?;
    let lambda: Vec<u64> = list("lambda", *ll, lambda)?;
    whm::Field::prime(q).map_err(|e| ConfigError(format!("line {ql}: {e}")))?;
    let space = WeightedSpace::new(q, blocks, lambda).map_err(|e| ConfigError(format!("[space]: {e}")))?;
    let m = space.block_count();

    let gcc = match sections.get("gcc") {
        None => None,
        Some(entries) => {
            let (lvl_line, levels) = take(entries, "gcc", "levels")?;
            let levels: usize = number("levels", *lvl_line, levels)?;
            if levels == 0 {
                return err(format!("line {lvl_line}: levels must be at least 1"));
            }
            check_keys(entries, "gcc", |k| {
                k == "levels" || indexed(k, "chain.", m).is_some() || indexed(k, "outer.", levels).is_some()
            })?;
            let mut chains = Vec::with_capacity(m);
            for l in 1..=m {
                let (line, v) = take(entries, "gcc", &format!("chain.{l}"))?;
                let codes: Vec<CodeSpec> = v.split('>').map(|c| code_spec(c, base, *line)).collect::<Result<_, _>>()?;
                if codes.len() != levels {
                    return err(format!("line {line}: chain.{l} lists {} codes, levels = {levels}", codes.len()));
                }
                chains.push(codes);
            }
            let outers = (1..=levels)
                .map(|j| {
                    let (line, v) = take(entries, "gcc", &format!("outer.{j}"))?;
                    outer_spec(v, base, *line)
                })
                .collect::<Result<_, _>>()?;
            Some(GccSpec { levels, chains, outers })
        }
    };

    let mut limits = OracleLimits::default();
    let lim = sections.get("limits").unwrap_or(&empty);
    check_keys(lim, "limits", |k| matches!(k, "max_codewords" | "max_ambient"))?;
    if let Some((line, v)) = lim.get("max_codewords") {
        limits.max_codewords = number("max_codewords", *line, v)?;
    }
    if let Some((line, v)) = lim.get("max_ambient") {
        limits.max_ambient = number("max_ambient", *line, v)?;
    }

    let out = sections.get("output").unwrap_or(&empty);
    check_keys(out, "output", |k| matches!(k, "format" | "path"))?;
    let output = OutputSpec {
        format: out
            .get("format")
            .map(|(line, v)| v.parse().map_err(|e: ConfigError| ConfigError(format!("line {line}: {e}"))))
            .transpose()?,
        path: out.get("path").map(|(_, v)| resolve(base, v)),
    };

    let search = match sections.get("search") {
        None => None,
        Some(entries) => {
            check_keys(entries, "search", |k| matches!(k, "inner" | "outer" | "max_levels"))?;
            let (il, inner) = take(entries, "search", "inner")?;
            let inner = inner
                .split(',')
                .map(|f| f.parse::<CodeFamily>().map_err(|e| ConfigError(format!("line {il}: {e}"))))
                .collect::<Result<_, _>>()?;
            let outer = match entries.get("outer") {
                None => vec![OuterChoice::Full],
                Some((line, v)) => v
                    .split(',')
                    .map(|o| o.parse::<OuterChoice>().map_err(|e| ConfigError(format!("line {line}: {e}"))))
                    .collect::<Result<_, _>>()?,
            };
            let max_levels = match entries.get("max_levels") {
                None => 1,
                Some((line, v)) => number("max_levels", *line, v)?,
            };
            Some(SearchMenu { inner, outer, max_levels })
        }
    };

    Ok(RunConfig { space, gcc, limits, output, search })
}

pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text, path.parent().unwrap_or(Path::new(".")))
}
