//! Command implementations behind the `whm` binary. Each command returns the
//! text it would print; the binary decides where it goes.

pub mod config;

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use whm::bounds::{self, BoundRow, BoundTable};
use whm::code::io::{format_matrix, parse_matrix};
use whm::code::{named_code, LinearCode, NestedChain, PolyalphabeticCode};
use whm::construct::search::{self, build_outer, Candidate};
use whm::construct::GccCode;
use whm::decode::gcc_decode;
use whm::oracle;
use whm::{Field, WeightProfile, WeightedSpace};

use config::{CodeSpec, ConfigError, Format, OuterSpec, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(whm::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.0)
    }
}

impl From<whm::Error> for CliError {
    fn from(e: whm::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 2 for bad input, 3 for refused enumerations, 4 for internal defects.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(whm::Error::ExhaustionRefused { .. }) => 3,
            CliError::Core(whm::Error::Defect(_)) => 4,
            CliError::Core(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Default upper end of a `t` sweep: one past the largest capability any
/// vector can have, where every bound has dropped to zero.
pub fn default_t_max(space: &WeightedSpace) -> u64 {
    (space.tau(&WeightProfile(space.blocks().to_vec())) + 1) as u64
}

/// Bound table rows, one `t` per thread.
pub fn bound_table(space: &WeightedSpace, t_min: u64, t_max: u64) -> Result<BoundTable> {
    let ts: Vec<u64> = (t_min..=t_max).collect();
    let rows: Vec<whm::Result<BoundRow>> = std::thread::scope(|s| {
        let handles: Vec<_> = ts.iter().map(|&t| s.spawn(move || bounds::bound_row(space, t))).collect();
        handles.into_iter().map(|h| h.join().expect("bound worker panicked")).collect()
    });
    Ok(BoundTable { space: space.clone(), rows: rows.into_iter().collect::<whm::Result<_>>()? })
}

pub fn cmd_bounds(cfg: &RunConfig, t_min: u64, t_max: Option<u64>, format: Format, lp_optimum: bool) -> Result<String> {
    let t_max = t_max.unwrap_or_else(|| default_t_max(&cfg.space));
    let table = bound_table(&cfg.space, t_min, t_max)?;
    Ok(match (format, lp_optimum) {
        (Format::Json, _) => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        (Format::Csv, false) => table.to_csv(),
        (Format::Csv, true) => {
            let mut out = format!("{},lp_optimum\n", BoundTable::CSV_HEADER);
            for r in &table.rows {
                let _ = writeln!(out, "{},{},{},{},{},{}", r.t, r.packing, r.singleton, r.lp, r.covering, r.lp_optimum);
            }
            out
        }
    })
}

/// A gnuplot script drawing every bound column of a CSV written by `bounds`.
pub fn gnuplot_script(data: &Path) -> String {
    let data = data.display().to_string().replace('\'', "''");
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset key autotitle columnhead\n");
    s.push_str("set xlabel 't'\nset ylabel 'k'\nset grid\n");
    let _ = writeln!(s, "plot for [col=2:5] '{data}' using 1:col with linespoints");
    s
}

fn load_code(path: &Path, field: &Field, n: usize) -> Result<LinearCode> {
    let (f, rows) = parse_matrix(&read(path)?)?;
    if &f != field {
        return Err(CliError::Config(format!("{} is not over F_{}", path.display(), field.order())));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Config(format!("{} does not have length {n}", path.display())));
    }
    Ok(if rows.is_empty() { LinearCode::zero(field.clone(), n) } else { LinearCode::new(field.clone(), &rows)? })
}

fn inner_code(spec: &CodeSpec, field: &Field, n: usize) -> Result<LinearCode> {
    Ok(match spec {
        CodeSpec::Zero => LinearCode::zero(field.clone(), n),
        CodeSpec::File(p) => load_code(p, field, n)?,
        CodeSpec::Sized(fam, k) => named_code(*fam, field, n, *k)?,
        CodeSpec::Named(fam) => {
            let k = fam
                .natural_dimension(field, n)
                .ok_or_else(|| CliError::Config(format!("no {fam} code of length {n}")))?;
            named_code(*fam, field, n, k)?
        }
    })
}

/// Assembles the `[gcc]` section.
pub fn build_gcc(cfg: &RunConfig) -> Result<GccCode> {
    let spec = cfg.gcc.as_ref().ok_or_else(|| CliError::Config("this command needs a [gcc] section".into()))?;
    let field = Field::prime(cfg.space.q())?;
    let limit = cfg.limits.max_codewords;
    let chains = spec
        .chains
        .iter()
        .zip(cfg.space.blocks())
        .map(|(codes, &n)| {
            let codes =
                codes.iter().map(|c| inner_code(c, &field, n).map(|c| c.with_limit(limit))).collect::<Result<_>>()?;
            Ok(NestedChain::new(codes)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut outers = Vec::with_capacity(spec.levels);
    for (j, o) in spec.outers.iter().enumerate() {
        let sizes: Vec<usize> = chains.iter().map(|c| c.quotient_dim(j)).collect();
        let outer = match o {
            OuterSpec::Choice(choice) => build_outer(&field, *choice, &sizes)?.ok_or_else(|| {
                CliError::Config(format!("outer.{}: {choice} cannot be built for symbol sizes {sizes:?}", j + 1))
            })?,
            OuterSpec::File(p) => {
                let (f, rows) = parse_matrix(&read(p)?)?;
                if f != field {
                    return Err(CliError::Config(format!("{} is not over F_{}", p.display(), field.order())));
                }
                PolyalphabeticCode::new(field.clone(), sizes, &rows)?
            }
        };
        outers.push(outer.with_limit(limit));
    }
    Ok(GccCode::build(cfg.space.clone(), chains, outers)?)
}

#[derive(Debug, Serialize)]
struct ConstructSummary {
    length: usize,
    dimension: usize,
    designed_distance: u64,
    capability_bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_distance: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_capability: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decoder_check: Option<oracle::DecoderCheck>,
}

/// Summary text and generator matrix of the configured code. With
/// `verify`, adds the exact distance and capability and a decoder check at
/// the capability bound.
pub fn cmd_construct(cfg: &RunConfig, format: Format, verify: bool, seed: u64) -> Result<(String, String)> {
    let gcc = build_gcc(cfg)?;
    let gen = gcc.generator_matrix()?;
    let mut summary = ConstructSummary {
        length: gcc.length(),
        dimension: gcc.dimension(),
        designed_distance: gcc.designed_distance(),
        capability_bound: gcc.capability_bound(),
        exact_distance: None,
        exact_capability: None,
        decoder_check: None,
    };
    if verify {
        let code = gcc.to_linear_code()?;
        summary.exact_distance = Some(oracle::exact_min_weighted_distance(&code, gcc.space(), &cfg.limits)?);
        summary.exact_capability = Some(oracle::exact_capability(&code, gcc.space(), &cfg.limits)?);
        let t = gcc.capability_bound().max(0) as u64;
        summary.decoder_check = Some(oracle::exhaustive_decoder_check(&gcc, t, seed, &cfg.limits)?);
    }
    let text = match format {
        Format::Json => to_json(&summary),
        Format::Csv => {
            let mut head = String::from("N,k,designed_distance,capability_bound");
            let mut row = format!(
                "{},{},{},{}",
                summary.length, summary.dimension, summary.designed_distance, summary.capability_bound
            );
            if let (Some(d), Some(t), Some(check)) =
                (summary.exact_distance, summary.exact_capability, &summary.decoder_check)
            {
                head.push_str(",exact_distance,exact_capability,decoder_trials,decoder_failures");
                let _ = write!(row, ",{d},{t},{},{}", check.total, check.failures);
            }
            format!("{head}\n{row}\n")
        }
    };
    Ok((text, format_matrix(gcc.field(), &gen)))
}

#[derive(Debug, Serialize)]
struct BoundsAt {
    t: i64,
    packing: usize,
    singleton: usize,
    lp: usize,
    covering: usize,
}

#[derive(Debug, Serialize)]
struct AnalyzeReport {
    length: usize,
    dimension: usize,
    min_weighted_distance: u64,
    capability: i64,
    /// Capabilities compatible with the distance alone.
    capability_range_from_distance: (u64, u64),
    bounds_at_capability: BoundsAt,
    meets_packing: bool,
    meets_singleton: bool,
    meets_lp: bool,
}

/// Exact distance and capability of a generator-matrix file, compared with
/// the dimension bounds at that capability.
pub fn cmd_analyze(cfg: &RunConfig, code_path: &Path, format: Format) -> Result<String> {
    let field = Field::prime(cfg.space.q())?;
    let code = load_code(code_path, &field, cfg.space.length())?;
    let space = &cfg.space;
    let d = oracle::exact_min_weighted_distance(&code, space, &cfg.limits)?;
    let t = oracle::exact_capability(&code, space, &cfg.limits)?;
    let tu = t.max(0) as u64;
    let b = BoundsAt {
        t,
        packing: bounds::packing_bound(space, tu),
        singleton: bounds::singleton_k_for_t(space, tu),
        lp: bounds::lp_bound(space, tu)?,
        covering: bounds::covering_bound(space, tu),
    };
    let k = code.dimension();
    let report = AnalyzeReport {
        length: code.length(),
        dimension: k,
        min_weighted_distance: d,
        capability: t,
        capability_range_from_distance: bounds::t_interval_from_d(space, d),
        meets_packing: k == b.packing,
        meets_singleton: k == b.singleton,
        meets_lp: k == b.lp,
        bounds_at_capability: b,
    };
    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "N,k,d,t,packing,singleton,lp,covering\n{},{},{},{},{},{},{},{}\n",
            report.length,
            k,
            d,
            t,
            report.bounds_at_capability.packing,
            report.bounds_at_capability.singleton,
            report.bounds_at_capability.lp,
            report.bounds_at_capability.covering
        ),
    })
}

/// Parses a received word: symbols separated by whitespace or commas.
pub fn parse_word(text: &str) -> Result<Vec<u32>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap())
        .flat_map(|l| l.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Config(format!("bad symbol {t:?} in received word"))))
        .collect()
}

/// Decode report as JSON.
pub fn cmd_decode(cfg: &RunConfig, received: &Path) -> Result<String> {
    let gcc = build_gcc(cfg)?;
    let r = parse_word(&read(received)?)?;
    let report = gcc_decode(&gcc, &r)?;
    let mut s = report.to_json();
    s.push('\n');
    Ok(s)
}

fn witness<T: Ord + Copy>(cands: &[Candidate], value: T, k: usize, get: impl Fn(&Candidate) -> T) -> String {
    cands.iter().find(|c| c.dimension == k && get(c) >= value).map(ToString::to_string).unwrap_or_default()
}

/// Frontiers of the configured search menu: CSV sections `t,k` and `d,k`
/// separated by a blank line, or a JSON object with witnesses.
pub fn cmd_search(cfg: &RunConfig, format: Format) -> Result<String> {
    let menu = cfg.search.as_ref().ok_or_else(|| CliError::Config("search needs a [search] section".into()))?;
    let res = search::search(&cfg.space, menu)?;
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("t,k\n");
            for (t, k) in &res.t_frontier {
                let _ = writeln!(s, "{t},{k}");
            }
            s.push_str("\nd,k\n");
            for (d, k) in &res.d_frontier {
                let _ = writeln!(s, "{d},{k}");
            }
            s
        }
        Format::Json => {
            let t: Vec<_> = res
                .t_frontier
                .iter()
                .map(|&(t, k)| json!({"t": t, "k": k, "code": witness(&res.candidates, t, k, |c| c.capability_bound)}))
                .collect();
            let d: Vec<_> = res
                .d_frontier
                .iter()
                .map(|&(d, k)| json!({"d": d, "k": k, "code": witness(&res.candidates, d, k, |c| c.designed_distance)}))
                .collect();
            to_json(&json!({"evaluated": res.evaluated, "t_frontier": t, "d_frontier": d}))
        }
    })
}

/// Ball and difference-set sizes per `t`, or with a code file its
/// block-weight enumerator.
pub fn cmd_enumerate(
    cfg: &RunConfig,
    t_min: u64,
    t_max: Option<u64>,
    code: Option<&Path>,
    format: Format,
) -> Result<String> {
    let space = &cfg.space;
    if let Some(path) = code {
        let field = Field::prime(space.q())?;
        let code = load_code(path, &field, space.length())?;
        let en = oracle::block_weight_enumerator(&code, space, &cfg.limits)?;
        return Ok(match format {
            Format::Csv => {
                let mut s = String::from("profile,weight,tau,count\n");
                for (p, n) in &en {
                    let _ = writeln!(s, "\"{p}\",{},{},{n}", space.weighted_weight(p), space.tau(p));
                }
                s
            }
            Format::Json => {
                let rows: Vec<_> = en
                    .iter()
                    .map(|(p, n)| json!({"profile": p.0, "weight": space.weighted_weight(p), "tau": space.tau(p), "count": n}))
                    .collect();
                to_json(&rows)
            }
        });
    }
    let t_max = t_max.unwrap_or_else(|| default_t_max(space));
    let rows: Vec<_> = (t_min..=t_max)
        .map(|t| {
            (
                t,
                space.ball_profiles(t).len(),
                space.ball_size(t),
                space.diff_ball_profiles(t).len(),
                space.diff_ball_size(t),
            )
        })
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("t,ball_profiles,ball_size,diff_profiles,diff_size\n");
            for (t, bp, bs, dp, ds) in &rows {
                let _ = writeln!(s, "{t},{bp},{bs},{dp},{ds}");
            }
            s
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(t, bp, bs, dp, ds)| {
                    json!({"t": t, "ball_profiles": bp, "ball_size": bs.to_string(), "diff_profiles": dp, "diff_size": ds.to_string()})
                })
                .collect();
            to_json(&v)
        }
    })
}
