//! Batch driver: profiles vines, screens their translates, caches one JSON
//! document per vine and cross-checks the canonical list against the
//! reference tables.

use crate::analysis::{profile, VineProfile};
use crate::bigraph::Bigraph;
use crate::golden;
use crate::numeric::perron::perron_eigenpair;
use crate::obstruction::{EliminatedBy, ObstructionReport, ScreenVerdict, VineScreener, DEFAULT_PRIME_BOUND};
use crate::poly::IntPoly;
use crate::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Part of every cache key; bump when cached results change meaning.
pub const MODULE_VERSION: &str = concat!("vinesieve-", env!("CARGO_PKG_VERSION"), "/3");
pub const DEFAULT_PRECISION: u32 = 128;
pub const CACHE_ENV: &str = "VINESIEVE_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".vinesieve-cache";

const CANONICAL_VINES: &str = include_str!("../data/vines.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyConfig {
    pub prime_bound: u64,
    pub precision: u32,
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig { prime_bound: DEFAULT_PRIME_BOUND, precision: DEFAULT_PRECISION, cache_dir: None, jobs: 1 }
    }
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.prime_bound < 2 {
            return Err(Error::Internal("prime bound must be at least 2".into()));
        }
        if self.precision < 64 {
            return Err(Error::Internal("precision must be at least 64 digits".into()));
        }
        Ok(())
    }

    /// Cache directory from the environment, or the default.
    pub fn cache_dir_from_env() -> PathBuf {
        std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }
}

/// One input line: an optional label and an encoded vine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VineInput {
    pub label: String,
    pub graph: String,
}

/// Reads `label<TAB>graph` or bare `graph` lines; `#` starts a comment.
/// Unlabelled vines are numbered by position.
pub fn parse_vine_list(text: &str) -> Vec<VineInput> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            let mut parts = l.split_whitespace();
            let first = parts.next().unwrap_or("");
            match parts.next() {
                Some(g) => VineInput { label: first.to_string(), graph: g.to_string() },
                None => VineInput { label: (i + 1).to_string(), graph: first.to_string() },
            }
        })
        .collect()
}

/// The 38 vines of the reference table, labelled by row.
pub fn canonical_vines() -> Vec<VineInput> {
    parse_vine_list(CANONICAL_VINES)
}

/// High-precision data for a translate that passed every test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivorDetail {
    pub j: usize,
    /// `‖Γ‖²` in decimal at the configured precision.
    pub norm_squared: String,
    pub norm_squared_min_poly: IntPoly,
    /// `max |Mv - λv|` of the eigenpair, in scientific notation.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VineResult {
    pub label: String,
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub profile: Option<VineProfile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub reports: Vec<ObstructionReport>,
    pub survivors: Vec<SurvivorDetail>,
    /// Wall time of the computation that produced this result.
    pub elapsed_ms: f64,
}

impl VineResult {
    /// Translates passing the cyclotomic test.
    pub fn cyclotomic_exceptions(&self) -> Vec<usize> {
        self.reports.iter().filter(|r| r.cyclotomic.passed()).map(|r| r.j).collect()
    }

    /// Distinct first failing primes of the cyclotomic test.
    pub fn failing_primes(&self) -> Vec<u64> {
        let set: BTreeSet<u64> = self
            .reports
            .iter()
            .filter_map(|r| match r.cyclotomic {
                crate::obstruction::CyclotomicVerdict::Fail { prime } => Some(prime),
                _ => None,
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn eliminated_by(&self, test: EliminatedBy) -> impl Iterator<Item = &ObstructionReport> {
        self.reports.iter().filter(move |r| r.verdict == ScreenVerdict::Eliminated { test })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurvivorEntry {
    pub label: String,
    pub graph: String,
    pub j: usize,
    pub norm_squared: String,
    /// `4 < ‖Γ‖² < 5`.
    pub in_window: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyResult {
    pub module_version: String,
    pub prime_bound: u64,
    pub precision: u32,
    pub vines: Vec<VineResult>,
    pub cyclotomic_survivors: usize,
    pub survivors: Vec<SurvivorEntry>,
    pub elapsed_ms: f64,
}

impl SurveyResult {
    /// Copy with all timing fields zeroed, for comparisons.
    pub fn without_timing(&self) -> SurveyResult {
        let mut r = self.clone();
        r.elapsed_ms = 0.0;
        for v in &mut r.vines {
            v.elapsed_ms = 0.0;
        }
        r
    }
}

fn cache_key(graph: &str, config: &SurveyConfig) -> String {
    let mut h = Sha256::new();
    h.update(format!("{MODULE_VERSION}\n{graph}\n{}\n{}", config.prime_bound, config.precision));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_path(dir: &Path, graph: &str, config: &SurveyConfig) -> PathBuf {
    dir.join(format!("{}.json", cache_key(graph, config)))
}

fn load_cached(path: &Path, input: &VineInput) -> Option<VineResult> {
    let text = fs::read_to_string(path).ok()?;
    let mut r: VineResult = serde_json::from_str(&text).ok()?;
    if r.graph != input.graph {
        return None;
    }
    r.label = input.label.clone();
    if let Some(p) = r.profile.as_mut() {
        p.label = Some(input.label.clone());
    }
    Some(r)
}

fn store(path: &Path, r: &VineResult) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    // write then rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec_pretty(r)?)?;
    fs::rename(tmp, path)?;
    Ok(())
}

/// Profiles one vine and screens every translate up to its bound,
/// consulting the cache first.
pub fn analyze_vine(input: &VineInput, config: &SurveyConfig) -> Result<VineResult, Error> {
    let path = config.cache_dir.as_ref().map(|d| cache_path(d, &input.graph, config));
    if let Some(r) = path.as_ref().and_then(|p| load_cached(p, input)) {
        return Ok(r);
    }
    let r = compute_vine(input, config)?;
    if let Some(p) = &path {
        store(p, &r)?;
    }
    Ok(r)
}

fn compute_vine(input: &VineInput, config: &SurveyConfig) -> Result<VineResult, Error> {
    let start = Instant::now();
    let g = Bigraph::parse(&input.graph)?.with_label(input.label.clone());
    let mut result = VineResult {
        label: input.label.clone(),
        graph: g.to_encoding(),
        profile: None,
        error: None,
        reports: Vec::new(),
        survivors: Vec::new(),
        elapsed_ms: 0.0,
    };
    let prof = match profile(&g) {
        Ok(p) => p,
        Err(Error::Rejected(msg)) => {
            result.error = Some(msg);
            result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            return Ok(result);
        }
        Err(e) => return Err(e),
    };
    let mut screener = VineScreener::new(&g, &prof, config.prime_bound);
    for j in 0..=prof.max_translate() {
        let report = screener.screen(j)?;
        if report.survived() {
            let pair = perron_eigenpair(&g.translate(j).adjacency_matrix(), config.precision)?;
            result.survivors.push(SurvivorDetail {
                j,
                norm_squared: pair.norm_squared().to_decimal(config.precision as usize),
                norm_squared_min_poly: report.norm_squared_min_poly.poly.clone().unwrap_or_else(IntPoly::zero),
                residual: format!("{:.3e}", pair.residual.to_f64()),
            });
        }
        result.reports.push(report);
    }
    result.profile = Some(prof);
    result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

/// Runs the pipeline over `vines` on a pool of `config.jobs` threads;
/// results keep the input order.
pub fn run_survey(vines: &[VineInput], config: &SurveyConfig) -> Result<SurveyResult, Error> {
    config.validate()?;
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<Result<VineResult, Error>> =
        pool.install(|| vines.par_iter().map(|v| analyze_vine(v, config)).collect());
    let vines = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let cyclotomic_survivors = vines.iter().map(|v| v.cyclotomic_exceptions().len()).sum();
    let survivors = vines
        .iter()
        .flat_map(|v| {
            v.survivors.iter().map(move |s| {
                let x: f64 = s.norm_squared.get(..20).unwrap_or(&s.norm_squared).parse().unwrap_or(f64::NAN);
                SurvivorEntry {
                    label: v.label.clone(),
                    graph: v.graph.clone(),
                    j: s.j,
                    norm_squared: s.norm_squared.clone(),
                    in_window: strictly_between_four_and_five(&s.norm_squared_min_poly, x),
                }
            })
        })
        .collect();
    Ok(SurveyResult {
        module_version: MODULE_VERSION.to_string(),
        prime_bound: config.prime_bound,
        precision: config.precision,
        vines,
        cyclotomic_survivors,
        survivors,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Decides `4 < x < 5` exactly when `x` is rational, numerically otherwise
/// (an irrational `x` is never equal to 4 or 5).
fn strictly_between_four_and_five(min_poly: &IntPoly, x: f64) -> bool {
    if min_poly.degree() == 1 {
        let (c0, c1) = (min_poly.coeff(0), min_poly.coeff(1));
        // x = -c0 / c1 with c1 > 0
        return -&c0 > &c1 * 4 && -&c0 < &c1 * 5;
    }
    x > 4.0 && x < 5.0
}

/// Outcome of one comparison against the reference tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Table checks decide the exit status; the others are reported only.
    pub table: bool,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>, table: bool) -> Check {
    Check { name: name.into(), passed, detail: detail.into(), table }
}

/// Compares every vine of the reference table present in `result` with its
/// row; the global counts are checked only when all rows are present.
pub fn cross_check(result: &SurveyResult) -> Vec<Check> {
    let rows = golden::table_a();
    let by_graph: BTreeMap<&str, &VineResult> = result.vines.iter().map(|v| (v.graph.as_str(), v)).collect();
    let mut out = Vec::new();
    let mut matched = 0;
    for row in &rows {
        let Some(v) = by_graph.get(row.graph) else { continue };
        matched += 1;
        let Some(p) = &v.profile else {
            out.push(check(format!("row {} profile", row.row), false, v.error.clone().unwrap_or_default(), true));
            continue;
        };
        let got = (p.s, p.k, p.r_bound, p.n_bound);
        let want = (row.s, row.k, row.r_bound, row.n_bound);
        out.push(check(
            format!("row {} (s, K, R, N)", row.row),
            got == want,
            format!("computed {got:?}, table {want:?}"),
            true,
        ));
        let exc = v.cyclotomic_exceptions();
        let mut detail = format!("computed {exc:?}, table {:?}", row.exceptions());
        if row.exceptions() != row.printed_exceptions {
            detail.push_str(&format!(" (printed {:?}, corrected)", row.printed_exceptions));
        }
        out.push(check(format!("row {} exceptions", row.row), exc == row.exceptions(), detail, true));
        if !p.salem {
            let c = &p.d_certificate;
            out.push(check(
                format!("row {} derivative certificate", row.row),
                c.holds && p.d_bound == crate::analysis::profile::TABLE_C_N,
                format!("n = {}, minimum sampled {:.4}, smallest certified n = {}", c.n, c.min_sampled, p.d_min),
                true,
            ));
        }
        let want_b: Vec<(usize, IntPoly)> =
            golden::table_b().into_iter().filter(|(r, _, _)| *r == row.row).map(|(_, j, f)| (j, f)).collect();
        let got_b: Vec<(usize, IntPoly)> = v
            .eliminated_by(EliminatedBy::DNumber)
            .map(|r| (r.j, r.d_number.as_ref().map(|d| d.min_poly.clone()).unwrap_or_default()))
            .collect();
        out.push(check(
            format!("row {} d-number eliminations", row.row),
            got_b == want_b,
            format!("computed {}, table {}", show_pairs(&got_b), show_pairs(&want_b)),
            true,
        ));
        if let Some((_, f)) = golden::NON_INTEGRAL_DIMENSIONS.iter().find(|(r, _)| *r == row.row) {
            let want: IntPoly = f.parse().expect("reference polynomial");
            let got = v
                .reports
                .iter()
                .find(|r| r.j == 0)
                .and_then(|r| r.algebraic_integer.as_ref())
                .filter(|a| !a.passed)
                .map(|a| a.min_poly.clone());
            out.push(check(
                format!("row {} non-integral dimension", row.row),
                got.as_ref() == Some(&want),
                format!("computed {}, expected {want}", got.map_or("none".into(), |g| g.to_string())),
                true,
            ));
        }
    }
    if matched == rows.len() {
        out.push(check(
            "cyclotomic survivors",
            result.cyclotomic_survivors == 28,
            format!("{} translates pass the cyclotomic test", result.cyclotomic_survivors),
            true,
        ));
        let row_of: BTreeMap<&str, usize> = rows.iter().map(|r| (r.graph, r.row)).collect();
        let named = |s: &SurvivorEntry| (row_of.get(s.graph.as_str()).copied().unwrap_or(0), s.j);
        let window: BTreeSet<(usize, usize)> = result.survivors.iter().filter(|s| s.in_window).map(named).collect();
        let want_window: BTreeSet<(usize, usize)> = golden::WINDOW_SURVIVORS.iter().map(|&(r, j, _)| (r, j)).collect();
        out.push(check(
            "survivors with 4 < norm² < 5",
            window == want_window,
            format!("computed {window:?}"),
            false,
        ));
        let rest: BTreeSet<(usize, usize)> = result.survivors.iter().filter(|s| !s.in_window).map(named).collect();
        let want_rest: BTreeSet<(usize, usize)> = golden::INDEX_FIVE_SURVIVORS.iter().copied().collect();
        out.push(check(
            "survivors outside the window",
            rest == want_rest,
            format!("computed {rest:?}, expected {want_rest:?}"),
            false,
        ));
        out.push(check(
            "survivor count",
            result.survivors.len() == 9,
            format!("{} survivors, expected 9", result.survivors.len()),
            false,
        ));
    }
    out
}

fn show_pairs(v: &[(usize, IntPoly)]) -> String {
    let items: Vec<String> = v.iter().map(|(j, f)| format!("j={j}: {f}")).collect();
    format!("[{}]", items.join("; "))
}

/// Whether every table check in `checks` passed.
pub fn tables_agree(checks: &[Check]) -> bool {
    checks.iter().filter(|c| c.table).all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vine_list_parsing() {
        let v = parse_vine_list("# header\n7\tgbg1v1v1v1p1v1x0p1x0\n\ngbg1v1v1p1p1  # trailing\n");
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], VineInput { label: "7".into(), graph: "gbg1v1v1v1p1v1x0p1x0".into() });
        assert_eq!(v[1].label, "2");
        assert_eq!(canonical_vines().len(), 38);
    }

    #[test]
    fn window_is_exact_for_rationals() {
        let five: IntPoly = "x-5".parse().unwrap();
        assert!(!strictly_between_four_and_five(&five, 4.999_999_999_999_999));
        let haagerup: IntPoly = "x^2-5x+3".parse().unwrap();
        assert!(strictly_between_four_and_five(&haagerup, 4.302));
    }

    #[test]
    fn rejected_vines_are_reported() {
        let cfg = SurveyConfig::default();
        let r = run_survey(&parse_vine_list("gbg1v1"), &cfg).unwrap();
        assert!(r.vines[0].error.is_some());
        assert!(r.vines[0].reports.is_empty());
        assert!(run_survey(&[], &cfg).unwrap().vines.is_empty());
    }

    #[test]
    fn config_bounds() {
        assert!(SurveyConfig { prime_bound: 1, ..Default::default() }.validate().is_err());
        assert!(SurveyConfig { precision: 32, ..Default::default() }.validate().is_err());
    }
}
