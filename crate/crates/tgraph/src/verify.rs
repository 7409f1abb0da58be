//! Exhaustive enumeration of all threshold codes on n vertices and machine
//! checks of the three headline facts:
//!
//! * almost-alternating codes maximize the number of matchings in their
//!   `(n, e)` class, strictly above every other code, and all of them share
//!   the same matching vector ([`verify_max_matchings`]);
//! * the colex code uniquely minimizes the number of independent sets and
//!   weakly minimizes every `i_k` ([`verify_min_indsets`]);
//! * the per-size conjecture: `m_k(G) ≤ m_k(A)` for every `k`, strict for
//!   `k ≥ 2` whenever `m_k(A) > 0` and `G` is not almost alternating
//!   ([`conjecture_scan`]).
//!
//! The 2^(n-1) codes are split into contiguous prefix chunks, each chunk is
//! folded into an [`EdgeClassSummary`] per edge count, and the chunk tables
//! are merged in index order. The chunking depends only on n, so reports
//! are identical for any worker count, and each chunk can be cached on disk
//! and resumed ([`enumeration_report_resumable`]).

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::ops::Range;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{Bit, ThresholdCode};
use crate::counting::{ind_vector, match_vector, IndependenceVector, MatchingVector};
use crate::extremal;
use crate::graph::edge_count;

/// All 2^(n-1) normalized codes on `n` vertices in lexicographic order.
pub fn enumerate_codes(n: usize) -> impl Iterator<Item = ThresholdCode> {
    assert!((1..=48).contains(&n), "enumeration domain is 1 ..= 48 vertices");
    (0..1u64 << (n - 1)).map(move |mask| code_from_mask(n, mask))
}

/// The code whose stored digits spell `mask` in binary, most significant
/// digit first (so ascending masks give lexicographic order).
fn code_from_mask(n: usize, mask: u64) -> ThresholdCode {
    let symbols = (0..n - 1)
        .map(|i| if mask >> (n - 2 - i) & 1 == 1 { Bit::One } else { Bit::Zero })
        .collect();
    ThresholdCode::from_symbols(symbols)
}

mod biguint_string {
    use super::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

mod biguint_string_opt {
    use super::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &Option<BigUint>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serializer.serialize_some(&v.to_string()),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<BigUint>, D::Error> {
        let text = Option::<String>::deserialize(deserializer)?;
        text.map(|t| t.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// Everything the theorems need to know about one `(n, e)` class, built by
/// merging per-code singletons. Achiever lists stay in enumeration order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeClassSummary {
    pub e: u64,
    /// Codes seen with this edge count.
    pub codes: u64,
    /// Largest matching total and every code attaining it.
    #[serde(with = "biguint_string")]
    pub max_m: BigUint,
    pub max_m_achievers: Vec<ThresholdCode>,
    /// Smallest independent-set total and every code attaining it.
    #[serde(with = "biguint_string")]
    pub min_i: BigUint,
    pub min_i_achievers: Vec<ThresholdCode>,
    /// How many of the codes are almost alternating.
    pub aa_codes: u64,
    /// The matching vector shared by the almost-alternating codes, with the
    /// first code that produced it; `aa_vector_mismatch` holds two
    /// almost-alternating codes with different vectors if any exist.
    pub aa_vector: Option<MatchingVector>,
    pub aa_vector_witness: Option<ThresholdCode>,
    pub aa_vector_mismatch: Option<(ThresholdCode, ThresholdCode)>,
    /// Largest matching total among codes that are NOT almost alternating,
    /// with its first achiever; the strictness side of the theorem.
    #[serde(with = "biguint_string_opt")]
    pub non_aa_max_m: Option<BigUint>,
    pub non_aa_witness: Option<ThresholdCode>,
    /// Per-size extrema over the whole class (and over the non-aa part).
    pub max_mk: MatchingVector,
    pub min_ik: IndependenceVector,
    pub non_aa_max_mk: Option<MatchingVector>,
}

fn pointwise_max_m(a: &MatchingVector, b: &MatchingVector) -> MatchingVector {
    assert_eq!(a.counts().len(), b.counts().len());
    MatchingVector::from_counts(
        a.counts().iter().zip(b.counts()).map(|(x, y)| x.max(y).clone()).collect(),
    )
}

fn pointwise_min_i(a: &IndependenceVector, b: &IndependenceVector) -> IndependenceVector {
    assert_eq!(a.counts().len(), b.counts().len());
    IndependenceVector::from_counts(
        a.counts().iter().zip(b.counts()).map(|(x, y)| x.min(y).clone()).collect(),
    )
}

impl EdgeClassSummary {
    /// The summary of a single code.
    pub fn of_code(code: &ThresholdCode) -> Self {
        let e = edge_count(code);
        let m = match_vector(code);
        let i = ind_vector(code);
        let aa = code.is_almost_alternating();
        EdgeClassSummary {
            e,
            codes: 1,
            max_m: m.total(),
            max_m_achievers: vec![code.clone()],
            min_i: i.total(),
            min_i_achievers: vec![code.clone()],
            aa_codes: aa as u64,
            aa_vector: aa.then(|| m.clone()),
            aa_vector_witness: aa.then(|| code.clone()),
            aa_vector_mismatch: None,
            non_aa_max_m: (!aa).then(|| m.total()),
            non_aa_witness: (!aa).then(|| code.clone()),
            max_mk: m.clone(),
            min_ik: i,
            non_aa_max_mk: (!aa).then_some(m),
        }
    }

    /// Fold `other` (codes enumerated after `self`'s) into `self`. Ties keep
    /// the earlier achievers first, so an in-order fold of per-code
    /// singletons gives the same summary no matter how it is chunked.
    pub fn merge(mut self, other: Self) -> Self {
        assert_eq!(self.e, other.e, "summaries of different edge counts");
        self.codes += other.codes;

        match other.max_m.cmp(&self.max_m) {
            std::cmp::Ordering::Greater => {
                self.max_m = other.max_m;
                self.max_m_achievers = other.max_m_achievers;
            }
            std::cmp::Ordering::Equal => self.max_m_achievers.extend(other.max_m_achievers),
            std::cmp::Ordering::Less => {}
        }
        match other.min_i.cmp(&self.min_i) {
            std::cmp::Ordering::Less => {
                self.min_i = other.min_i;
                self.min_i_achievers = other.min_i_achievers;
            }
            std::cmp::Ordering::Equal => self.min_i_achievers.extend(other.min_i_achievers),
            std::cmp::Ordering::Greater => {}
        }

        self.aa_codes += other.aa_codes;
        if self.aa_vector_mismatch.is_none() {
            self.aa_vector_mismatch = other.aa_vector_mismatch.or_else(|| {
                match (&self.aa_vector, &other.aa_vector) {
                    (Some(a), Some(b)) if a != b => Some((
                        self.aa_vector_witness.clone().expect("vector implies witness"),
                        other.aa_vector_witness.clone().expect("vector implies witness"),
                    )),
                    _ => None,
                }
            });
        }
        if self.aa_vector.is_none() {
            self.aa_vector = other.aa_vector;
            self.aa_vector_witness = other.aa_vector_witness;
        }

        match (&mut self.non_aa_max_m, other.non_aa_max_m) {
            (Some(mine), Some(theirs)) if theirs > *mine => {
                *mine = theirs;
                self.non_aa_witness = other.non_aa_witness;
            }
            (None, Some(theirs)) => {
                self.non_aa_max_m = Some(theirs);
                self.non_aa_witness = other.non_aa_witness;
            }
            _ => {}
        }

        self.max_mk = pointwise_max_m(&self.max_mk, &other.max_mk);
        self.min_ik = pointwise_min_i(&self.min_ik, &other.min_ik);
        self.non_aa_max_mk = match (self.non_aa_max_mk.take(), other.non_aa_max_mk) {
            (Some(a), Some(b)) => Some(pointwise_max_m(&a, &b)),
            (a, b) => a.or(b),
        };
        self
    }
}

/// One report row: the class summary plus the colex code for that `e`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeClassRow {
    pub colex: ThresholdCode,
    #[serde(flatten)]
    pub summary: EdgeClassSummary,
}

/// The full census of T_{n,e} for every e at one n.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub workers: usize,
    pub elapsed_ms: u64,
    pub total_codes: u64,
    pub rows: Vec<EdgeClassRow>,
}

/// Per-chunk accumulator: one summary slot per edge count.
struct Table {
    n: usize,
    classes: Vec<Option<EdgeClassSummary>>,
}

impl Table {
    fn empty(n: usize) -> Self {
        Table { n, classes: vec![None; n * (n - 1) / 2 + 1] }
    }

    fn absorb(&mut self, summary: EdgeClassSummary) {
        let slot = &mut self.classes[summary.e as usize];
        *slot = Some(match slot.take() {
            Some(existing) => existing.merge(summary),
            None => summary,
        });
    }

    fn merge(mut self, other: Table) -> Table {
        assert_eq!(self.n, other.n);
        for summary in other.classes.into_iter().flatten() {
            self.absorb(summary);
        }
        self
    }

    fn for_masks(n: usize, masks: Range<u64>) -> Table {
        let mut table = Table::empty(n);
        for mask in masks {
            table.absorb(EdgeClassSummary::of_code(&code_from_mask(n, mask)));
        }
        table
    }
}

/// Contiguous mask ranges sharing a fixed-length prefix. A function of n
/// alone, so the merge shape (and hence the report) never depends on the
/// worker count.
fn chunk_ranges(n: usize) -> Vec<Range<u64>> {
    let stored = (n - 1) as u32;
    let prefix_bits = stored.min(6);
    let chunk_len = 1u64 << (stored - prefix_bits);
    (0..1u64 << prefix_bits).map(|c| c * chunk_len..(c + 1) * chunk_len).collect()
}

fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return job();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction")
        .install(job)
}

fn finish_report(n: usize, workers: usize, tables: Vec<Table>, started: Instant) -> EnumerationReport {
    let table = tables
        .into_iter()
        .reduce(Table::merge)
        .expect("at least one chunk");
    let rows: Vec<EdgeClassRow> = table
        .classes
        .into_iter()
        .enumerate()
        .map(|(e, summary)| {
            let summary = summary.unwrap_or_else(|| panic!("no codes with {e} edges"));
            let colex = extremal::colex_code(n, e as u64).expect("e is in range");
            EdgeClassRow { colex, summary }
        })
        .collect();
    let total_codes: u64 = rows.iter().map(|r| r.summary.codes).sum();
    assert_eq!(total_codes, 1u64 << (n - 1), "enumeration missed codes");
    EnumerationReport {
        n,
        workers,
        elapsed_ms: started.elapsed().as_millis() as u64,
        total_codes,
        rows,
    }
}

/// Enumerate every code on `n` vertices and summarize each `(n, e)` class.
/// `workers = 0` uses the default thread pool. Rows are identical for any
/// worker count.
pub fn enumeration_report(n: usize, workers: usize) -> EnumerationReport {
    assert!((1..=48).contains(&n), "enumeration domain is 1 ..= 48 vertices");
    let started = Instant::now();
    let tables = with_pool(workers, || {
        chunk_ranges(n)
            .into_par_iter()
            .map(|masks| Table::for_masks(n, masks))
            .collect::<Vec<_>>()
    });
    finish_report(n, workers, tables, started)
}

/// On-disk form of one finished chunk.
#[derive(Serialize, Deserialize)]
struct ChunkFile {
    n: usize,
    chunk: usize,
    mask_start: u64,
    mask_end: u64,
    classes: Vec<EdgeClassSummary>,
}

fn chunk_path(dir: &Path, chunk: usize) -> std::path::PathBuf {
    dir.join(format!("chunk-{chunk:04}.json"))
}

fn load_chunk(dir: &Path, n: usize, chunk: usize, masks: &Range<u64>) -> Option<Table> {
    let text = fs::read_to_string(chunk_path(dir, chunk)).ok()?;
    let file: ChunkFile = serde_json::from_str(&text).ok()?;
    if file.n != n || file.chunk != chunk || file.mask_start != masks.start || file.mask_end != masks.end {
        return None;
    }
    let mut table = Table::empty(n);
    let mut codes = 0;
    for summary in file.classes {
        if summary.e as usize >= table.classes.len() {
            return None;
        }
        codes += summary.codes;
        table.absorb(summary);
    }
    (codes == masks.end - masks.start).then_some(table)
}

fn store_chunk(dir: &Path, n: usize, chunk: usize, masks: &Range<u64>, table: &Table) -> io::Result<()> {
    let file = ChunkFile {
        n,
        chunk,
        mask_start: masks.start,
        mask_end: masks.end,
        classes: table.classes.iter().flatten().cloned().collect(),
    };
    let path = chunk_path(dir, chunk);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string(&file).map_err(io::Error::other)?)?;
    fs::rename(&tmp, &path)
}

/// Like [`enumeration_report`], but each chunk's summary is cached as a JSON
/// file under `dir` (written atomically via a temp file). A rerun loads the
/// finished chunks and computes only what is missing or stale, so a long
/// enumeration can be interrupted and resumed. The result is identical to
/// the in-memory path.
pub fn enumeration_report_resumable(
    n: usize,
    workers: usize,
    dir: &Path,
) -> io::Result<EnumerationReport> {
    assert!((1..=48).contains(&n), "enumeration domain is 1 ..= 48 vertices");
    let started = Instant::now();
    fs::create_dir_all(dir)?;
    let tables = with_pool(workers, || {
        chunk_ranges(n)
            .into_par_iter()
            .enumerate()
            .map(|(chunk, masks)| {
                if let Some(table) = load_chunk(dir, n, chunk, &masks) {
                    return Ok(table);
                }
                let table = Table::for_masks(n, masks.clone());
                store_chunk(dir, n, chunk, &masks, &table)?;
                Ok(table)
            })
            .collect::<io::Result<Vec<_>>>()
    })?;
    Ok(finish_report(n, workers, tables, started))
}

/// Outcome of one theorem check at one n.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremVerdict {
    pub theorem: &'static str,
    pub n: usize,
    pub pass: bool,
    pub failures: Vec<String>,
    pub report: EnumerationReport,
}

/// Check, for every e: every almost-alternating code attains the maximum
/// matching total; every other code sits strictly below it; and all
/// almost-alternating codes share one matching vector, which equals the
/// vector of the constructed representative.
pub fn verify_max_matchings(n: usize, workers: usize) -> TheoremVerdict {
    let report = enumeration_report(n, workers);
    let mut failures = Vec::new();
    for row in &report.rows {
        let s = &row.summary;
        let e = s.e;
        let Some(aa_vector) = &s.aa_vector else {
            failures.push(format!("e={e}: no almost-alternating code in the class"));
            continue;
        };
        if let Some((left, right)) = &s.aa_vector_mismatch {
            failures.push(format!(
                "e={e}: almost-alternating codes {left} and {right} have different matching vectors"
            ));
        }
        if aa_vector.total() != s.max_m {
            failures.push(format!(
                "e={e}: almost-alternating total {} is below the class maximum {}",
                aa_vector.total(),
                s.max_m
            ));
        }
        if let (Some(non_aa), Some(witness)) = (&s.non_aa_max_m, &s.non_aa_witness) {
            if *non_aa >= s.max_m {
                failures.push(format!(
                    "e={e}: non-almost-alternating code {witness} reaches {non_aa}, not strictly below {}",
                    s.max_m
                ));
            }
        }
        if s.max_m_achievers.len() as u64 != s.aa_codes {
            failures.push(format!(
                "e={e}: {} codes attain the maximum but {} are almost alternating",
                s.max_m_achievers.len(),
                s.aa_codes
            ));
        }
        let constructed = extremal::almost_alternating_code(n, e).expect("e is in range");
        if match_vector(&constructed) != *aa_vector {
            failures.push(format!(
                "e={e}: constructed code {constructed} disagrees with the enumerated vector"
            ));
        }
    }
    TheoremVerdict { theorem: "max-matchings", n, pass: failures.is_empty(), failures, report }
}

/// Check, for every e: the colex code is the unique minimizer of the
/// independent-set total and weakly minimizes every `i_k`.
pub fn verify_min_indsets(n: usize, workers: usize) -> TheoremVerdict {
    let report = enumeration_report(n, workers);
    let mut failures = Vec::new();
    for row in &report.rows {
        let s = &row.summary;
        let e = s.e;
        if s.min_i_achievers != [row.colex.clone()] {
            let achievers: Vec<String> =
                s.min_i_achievers.iter().map(ThresholdCode::to_string).collect();
            failures.push(format!(
                "e={e}: minimum {} achieved by [{}], expected exactly the colex code {}",
                s.min_i,
                achievers.join(", "),
                row.colex
            ));
        }
        if s.min_ik != ind_vector(&row.colex) {
            failures.push(format!(
                "e={e}: colex code {} does not weakly minimize every i_k (class minimum {})",
                row.colex, s.min_ik
            ));
        }
    }
    TheoremVerdict { theorem: "min-indsets", n, pass: failures.is_empty(), failures, report }
}

/// Outcome of the per-size conjecture scan over all n up to `n_max`.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub n_max: usize,
    pub workers: usize,
    pub pass: bool,
    pub counterexamples: Vec<String>,
    pub reports: Vec<EnumerationReport>,
}

/// Scan every `(n, e, k)` with `n ≤ n_max` for the per-size conjecture:
/// weakly, no code beats the almost-alternating vector at any size;
/// strictly, for `k ≥ 2` with `m_k(A) > 0`, every non-almost-alternating
/// code stays strictly below it.
pub fn conjecture_scan(n_max: usize, workers: usize) -> ScanReport {
    let mut counterexamples = Vec::new();
    let mut reports = Vec::new();
    for n in 1..=n_max {
        let report = enumeration_report(n, workers);
        for row in &report.rows {
            let s = &row.summary;
            let e = s.e;
            let Some(aa_vector) = &s.aa_vector else {
                counterexamples.push(format!("n={n} e={e}: no almost-alternating code"));
                continue;
            };
            if s.max_mk != *aa_vector {
                counterexamples.push(format!(
                    "n={n} e={e}: some m_k exceeds the almost-alternating value \
                     (class maxima {}, almost-alternating {aa_vector})",
                    s.max_mk
                ));
            }
            if let Some(non_aa) = &s.non_aa_max_mk {
                for k in 2..aa_vector.counts().len() {
                    let bound = &aa_vector.counts()[k];
                    if !bound.is_zero() && non_aa.counts()[k] >= *bound {
                        counterexamples.push(format!(
                            "n={n} e={e} k={k}: a non-almost-alternating code reaches m_{k} = {} \
                             against the strict bound {bound}",
                            non_aa.counts()[k]
                        ));
                    }
                }
            }
        }
        reports.push(report);
    }
    ScanReport {
        n_max,
        workers,
        pass: counterexamples.is_empty(),
        counterexamples,
        reports,
    }
}

/// Render a report as CSV, one row per `(n, e)`. Columns:
/// `n,e,codes,aa_codes,colex,max_m,max_m_achievers,non_aa_max_m,min_i,`
/// `min_i_achievers,aa_vector,max_mk,min_ik,non_aa_max_mk`. Code lists are
/// joined with `;`, vectors use their display form, absent values are empty.
pub fn report_to_csv(report: &EnumerationReport) -> String {
    let mut out = String::from(
        "n,e,codes,aa_codes,colex,max_m,max_m_achievers,non_aa_max_m,min_i,\
         min_i_achievers,aa_vector,max_mk,min_ik,non_aa_max_mk\n",
    );
    for row in &report.rows {
        let s = &row.summary;
        let cells = [
            report.n.to_string(),
            s.e.to_string(),
            s.codes.to_string(),
            s.aa_codes.to_string(),
            row.colex.to_string(),
            s.max_m.to_string(),
            join_codes(&s.max_m_achievers),
            s.non_aa_max_m.as_ref().map(BigUint::to_string).unwrap_or_default(),
            s.min_i.to_string(),
            join_codes(&s.min_i_achievers),
            s.aa_vector.as_ref().map(|v| v.to_string()).unwrap_or_default(),
            s.max_mk.to_string(),
            s.min_ik.to_string(),
            s.non_aa_max_mk.as_ref().map(|v| v.to_string()).unwrap_or_default(),
        ];
        let line = cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "{line}");
    }
    out
}

fn join_codes(codes: &[ThresholdCode]) -> String {
    codes.iter().map(ThresholdCode::to_string).collect::<Vec<_>>().join(";")
}

fn csv_cell(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}
