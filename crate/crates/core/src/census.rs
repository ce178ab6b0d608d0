//! Exhaustive enumeration of involutions under avoidance constraints, with
//! grouped tallies and reconciliation against the named generating functions.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::fine_structure::{classify_unchecked, FineClass};
use crate::motzkin::{
    enumerate_paths_with_prefix, involution_of_path, shard_prefixes, PathClass, Step,
};
use crate::perm::Permutation;
use crate::series::gf::{Expansion, NamedSeries};
use crate::series::SeriesError;

pub const DEFAULT_WITNESS_CAP: usize = 100;

/// Shard prefix depth for parallel runs; deep enough to balance, shallow
/// enough that small `n` still yields a handful of shards.
const SHARD_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census length must be at least 1")]
    ZeroLength,
    #[error("pattern {0} has length {1}, expected 3 or 4")]
    BadPattern(String, usize),
    #[error("simple listings exist for 5 <= n <= 10, got {0}")]
    OutOfRange(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GroupBy {
    #[default]
    None,
    FineClass,
    FixedPoints,
    FineClassAndFixedPoints,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKey {
    All,
    Class(FineClass),
    Fixed(usize),
    ClassFixed(FineClass, usize),
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKey::All => f.write_str("all"),
            GroupKey::Class(c) => write!(f, "{c}"),
            GroupKey::Fixed(k) => write!(f, "{k}"),
            GroupKey::ClassFixed(c, k) => write!(f, "{c}/{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusQuery {
    n: usize,
    avoid: Vec<Permutation>,
    pub group_by: GroupBy,
    pub witness_cap: usize,
}

impl CensusQuery {
    /// Patterns are deduplicated and sorted.
    pub fn new(n: usize, avoid: Vec<Permutation>, group_by: GroupBy) -> Result<Self, CensusError> {
        if n == 0 {
            return Err(CensusError::ZeroLength);
        }
        if let Some(p) = avoid.iter().find(|p| !(3..=4).contains(&p.len())) {
            return Err(CensusError::BadPattern(p.to_compact(), p.len()));
        }
        let mut avoid = avoid;
        avoid.sort();
        avoid.dedup();
        Ok(CensusQuery {
            n,
            avoid,
            group_by,
            witness_cap: DEFAULT_WITNESS_CAP,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn avoid(&self) -> &[Permutation] {
        &self.avoid
    }

    /// The labelling that characterizes the class, and the patterns it does
    /// not already account for.
    fn strategy(&self) -> (PathClass, Vec<&Permutation>) {
        let is = |s: &'static [usize]| move |p: &Permutation| p.values() == s;
        let class = if self.avoid.iter().any(is(&[4, 3, 2, 1])) {
            PathClass::Unitary
        } else if self.avoid.iter().any(is(&[3, 4, 1, 2])) {
            PathClass::Maximal
        } else {
            PathClass::All
        };
        let covered: &[usize] = match class {
            PathClass::Unitary => &[4, 3, 2, 1],
            PathClass::Maximal => &[3, 4, 1, 2],
            PathClass::All => &[],
        };
        let rest = self
            .avoid
            .iter()
            .filter(|p| p.values() != covered)
            .collect();
        (class, rest)
    }

    fn enumerate_prefix<'a>(&'a self, prefix: &[Step]) -> impl Iterator<Item = Permutation> + 'a {
        let (class, rest) = self.strategy();
        enumerate_paths_with_prefix(self.n, prefix, class)
            .map(|path| involution_of_path(&path))
            .filter(move |p| rest.iter().all(|pat| !p.contains_pattern(pat)))
    }

    fn key(&self, p: &Permutation) -> GroupKey {
        match self.group_by {
            GroupBy::None => GroupKey::All,
            GroupBy::FineClass => GroupKey::Class(classify_unchecked(p)),
            GroupBy::FixedPoints => GroupKey::Fixed(p.fixed_point_count()),
            GroupBy::FineClassAndFixedPoints => {
                GroupKey::ClassFixed(classify_unchecked(p), p.fixed_point_count())
            }
        }
    }
}

/// The involutions of length `q.n` avoiding every pattern of `q`, in path
/// enumeration order.
pub fn enumerate_involutions(q: &CensusQuery) -> impl Iterator<Item = Permutation> + '_ {
    q.enumerate_prefix(&[])
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CensusReport {
    pub total: u64,
    pub buckets: BTreeMap<GroupKey, u64>,
    /// The first `witness_cap` members of each bucket in enumeration order.
    pub witnesses: BTreeMap<GroupKey, Vec<Permutation>>,
}

impl CensusReport {
    fn record(&mut self, key: GroupKey, p: Permutation, cap: usize) {
        self.total += 1;
        *self.buckets.entry(key).or_default() += 1;
        let w = self.witnesses.entry(key).or_default();
        if w.len() < cap {
            w.push(p);
        }
    }

    /// Append `later`, which must cover a later stretch of the enumeration.
    fn merge(mut self, later: CensusReport, cap: usize) -> CensusReport {
        self.total += later.total;
        for (k, c) in later.buckets {
            *self.buckets.entry(k).or_default() += c;
        }
        for (k, w) in later.witnesses {
            let mine = self.witnesses.entry(k).or_default();
            let room = cap.saturating_sub(mine.len());
            mine.extend(w.into_iter().take(room));
        }
        self
    }

    pub fn count(&self, key: GroupKey) -> u64 {
        self.buckets.get(&key).copied().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let width = self
            .buckets
            .keys()
            .map(|k| k.to_string().len())
            .max()
            .unwrap_or(0)
            .max(5);
        let mut out = String::new();
        for (k, c) in &self.buckets {
            let _ = writeln!(out, "{:<width$}  {c}", k.to_string());
        }
        let _ = writeln!(out, "{:<width$}  {}", "total", self.total);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "count"]).expect("in-memory write");
        for (k, c) in &self.buckets {
            w.write_record([k.to_string(), c.to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Bucket {
            key: String,
            count: u64,
            witnesses: Vec<String>,
        }
        #[derive(Serialize)]
        struct Json {
            total: u64,
            buckets: Vec<Bucket>,
        }
        let buckets = self
            .buckets
            .iter()
            .map(|(k, &count)| Bucket {
                key: k.to_string(),
                count,
                witnesses: self
                    .witnesses
                    .get(k)
                    .map_or_else(Vec::new, |w| w.iter().map(|p| p.to_compact()).collect()),
            })
            .collect();
        serde_json::to_string_pretty(&Json {
            total: self.total,
            buckets,
        })
        .expect("serializable report")
    }
}

/// Single-threaded census.
pub fn run_census(q: &CensusQuery) -> CensusReport {
    let mut report = CensusReport::default();
    for p in enumerate_involutions(q) {
        let key = q.key(&p);
        report.record(key, p, q.witness_cap);
    }
    report
}

/// Census sharded by path prefix across the rayon pool. Identical to
/// [`run_census`], witnesses included.
pub fn run_census_parallel(q: &CensusQuery) -> CensusReport {
    let shards = shard_prefixes(q.n, SHARD_DEPTH);
    let parts: Vec<CensusReport> = shards
        .par_iter()
        .map(|prefix| {
            let mut report = CensusReport::default();
            for p in q.enumerate_prefix(prefix) {
                let key = q.key(&p);
                report.record(key, p, q.witness_cap);
            }
            report
        })
        .collect();
    parts.into_iter().fold(CensusReport::default(), |acc, r| {
        acc.merge(r, q.witness_cap)
    })
}

fn patterns(list: &[&[usize]]) -> Vec<Permutation> {
    list.iter()
        .map(|v| Permutation::new(v.to_vec()).expect("pattern literal"))
        .collect()
}

/// What the census must count to reproduce a named series.
struct CensusSide {
    avoid: Vec<Permutation>,
    classes: Option<&'static [FineClass]>,
    by_fixed_points: bool,
}

fn census_side(name: NamedSeries) -> CensusSide {
    use NamedSeries as N;
    const GD: &[FineClass] = &[FineClass::Simple, FineClass::InflationOfSimple];
    let i4321 = || patterns(&[&[4, 3, 2, 1]]);
    let side = |avoid, classes, by_fixed_points| CensusSide {
        avoid,
        classes,
        by_fixed_points,
    };
    match name {
        N::I4321 => side(i4321(), None, false),
        N::AlphaI4321 => side(i4321(), Some(&[FineClass::Type12]), false),
        N::BetaI4321 => side(i4321(), Some(&[FineClass::Type21]), false),
        N::GammaPlusDelta => side(i4321(), Some(GD), false),
        N::GammaX => side(i4321(), Some(&[FineClass::Simple]), false),
        N::DeltaI4321 => side(i4321(), Some(&[FineClass::InflationOfSimple]), false),
        N::I3412 => side(patterns(&[&[3, 4, 1, 2]]), None, false),
        N::I4321_132 => side(patterns(&[&[4, 3, 2, 1], &[1, 3, 2]]), None, false),
        N::I4321_312 => side(patterns(&[&[4, 3, 2, 1], &[3, 1, 2]]), None, false),
        N::I3412_123 => side(patterns(&[&[3, 4, 1, 2], &[1, 2, 3]]), None, false),
        N::I3412_1234 => side(patterns(&[&[3, 4, 1, 2], &[1, 2, 3, 4]]), None, false),
        N::I3412_132 => side(patterns(&[&[3, 4, 1, 2], &[1, 3, 2]]), None, false),
        N::I3412_213 => side(patterns(&[&[3, 4, 1, 2], &[2, 1, 3]]), None, false),
        N::FXy => side(i4321(), None, true),
        N::GammaPlusDeltaXy | N::GammaPlusDeltaMarked => side(i4321(), Some(GD), true),
        N::GammaXy => side(i4321(), Some(&[FineClass::Simple]), true),
    }
}

/// One length of a reconciliation: counts by fixed points (a single entry
/// keyed `None` for univariate series).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconcileRow {
    pub n: usize,
    pub census: BTreeMap<Option<usize>, u64>,
    pub series: BTreeMap<Option<usize>, String>,
    pub pass: bool,
    pub witness: Option<Permutation>,
}

fn histogram_string(h: &BTreeMap<Option<usize>, String>) -> String {
    match h.get(&None) {
        Some(v) if h.len() == 1 => v.clone(),
        _ => {
            let parts: Vec<String> = h
                .iter()
                .map(|(k, v)| {
                    format!(
                        "{}:{v}",
                        k.map_or_else(|| "-".to_string(), |k| k.to_string())
                    )
                })
                .collect();
            format!("{{{}}}", parts.join(" "))
        }
    }
}

impl ReconcileRow {
    pub fn census_text(&self) -> String {
        histogram_string(
            &self
                .census
                .iter()
                .map(|(k, v)| (*k, v.to_string()))
                .collect(),
        )
    }

    pub fn series_text(&self) -> String {
        histogram_string(&self.series)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconcileReport {
    pub name: NamedSeries,
    pub rows: Vec<ReconcileRow>,
}

impl ReconcileReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3}  {:<24}  {:<24}  result",
            "n", "census", "series"
        );
        for r in &self.rows {
            let _ = write!(
                out,
                "{:>3}  {:<24}  {:<24}  {}",
                r.n,
                r.census_text(),
                r.series_text(),
                if r.pass { "pass" } else { "FAIL" }
            );
            if let Some(w) = &r.witness {
                let _ = write!(out, "  witness {}", w.to_compact());
            }
            out.push('\n');
        }
        out
    }
}

/// Census counts against series coefficients for `1 <= n <= n_max`. Lengths
/// where both sides vanish are omitted. A mismatch is a failed row, not an
/// error; a failed row carries the first census member of that length in the
/// counted set, or none if the census found nothing.
pub fn reconcile(name: NamedSeries, n_max: usize) -> Result<ReconcileReport, CensusError> {
    let side = census_side(name);
    let expansion = name.expand(n_max)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let group_by = match (side.classes.is_some(), side.by_fixed_points) {
            (false, false) => GroupBy::None,
            (true, false) => GroupBy::FineClass,
            (false, true) => GroupBy::FixedPoints,
            (true, true) => GroupBy::FineClassAndFixedPoints,
        };
        let mut q = CensusQuery::new(n, side.avoid.clone(), group_by)?;
        q.witness_cap = 1;
        let report = run_census_parallel(&q);
        let mut census: BTreeMap<Option<usize>, u64> = BTreeMap::new();
        let mut witness = None;
        for (key, &count) in &report.buckets {
            let (class, fixed) = match *key {
                GroupKey::All => (None, None),
                GroupKey::Class(c) => (Some(c), None),
                GroupKey::Fixed(k) => (None, Some(k)),
                GroupKey::ClassFixed(c, k) => (Some(c), Some(k)),
            };
            if class.is_some_and(|c| !side.classes.unwrap_or(&[]).contains(&c)) {
                continue;
            }
            *census.entry(fixed).or_default() += count;
            if witness.is_none() {
                witness = report.witnesses.get(key).and_then(|w| w.first().cloned());
            }
        }
        census.retain(|_, c| *c > 0);
        let series: BTreeMap<Option<usize>, num::BigRational> = match &expansion {
            Expansion::Univariate(s) => [(None, s.coeff(n))].into_iter().collect(),
            Expansion::Bivariate(b) => {
                let b = if name == NamedSeries::GammaPlusDeltaMarked || name == NamedSeries::GammaXy
                {
                    b.regrade_to_length(n_max)
                } else {
                    b.clone()
                };
                (0..=n).map(|k| (Some(k), b.coeff(n, k))).collect()
            }
        };
        let series: BTreeMap<Option<usize>, num::BigRational> = series
            .into_iter()
            .filter(|(_, v)| *v != num::zero())
            .collect();
        if census.is_empty() && series.is_empty() {
            continue;
        }
        let pass = census.len() == series.len()
            && census.iter().all(|(k, &c)| {
                series
                    .get(k)
                    .is_some_and(|v| *v == num::BigRational::from_integer(c.into()))
            });
        rows.push(ReconcileRow {
            n,
            census,
            series: series
                .into_iter()
                .map(|(k, v)| (k, v.to_string()))
                .collect(),
            pass,
            witness: if pass { None } else { witness },
        });
    }
    Ok(ReconcileReport { name, rows })
}

/// The simple involutions of length `n` avoiding 4321, sorted.
pub fn appendix_listing(n: usize) -> Result<Vec<Permutation>, CensusError> {
    if !(5..=10).contains(&n) {
        return Err(CensusError::OutOfRange(n));
    }
    let mut q = CensusQuery::new(n, patterns(&[&[4, 3, 2, 1]]), GroupBy::FineClass)?;
    q.witness_cap = usize::MAX;
    let mut simples = run_census_parallel(&q)
        .witnesses
        .remove(&GroupKey::Class(FineClass::Simple))
        .unwrap_or_default();
    simples.sort();
    Ok(simples)
}

/// `n a(n)` per line.
pub fn bfile<I: IntoIterator<Item = (usize, String)>>(terms: I) -> String {
    terms
        .into_iter()
        .map(|(n, a)| format!("{n} {a}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{involutions, perm};

    fn query(n: usize, avoid: &[&str], by: GroupBy) -> CensusQuery {
        CensusQuery::new(n, avoid.iter().map(|s| perm(s)).collect(), by).unwrap()
    }

    fn brute(n: usize, avoid: &[&str]) -> Vec<Permutation> {
        let pats: Vec<Permutation> = avoid.iter().map(|s| perm(s)).collect();
        involutions(n)
            .into_iter()
            .filter(|p| p.avoids_all(&pats))
            .collect()
    }

    #[test]
    fn query_validation() {
        assert_eq!(
            CensusQuery::new(0, vec![], GroupBy::None),
            Err(CensusError::ZeroLength)
        );
        assert!(matches!(
            CensusQuery::new(3, vec![perm("12")], GroupBy::None),
            Err(CensusError::BadPattern(_, 2))
        ));
        assert!(matches!(
            CensusQuery::new(3, vec![perm("12345")], GroupBy::None),
            Err(CensusError::BadPattern(_, 5))
        ));
    }

    #[test]
    fn small_counts() {
        assert_eq!(
            enumerate_involutions(&query(4, &["4321"], GroupBy::None)).count(),
            9
        );
        let one: Vec<_> = enumerate_involutions(&query(1, &[], GroupBy::None)).collect();
        assert_eq!(one, vec![perm("1")]);
        assert_eq!(
            enumerate_involutions(&query(6, &["3412"], GroupBy::None)).count(),
            51
        );
    }

    #[test]
    fn strategies_agree_with_filtering() {
        for n in 1..=8 {
            for avoid in [
                &["4321"][..],
                &["3412"],
                &["4321", "132"],
                &["3412", "1234"],
                &["123"],
                &[],
            ] {
                let mut got: Vec<_> =
                    enumerate_involutions(&query(n, avoid, GroupBy::None)).collect();
                got.sort();
                assert_eq!(got, brute(n, avoid), "n={n} avoid={avoid:?}");
            }
        }
    }

    #[test]
    fn grouped_reports() {
        let r = run_census(&query(5, &["4321"], GroupBy::FineClass));
        assert_eq!(r.total, 21);
        assert_eq!(r.count(GroupKey::Class(FineClass::Type12)), 17);
        assert_eq!(r.count(GroupKey::Class(FineClass::Type21)), 2);
        assert_eq!(r.count(GroupKey::Class(FineClass::Simple)), 2);
        assert_eq!(r.count(GroupKey::Class(FineClass::InflationOfSimple)), 0);
        let r = run_census(&query(4, &["4321"], GroupBy::FixedPoints));
        let h: Vec<_> = r.buckets.into_iter().collect();
        assert_eq!(
            h,
            vec![
                (GroupKey::Fixed(0), 2),
                (GroupKey::Fixed(2), 6),
                (GroupKey::Fixed(4), 1)
            ]
        );
        let r = run_census(&query(8, &["4321"], GroupBy::FineClassAndFixedPoints));
        assert_eq!(r.count(GroupKey::ClassFixed(FineClass::Simple, 0)), 1);
        assert_eq!(r.count(GroupKey::ClassFixed(FineClass::Simple, 2)), 14);
        assert_eq!(
            r.witnesses[&GroupKey::ClassFixed(FineClass::Simple, 0)],
            vec![perm("35172846")]
        );
    }

    #[test]
    fn parallel_matches_sequential() {
        for by in [GroupBy::None, GroupBy::FineClassAndFixedPoints] {
            let mut q = query(9, &["4321"], by);
            q.witness_cap = 7;
            assert_eq!(run_census(&q), run_census_parallel(&q));
        }
        let q = query(7, &[], GroupBy::FixedPoints);
        assert_eq!(run_census(&q), run_census_parallel(&q));
    }

    #[test]
    fn bucket_counts_sum_and_parity() {
        let r = run_census(&query(9, &["3412"], GroupBy::FixedPoints));
        assert_eq!(r.buckets.values().sum::<u64>(), r.total);
        assert!(r
            .buckets
            .keys()
            .all(|k| matches!(k, GroupKey::Fixed(f) if f % 2 == 1)));
    }

    #[test]
    fn witness_cap_bounds_lists() {
        let r = run_census(&query(8, &["4321"], GroupBy::None));
        assert_eq!(r.witnesses[&GroupKey::All].len(), DEFAULT_WITNESS_CAP);
        assert_eq!(r.total, 323);
    }

    #[test]
    fn simple_listings_small() {
        assert_eq!(
            appendix_listing(5).unwrap(),
            vec![perm("35142"), perm("42513")]
        );
        assert_eq!(
            appendix_listing(6).unwrap(),
            ["351624", "426153", "463152", "526413"].map(perm).to_vec()
        );
        assert_eq!(appendix_listing(4), Err(CensusError::OutOfRange(4)));
        assert_eq!(appendix_listing(11), Err(CensusError::OutOfRange(11)));
    }

    #[test]
    fn reconcile_reports() {
        let r = reconcile(NamedSeries::GammaX, 12).unwrap();
        assert_eq!(r.rows.len(), 8);
        assert!(r.all_pass());
        let r = reconcile(NamedSeries::I4321_312, 9).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.rows[7].census_text(), "81");
        assert!(reconcile(NamedSeries::BetaI4321, 8).unwrap().all_pass());
        let r = reconcile(NamedSeries::FXy, 4).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.rows[3].census_text(), "{0:2 2:6 4:1}");
    }

    #[test]
    fn output_formats() {
        let r = run_census(&query(4, &["4321"], GroupBy::FixedPoints));
        assert_eq!(r.to_csv(), "key,count\n0,2\n2,6\n4,1\n");
        assert_eq!(r.to_text(), "0      2\n2      6\n4      1\ntotal  9\n");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["total"], 9);
        assert_eq!(
            v["buckets"][0]["witnesses"],
            serde_json::json!(["3412", "2143"])
        );
        assert_eq!(bfile([(1, "1".into()), (2, "2".into())]), "1 1\n2 2\n");
    }
}
