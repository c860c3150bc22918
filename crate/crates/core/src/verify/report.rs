use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affine::CycleStructure;
use crate::error::{Error, Result};
use crate::tables::{Binding, Kind};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Shard `index` of `count`, written `i/n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardSpec {
    pub index: usize,
    pub count: usize,
}

impl ShardSpec {
    pub fn new(index: usize, count: usize) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::ShardConflict(format!(
                "shard {index}/{count} is out of range"
            )));
        }
        Ok(ShardSpec { index, count })
    }

    /// Class index range `[i N / n, (i + 1) N / n)`.
    pub fn range(&self, total: usize) -> (usize, usize) {
        (
            self.index * total / self.count,
            (self.index + 1) * total / self.count,
        )
    }
}

impl FromStr for ShardSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ShardConflict(format!("malformed shard `{s}`, expected i/n"));
        let (i, n) = s.split_once('/').ok_or_else(bad)?;
        ShardSpec::new(
            i.trim().parse().map_err(|_| bad())?,
            n.trim().parse().map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for ShardSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassFilter {
    #[default]
    All,
    Semisimple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TranslationScope {
    /// Translations in the 1-primary component `U` only.
    #[default]
    PrimaryOnly,
    /// Every translation in `V`.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// A large-order or few-cycle element that no line matches.
    Unmatched,
    /// A table element with p odd that misses the order threshold.
    BelowThreshold,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_index: Option<usize>,
    /// Class invariant of `h`, or the table element for catalog findings.
    pub element: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binding: Option<Binding>,
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<CycleStructure>,
}

/// A p = 2 table element whose order is below `p^d / 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Informative {
    pub line: String,
    pub binding: Binding,
    pub element: String,
    pub order: u64,
    pub space: u64,
}

/// Disagreement between two computations that must agree (formula vs.
/// computed order, cycle sums, round trips). Kept apart from violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyIssue {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_index: Option<usize>,
    pub element: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ms: u128,
    pub workers: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub p: u32,
    pub d: usize,
    pub kind: Kind,
    pub filter: ClassFilter,
    pub scope: TranslationScope,
    pub classes_total: usize,
    pub class_ranges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<ShardSpec>,
    /// Whether the catalog pass (converse and round trips) ran.
    pub catalog_checked: bool,
    pub classes_checked: u64,
    pub elements_checked: u64,
    pub matched_lines: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    pub informative: Vec<Informative>,
    pub consistency: Vec<ConsistencyIssue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.consistency.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.catalog_checked && self.class_ranges == [(0, self.classes_total)]
    }

    /// JSON with the timing field removed, for byte comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timing = None;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Combines shard reports into one; shards must agree on the run and cover
/// disjoint class ranges. Order of arguments does not matter.
pub fn merge(mut reports: Vec<VerificationReport>) -> Result<VerificationReport> {
    if reports.is_empty() {
        return Err(Error::ShardConflict("nothing to merge".into()));
    }
    let first = &reports[0];
    let key = (
        first.p,
        first.d,
        first.kind,
        first.filter,
        first.scope,
        first.classes_total,
        first.schema_version,
    );
    for r in &reports {
        if (
            r.p,
            r.d,
            r.kind,
            r.filter,
            r.scope,
            r.classes_total,
            r.schema_version,
        ) != key
        {
            return Err(Error::ShardConflict(
                "reports come from different runs".into(),
            ));
        }
    }
    if reports.iter().filter(|r| r.catalog_checked).count() > 1 {
        return Err(Error::ShardConflict(
            "catalog pass present in more than one report".into(),
        ));
    }
    let mut ranges: Vec<(usize, usize)> = reports
        .iter()
        .flat_map(|r| r.class_ranges.iter().copied())
        .collect();
    ranges.sort_unstable();
    for w in ranges.windows(2) {
        if w[1].0 < w[0].1 {
            return Err(Error::ShardConflict(format!(
                "class ranges {:?} and {:?} overlap",
                w[0], w[1]
            )));
        }
    }
    let mut merged_ranges: Vec<(usize, usize)> = Vec::new();
    for (lo, hi) in ranges {
        match merged_ranges.last_mut() {
            Some(last) if last.1 == lo => last.1 = hi,
            _ => {
                if lo < hi {
                    merged_ranges.push((lo, hi));
                }
            }
        }
    }
    reports.sort_by_key(|r| r.class_ranges.first().map_or(usize::MAX, |x| x.0));

    let mut out = VerificationReport {
        schema_version: key.6,
        p: key.0,
        d: key.1,
        kind: key.2,
        filter: key.3,
        scope: key.4,
        classes_total: key.5,
        class_ranges: merged_ranges,
        shard: None,
        catalog_checked: reports.iter().any(|r| r.catalog_checked),
        classes_checked: 0,
        elements_checked: 0,
        matched_lines: BTreeMap::new(),
        violations: Vec::new(),
        informative: Vec::new(),
        consistency: Vec::new(),
        timing: None,
    };
    let mut wall = 0;
    let mut workers = 0;
    for r in reports {
        out.classes_checked += r.classes_checked;
        out.elements_checked += r.elements_checked;
        for (line, n) in r.matched_lines {
            *out.matched_lines.entry(line).or_default() += n;
        }
        out.violations.extend(r.violations);
        out.informative.extend(r.informative);
        out.consistency.extend(r.consistency);
        if let Some(t) = r.timing {
            wall = wall.max(t.wall_ms);
            workers = workers.max(t.workers);
        }
    }
    // Class findings in class order, catalog findings after them.
    out.violations
        .sort_by_key(|x| (x.class_index.is_none(), x.class_index));
    out.consistency
        .sort_by_key(|x| (x.class_index.is_none(), x.class_index));
    out.timing = Some(Timing {
        wall_ms: wall,
        workers,
    });
    Ok(out)
}
