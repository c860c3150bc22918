//! Exhaustive verification over conjugacy classes of GL_d(p) and their
//! translations, sharded by class index and run on a worker pool.

mod lemmas;
mod meo;
mod report;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::affine::AffineMap;
use crate::affine::{affine_order, cycle_structure_capped, geometric_sum, primary_split};
use crate::arith::{self, MAX_ORDER_SPACE};
use crate::conjugacy::{enumerate_filtered, order_of, ClassInvariant, MAX_CLASS_COUNT};
use crate::error::{Error, Result};
use crate::matrix::{decode, format_vector, is_zero_vec, Matrix, Vector};
use crate::orbit::MAX_CYCLE_SPACE;
use crate::registry::Registry;
use crate::tables::{match_with, pattern_of, threshold_met, Catalog, Kind, Pattern};

pub use lemmas::{
    lemma_suites, verify_lemmas, verify_lemmas_with, LemmaContext, LemmaOptions, LemmaReport,
    LemmaSuite, SuiteOutcome, SuiteResult,
};
pub use meo::{meo_scan, MeoResult};
pub use report::{
    merge, ClassFilter, ConsistencyIssue, Informative, ShardSpec, Timing, TranslationScope,
    VerificationReport, Violation, ViolationKind, REPORT_SCHEMA_VERSION,
};

/// Spaces up to this size get a second, independent order computation per
/// element.
pub const CROSS_CHECK_SPACE: u64 = 1 << 10;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub shard: Option<ShardSpec>,
    /// 0 picks the pool default.
    pub workers: usize,
    pub filter: ClassFilter,
    pub scope: TranslationScope,
    /// Overrides the `p^d` cap of the check.
    pub max_space: Option<u128>,
}

/// Per-class data shared by all translations of one class.
pub struct ClassData {
    pub index: usize,
    pub invariant: ClassInvariant,
    pub h: Matrix,
    pub k: u64,
    pub hk: Matrix,
    pub pattern: Pattern,
    pub u_basis: Vec<Vector>,
}

impl ClassData {
    fn new(index: usize, invariant: ClassInvariant) -> Result<Self> {
        let h = invariant.representative()?;
        let k = order_of(&h)?;
        let hk = geometric_sum(&h, k)?;
        let pattern = pattern_of(&invariant)?;
        let (u_basis, _) = primary_split(&h)?;
        Ok(ClassData {
            index,
            invariant,
            h,
            k,
            hk,
            pattern,
            u_basis,
        })
    }
}

/// Shared state of one sweep.
pub struct SweepContext {
    pub p: u32,
    pub d: usize,
    pub space: u64,
    pub catalog: Catalog,
}

/// Findings for one class, or for the catalog pass.
#[derive(Default)]
pub struct Findings {
    pub elements: u64,
    pub matched_lines: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    pub informative: Vec<Informative>,
    pub consistency: Vec<ConsistencyIssue>,
}

impl Findings {
    fn issue(&mut self, class_index: Option<usize>, element: String, message: String) {
        self.consistency.push(ConsistencyIssue {
            class_index,
            element,
            message,
        });
    }
}

/// A theorem whose hypothesis and conclusion are evaluated per element.
pub trait TheoremCheck: Send + Sync {
    fn kind(&self) -> Kind;
    fn space_cap(&self) -> u128;
    fn element(
        &self,
        cx: &SweepContext,
        class: &ClassData,
        v: &[u32],
        out: &mut Findings,
    ) -> Result<()>;
    /// Runs over every catalog entry: order/cycle round trips plus the
    /// converse direction where the check has one.
    fn catalog_pass(&self, cx: &SweepContext, out: &mut Findings) -> Result<()>;
}

fn delta_of(class: &ClassData, v: &[u32]) -> u32 {
    u32::from(!is_zero_vec(&class.hk.apply(v)))
}

fn describe(class: &ClassData, v: &[u32]) -> String {
    format!("{} v={}", class.invariant, format_vector(v))
}

/// Every element of large order realizes a line of the order tables.
pub struct OrdersCheck;

impl TheoremCheck for OrdersCheck {
    fn kind(&self) -> Kind {
        Kind::Orders
    }

    fn space_cap(&self) -> u128 {
        MAX_ORDER_SPACE
    }

    fn element(
        &self,
        cx: &SweepContext,
        class: &ClassData,
        v: &[u32],
        out: &mut Findings,
    ) -> Result<()> {
        let delta = delta_of(class, v);
        let order = class.k * (cx.p as u64).pow(delta);
        if cx.space <= CROSS_CHECK_SPACE {
            let (o, prof) = affine_order(&AffineMap::new(v.to_vec(), class.h.clone())?)?;
            if o != order || prof.delta != delta {
                out.issue(
                    Some(class.index),
                    describe(class, v),
                    format!("affine order {o} but class data gives {order}"),
                );
            }
        }
        let hits = cx.catalog.lookup(&class.pattern, delta, None);
        for e in &hits {
            *out.matched_lines.entry(e.line.to_string()).or_default() += 1;
        }
        if hits.is_empty() && threshold_met(order, cx.p, cx.d) {
            out.violations.push(Violation {
                kind: ViolationKind::Unmatched,
                class_index: Some(class.index),
                element: class.invariant.to_string(),
                v: Some(format_vector(v)),
                line: None,
                binding: None,
                order,
                cycles: None,
            });
        }
        Ok(())
    }

    fn catalog_pass(&self, cx: &SweepContext, out: &mut Findings) -> Result<()> {
        for e in cx.catalog.entries() {
            let g = e.shape.element(cx.p)?;
            let text = format!(
                "{} {} = {} t={}",
                e.line,
                e.binding,
                e.shape.expr(),
                e.shape.translation_text()
            );
            let m = match_with(&cx.catalog, &g)?;
            if m.order != e.order {
                out.issue(
                    None,
                    text.clone(),
                    format!("order {} but the formula gives {}", m.order, e.order),
                );
            }
            if !m
                .matched
                .iter()
                .any(|x| x.line == e.line && x.binding == e.binding)
            {
                out.issue(
                    None,
                    text.clone(),
                    "element does not match its own line".into(),
                );
            }
            if !m.threshold_met {
                if cx.p == 2 {
                    out.informative.push(Informative {
                        line: e.line.to_string(),
                        binding: e.binding.clone(),
                        element: e.shape.expr(),
                        order: m.order,
                        space: cx.space,
                    });
                } else {
                    out.violations.push(Violation {
                        kind: ViolationKind::BelowThreshold,
                        class_index: None,
                        element: e.shape.expr(),
                        v: Some(e.shape.translation_text()),
                        line: Some(e.line.to_string()),
                        binding: Some(e.binding.clone()),
                        order: m.order,
                        cycles: None,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Every element with at most four cycles realizes a line of the cycle
/// tables with exactly the listed cycle lengths.
pub struct CyclesCheck;

impl TheoremCheck for CyclesCheck {
    fn kind(&self) -> Kind {
        Kind::Cycles
    }

    fn space_cap(&self) -> u128 {
        MAX_CYCLE_SPACE
    }

    fn element(
        &self,
        cx: &SweepContext,
        class: &ClassData,
        v: &[u32],
        out: &mut Findings,
    ) -> Result<()> {
        let delta = delta_of(class, v);
        let order = class.k * (cx.p as u64).pow(delta);
        let g = AffineMap::new(v.to_vec(), class.h.clone())?;
        let cs = cycle_structure_capped(&g, u128::from(cx.space))?;
        if cs.total() != cx.space || cs.lcm() != order {
            out.issue(
                Some(class.index),
                describe(class, v),
                format!("cycles {cs} do not sum to {} with lcm {order}", cx.space),
            );
        }
        if cs.count > 4 {
            return Ok(());
        }
        let hits = cx.catalog.lookup(&class.pattern, delta, Some(&cs.lengths));
        for e in &hits {
            *out.matched_lines.entry(e.line.to_string()).or_default() += 1;
        }
        if hits.is_empty() {
            out.violations.push(Violation {
                kind: ViolationKind::Unmatched,
                class_index: Some(class.index),
                element: class.invariant.to_string(),
                v: Some(format_vector(v)),
                line: None,
                binding: None,
                order,
                cycles: Some(cs),
            });
        }
        Ok(())
    }

    fn catalog_pass(&self, cx: &SweepContext, out: &mut Findings) -> Result<()> {
        for e in cx.catalog.entries() {
            let g = e.shape.element(cx.p)?;
            let text = format!(
                "{} {} = {} t={}",
                e.line,
                e.binding,
                e.shape.expr(),
                e.shape.translation_text()
            );
            let m = match_with(&cx.catalog, &g)?;
            let got = m.cycles.as_ref().map(|c| c.lengths.clone());
            if got != e.cycles {
                out.issue(
                    None,
                    text.clone(),
                    format!("cycles {:?} but the formula gives {:?}", got, e.cycles),
                );
            }
            if m.order != e.order {
                out.issue(
                    None,
                    text.clone(),
                    format!("order {} but the cycle lcm is {}", m.order, e.order),
                );
            }
            if !m
                .matched
                .iter()
                .any(|x| x.line == e.line && x.binding == e.binding)
            {
                out.issue(None, text, "element does not match its own line".into());
            }
        }
        Ok(())
    }
}

/// Registered theorem checks: "orders" and "cycles".
pub fn theorem_checks() -> Registry<dyn TheoremCheck> {
    let mut r: Registry<dyn TheoremCheck> = Registry::new("theorem check");
    r.register("orders", Arc::new(OrdersCheck));
    r.register("cycles", Arc::new(CyclesCheck));
    r
}

/// Class invariants swept for a filter, in enumeration order.
pub fn swept_classes(p: u32, d: usize, filter: ClassFilter) -> Result<Vec<ClassInvariant>> {
    match filter {
        ClassFilter::All => enumerate_filtered(p, d, MAX_CLASS_COUNT, |_| true),
        ClassFilter::Semisimple => {
            enumerate_filtered(p, d, MAX_CLASS_COUNT, |part| part.iter().all(|&m| m == 1))
        }
    }
}

/// All `p^n` combinations of `basis`.
fn span(basis: &[Vector], p: u32, d: usize) -> impl Iterator<Item = Vector> + '_ {
    let n = basis.len();
    let count = (p as u64).pow(n as u32);
    (0..count).map(move |code| {
        let coeffs = decode(code, p, n);
        let mut v = vec![0u32; d];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = ((*x as u64 + *c as u64 * *y as u64) % p as u64) as u32;
                }
            }
        }
        v
    })
}

fn standard_basis(d: usize) -> Vec<Vector> {
    (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            e
        })
        .collect()
}

fn sweep_class(
    check: &dyn TheoremCheck,
    cx: &SweepContext,
    index: usize,
    inv: ClassInvariant,
    scope: TranslationScope,
) -> Result<Findings> {
    let class = ClassData::new(index, inv)?;
    let mut out = Findings::default();
    let basis = match scope {
        TranslationScope::PrimaryOnly => class.u_basis.clone(),
        TranslationScope::Full => standard_basis(cx.d),
    };
    for v in span(&basis, cx.p, cx.d) {
        check.element(cx, &class, &v, &mut out)?;
        out.elements += 1;
    }
    Ok(out)
}

/// Runs the registered check `name` over the selected classes.
pub fn verify(name: &str, p: u32, d: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let check = theorem_checks().get(name)?;
    verify_with(check.as_ref(), p, d, opts)
}

pub fn verify_orders(p: u32, d: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_with(&OrdersCheck, p, d, opts)
}

pub fn verify_cycles(p: u32, d: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_with(&CyclesCheck, p, d, opts)
}

pub fn verify_with(
    check: &dyn TheoremCheck,
    p: u32,
    d: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    arith::check_prime(p as u64)?;
    let cap = opts.max_space.unwrap_or(check.space_cap());
    let space = arith::space_size(p, d, cap, "p^d for verification")?;
    let kind = check.kind();
    let catalog = Catalog::build(p, d, kind)?;
    let cx = SweepContext {
        p,
        d,
        space,
        catalog,
    };

    let classes = swept_classes(p, d, opts.filter)?;
    let total = classes.len();
    let (lo, hi) = opts.shard.map_or((0, total), |s| s.range(total));
    let run_catalog = opts.shard.is_none_or(|s| s.index == 0);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
    let workers = pool.current_num_threads();
    let scope = opts.scope;
    let (class_findings, catalog_findings) = pool.install(|| {
        let work: Vec<(usize, ClassInvariant)> = classes
            .into_iter()
            .enumerate()
            .skip(lo)
            .take(hi - lo)
            .collect();
        rayon::join(
            || {
                work.into_par_iter()
                    .map(|(i, inv)| sweep_class(check, &cx, i, inv, scope))
                    .collect::<Result<Vec<Findings>>>()
            },
            || {
                let mut f = Findings::default();
                if run_catalog {
                    check.catalog_pass(&cx, &mut f)?;
                }
                Ok::<_, Error>(f)
            },
        )
    });
    let class_findings = class_findings?;
    let catalog_findings = catalog_findings?;

    let mut report = VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        p,
        d,
        kind,
        filter: opts.filter,
        scope,
        classes_total: total,
        class_ranges: if lo < hi { vec![(lo, hi)] } else { Vec::new() },
        shard: opts.shard,
        catalog_checked: run_catalog,
        classes_checked: (hi - lo) as u64,
        elements_checked: 0,
        matched_lines: BTreeMap::new(),
        violations: Vec::new(),
        informative: Vec::new(),
        consistency: Vec::new(),
        timing: None,
    };
    for f in class_findings
        .into_iter()
        .chain(std::iter::once(catalog_findings))
    {
        report.elements_checked += f.elements;
        for (line, n) in f.matched_lines {
            *report.matched_lines.entry(line).or_default() += n;
        }
        report.violations.extend(f.violations);
        report.informative.extend(f.informative);
        report.consistency.extend(f.consistency);
    }
    report.timing = Some(Timing {
        wall_ms: started.elapsed().as_millis(),
        workers,
    });
    Ok(report)
}
