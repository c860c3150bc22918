//! Property suites for the structural lemmas on element orders, translation
//! reduction and cycle counts, run on seeded random elements plus class
//! representatives with their translations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::affine::{
    affine_order, cycle_count_up_to, cycle_product_bound, cycle_structure,
    geometric_sum_strategies, primary_split, reduce_translation, u_delta, u_single_cycle,
    u_single_cycle_predicted, AffineMap, GeometricSum,
};
use crate::arith::{self, ceil_log, p_part};
use crate::conjugacy::{
    class_invariant, enumerate_class_reps, min_poly, order_of, primary_component,
};
use crate::error::Result;
use crate::matrix::{decode, format_vector, is_zero_vec, vec_add, vec_sub, Matrix, Vector};
use crate::poly::Poly;
use crate::registry::Registry;

/// Orbit-based checks run only up to this space size.
pub const ORBIT_CHECK_SPACE: u64 = 1 << 16;
/// Pointwise conjugacy is checked on every vector up to this size.
pub const POINTWISE_SPACE: u64 = 1 << 10;

pub struct LemmaContext {
    pub p: u32,
    pub d: usize,
    pub space: u64,
    pub sum: Arc<dyn GeometricSum>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteOutcome {
    Pass,
    /// Hypotheses not met, or the element is outside the suite's size range.
    Skip,
    Fail(String),
}

pub trait LemmaSuite: Send + Sync {
    fn check(&self, cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome>;
}

fn fail(g: &AffineMap, why: impl Into<String>) -> SuiteOutcome {
    SuiteOutcome::Fail(format!("{}: {g:?}", why.into()))
}

/// Order of a unipotent matrix by repeated p-th powers.
fn unipotent_order(u: &Matrix) -> Result<Option<u64>> {
    let p = u.modulus() as u64;
    let mut m = u.clone();
    let mut order = 1u64;
    for _ in 0..=64 {
        if m.is_identity() {
            return Ok(Some(order));
        }
        m = m.pow(p)?;
        order = order.saturating_mul(p);
    }
    Ok(None)
}

fn u_part(g: &AffineMap) -> Result<(Vec<Vector>, Vec<Vector>, Matrix)> {
    let (u, w) = primary_split(g.h())?;
    let hu = AffineMap::linear(g.h().clone())?.restrict(&u)?.h().clone();
    Ok((u, w, hu))
}

/// Unipotent order bound `p^ceil(log_p a)` with its equality condition,
/// applied to `h` restricted to `U`.
struct UnipotentBound;

impl LemmaSuite for UnipotentBound {
    fn check(&self, _cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome> {
        let (u, _, hu) = u_part(g)?;
        let a = u.len();
        if a == 0 {
            return Ok(SuiteOutcome::Skip);
        }
        let p = g.p() as u64;
        let Some(order) = unipotent_order(&hu)? else {
            return Ok(fail(g, "h on U is not unipotent"));
        };
        let bound = p.pow(ceil_log(a as u64, p));
        if order > bound {
            return Ok(fail(g, format!("|h_U| = {order} exceeds {bound}")));
        }
        let inv = class_invariant(&hu)?;
        let top = ceil_log(a as u64, p);
        let predicted = inv
            .unipotent_partition()
            .iter()
            .any(|&b| ceil_log(b as u64, p) == top);
        if (order == bound) != predicted {
            return Ok(fail(
                g,
                format!(
                    "equality {} but block condition {predicted}",
                    order == bound
                ),
            ));
        }
        Ok(SuiteOutcome::Pass)
    }
}

/// `|t_v h| in {k, pk}`, `pk` exactly when `v h(k) != 0`, `g^k = t_{v h(k)}`,
/// and a doubling translation exists iff the (x-1)-multiplicity of the
/// minimal polynomial is the p-part of `k`.
struct OrderCriterion;

impl LemmaSuite for OrderCriterion {
    fn check(&self, cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome> {
        let p = g.p();
        let h = g.h();
        let k = order_of(h)?;
        let hk = cx.sum.sum(h, k)?;
        let u = hk.apply(g.v());
        if h.apply(&u) != u {
            return Ok(fail(g, "v h(k) is not fixed by h"));
        }
        let (mk, ck) = g.power(k);
        if !mk.is_identity() || ck != u {
            return Ok(fail(
                g,
                format!(
                    "g^k translates by {} but v h(k) = {}",
                    format_vector(&ck),
                    format_vector(&u)
                ),
            ));
        }
        let order = if is_zero_vec(&ck) {
            k
        } else {
            let (m, c) = g.power(k * p as u64);
            if !m.is_identity() || !is_zero_vec(&c) {
                return Ok(fail(g, "g^(pk) is not the identity"));
            }
            k * p as u64
        };
        if (order == k * p as u64) != !is_zero_vec(&u) {
            return Ok(fail(
                g,
                format!(
                    "order {order} disagrees with v h(k) = {}",
                    format_vector(&u)
                ),
            ));
        }
        let exists = !hk.is_zero();
        let one = Poly::linear(p, 1);
        let mut m = min_poly(h)?;
        let mut mult = 0u64;
        while one.divides(&m)? {
            m = m.div_exact(&one)?;
            mult += 1;
        }
        if exists != (mult == p_part(k, p as u64)) {
            return Ok(fail(
                g,
                format!(
                    "h(k) != 0 is {exists} but (x-1)-multiplicity {mult}, p-part {}",
                    p_part(k, p as u64)
                ),
            ));
        }
        Ok(SuiteOutcome::Pass)
    }
}

/// Order `p|h|` forces a Jordan block of size `(|h|)_p` and none larger.
struct DoublingBlock;

impl LemmaSuite for DoublingBlock {
    fn check(&self, _cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome> {
        let (order, prof) = affine_order(g)?;
        if prof.delta == 0 {
            return Ok(SuiteOutcome::Skip);
        }
        let kp = prof.k_p as usize;
        let inv = class_invariant(g.h())?;
        let part = inv.unipotent_partition();
        if !part.contains(&kp) || part.iter().any(|&b| b > kp) {
            return Ok(fail(
                g,
                format!("order {order} but unipotent blocks {part:?}, (k)_p = {kp}"),
            ));
        }
        Ok(SuiteOutcome::Pass)
    }
}

/// `g` is conjugate by `t_{w'}` to `t_u h` with `u` in `U`.
struct TranslationReduction;

impl LemmaSuite for TranslationReduction {
    fn check(&self, cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome> {
        let p = g.p();
        let d = g.d();
        let (reduced, w_prime) = reduce_translation(g)?;
        let (u_basis, w_basis) = primary_split(g.h())?;
        let in_span = |x: &[u32], basis: &[Vector]| -> Result<bool> {
            if is_zero_vec(x) {
                return Ok(true);
            }
            Ok(!basis.is_empty() && Matrix::from_vectors(p, d, basis).solve_left(x)?.is_some())
        };
        if !in_span(reduced.v(), &u_basis)? || !in_span(&w_prime, &w_basis)? {
            return Ok(fail(g, "reduced translation outside U or w' outside W"));
        }
        let step = if cx.space <= POINTWISE_SPACE {
            1
        } else {
            cx.space / 257 + 1
        };
        let mut code = 0;
        while code < cx.space {
            let x = decode(code, p, d);
            let lhs = reduced.apply(&x);
            let rhs = vec_add(&g.apply(&vec_sub(&x, &w_prime, p)), &w_prime, p);
            if lhs != rhs {
                return Ok(fail(
                    g,
                    format!("conjugacy fails at x = {}", format_vector(&x)),
                ));
            }
            code += step;
        }
        if affine_order(g)?.0 != affine_order(&reduced)?.0 {
            return Ok(fail(g, "orders differ after reduction"));
        }
        if cx.space <= POINTWISE_SPACE && cycle_structure(g)? != cycle_structure(&reduced)? {
            return Ok(fail(g, "cycle structures differ after reduction"));
        }
        Ok(SuiteOutcome::Pass)
    }
}

/// Cycle counts on `U`, `W'` and `U + W'`: at least `t r` cycles on the sum;
/// with at most four cycles overall, `t r <= 4` and `t >= 2` forces
/// `t = r = 2`, `W' = W` and a Singer cycle on `W`.
struct CycleProduct;

impl LemmaSuite for CycleProduct {
    fn check(&self, cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome> {
        if cx.space > ORBIT_CHECK_SPACE {
            return Ok(SuiteOutcome::Skip);
        }
        let p = g.p();
        let (reduced, _) = reduce_translation(g)?;
        let (_, w_basis) = primary_split(g.h())?;
        if w_basis.is_empty() {
            return Ok(SuiteOutcome::Skip);
        }
        let few = cycle_structure(g)?.count <= 4;
        let mut candidates = vec![w_basis.clone()];
        let inv = class_invariant(g.h())?;
        if inv.blocks.len() > 1 {
            for b in &inv.blocks {
                if b.poly != Poly::linear(p, 1) {
                    candidates.push(primary_component(g.h(), &b.poly)?);
                }
            }
        }
        for w in candidates {
            let c = cycle_product_bound(&reduced, &w)?;
            if c.t < 1 || c.r < 2 || c.cycles_on_sum < c.t * c.r {
                return Ok(fail(
                    g,
                    format!(
                        "t = {}, r = {}, cycles on U + W' = {}",
                        c.t, c.r, c.cycles_on_sum
                    ),
                ));
            }
            if !few {
                continue;
            }
            if c.t * c.r > 4 {
                return Ok(fail(
                    g,
                    format!("at most four cycles but t r = {}", c.t * c.r),
                ));
            }
            if c.t >= 2 {
                let singer = AffineMap::linear(g.h().clone())?.restrict(&w_basis)?;
                let full = arith::space_size(p, w_basis.len(), arith::MAX_ORDER_SPACE, "|W|")? - 1;
                if c.t != 2 || c.r != 2 || w.len() != w_basis.len() || order_of(singer.h())? != full
                {
                    return Ok(fail(
                        g,
                        format!("t = {} >= 2 without the Singer configuration", c.t),
                    ));
                }
            }
        }
        Ok(SuiteOutcome::Pass)
    }
}

/// `p^a <= t |g_U| = t p^(c + delta) <= t p^(delta + ceil log_p a)`, and the
/// single-cycle characterization of `U`.
struct UCycleBound;

impl LemmaSuite for UCycleBound {
    fn check(&self, cx: &LemmaContext, g: &AffineMap) -> Result<SuiteOutcome> {
        if cx.space > ORBIT_CHECK_SPACE {
            return Ok(SuiteOutcome::Skip);
        }
        let p = g.p() as u64;
        let (_, prof) = affine_order(g)?;
        let (reduced, _) = reduce_translation(g)?;
        let (u_basis, _) = primary_split(g.h())?;
        let gu = reduced.restrict(&u_basis)?;
        let t = cycle_structure(&gu)?.count;
        if t != prof.t {
            return Ok(fail(
                g,
                format!("{t} cycles on U but the profile counts {}", prof.t),
            ));
        }
        // The bound is stated for elements with at most four cycles, where
        // the global delta is also the delta of g on U. Without that
        // hypothesis only the delta of g on U gives |g_U|.
        let delta_u = u_delta(g)?;
        if delta_u != prof.delta && cycle_count_up_to(g, 5, ORBIT_CHECK_SPACE as u128)? <= 4 {
            return Ok(fail(
                g,
                format!(
                    "at most four cycles but delta = {} and delta on U = {delta_u}",
                    prof.delta
                ),
            ));
        }
        let gu_order = if prof.a == 0 { 1 } else { affine_order(&gu)?.0 };
        let mid = p.pow(prof.c + delta_u);
        if gu_order != mid {
            return Ok(fail(
                g,
                format!("|g_U| = {gu_order} but p^(c+delta_U) = {mid}"),
            ));
        }
        let lower = p.pow(prof.a as u32);
        let upper = if prof.a == 0 {
            p.pow(delta_u)
        } else {
            p.pow(delta_u + ceil_log(prof.a as u64, p))
        };
        if lower > t * mid || t * mid > t * upper {
            return Ok(fail(
                g,
                format!("{lower} <= {t}*{mid} <= {t}*{upper} fails"),
            ));
        }
        if u_single_cycle(g)? != u_single_cycle_predicted(g)? {
            return Ok(fail(
                g,
                "single-cycle characterization of U disagrees with enumeration",
            ));
        }
        Ok(SuiteOutcome::Pass)
    }
}

/// Registered suites, in report order.
pub fn lemma_suites() -> Registry<dyn LemmaSuite> {
    let mut r: Registry<dyn LemmaSuite> = Registry::new("lemma suite");
    r.register("unipotent-bound", Arc::new(UnipotentBound));
    r.register("order-criterion", Arc::new(OrderCriterion));
    r.register("doubling-block", Arc::new(DoublingBlock));
    r.register("translation-reduction", Arc::new(TranslationReduction));
    r.register("cycle-product", Arc::new(CycleProduct));
    r.register("u-cycle-bound", Arc::new(UCycleBound));
    r
}

#[derive(Debug, Clone)]
pub struct LemmaOptions {
    pub samples: usize,
    pub seed: u64,
    /// Geometric-sum strategy handed to the suites.
    pub sum_strategy: String,
    /// Restrict to these suites; empty runs all.
    pub suites: Vec<String>,
    pub include_class_reps: bool,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions {
            samples: 1000,
            seed: 42,
            sum_strategy: "binary-split".into(),
            suites: Vec::new(),
            include_class_reps: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: u64,
    pub skipped: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub p: u32,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub elements: u64,
    pub suites: Vec<SuiteResult>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

fn random_matrix(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zero(p, d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, rng.gen_range(0..p));
        }
    }
    m
}

fn random_invertible(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Result<Matrix> {
    loop {
        let m = random_matrix(p, d, rng);
        if m.det()? != 0 {
            return Ok(m);
        }
    }
}

fn random_vector(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Vector {
    (0..d).map(|_| rng.gen_range(0..p)).collect()
}

/// Half uniform invertible matrices, half conjugates of
/// `J_{m_1} + ... + J_{m_r} + B` with a random partition, so that large
/// 1-primary components show up often.
fn random_element(p: u32, d: usize, rng: &mut ChaCha8Rng) -> Result<AffineMap> {
    let h = if rng.gen_bool(0.5) {
        random_invertible(p, d, rng)?
    } else {
        let a = rng.gen_range(0..=d);
        let mut parts = Vec::new();
        let mut left = a;
        while left > 0 {
            let m = rng.gen_range(1..=left);
            parts.push(Matrix::jordan_block(p, m));
            left -= m;
        }
        if a < d {
            parts.push(random_invertible(p, d - a, rng)?);
        }
        let block = Matrix::direct_sum(p, &parts)?;
        let c = random_invertible(p, d, rng)?;
        c.inverse()?.mul(&block)?.mul(&c)?
    };
    AffineMap::new(random_vector(p, d, rng), h)
}

fn inputs(p: u32, d: usize, opts: &LemmaOptions) -> Result<Vec<AffineMap>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        out.push(random_element(p, d, &mut rng)?);
    }
    if opts.include_class_reps {
        for rep in enumerate_class_reps(p, d)? {
            let (h, _) = rep?;
            let (u, _) = primary_split(&h)?;
            let count = (p as u64).pow(u.len() as u32);
            let codes: Vec<u64> = if count <= 64 {
                (0..count).collect()
            } else {
                (0..8).map(|_| rng.gen_range(0..count)).collect()
            };
            for code in codes {
                let coeffs = decode(code, p, u.len());
                let mut v = vec![0; d];
                for (c, b) in coeffs.iter().zip(&u) {
                    for _ in 0..*c {
                        v = vec_add(&v, b, p);
                    }
                }
                out.push(AffineMap::new(v, h.clone())?);
            }
        }
    }
    Ok(out)
}

pub fn verify_lemmas(p: u32, d: usize, samples: usize, seed: u64) -> Result<LemmaReport> {
    let opts = LemmaOptions {
        samples,
        seed,
        ..LemmaOptions::default()
    };
    verify_lemmas_with(p, d, &opts, &geometric_sum_strategies())
}

/// Runs the selected suites with the named geometric-sum strategy taken from
/// `sums`, so alternative (or deliberately broken) strategies can be
/// injected.
pub fn verify_lemmas_with(
    p: u32,
    d: usize,
    opts: &LemmaOptions,
    sums: &Registry<dyn GeometricSum>,
) -> Result<LemmaReport> {
    arith::check_prime(p as u64)?;
    let space = arith::space_size(p, d, arith::MAX_ORDER_SPACE, "p^d for lemma suites")?;
    let cx = LemmaContext {
        p,
        d,
        space,
        sum: sums.get(&opts.sum_strategy)?,
    };
    let registry = lemma_suites();
    let suites: Vec<(String, Arc<dyn LemmaSuite>)> = if opts.suites.is_empty() {
        registry
            .iter()
            .map(|(n, s)| (n.to_string(), s.clone()))
            .collect()
    } else {
        opts.suites
            .iter()
            .map(|n| Ok((n.clone(), registry.get(n)?)))
            .collect::<Result<_>>()?
    };
    let elements = inputs(p, d, opts)?;
    let outcomes: Vec<Vec<SuiteOutcome>> = elements
        .par_iter()
        .map(|g| {
            suites
                .iter()
                .map(|(_, s)| s.check(&cx, g))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut results: Vec<SuiteResult> = suites
        .iter()
        .map(|(n, _)| SuiteResult {
            name: n.clone(),
            checked: 0,
            skipped: 0,
            failures: 0,
            witness: None,
        })
        .collect();
    for row in outcomes {
        for (res, outcome) in results.iter_mut().zip(row) {
            match outcome {
                SuiteOutcome::Pass => res.checked += 1,
                SuiteOutcome::Skip => res.skipped += 1,
                SuiteOutcome::Fail(w) => {
                    res.checked += 1;
                    res.failures += 1;
                    res.witness.get_or_insert(w);
                }
            }
        }
    }
    Ok(LemmaReport {
        p,
        d,
        samples: opts.samples,
        seed: opts.seed,
        elements: elements.len() as u64,
        suites: results,
    })
}
