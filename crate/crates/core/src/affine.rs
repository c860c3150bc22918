//! Affine maps `g = t_v h` acting by `x -> (x + v) h`, their orders, cycle
//! structure, the 1-primary splitting `V = U + W` and translation reduction.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{self, lcm};
use crate::conjugacy::{class_invariant, order_of};
use crate::error::{Error, Result};
use crate::matrix::{format_vector, is_zero_vec, vec_add, vec_sub, Matrix, Vector};
use crate::orbit::{CodeMap, MAX_CYCLE_SPACE};
use crate::poly::Poly;
use crate::registry::Registry;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    v: Vector,
    h: Matrix,
}

impl AffineMap {
    pub fn new(v: Vector, h: Matrix) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::shape("linear part must be square"));
        }
        if v.len() != h.dim() {
            return Err(Error::shape(format!(
                "translation of length {} for dimension {}",
                v.len(),
                h.dim()
            )));
        }
        if h.det()? == 0 {
            return Err(Error::Singular);
        }
        let p = h.modulus();
        Ok(AffineMap {
            v: v.into_iter().map(|c| c % p).collect(),
            h,
        })
    }

    pub fn linear(h: Matrix) -> Result<Self> {
        let d = h.dim();
        AffineMap::new(vec![0; d], h)
    }

    pub fn p(&self) -> u32 {
        self.h.modulus()
    }

    pub fn d(&self) -> usize {
        self.h.dim()
    }

    pub fn v(&self) -> &[u32] {
        &self.v
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn with_translation(&self, v: Vector) -> Result<Self> {
        if v.len() != self.d() {
            return Err(Error::shape("translation length"));
        }
        Ok(AffineMap {
            v,
            h: self.h.clone(),
        })
    }

    /// `(x + v) h`.
    pub fn apply(&self, x: &[u32]) -> Vector {
        self.h.apply(&vec_add(x, &self.v, self.p()))
    }

    /// `g^n` written as `x -> x M + c`.
    pub fn power(&self, mut n: u64) -> (Matrix, Vector) {
        let p = self.p();
        let step = (self.h.clone(), self.h.apply(&self.v));
        let compose = |a: &(Matrix, Vector), b: &(Matrix, Vector)| {
            (a.0.mul_unchecked(&b.0), vec_add(&b.0.apply(&a.1), &b.1, p))
        };
        let mut acc = (Matrix::identity(p, self.d()), vec![0; self.d()]);
        let mut base = step;
        while n > 0 {
            if n & 1 == 1 {
                acc = compose(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = compose(&base, &base);
            }
        }
        acc
    }

    /// The map induced on the span of `basis`, in coordinates for that basis.
    /// Requires an `h`-invariant span containing `v`.
    pub fn restrict(&self, basis: &[Vector]) -> Result<AffineMap> {
        let p = self.p();
        let k = basis.len();
        if k == 0 {
            return Ok(AffineMap {
                v: Vec::new(),
                h: Matrix::zero(p, 0, 0),
            });
        }
        let b = Matrix::from_vectors(p, self.d(), basis);
        let mut rows = Vec::with_capacity(k);
        for row in basis {
            let image = self.h.apply(row);
            rows.push(b.solve_left(&image)?.ok_or(Error::NotInvariant)?);
        }
        let v = b.solve_left(&self.v)?.ok_or(Error::NotInvariant)?;
        Ok(AffineMap {
            v,
            h: Matrix::from_vectors(p, k, &rows),
        })
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if is_zero_vec(&self.v) {
            write!(f, "{}", self.h)
        } else {
            write!(f, "t({}) {}", format_vector(&self.v), self.h)
        }
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p())
    }
}

/// Strategy for evaluating `h(r) = I + h + ... + h^(r-1)`.
pub trait GeometricSum: Send + Sync {
    fn sum(&self, h: &Matrix, r: u64) -> Result<Matrix>;
}

/// `S(2m) = S(m)(I + h^m)`, `S(2m+1) = S(2m) + h^(2m)`.
pub struct BinarySplit;

impl GeometricSum for BinarySplit {
    fn sum(&self, h: &Matrix, r: u64) -> Result<Matrix> {
        let p = h.modulus();
        let n = h.dim();
        let id = Matrix::identity(p, n);
        let mut s = Matrix::zero(p, n, n);
        let mut pw = id.clone();
        for bit in (0..64 - r.leading_zeros()).rev() {
            s = s.mul(&id.add(&pw)?)?;
            pw = pw.mul(&pw)?;
            if r >> bit & 1 == 1 {
                s = s.add(&pw)?;
                pw = pw.mul(h)?;
            }
        }
        Ok(s)
    }
}

/// Term-by-term summation, limited to `r <= 2^20`.
pub struct NaiveSum;

impl GeometricSum for NaiveSum {
    fn sum(&self, h: &Matrix, r: u64) -> Result<Matrix> {
        if r > 1 << 20 {
            return Err(Error::CapExceeded {
                what: "naive geometric sum length",
                value: r as u128,
                cap: 1 << 20,
            });
        }
        let n = h.dim();
        let mut term = Matrix::identity(h.modulus(), n);
        let mut s = Matrix::zero(h.modulus(), n, n);
        for _ in 0..r {
            s = s.add(&term)?;
            term = term.mul(h)?;
        }
        Ok(s)
    }
}

pub fn geometric_sum_strategies() -> Registry<dyn GeometricSum> {
    let mut r: Registry<dyn GeometricSum> = Registry::new("geometric-sum strategy");
    r.register("binary-split", Arc::new(BinarySplit));
    r.register("naive", Arc::new(NaiveSum));
    r
}

pub fn geometric_sum(h: &Matrix, r: u64) -> Result<Matrix> {
    BinarySplit.sum(h, r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderProfile {
    /// Order of `h`.
    pub k: u64,
    /// `|g| = p^delta k`.
    pub delta: u32,
    /// p-part of `k`.
    pub k_p: u64,
    /// `dim U`.
    pub a: usize,
    /// `|h restricted to U| = p^c`.
    pub c: u32,
    /// Number of cycles of `g` on `U` (after moving the translation into `U`).
    pub t: u64,
}

/// `U` (1-primary component) and `W` (sum of the other primary components).
pub fn primary_split(h: &Matrix) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let p = h.modulus();
    let d = h.dim();
    let one = Poly::linear(p, 1);
    let cp = h.char_poly()?;
    let mut rest = cp.clone();
    let mut mult = 0u64;
    while one.divides(&rest)? {
        rest = rest.div_exact(&one)?;
        mult += 1;
    }
    let u = if mult == 0 {
        Vec::new()
    } else {
        h.eval_poly(&one.pow(mult))?.left_kernel()
    };
    let w = if rest.deg() == 0 {
        Vec::new()
    } else {
        h.eval_poly(&rest)?.left_kernel()
    };
    debug_assert_eq!(u.len() + w.len(), d);
    Ok((u, w))
}

/// Splits `x = xu + xw` along `V = U + W`.
fn split_vector(x: &[u32], u: &[Vector], w: &[Vector], p: u32) -> Result<(Vector, Vector)> {
    let d = x.len();
    let all: Vec<Vector> = u.iter().chain(w).cloned().collect();
    let basis = Matrix::from_vectors(p, d, &all);
    let coords = basis
        .solve_left(x)?
        .ok_or_else(|| Error::Internal("U and W do not span V".into()))?;
    let mut xu = vec![0; d];
    for (c, row) in coords.iter().zip(u) {
        xu = vec_add(
            &xu,
            &row.iter()
                .map(|&r| crate::poly::fmul(r, *c, p))
                .collect::<Vec<_>>(),
            p,
        );
    }
    let xw = vec_sub(x, &xu, p);
    Ok((xu, xw))
}

/// Returns `(g', w')` with `g' = t_u h`, `u` in `U`, and
/// `g'(x) = g(x - w') + w'` for every `x`.
pub fn reduce_translation(g: &AffineMap) -> Result<(AffineMap, Vector)> {
    let p = g.p();
    let d = g.d();
    let (u_basis, w_basis) = primary_split(g.h())?;
    let (u, w) = split_vector(g.v(), &u_basis, &w_basis, p)?;
    if is_zero_vec(&w) {
        return Ok((g.clone(), vec![0; d]));
    }
    let id = Matrix::identity(p, d);
    let system = id.sub(&g.h().inverse()?)?;
    let x = system
        .solve_left(&w)?
        .ok_or_else(|| Error::Internal("I - h^-1 not invertible on W".into()))?;
    let (_, w_prime) = split_vector(&x, &u_basis, &w_basis, p)?;
    Ok((g.with_translation(u)?, w_prime))
}

/// Order of `g` together with its profile.
pub fn affine_order(g: &AffineMap) -> Result<(u64, OrderProfile)> {
    let p = g.p();
    let k = order_of(g.h())?;
    let hk = geometric_sum(g.h(), k)?;
    let delta = u32::from(!is_zero_vec(&hk.apply(g.v())));
    let (reduced, _) = reduce_translation(g)?;
    let (u_basis, _) = primary_split(g.h())?;
    let a = u_basis.len();
    let gu = reduced.restrict(&u_basis)?;
    let ku = if a == 0 { 1 } else { order_of(gu.h())? };
    let c = arith::ceil_log(ku, p as u64);
    let t = count_cycles_burnside(&gu, ku)?;
    let order = k * (p as u64).pow(delta);
    Ok((
        order,
        OrderProfile {
            k,
            delta,
            k_p: arith::p_part(k, p as u64),
            a,
            c,
            t,
        },
    ))
}

/// Number of `g`-cycles as the average number of fixed points of `g^n`,
/// where `k` is the order of the linear part.
fn count_cycles_burnside(g: &AffineMap, k: u64) -> Result<u64> {
    let p = g.p();
    let d = g.d();
    let hk = geometric_sum(g.h(), k)?;
    let n_total = if is_zero_vec(&hk.apply(g.v())) {
        k
    } else {
        k * p as u64
    };
    let id = Matrix::identity(p, d);
    let mut fixed: u128 = 0;
    for n in 0..n_total {
        let (m, c) = g.power(n);
        // x m + c = x  <=>  x (m - I) = -c
        let lhs = m.sub(&id)?;
        let rhs: Vector = c.iter().map(|&ci| (p - ci) % p).collect();
        if lhs.solve_left(&rhs)?.is_some() {
            let nullity = d - lhs.rank();
            fixed += (p as u128).pow(nullity as u32);
        }
    }
    if !fixed.is_multiple_of(n_total as u128) {
        return Err(Error::Internal("orbit count is not an integer".into()));
    }
    Ok((fixed / n_total as u128) as u64)
}

/// True iff some translation doubles the order by a factor `p`, i.e. `h(k) != 0`.
pub fn order_doubling_exists(h: &Matrix) -> Result<bool> {
    let k = order_of(h)?;
    Ok(!geometric_sum(h, k)?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStructure {
    /// Orbit lengths, ascending.
    pub lengths: Vec<u64>,
    pub count: u64,
}

impl CycleStructure {
    pub fn from_lengths(mut lengths: Vec<u64>) -> Self {
        lengths.sort_unstable();
        let count = lengths.len() as u64;
        CycleStructure { lengths, count }
    }

    pub fn lcm(&self) -> u64 {
        self.lengths.iter().fold(1, |acc, &l| lcm(acc, l))
    }

    pub fn total(&self) -> u64 {
        self.lengths.iter().sum()
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn cycle_structure(g: &AffineMap) -> Result<CycleStructure> {
    cycle_structure_capped(g, MAX_CYCLE_SPACE)
}

pub fn cycle_structure_capped(g: &AffineMap, cap: u128) -> Result<CycleStructure> {
    let c = g.h().apply(g.v());
    let map = CodeMap::new(g.h(), &c, cap)?;
    Ok(CycleStructure::from_lengths(map.orbit_lengths()))
}

/// Number of cycles of `g`, but stops counting past `limit`.
pub fn cycle_count_up_to(g: &AffineMap, limit: u64, cap: u128) -> Result<u64> {
    let c = g.h().apply(g.v());
    Ok(CodeMap::new(g.h(), &c, cap)?.count_orbits_up_to(limit))
}

/// The `g`-cycle of `x` listed as `x h^(r-1) + v h(r) - v` for `r = 1, 2, ...`.
pub fn cycle_of(g: &AffineMap, x: &[u32]) -> Result<Vec<Vector>> {
    arith::space_size(g.p(), g.d(), MAX_CYCLE_SPACE, "p^d for cycle listing")?;
    if x.len() != g.d() {
        return Err(Error::shape("vector length"));
    }
    let p = g.p();
    let h = g.h();
    let v = g.v();
    let mut a = x.to_vec();
    let mut b = v.to_vec();
    let mut out = Vec::new();
    loop {
        let element = vec_sub(&vec_add(&a, &b, p), v, p);
        if !out.is_empty() && element == out[0] {
            break;
        }
        out.push(element);
        a = h.apply(&a);
        b = vec_add(v, &h.apply(&b), p);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleProductCounts {
    /// `g`-cycles on `U`.
    pub t: u64,
    /// `h`-cycles on `W'`, the zero vector included.
    pub r: u64,
    /// `g`-cycles on `U + W'`.
    pub cycles_on_sum: u64,
}

/// Cycle counts on `U`, on an `h`-invariant `W' <= W`, and on `U + W'`.
/// `g` must have its translation in `U`.
pub fn cycle_product_bound(g: &AffineMap, w_prime: &[Vector]) -> Result<CycleProductCounts> {
    let p = g.p();
    let (u_basis, w_basis) = primary_split(g.h())?;
    // W' inside W; invariance is checked by the restriction below.
    let wb = Matrix::from_vectors(p, g.d(), &w_basis);
    for row in w_prime {
        if wb.solve_left(row)?.is_none() {
            return Err(Error::NotInvariant);
        }
    }
    let h_on_w = AffineMap::linear(g.h().clone())?.restrict(w_prime)?;
    let g_on_u = g.restrict(&u_basis)?;
    let sum_basis: Vec<Vector> = u_basis.iter().chain(w_prime).cloned().collect();
    let g_on_sum = g.restrict(&sum_basis)?;
    Ok(CycleProductCounts {
        t: cycle_structure(&g_on_u)?.count,
        r: cycle_structure(&h_on_w)?.count,
        cycles_on_sum: cycle_structure(&g_on_sum)?.count,
    })
}

/// Whether `U` is a single cycle of `g` (with the translation moved into `U`).
pub fn u_single_cycle(g: &AffineMap) -> Result<bool> {
    let (reduced, _) = reduce_translation(g)?;
    let (u_basis, _) = primary_split(g.h())?;
    let gu = reduced.restrict(&u_basis)?;
    Ok(cycle_count_up_to(&gu, 1, MAX_CYCLE_SPACE)? == 1)
}

/// `delta` of `g` restricted to `U` (after moving the translation into
/// `U`). It can be 1 while the global `delta` is 0, when the p-part of `|h|`
/// comes from outside `U`; for elements with at most four cycles the two
/// agree.
pub fn u_delta(g: &AffineMap) -> Result<u32> {
    let (reduced, _) = reduce_translation(g)?;
    let (u_basis, _) = primary_split(g.h())?;
    if u_basis.is_empty() {
        return Ok(0);
    }
    Ok(affine_order(&reduced.restrict(&u_basis)?)?.1.delta)
}

/// The structural characterization of a single cycle on `U`: either `U = 0`,
/// or `g` has order `p |h_U|` on `U`, `h` acts on `U` as one Jordan block
/// `J_a`, and `a = 1` or `(a, p) = (2, 2)`.
pub fn u_single_cycle_predicted(g: &AffineMap) -> Result<bool> {
    let (_, profile) = affine_order(g)?;
    if profile.a == 0 {
        return Ok(true);
    }
    let (u_basis, _) = primary_split(g.h())?;
    let hu = AffineMap::linear(g.h().clone())?.restrict(&u_basis)?;
    let partition = class_invariant(hu.h())?.unipotent_partition().to_vec();
    let one_block = partition == [profile.a];
    Ok(u_delta(g)? == 1 && one_block && (profile.a == 1 || (profile.a, g.p()) == (2, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{decode, encode, parse_vector};

    fn e(i: usize, d: usize) -> Vector {
        let mut v = vec![0; d];
        v[i - 1] = 1;
        v
    }

    fn sum(p: u32, parts: &[Matrix]) -> Matrix {
        Matrix::direct_sum(p, parts).unwrap()
    }

    #[test]
    fn geometric_sums() {
        let h = Matrix::singer(3, 3, 1).unwrap();
        assert!(geometric_sum(&h, 1).unwrap().is_identity());
        assert!(geometric_sum(&Matrix::identity(5, 3), 5).unwrap().is_zero());
        for r in 1..40 {
            assert_eq!(
                geometric_sum(&h, r).unwrap(),
                NaiveSum.sum(&h, r).unwrap(),
                "r={r}"
            );
        }
        let reg = geometric_sum_strategies();
        assert_eq!(reg.names(), vec!["binary-split", "naive"]);
    }

    #[test]
    fn order_examples() {
        let g = AffineMap::new(e(1, 5), Matrix::jordan_block(2, 5)).unwrap();
        let (n, prof) = affine_order(&g).unwrap();
        assert_eq!((n, prof.delta), (8, 0));
        let g = AffineMap::new(e(1, 4), Matrix::jordan_block(2, 4)).unwrap();
        let (n, prof) = affine_order(&g).unwrap();
        assert_eq!((n, prof.delta), (8, 1));
        assert_eq!(prof.t, 2);
        let (n, _) = affine_order(&AffineMap::linear(Matrix::identity(3, 2)).unwrap()).unwrap();
        assert_eq!(n, 1);
    }

    #[test]
    fn doubling() {
        assert!(order_doubling_exists(&Matrix::jordan_block(2, 2)).unwrap());
        assert!(!order_doubling_exists(&Matrix::singer(2, 4, 1).unwrap()).unwrap());
        let h = sum(2, &[Matrix::jordan_block(2, 2), Matrix::jordan_block(2, 3)]);
        assert!(!order_doubling_exists(&h).unwrap());
        assert!(geometric_sum(&h, 4).unwrap().is_zero());
    }

    #[test]
    fn splitting() {
        let h = sum(
            2,
            &[Matrix::jordan_block(2, 1), Matrix::singer(2, 3, 1).unwrap()],
        );
        assert_eq!(primary_split(&h).unwrap().0.len(), 1);
        let (u, w) = primary_split(&Matrix::jordan_block(3, 3)).unwrap();
        assert_eq!((u.len(), w.len()), (3, 0));
        let s1j2 = Matrix::singer(3, 1, 1)
            .unwrap()
            .kronecker(&Matrix::jordan_block(3, 2))
            .unwrap();
        let h = sum(3, &[s1j2, Matrix::singer(3, 2, 1).unwrap()]);
        assert_eq!(primary_split(&h).unwrap().0.len(), 0);
    }

    #[test]
    fn translation_reduction_is_pointwise_conjugacy() {
        let h = sum(
            3,
            &[Matrix::jordan_block(3, 2), Matrix::singer(3, 2, 1).unwrap()],
        );
        let g = AffineMap::new(vec![1, 2, 2, 1], h).unwrap();
        let (g2, w) = reduce_translation(&g).unwrap();
        for code in 0..81 {
            let x = decode(code, 3, 4);
            let lhs = vec_add(&g.apply(&vec_sub(&x, &w, 3)), &w, 3);
            assert_eq!(lhs, g2.apply(&x));
        }
        let singer = AffineMap::new(vec![1, 1, 0], Matrix::singer(2, 3, 1).unwrap()).unwrap();
        assert!(is_zero_vec(reduce_translation(&singer).unwrap().0.v()));
    }

    #[test]
    fn cycle_examples() {
        let g = AffineMap::new(e(1, 5), Matrix::jordan_block(2, 5)).unwrap();
        assert_eq!(cycle_structure(&g).unwrap().lengths, vec![8, 8, 8, 8]);
        let g = AffineMap::new(e(1, 2), Matrix::jordan_block(3, 2)).unwrap();
        assert_eq!(cycle_structure(&g).unwrap().lengths, vec![3, 3, 3]);
        let g = AffineMap::linear(Matrix::identity(3, 2)).unwrap();
        assert_eq!(cycle_structure(&g).unwrap().count, 9);
        let s1j2 = Matrix::singer(3, 1, 1)
            .unwrap()
            .kronecker(&Matrix::jordan_block(3, 2))
            .unwrap();
        let g = AffineMap::linear(s1j2).unwrap();
        assert_eq!(cycle_structure(&g).unwrap().lengths, vec![1, 2, 6]);
        let empty = AffineMap::linear(Matrix::zero(2, 0, 0)).unwrap();
        assert_eq!(cycle_structure(&empty).unwrap().lengths, vec![1]);
    }

    #[test]
    fn cycle_listing_matches_iteration() {
        let g = AffineMap::new(
            vec![1, 0, 2],
            Matrix::singer(3, 3, 2)
                .unwrap()
                .mul(&Matrix::identity(3, 3))
                .unwrap(),
        )
        .unwrap();
        let start = parse_vector("2,1,0", 3, 3).unwrap();
        let listed = cycle_of(&g, &start).unwrap();
        let mut x = start.clone();
        for y in &listed {
            assert_eq!(&x, y);
            x = g.apply(&x);
        }
        assert_eq!(x, start);
        let t = AffineMap::new(vec![1], Matrix::identity(2, 1)).unwrap();
        assert_eq!(cycle_of(&t, &[0]).unwrap(), vec![vec![0], vec![1]]);
        let zero = AffineMap::linear(Matrix::identity(2, 1)).unwrap();
        assert_eq!(cycle_of(&zero, &[0]).unwrap(), vec![vec![0]]);
        assert_eq!(encode(&listed[0], 3), encode(&start, 3));
    }

    #[test]
    fn cycle_product_examples() {
        let h = sum(
            2,
            &[Matrix::jordan_block(2, 1), Matrix::singer(2, 2, 1).unwrap()],
        );
        let g = AffineMap::linear(h).unwrap();
        let c = cycle_product_bound(&g, &[e(2, 3), e(3, 3)]).unwrap();
        assert_eq!((c.t, c.r, c.cycles_on_sum), (2, 2, 4));
        let h = sum(
            3,
            &[Matrix::jordan_block(3, 1), Matrix::singer(3, 2, 1).unwrap()],
        );
        let g = AffineMap::linear(h).unwrap();
        let c = cycle_product_bound(&g, &[e(2, 3), e(3, 3)]).unwrap();
        assert_eq!((c.t, c.r), (3, 2));
        assert!(c.cycles_on_sum >= 6);
        assert_eq!(
            cycle_product_bound(&g, &[e(1, 3)]),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn single_cycle_examples() {
        let g = AffineMap::new(e(1, 2), Matrix::jordan_block(2, 2)).unwrap();
        assert!(u_single_cycle(&g).unwrap());
        assert!(u_single_cycle_predicted(&g).unwrap());
        let g = AffineMap::new(e(1, 2), Matrix::jordan_block(3, 2)).unwrap();
        assert!(!u_single_cycle(&g).unwrap());
        assert!(!u_single_cycle_predicted(&g).unwrap());
        let g = AffineMap::linear(Matrix::jordan_block(3, 2)).unwrap();
        assert!(!u_single_cycle(&g).unwrap());
        let g = AffineMap::linear(Matrix::singer(5, 2, 1).unwrap()).unwrap();
        assert!(u_single_cycle(&g).unwrap());
        assert!(u_single_cycle_predicted(&g).unwrap());
    }

    #[test]
    fn delta_on_u_can_exceed_global_delta() {
        // (-J_2) + J_1 over F_3 with v in U: |h| = 6 already carries the
        // p-part, so globally delta = 0, yet g is a 3-cycle on U.
        let h = Matrix::from_rows(3, &[vec![2, 0, 0], vec![2, 0, 1], vec![0, 1, 0]]).unwrap();
        let g = AffineMap::new(vec![1, 2, 0], h).unwrap();
        let (order, prof) = affine_order(&g).unwrap();
        assert_eq!((order, prof.delta, prof.a, prof.c), (6, 0, 1, 0));
        assert_eq!(u_delta(&g).unwrap(), 1);
        assert!(u_single_cycle(&g).unwrap());
        assert!(u_single_cycle_predicted(&g).unwrap());
        assert!(cycle_count_up_to(&g, 5, 1 << 10).unwrap() > 4);
    }

    #[test]
    fn power_matches_iteration() {
        let g = AffineMap::new(vec![1, 2], Matrix::jordan_block(3, 2)).unwrap();
        let (m, c) = g.power(5);
        let x = vec![2, 1];
        let mut y = x.clone();
        for _ in 0..5 {
            y = g.apply(&y);
        }
        assert_eq!(vec_add(&m.apply(&x), &c, 3), y);
    }
}
