//! Randomized invariants across the crate.

use proptest::prelude::*;

use crate::affine::{
    affine_order, cycle_structure, geometric_sum, reduce_translation, AffineMap, GeometricSum,
    NaiveSum,
};
use crate::arith::lcm;
use crate::conjugacy::{class_invariant, order_of};
use crate::matrix::{is_zero_vec, Matrix, Vector};
use crate::poly::Poly;
use crate::tables::{self, Kind};

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn matrix(p: u32, d: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(0..p as i64, d), d)
        .prop_map(move |rows| Matrix::from_rows(p, &rows).unwrap())
}

fn invertible(p: u32, d: usize) -> impl Strategy<Value = Matrix> {
    matrix(p, d).prop_filter("singular", |m| m.det().unwrap() != 0)
}

fn vector(p: u32, d: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(0..p, d)
}

/// (p, h, v) with p^d at most 7^3.
fn affine() -> impl Strategy<Value = AffineMap> {
    (prime(), 1usize..=4)
        .prop_filter("space", |&(p, d)| (p as u64).pow(d as u32) <= 343)
        .prop_flat_map(|(p, d)| (invertible(p, d), vector(p, d)))
        .prop_map(|(h, v)| AffineMap::new(v, h).unwrap())
}

fn with_conjugator() -> impl Strategy<Value = (AffineMap, Matrix, Vector)> {
    affine().prop_flat_map(|g| {
        let (p, d) = (g.p(), g.d());
        (Just(g), invertible(p, d), vector(p, d))
    })
}

/// `s^-1 g s` for `s: y -> y X + w`.
fn conjugate(g: &AffineMap, x: &Matrix, w: &[u32]) -> AffineMap {
    let p = g.p();
    let xi = x.inverse().unwrap();
    let h = x.mul(g.h()).unwrap().mul(&xi).unwrap();
    let gw = g.apply(w);
    let diff: Vec<u32> = gw.iter().zip(w).map(|(a, b)| (a + p - b) % p).collect();
    let c0 = xi.apply(&diff);
    let v = h.inverse().unwrap().apply(&c0);
    AffineMap::new(v, h).unwrap()
}

fn iterate_order(g: &AffineMap) -> u64 {
    let d = g.d();
    let (mut m, mut c) = (g.h().clone(), g.apply(&vec![0; d]));
    let mut n = 1;
    while !(m.is_identity() && is_zero_vec(&c)) {
        m = m.mul(g.h()).unwrap();
        c = g.apply(&c);
        n += 1;
    }
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_identity(p in prime(), a in prop::collection::vec(0i64..7, 0..8), b in prop::collection::vec(0i64..7, 1..5)) {
        let a = Poly::new(p, a);
        let b = Poly::new(p, b);
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.try_mul(&b).unwrap().try_add(&r).unwrap(), a);
        prop_assert!(r.is_zero() || r.deg() < b.deg());
    }

    #[test]
    fn factorization_multiplies_back(p in prime(), c in prop::collection::vec(0i64..7, 1..7)) {
        let mut c = c;
        c.push(1);
        let f = Poly::new(p, c);
        let fac = f.factorize().unwrap();
        prop_assert_eq!(fac.product(p), f);
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (prime(), 1usize..5).prop_flat_map(|(p, d)| (matrix(p, d), matrix(p, d)))) {
        let p = a.modulus() as u64;
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap() as u64, a.det().unwrap() as u64 * b.det().unwrap() as u64 % p);
    }

    #[test]
    fn inverse_is_two_sided(a in (prime(), 1usize..5).prop_flat_map(|(p, d)| invertible(p, d))) {
        let ai = a.inverse().unwrap();
        prop_assert!(a.mul(&ai).unwrap().is_identity());
        prop_assert!(ai.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn class_invariant_is_a_conjugacy_invariant((a, x) in (prime(), 1usize..5).prop_flat_map(|(p, d)| (invertible(p, d), invertible(p, d)))) {
        let inv = class_invariant(&a).unwrap();
        let b = x.inverse().unwrap().mul(&a).unwrap().mul(&x).unwrap();
        prop_assert_eq!(class_invariant(&b).unwrap(), inv.clone());
        prop_assert_eq!(class_invariant(&inv.representative().unwrap()).unwrap(), inv.clone());
        prop_assert_eq!(inv.char_poly(), a.char_poly().unwrap());
        prop_assert_eq!(inv.order().unwrap(), order_of(&a).unwrap());
    }

    #[test]
    fn binary_split_matches_naive((h, r) in ((prime(), 1usize..5).prop_flat_map(|(p, d)| matrix(p, d)), 1u64..=64)) {
        prop_assert_eq!(geometric_sum(&h, r).unwrap(), NaiveSum.sum(&h, r).unwrap());
    }

    #[test]
    fn order_is_k_or_pk(g in affine()) {
        let (order, prof) = affine_order(&g).unwrap();
        let k = order_of(g.h()).unwrap();
        prop_assert_eq!(prof.k, k);
        let u = geometric_sum(g.h(), k).unwrap().apply(g.v());
        // The translation part of g^k is v h(k); it is fixed by h.
        prop_assert_eq!(g.h().apply(&u), u.clone());
        prop_assert_eq!(prof.delta == 1, !is_zero_vec(&u));
        prop_assert_eq!(order, k * (g.p() as u64).pow(prof.delta));
        prop_assert_eq!(order, iterate_order(&g));
        let (m, c) = g.power(order);
        prop_assert!(m.is_identity() && is_zero_vec(&c));
    }

    #[test]
    fn cycles_partition_the_space(g in affine()) {
        let cs = cycle_structure(&g).unwrap();
        let space = (g.p() as u64).pow(g.d() as u32);
        prop_assert_eq!(cs.lengths.iter().sum::<u64>(), space);
        prop_assert_eq!(cs.count as usize, cs.lengths.len());
        prop_assert_eq!(cs.lengths.iter().fold(1, |a, &b| lcm(a, b)), affine_order(&g).unwrap().0);
        prop_assert!(cs.lengths.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn reduction_keeps_order_and_cycles(g in affine()) {
        let (r, _) = reduce_translation(&g).unwrap();
        prop_assert_eq!(r.h(), g.h());
        prop_assert_eq!(affine_order(&r).unwrap().0, affine_order(&g).unwrap().0);
        prop_assert_eq!(cycle_structure(&r).unwrap(), cycle_structure(&g).unwrap());
    }

    #[test]
    fn conjugation_keeps_order_cycles_and_lines((g, x, w) in with_conjugator()) {
        let c = conjugate(&g, &x, &w);
        prop_assert_eq!(affine_order(&c).unwrap().0, affine_order(&g).unwrap().0);
        prop_assert_eq!(cycle_structure(&c).unwrap(), cycle_structure(&g).unwrap());
        for kind in [Kind::Orders, Kind::Cycles] {
            let a = tables::match_element(&g, kind).unwrap();
            let b = tables::match_element(&c, kind).unwrap();
            prop_assert_eq!(a.matched, b.matched);
        }
    }
}

#[test]
fn conjugate_is_a_conjugate() {
    let g = AffineMap::new(vec![1, 2], Matrix::singer(3, 2, 1).unwrap()).unwrap();
    let x = Matrix::from_rows(3, &[vec![1, 1], vec![0, 2]]).unwrap();
    let w = vec![2, 1];
    let c = conjugate(&g, &x, &w);
    let s = |y: &[u32]| -> Vec<u32> {
        x.apply(y)
            .iter()
            .zip(&w)
            .map(|(a, b)| (a + b) % 3)
            .collect()
    };
    for code in 0..9 {
        let y = crate::matrix::decode(code, 3, 2);
        assert_eq!(s(&c.apply(&y)), g.apply(&s(&y)));
    }
}
