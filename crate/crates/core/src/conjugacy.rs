//! Conjugacy classes of GL_d(p): generalized Jordan invariants, element
//! orders, primary components and an indexed stream of class representatives.

use std::fmt;

use serde::Serialize;

use crate::arith::{self, lcm};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;

/// Default cap on the number of classes enumerated for one `(p, d)`.
pub const MAX_CLASS_COUNT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Block {
    pub poly: Poly,
    /// Weakly decreasing block sizes.
    pub partition: Vec<usize>,
}

impl Block {
    pub fn weight(&self) -> usize {
        self.poly.deg() * self.partition.iter().sum::<usize>()
    }

    pub fn largest_part(&self) -> usize {
        self.partition.first().copied().unwrap_or(0)
    }
}

/// Multiset of (irreducible, partition) pairs; blocks sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassInvariant {
    pub p: u32,
    pub d: usize,
    pub blocks: Vec<Block>,
}

impl ClassInvariant {
    pub fn new(p: u32, mut blocks: Vec<Block>) -> Result<Self> {
        for b in &blocks {
            if b.poly.modulus() != p {
                return Err(Error::ModulusMismatch(p, b.poly.modulus()));
            }
            if b.poly.deg() == 0 || !b.poly.is_monic() || !b.poly.is_irreducible()? {
                return Err(Error::Reducible(b.poly.to_string()));
            }
            if b.poly == Poly::x(p) {
                return Err(Error::Singular);
            }
            if b.partition.is_empty()
                || b.partition.windows(2).any(|w| w[0] < w[1])
                || b.partition.contains(&0)
            {
                return Err(Error::shape(format!("bad partition {:?}", b.partition)));
            }
        }
        blocks.sort();
        if blocks.windows(2).any(|w| w[0].poly == w[1].poly) {
            return Err(Error::shape("repeated polynomial in class invariant"));
        }
        let d = blocks.iter().map(Block::weight).sum();
        Ok(ClassInvariant { p, d, blocks })
    }

    /// The block belonging to `f`, if any.
    pub fn block(&self, f: &Poly) -> Option<&Block> {
        self.blocks.iter().find(|b| &b.poly == f)
    }

    /// Partition attached to `x - 1` (empty when 1 is not an eigenvalue).
    pub fn unipotent_partition(&self) -> &[usize] {
        self.block(&Poly::linear(self.p, 1))
            .map_or(&[], |b| b.partition.as_slice())
    }

    pub fn min_poly(&self) -> Poly {
        self.blocks.iter().fold(Poly::one(self.p), |acc, b| {
            &acc * &b.poly.pow(b.largest_part() as u64)
        })
    }

    pub fn char_poly(&self) -> Poly {
        self.blocks.iter().fold(Poly::one(self.p), |acc, b| {
            &acc * &b.poly.pow(b.partition.iter().sum::<usize>() as u64)
        })
    }

    /// lcm over blocks of `ord(f) * p^ceil(log_p(largest part))`.
    pub fn order(&self) -> Result<u64> {
        let p = self.p as u64;
        let mut order = 1u64;
        for b in &self.blocks {
            let unip = p.pow(arith::ceil_log(b.largest_part() as u64, p));
            order = lcm(order, b.poly.multiplicative_order()? * unip);
        }
        Ok(order)
    }

    pub fn is_semisimple(&self) -> bool {
        self.blocks.iter().all(|b| b.largest_part() == 1)
    }

    /// A representative in generalized Jordan form. Blocks for `x - 1` come
    /// first as unipotent Jordan blocks, so the 1-primary component is
    /// spanned by the leading basis vectors.
    pub fn representative(&self) -> Result<Matrix> {
        let one = Poly::linear(self.p, 1);
        let mut parts = Vec::new();
        let ordered = self
            .blocks
            .iter()
            .filter(|b| b.poly == one)
            .chain(self.blocks.iter().filter(|b| b.poly != one));
        for b in ordered {
            for &m in &b.partition {
                if b.poly == one {
                    parts.push(Matrix::jordan_block(self.p, m));
                } else {
                    parts.push(Matrix::companion(&b.poly.pow(m as u64))?);
                }
            }
        }
        Matrix::direct_sum(self.p, &parts)
    }
}

impl fmt::Display for ClassInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = b.partition.iter().map(usize::to_string).collect();
            write!(f, "({}, [{}])", b.poly, parts.join(","))?;
        }
        write!(f, "}}")
    }
}

/// Generalized Jordan invariant of a nonsingular matrix.
pub fn class_invariant(a: &Matrix) -> Result<ClassInvariant> {
    let p = a.modulus();
    let d = a.dim();
    let cp = a.char_poly()?;
    let fac = cp.factorize()?;
    let mut blocks = Vec::new();
    for (f, mult) in fac.factors {
        if f == Poly::x(p) {
            return Err(Error::Singular);
        }
        let deg = f.deg();
        let fa = a.eval_poly(&f)?;
        let mut power = Matrix::identity(p, d);
        // ranks[k] = number of parts >= k, up to the multiplicity.
        let mut prev_nullity = 0usize;
        let mut at_least = Vec::new();
        let target = mult as usize * deg;
        while prev_nullity < target {
            power = power.mul(&fa)?;
            let nullity = d - power.rank();
            if nullity == prev_nullity {
                return Err(Error::Internal("kernel growth stalled".into()));
            }
            at_least.push((nullity - prev_nullity) / deg);
            prev_nullity = nullity;
        }
        // Conjugate partition of the "parts >= k" counts.
        let parts_count = at_least[0];
        let partition = (0..parts_count)
            .map(|j| at_least.iter().filter(|&&c| c > j).count())
            .collect();
        blocks.push(Block { poly: f, partition });
    }
    ClassInvariant::new(p, blocks)
}

pub fn min_poly(a: &Matrix) -> Result<Poly> {
    Ok(class_invariant(a)?.min_poly())
}

/// Element order of a nonsingular matrix, confirmed by a powering witness.
pub fn order_of(a: &Matrix) -> Result<u64> {
    arith::space_size(a.modulus(), a.dim(), arith::MAX_ORDER_SPACE, "p^d")?;
    let n = class_invariant(a)?.order()?;
    if !is_exact_order(a, n)? {
        return Err(Error::Internal(format!("order formula gave {n} for {a}")));
    }
    Ok(n)
}

/// `a^n = I` and `a^(n/q) != I` for every prime `q | n`.
pub fn is_exact_order(a: &Matrix, n: u64) -> Result<bool> {
    if !a.pow(n)?.is_identity() {
        return Ok(false);
    }
    for q in arith::prime_divisors(n)? {
        if a.pow(n / q)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of `ker f(A)^d`, the `f`-primary component.
pub fn primary_component(a: &Matrix, f: &Poly) -> Result<Vec<Vector>> {
    let fd = f.pow(a.dim() as u64);
    Ok(a.eval_poly(&fd)?.left_kernel())
}

/// Partitions of `n` in lexicographically decreasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One invariant per conjugacy class of GL_d(p), in a fixed order: monic
/// irreducibles other than `x` are taken by degree then canonically, and
/// each one gets either no block or a partition, largest sizes first.
pub fn enumerate_class_invariants(p: u32, d: usize, cap: u64) -> Result<Vec<ClassInvariant>> {
    enumerate_filtered(p, d, cap, |_| true)
}

/// As [`enumerate_class_invariants`] restricted to partitions accepted by
/// `keep` (used for semisimple-only sweeps).
pub fn enumerate_filtered(
    p: u32,
    d: usize,
    cap: u64,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<Vec<ClassInvariant>> {
    arith::check_prime(p as u64)?;
    arith::space_size(p, d, arith::MAX_ORDER_SPACE, "p^d")?;
    let mut polys = Vec::new();
    for j in 1..=d {
        polys.extend(
            Poly::irreducibles(p, j)?
                .into_iter()
                .filter(|f| *f != Poly::x(p)),
        );
    }
    let tables: Vec<Vec<Vec<usize>>> = (0..=d).map(partitions).collect();

    struct Walk<'a, F: Fn(&[usize]) -> bool> {
        p: u32,
        polys: &'a [Poly],
        tables: &'a [Vec<Vec<usize>>],
        keep: F,
        cap: u64,
        out: Vec<ClassInvariant>,
    }
    impl<F: Fn(&[usize]) -> bool> Walk<'_, F> {
        fn go(&mut self, idx: usize, rem: usize, cur: &mut Vec<Block>) -> Result<()> {
            if rem == 0 {
                if self.out.len() as u64 >= self.cap {
                    return Err(Error::CapExceeded {
                        what: "conjugacy class count",
                        value: self.out.len() as u128 + 1,
                        cap: self.cap as u128,
                    });
                }
                let mut blocks = cur.clone();
                blocks.sort();
                let d = blocks.iter().map(Block::weight).sum();
                self.out.push(ClassInvariant {
                    p: self.p,
                    d,
                    blocks,
                });
                return Ok(());
            }
            if idx == self.polys.len() || self.polys[idx].deg() > rem {
                return Ok(());
            }
            let f = &self.polys[idx];
            let deg = f.deg();
            for m in (1..=rem / deg).rev() {
                for part in &self.tables[m] {
                    if !(self.keep)(part) {
                        continue;
                    }
                    cur.push(Block {
                        poly: f.clone(),
                        partition: part.clone(),
                    });
                    self.go(idx + 1, rem - m * deg, cur)?;
                    cur.pop();
                }
            }
            self.go(idx + 1, rem, cur)
        }
    }

    let mut walk = Walk {
        p,
        polys: &polys,
        tables: &tables,
        keep,
        cap,
        out: Vec::new(),
    };
    walk.go(0, d, &mut Vec::new())?;
    Ok(walk.out)
}

/// Representatives paired with their invariants, in enumeration order.
pub fn enumerate_class_reps(
    p: u32,
    d: usize,
) -> Result<impl Iterator<Item = Result<(Matrix, ClassInvariant)>>> {
    let invs = enumerate_class_invariants(p, d, MAX_CLASS_COUNT)?;
    Ok(invs.into_iter().map(|inv| Ok((inv.representative()?, inv))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn poly(s: &str, p: u32) -> Poly {
        parse_poly(s, p).unwrap()
    }

    #[test]
    fn invariant_examples() {
        let h = Matrix::direct_sum(2, &[Matrix::jordan_block(2, 2), Matrix::jordan_block(2, 1)])
            .unwrap();
        let inv = class_invariant(&h).unwrap();
        assert_eq!(
            inv.blocks,
            vec![Block {
                poly: poly("x+1", 2),
                partition: vec![2, 1]
            }]
        );
        assert_eq!(inv.min_poly(), poly("x^2+1", 2));

        let h = Matrix::direct_sum(
            2,
            &[
                Matrix::singer(2, 2, 1).unwrap(),
                Matrix::singer(2, 3, 1).unwrap(),
            ],
        )
        .unwrap();
        let inv = class_invariant(&h).unwrap();
        let degs: Vec<(usize, Vec<usize>)> = inv
            .blocks
            .iter()
            .map(|b| (b.poly.deg(), b.partition.clone()))
            .collect();
        assert_eq!(degs, vec![(2, vec![1]), (3, vec![1])]);

        let h = Matrix::singer(3, 2, 1)
            .unwrap()
            .kronecker(&Matrix::jordan_block(3, 2))
            .unwrap();
        let inv = class_invariant(&h).unwrap();
        assert_eq!(inv.blocks.len(), 1);
        assert_eq!(
            (inv.blocks[0].poly.deg(), inv.blocks[0].partition.clone()),
            (2, vec![2])
        );

        assert_eq!(
            min_poly(&Matrix::jordan_block(2, 3)).unwrap(),
            poly("x^3+x^2+x+1", 2)
        );
        assert_eq!(
            class_invariant(&Matrix::zero(3, 2, 2)),
            Err(Error::Singular)
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of(&Matrix::jordan_block(2, 5)).unwrap(), 8);
        assert_eq!(order_of(&Matrix::jordan_block(3, 3)).unwrap(), 3);
        assert_eq!(order_of(&Matrix::singer(2, 3, 1).unwrap()).unwrap(), 7);
        assert_eq!(order_of(&Matrix::singer(3, 2, 2).unwrap()).unwrap(), 4);
        assert!(Matrix::singer(2, 2, 3).unwrap().is_identity());
        let s1j2 = Matrix::singer(3, 1, 1)
            .unwrap()
            .kronecker(&Matrix::jordan_block(3, 2))
            .unwrap();
        assert_eq!(order_of(&s1j2).unwrap(), 6);
        let s2j2 = Matrix::singer(3, 2, 1)
            .unwrap()
            .kronecker(&Matrix::jordan_block(3, 2))
            .unwrap();
        assert_eq!(order_of(&s2j2).unwrap(), 24);
        let sum = Matrix::direct_sum(
            2,
            &[Matrix::jordan_block(2, 1), Matrix::singer(2, 2, 1).unwrap()],
        )
        .unwrap();
        assert_eq!(order_of(&sum).unwrap(), 3);
        let sum = Matrix::direct_sum(
            2,
            &[
                Matrix::singer(2, 2, 1).unwrap(),
                Matrix::singer(2, 3, 1).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(order_of(&sum).unwrap(), 21);
    }

    #[test]
    fn primary_components() {
        let h = Matrix::direct_sum(
            2,
            &[Matrix::jordan_block(2, 1), Matrix::singer(2, 3, 1).unwrap()],
        )
        .unwrap();
        assert_eq!(
            primary_component(&h, &poly("x+1", 2)).unwrap(),
            vec![vec![1, 0, 0, 0]]
        );
        assert_eq!(
            primary_component(&Matrix::jordan_block(3, 3), &poly("x+2", 3))
                .unwrap()
                .len(),
            3
        );
        assert!(
            primary_component(&Matrix::singer(2, 4, 1).unwrap(), &poly("x+1", 2))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn partitions_order() {
        assert_eq!(
            partitions(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn class_counts_and_representatives() {
        for (p, d, count) in [(2, 2, 3), (2, 3, 6), (3, 2, 8), (2, 4, 14), (3, 3, 24)] {
            let invs = enumerate_class_invariants(p, d, MAX_CLASS_COUNT).unwrap();
            assert_eq!(invs.len(), count, "({p},{d})");
            for inv in &invs {
                let rep = inv.representative().unwrap();
                assert_eq!(&class_invariant(&rep).unwrap(), inv);
                assert_eq!(order_of(&rep).unwrap(), inv.order().unwrap());
            }
        }
        assert!(matches!(
            enumerate_class_invariants(2, 4, 5),
            Err(Error::CapExceeded { .. })
        ));
    }
}
