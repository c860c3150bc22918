//! Orbit enumeration of an affine permutation `x -> x*m + c` of F_p^n,
//! walking vectors in ascending integer code with a visited bitset.

use crate::arith;
use crate::error::Result;
use crate::matrix::{decode, encode, Matrix};
use crate::poly::{fadd, fmul};

/// Largest space walked by orbit enumeration unless overridden.
pub const MAX_CYCLE_SPACE: u128 = 1 << 22;

enum Kernel {
    /// Rows and offset packed as bit masks, bit `i` = coordinate `e_{i+1}`.
    Binary {
        rows: Vec<u64>,
        offset: u64,
    },
    General {
        m: Matrix,
        offset: Vec<u32>,
    },
}

/// The permutation `x -> x*m + c` acting on integer codes.
pub struct CodeMap {
    p: u32,
    n: usize,
    size: u64,
    kernel: Kernel,
}

impl CodeMap {
    pub fn new(m: &Matrix, c: &[u32], cap: u128) -> Result<Self> {
        let p = m.modulus();
        let n = m.dim();
        let size = arith::space_size(p, n, cap, "p^d for orbit enumeration")?;
        let kernel = if p == 2 && n <= 64 {
            let rows = (0..n).map(|i| pack(m.row(i))).collect();
            Kernel::Binary {
                rows,
                offset: pack(c),
            }
        } else {
            Kernel::General {
                m: m.clone(),
                offset: c.to_vec(),
            }
        };
        Ok(CodeMap { p, n, size, kernel })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    #[inline]
    pub fn image(&self, x: u64) -> u64 {
        match &self.kernel {
            Kernel::Binary { rows, offset } => {
                let mut acc = *offset;
                let mut bits = x;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    acc ^= rows[i];
                    bits &= bits - 1;
                }
                acc
            }
            Kernel::General { m, offset } => {
                let v = decode(x, self.p, self.n);
                let mut out = offset.clone();
                for (i, &xi) in v.iter().enumerate() {
                    if xi != 0 {
                        for (o, &a) in out.iter_mut().zip(m.row(i)) {
                            *o = fadd(*o, fmul(xi, a, self.p), self.p);
                        }
                    }
                }
                encode(&out, self.p)
            }
        }
    }

    /// Orbit lengths in discovery order.
    pub fn orbit_lengths(&self) -> Vec<u64> {
        let mut visited = vec![0u64; (self.size as usize).div_ceil(64)];
        let mut lengths = Vec::new();
        for start in 0..self.size {
            if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            loop {
                visited[(x / 64) as usize] |= 1 << (x % 64);
                len += 1;
                x = self.image(x);
                if x == start {
                    break;
                }
            }
            lengths.push(len);
        }
        lengths
    }

    /// Number of orbits, stopping early once it exceeds `limit`.
    pub fn count_orbits_up_to(&self, limit: u64) -> u64 {
        let mut visited = vec![0u64; (self.size as usize).div_ceil(64)];
        let mut count = 0u64;
        for start in 0..self.size {
            if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
                continue;
            }
            count += 1;
            if count > limit {
                return count;
            }
            let mut x = start;
            loop {
                visited[(x / 64) as usize] |= 1 << (x % 64);
                x = self.image(x);
                if x == start {
                    break;
                }
            }
        }
        count
    }
}

fn pack(v: &[u32]) -> u64 {
    v.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &b)| acc | ((b as u64 & 1) << i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_and_general_paths_agree() {
        let m = Matrix::jordan_block(2, 3);
        let fast = CodeMap::new(&m, &[1, 0, 0], MAX_CYCLE_SPACE).unwrap();
        let slow = CodeMap {
            p: 2,
            n: 3,
            size: 8,
            kernel: Kernel::General {
                m: m.clone(),
                offset: vec![1, 0, 0],
            },
        };
        for x in 0..8 {
            assert_eq!(fast.image(x), slow.image(x));
        }
        assert_eq!(fast.orbit_lengths().iter().sum::<u64>(), 8);
    }

    #[test]
    fn translation_orbits() {
        let m = Matrix::identity(3, 2);
        let map = CodeMap::new(&m, &[1, 0], MAX_CYCLE_SPACE).unwrap();
        assert_eq!(map.orbit_lengths(), vec![3, 3, 3]);
        assert_eq!(map.count_orbits_up_to(1), 2);
        assert!(CodeMap::new(&Matrix::identity(2, 23), &[0; 23], MAX_CYCLE_SPACE).is_err());
    }
}
