use serde::Serialize;

use crate::conjugacy::{enumerate_class_invariants, order_of, MAX_CLASS_COUNT};
use crate::error::Result;

/// Largest element orders in GL_d(p) and SL_d(p), found by scanning class
/// representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MeoResult {
    pub p: u32,
    pub d: usize,
    pub meo_gl: u64,
    pub meo_sl: u64,
    pub classes: usize,
}

pub fn meo_scan(p: u32, d: usize) -> Result<MeoResult> {
    let invs = enumerate_class_invariants(p, d, MAX_CLASS_COUNT)?;
    let mut gl = 0;
    let mut sl = 0;
    for inv in &invs {
        let h = inv.representative()?;
        let o = order_of(&h)?;
        gl = gl.max(o);
        if h.det()? == 1 {
            sl = sl.max(o);
        }
    }
    Ok(MeoResult {
        p,
        d,
        meo_gl: gl,
        meo_sl: sl,
        classes: invs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{decode, Matrix};

    /// Max orders over every invertible matrix, by iterating powers.
    fn brute(p: u32, d: usize) -> (u64, u64) {
        let n = (p as u64).pow((d * d) as u32);
        let (mut gl, mut sl) = (0, 0);
        for code in 0..n {
            let entries = decode(code, p, d * d);
            let rows: Vec<Vec<i64>> = entries
                .chunks(d)
                .map(|r| r.iter().map(|&x| x as i64).collect())
                .collect();
            let m = Matrix::from_rows(p, &rows).unwrap();
            let det = m.det().unwrap();
            if det == 0 {
                continue;
            }
            let mut pw = m.clone();
            let mut o = 1;
            while !pw.is_identity() {
                pw = pw.mul(&m).unwrap();
                o += 1;
            }
            gl = gl.max(o);
            if det == 1 {
                sl = sl.max(o);
            }
        }
        (gl, sl)
    }

    #[test]
    fn scan_agrees_with_brute_force() {
        for (p, d) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
            let r = meo_scan(p, d).unwrap();
            assert_eq!((r.meo_gl, r.meo_sl), brute(p, d), "p={p} d={d}");
        }
    }

    #[test]
    fn minus_jordan_block_beats_the_sl_formula() {
        // -J_2 has determinant 1 and order 2p > p + 1.
        assert_eq!(meo_scan(3, 2).unwrap().meo_sl, 6);
        assert_eq!(meo_scan(5, 2).unwrap().meo_sl, 10);
    }
}
