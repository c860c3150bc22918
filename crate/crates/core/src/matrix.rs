//! Dense matrices over F_p with the row-vector convention: vectors are rows
//! and a matrix acts on the right, `x -> x * M`. Row `i` of a matrix is the
//! image of the basis vector `e_{i+1}`.

use std::fmt;

use serde::Serialize;

use crate::arith::mod_inv;
use crate::error::{Error, Result};
use crate::poly::{fadd, fmul, fsub, Poly};

/// A row vector over F_p.
pub type Vector = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged rows"));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|&v| v.rem_euclid(p as i64) as u32)
            .collect();
        Ok(Matrix {
            p,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_vectors(p: u32, cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row.iter().map(|&v| v % p));
        }
        Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.p, self.rows)
    }

    fn check_modulus(&self, other: &Matrix) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::shape(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape("addition of different shapes"));
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fadd(a, b, p))
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::shape("subtraction of different shapes"));
        }
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| fsub(a, b, p))
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let p = self.p;
        Matrix {
            data: self.data.iter().map(|&a| fmul(a, c, p)).collect(),
            ..*self
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let p = self.p as u64;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![0u64; n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.data[i * k + l] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                let acc = &mut out[i * m..(i + 1) * m];
                for (o, &b) in acc.iter_mut().zip(row) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Matrix {
            p: self.p,
            rows: n,
            cols: m,
            data: out.into_iter().map(|v| v as u32).collect(),
        }
    }

    /// Binary powering; exponents up to 2^40 and beyond are fine.
    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `x * self` for a row vector `x`.
    pub fn apply(&self, x: &[u32]) -> Vector {
        assert_eq!(x.len(), self.rows, "vector length");
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = (*o + xi as u64 * a as u64) % p;
            }
        }
        out.into_iter().map(|v| v as u32).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = mod_inv(m.get(r, c), p);
            for j in 0..m.cols {
                let v = fmul(m.get(r, j), inv, p);
                m.data[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        for j in 0..m.cols {
                            let v = fsub(m.get(i, j), fmul(f, m.get(r, j), p), p);
                            m.data[i * m.cols + j] = v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Result<u32> {
        self.require_square()?;
        let p = self.p;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1 % p;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = fsub(0, det, p);
            }
            let pivot = m.get(c, c);
            det = fmul(det, pivot, p);
            let inv = mod_inv(pivot, p);
            for i in c + 1..n {
                let f = fmul(m.get(i, c), inv, p);
                if f != 0 {
                    for j in c..n {
                        let v = fsub(m.get(i, j), fmul(f, m.get(c, j), p), p);
                        m.data[i * n + j] = v;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Matrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n && n > 0 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j);
            }
        }
        Ok(inv)
    }

    /// Basis (in reduced echelon form) of the left kernel `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        let t = self.transpose();
        let (r, pivots) = t.rref();
        let n = t.cols;
        let p = self.p;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vector> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u32; n];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = fsub(0, r.get(row, f), p);
                }
                v
            })
            .collect();
        if !basis.is_empty() {
            let m = Matrix::from_vectors(p, n, &basis).rref().0;
            basis = m
                .row_vectors()
                .into_iter()
                .filter(|v| v.iter().any(|&c| c != 0))
                .collect();
        }
        basis
    }

    /// Some `x` with `x * self = b`, if one exists.
    pub fn solve_left(&self, b: &[u32]) -> Result<Option<Vector>> {
        if b.len() != self.cols {
            return Err(Error::shape("right-hand side length"));
        }
        let t = self.transpose();
        let (n, m) = (t.rows, t.cols);
        let mut aug = Matrix::zero(self.p, n, m + 1);
        for (i, &bi) in b.iter().enumerate().take(n) {
            for j in 0..m {
                aug.data[i * (m + 1) + j] = t.get(i, j);
            }
            aug.data[i * (m + 1) + m] = bi % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&m) {
            return Ok(None);
        }
        let mut x = vec![0u32; m];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, m);
        }
        Ok(Some(x))
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Matrix> {
        self.require_square()?;
        if f.modulus() != self.p {
            return Err(Error::ModulusMismatch(f.modulus(), self.p));
        }
        let n = self.rows;
        let mut acc = Matrix::zero(self.p, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self);
            for i in 0..n {
                acc.data[i * n + i] = fadd(acc.data[i * n + i], c, self.p);
            }
        }
        Ok(acc)
    }

    /// Characteristic polynomial `det(xI - A)` via Hessenberg reduction.
    pub fn char_poly(&self) -> Result<Poly> {
        self.require_square()?;
        let p = self.p;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = mod_inv(h.get(m, m - 1), p);
            for i in m + 1..n {
                let u = fmul(h.get(i, m - 1), inv, p);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = fsub(h.get(i, j), fmul(u, h.get(m, j), p), p);
                    h.data[i * n + j] = v;
                }
                for r in 0..n {
                    let v = fadd(h.get(r, m), fmul(u, h.get(r, i), p), p);
                    h.data[r * n + m] = v;
                }
            }
        }
        // polys[k] = characteristic polynomial of the leading k x k block.
        let mut polys = vec![Poly::one(p)];
        for m in 1..=n {
            let lin = Poly::linear(p, h.get(m - 1, m - 1));
            let mut next = &lin * &polys[m - 1];
            let mut t = 1u32;
            for i in (1..m).rev() {
                t = fmul(t, h.get(i, i - 1), p);
                let c = fmul(h.get(i - 1, m - 1), t, p);
                if c != 0 {
                    next = &next - &polys[i - 1].scale(c);
                }
            }
            polys.push(next);
        }
        Ok(polys.pop().unwrap())
    }

    /// Unipotent cyclic block `J_j`: `e_i -> e_i + e_{i+1}` for `i < j`, `e_j` fixed.
    pub fn jordan_block(p: u32, j: usize) -> Matrix {
        let mut m = Matrix::identity(p, j);
        for i in 0..j.saturating_sub(1) {
            m.data[i * j + i + 1] = 1;
        }
        m
    }

    /// Companion matrix of a monic `f` in the row convention:
    /// `e_i -> e_{i+1}` and `e_n -> -(c_0 e_1 + ... + c_{n-1} e_n)`.
    pub fn companion(f: &Poly) -> Result<Matrix> {
        let n = f
            .degree()
            .filter(|&n| n > 0)
            .ok_or(Error::ConstantPolynomial)?;
        let f = f.monic();
        let p = f.modulus();
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n - 1 {
            m.data[i * n + i + 1] = 1;
        }
        for j in 0..n {
            m.data[(n - 1) * n + j] = fsub(0, f.coeff(j), p);
        }
        Ok(m)
    }

    /// The `i`-th power of the Singer generator: companion matrix of the
    /// canonical primitive polynomial of degree `j`.
    pub fn singer(p: u32, j: usize, i: u64) -> Result<Matrix> {
        if j == 0 {
            return Err(Error::shape("Singer cycle of dimension 0"));
        }
        let f = Poly::primitive(p, j)?;
        Matrix::companion(&f)?.pow(i)
    }

    /// Block-diagonal sum in the given order.
    pub fn direct_sum(p: u32, parts: &[Matrix]) -> Result<Matrix> {
        let n: usize = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(p, n, n);
        let mut off = 0;
        for part in parts {
            if part.p != p {
                return Err(Error::ModulusMismatch(p, part.p));
            }
            part.require_square()?;
            for i in 0..part.rows {
                for j in 0..part.cols {
                    out.data[(off + i) * n + off + j] = part.get(i, j);
                }
            }
            off += part.rows;
        }
        Ok(out)
    }

    /// Kronecker product; basis vector `(a, b)` has index `a * dim(B) + b`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.check_modulus(other)?;
        let p = self.p;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zero(p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] =
                            fmul(a, other.get(k, l), p);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    /// Literal form `[1,1;0,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(","))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses the literal form `"[1,1;0,1]"` (rows separated by `;`).
pub fn parse_matrix(text: &str, p: u32) -> Result<Matrix> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::parse(0, "matrix literal must be enclosed in [ ]"))?;
    if inner.trim().is_empty() {
        return Ok(Matrix::zero(p, 0, 0));
    }
    let rows = inner
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::parse(0, format!("bad entry `{}`", c.trim())))
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(p, &rows)?;
    if !m.is_square() {
        return Err(Error::shape("matrix literal must be square"));
    }
    Ok(m)
}

/// Integer code of a vector: base-p digits with `e_1` the lowest digit.
pub fn encode(v: &[u32], p: u32) -> u64 {
    v.iter()
        .rev()
        .fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

pub fn decode(mut code: u64, p: u32, d: usize) -> Vector {
    (0..d)
        .map(|_| {
            let c = (code % p as u64) as u32;
            code /= p as u64;
            c
        })
        .collect()
}

pub fn vec_add(a: &[u32], b: &[u32], p: u32) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| fadd(x, y, p)).collect()
}

pub fn vec_sub(a: &[u32], b: &[u32], p: u32) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| fsub(x, y, p)).collect()
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Parses `"0"`, `"e3"` or `"1,0,2"` into a vector of length `d`.
pub fn parse_vector(text: &str, p: u32, d: usize) -> Result<Vector> {
    let t = text.trim();
    if t == "0" {
        return Ok(vec![0; d]);
    }
    if let Some(idx) = t.strip_prefix('e') {
        let i: usize = idx
            .parse()
            .map_err(|_| Error::parse(1, format!("bad basis index `{idx}`")))?;
        if i == 0 || i > d {
            return Err(Error::shape(format!(
                "basis vector e{i} outside dimension {d}"
            )));
        }
        let mut v = vec![0; d];
        v[i - 1] = 1 % p;
        return Ok(v);
    }
    let v = t
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map(|x| x.rem_euclid(p as i64) as u32)
                .map_err(|_| Error::parse(0, format!("bad coordinate `{}`", c.trim())))
        })
        .collect::<Result<Vector>>()?;
    if v.len() != d {
        return Err(Error::shape(format!(
            "vector of length {} in dimension {d}",
            v.len()
        )));
    }
    Ok(v)
}

pub fn format_vector(v: &[u32]) -> String {
    if is_zero_vec(v) {
        return "0".into();
    }
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn jordan_block_images() {
        assert_eq!(Matrix::jordan_block(2, 1), m(2, &[&[1]]));
        assert_eq!(Matrix::jordan_block(3, 2), m(3, &[&[1, 1], &[0, 1]]));
        assert_eq!(Matrix::jordan_block(2, 0).dim(), 0);
        let j = Matrix::jordan_block(5, 4);
        // e_1 -> e_1 + e_2, e_4 fixed.
        assert_eq!(j.apply(&[1, 0, 0, 0]), vec![1, 1, 0, 0]);
        assert_eq!(j.apply(&[0, 0, 0, 1]), vec![0, 0, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let j2 = Matrix::jordan_block(2, 2);
        assert_eq!(j2.inverse().unwrap(), j2);
        let n = Matrix::jordan_block(3, 3)
            .sub(&Matrix::identity(3, 3))
            .unwrap();
        assert_eq!(n.rank(), 2);
        let c = Matrix::companion(&parse_poly("x^2+x+1", 2).unwrap()).unwrap();
        assert!(c.pow(3).unwrap().is_identity());
        assert_eq!(Matrix::zero(3, 2, 2).inverse(), Err(Error::Singular));
        assert!(matches!(
            j2.mul(&Matrix::identity(3, 2)),
            Err(Error::ModulusMismatch(2, 3))
        ));
        assert!(matches!(
            j2.mul(&Matrix::identity(2, 3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn companion_char_poly() {
        for (text, p) in [("x^3+x+1", 2), ("x^2+x+2", 3), ("x^4+3x^2+2x+1", 5)] {
            let f = parse_poly(text, p).unwrap();
            assert_eq!(Matrix::companion(&f).unwrap().char_poly().unwrap(), f);
        }
        assert_eq!(
            Matrix::singer(2, 3, 1)
                .unwrap()
                .char_poly()
                .unwrap()
                .to_string(),
            "x^3+x+1"
        );
    }

    #[test]
    fn char_poly_of_direct_sum_multiplies() {
        let a = Matrix::singer(3, 2, 1).unwrap();
        let b = Matrix::jordan_block(3, 3);
        let s = Matrix::direct_sum(3, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(
            s.char_poly().unwrap(),
            &a.char_poly().unwrap() * &b.char_poly().unwrap()
        );
        assert_eq!(Matrix::direct_sum(2, &[]).unwrap().dim(), 0);
        assert!(Matrix::zero(2, 0, 0).char_poly().unwrap().is_one());
    }

    #[test]
    fn kernels_and_solving() {
        let a = m(5, &[&[1, 2, 3], &[2, 4, 1], &[3, 1, 4]]);
        for x in a.left_kernel() {
            assert!(is_zero_vec(&a.apply(&x)));
        }
        assert_eq!(a.left_kernel().len(), 3 - a.rank());
        let b = a.apply(&[1, 3, 2]);
        let x = a.solve_left(&b).unwrap().unwrap();
        assert_eq!(a.apply(&x), b);
    }

    #[test]
    fn kronecker_identity_law() {
        let a = Matrix::singer(3, 2, 1).unwrap();
        assert_eq!(Matrix::identity(3, 1).kronecker(&a).unwrap(), a);
    }

    #[test]
    fn literals_and_vectors() {
        let a = parse_matrix("[1,1;0,1]", 2).unwrap();
        assert_eq!(a, Matrix::jordan_block(2, 2));
        assert_eq!(a.to_string(), "[1,1;0,1]");
        assert!(parse_matrix("[1,1;0]", 2).is_err());
        assert_eq!(parse_vector("e3", 3, 4).unwrap(), vec![0, 0, 1, 0]);
        assert_eq!(parse_vector("1,0,5", 3, 3).unwrap(), vec![1, 0, 2]);
        assert!(parse_vector("e5", 3, 4).is_err());
        assert_eq!(encode(&[1, 0, 2], 3), 1 + 2 * 9);
        assert_eq!(decode(19, 3, 3), vec![1, 0, 2]);
    }
}
