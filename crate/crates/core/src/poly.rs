//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are stored lowest degree first and kept trimmed, so the zero
//! polynomial is the empty vector. The canonical total order on polynomials
//! is (degree, then coefficients compared from the leading term down), which
//! is the same as ordering monic polynomials of equal degree by the integer
//! `sum c_i p^i`. Factorizations and enumerations use this order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::arith::{self, mod_inv};
use crate::error::{Error, Result};

/// An element of F_p with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn new(value: i64, p: u32) -> Self {
        let m = p as i64;
        FieldElement {
            value: value.rem_euclid(m) as u32,
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn inverse(self) -> Option<Self> {
        (self.value != 0).then(|| FieldElement {
            value: mod_inv(self.value, self.p),
            p: self.p,
        })
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p);
        FieldElement {
            value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.p, rhs.p);
        FieldElement {
            value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

#[inline]
pub(crate) fn fadd(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub(crate) fn fsub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn fmul(a: u32, b: u32, p: u32) -> u32 {
    (a as u64 * b as u64 % p as u64) as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    /// Builds a polynomial from coefficients (constant term first), reducing mod p.
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.rem_euclid(p as i64) as u32)
            .collect();
        Self::from_raw(p, coeffs)
    }

    pub(crate) fn from_raw(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        Poly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u32) -> Self {
        Poly { p, coeffs: vec![1] }
    }

    pub fn x(p: u32) -> Self {
        Poly {
            p,
            coeffs: vec![0, 1],
        }
    }

    /// `x - c`.
    pub fn linear(p: u32, c: u32) -> Self {
        Poly::from_raw(p, vec![fsub(0, c % p, p), 1])
    }

    pub fn monomial(p: u32, degree: usize, c: u32) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c % p;
        Poly::from_raw(p, coeffs)
    }

    /// The monic polynomial of degree `degree` whose lower coefficients are
    /// the base-`p` digits of `code` (constant term = lowest digit).
    pub fn monic_from_code(p: u32, degree: usize, mut code: u64) -> Self {
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push((code % p as u64) as u32);
            code /= p as u64;
        }
        coeffs.push(1);
        Poly { p, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; for callers that have
    /// already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(mod_inv(self.lead(), self.p))
    }

    pub fn scale(&self, c: u32) -> Poly {
        let p = self.p;
        Poly::from_raw(p, self.coeffs.iter().map(|&a| fmul(a, c, p)).collect())
    }

    pub fn eval(&self, at: u32) -> u32 {
        let p = self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| fadd(fmul(acc, at, p), c, p))
    }

    pub fn derivative(&self) -> Poly {
        let p = self.p;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fmul(c, (i as u64 % p as u64) as u32, p))
            .collect();
        Poly::from_raw(p, coeffs)
    }

    /// Integer code of the coefficients below the leading one (base p,
    /// constant term lowest). Only meaningful for monic polynomials.
    pub fn code(&self) -> u64 {
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs[..n]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self * other)
    }

    /// Quotient and remainder with `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(p), self.clone()));
        }
        let inv_lead = mod_inv(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = fmul(rem[i + dd], inv_lead, p);
            quot[i] = c;
            if c != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = fsub(rem[i + j], fmul(c, b, p), p);
                }
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_raw(p, quot), Poly::from_raw(p, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact division; errors if there is a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.p).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// True iff the polynomial has no nontrivial factor.
    ///
    /// Rabin-style test: `gcd(f, x^{p^i} - x) = 1` for every `i <= deg/2`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Poly::x(self.p);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(self.p as u64, &f)?;
            if !f.gcd(&(&h - &x))?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `e > 0` with `x^e = 1 mod f`, for monic irreducible `f != x`.
    pub fn multiplicative_order(&self) -> Result<u64> {
        if self.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if self.monic() == Poly::x(self.p) {
            return Err(Error::OrderOfX);
        }
        if !self.is_irreducible()? {
            return Err(Error::Reducible(self.to_string()));
        }
        let f = self.monic();
        let group = arith::space_size(self.p, f.deg(), arith::MAX_ORDER_SPACE, "p^deg f")? - 1;
        let x = Poly::x(self.p);
        let mut order = group;
        for (q, e) in arith::factor(group)? {
            for _ in 0..e {
                if x.pow_mod(order / q, &f)?.is_one() {
                    order /= q;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }

    /// The smallest monic primitive polynomial of degree `j` in canonical order.
    pub fn primitive(p: u32, j: usize) -> Result<Poly> {
        arith::check_prime(p as u64)?;
        if j == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let size = arith::space_size(p, j, arith::MAX_ORDER_SPACE, "p^j")?;
        let target = size - 1;
        // Codes with constant term 0 are divisible by x.
        for code in 0..size {
            if code % p as u64 == 0 {
                continue;
            }
            let f = Poly::monic_from_code(p, j, code);
            if f.is_irreducible()? && f.multiplicative_order()? == target {
                return Ok(f);
            }
        }
        Err(Error::Internal(format!(
            "no primitive polynomial of degree {j} over F_{p}"
        )))
    }

    /// All monic irreducible polynomials of degree `j`, in canonical order.
    pub fn irreducibles(p: u32, j: usize) -> Result<Vec<Poly>> {
        let size = arith::space_size(p, j, arith::MAX_ORDER_SPACE, "p^j")?;
        let mut out = Vec::new();
        for code in 0..size {
            let f = Poly::monic_from_code(p, j, code);
            if f.is_irreducible()? {
                out.push(f);
            }
        }
        Ok(out)
    }

    fn pth_root(&self) -> Poly {
        let p = self.p as usize;
        Poly::from_raw(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    fn squarefree(&self) -> Result<Vec<(Poly, u32)>> {
        let p = self.p;
        let mut out = Vec::new();
        let f = self.monic();
        if f.deg() == 0 {
            return Ok(out);
        }
        let df = f.derivative();
        if df.is_zero() {
            for (g, m) in f.pth_root().squarefree()? {
                out.push((g, m * p));
            }
            return Ok(out);
        }
        let mut c = f.gcd(&df)?;
        let mut w = f.div_exact(&c)?;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c)?;
            let z = w.div_exact(&y)?;
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            c = c.div_exact(&y)?;
            w = y;
        }
        if !c.is_one() {
            for (g, m) in c.pth_root().squarefree()? {
                out.push((g, m * p));
            }
        }
        Ok(out)
    }

    fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
        let x = Poly::x(f.p);
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while rest.deg() >= 2 * i {
            h = h.pow_mod(f.p as u64, &rest)?;
            let g = rest.gcd(&(&h - &x))?;
            if !g.is_one() {
                rest = rest.div_exact(&g)?;
                h = h.rem(&rest)?;
                out.push((g, i));
            }
            i += 1;
        }
        if rest.deg() > 0 {
            let n = rest.deg();
            out.push((rest, n));
        }
        Ok(out)
    }

    /// Splits a product of distinct irreducibles of degree `j` by scanning
    /// monic candidates of degree `j` in canonical order.
    fn equal_degree(f: &Poly, j: usize) -> Result<Vec<Poly>> {
        let mut rest = f.clone();
        let mut out = Vec::new();
        let mut code = 0u64;
        while rest.deg() > j {
            let cand = Poly::monic_from_code(f.p, j, code);
            code += 1;
            if cand.divides(&rest)? {
                rest = rest.div_exact(&cand)?;
                out.push(cand);
            }
        }
        if rest.deg() == j {
            out.push(rest);
        }
        Ok(out)
    }

    /// Complete factorization into monic irreducibles.
    pub fn factorize(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut factors = Vec::new();
        for (sqf, mult) in self.squarefree()? {
            for (block, j) in Poly::distinct_degree(&sqf)? {
                for f in Poly::equal_degree(&block, j)? {
                    factors.push((f, mult));
                }
            }
        }
        factors.sort();
        // Squarefree parts are coprime, so equal factors cannot repeat; merge defensively anyway.
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(factors.len());
        for (f, m) in factors {
            match merged.last_mut() {
                Some((g, n)) if *g == f => *n += m,
                _ => merged.push((f, m)),
            }
        }
        Ok(Factorization {
            unit: self.lead(),
            factors: merged,
        })
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_raw(
            p,
            (0..n)
                .map(|i| fadd(self.coeff(i), rhs.coeff(i), p))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_raw(
            p,
            (0..n)
                .map(|i| fsub(self.coeff(i), rhs.coeff(i), p))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        &Poly::zero(self.p) - self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        Poly::from_raw(p, out.into_iter().map(|c| c as u32).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Monic irreducible factors with multiplicities, in canonical order, and
/// the leading coefficient of the factored polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, p: u32) -> Poly {
        let base = Poly::from_raw(p, vec![self.unit]);
        self.factors
            .iter()
            .fold(base, |acc, (f, m)| &acc * &f.pow(*m as u64))
    }

    pub fn multiplicity(&self, f: &Poly) -> u32 {
        self.factors
            .iter()
            .find(|(g, _)| g == f)
            .map_or(0, |(_, m)| *m)
    }
}

/// Parses the text form `"x^3+x+1"`, `"2*x^2 + x - 1"`, `"3x"` over F_p.
pub fn parse_poly(text: &str, p: u32) -> Result<Poly> {
    let s: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut coeffs: Vec<i64> = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    let number = |i: &mut usize| -> Option<u64> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        (start != *i)
            .then(|| s[start..*i].iter().collect::<String>().parse().ok())
            .flatten()
    };
    skip_ws(&mut i);
    if i == s.len() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut first = true;
    while i < s.len() {
        skip_ws(&mut i);
        let mut sign = 1i64;
        if i < s.len() && (s[i] == '+' || s[i] == '-') {
            sign = if s[i] == '-' { -1 } else { 1 };
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(Error::parse(i, "expected '+' or '-'"));
        }
        first = false;
        let term_start = i;
        let coeff = number(&mut i);
        skip_ws(&mut i);
        let mut degree = 0usize;
        let mut has_x = false;
        if i < s.len() && s[i] == '*' {
            if coeff.is_none() {
                return Err(Error::parse(i, "unexpected '*'"));
            }
            i += 1;
            skip_ws(&mut i);
            if i >= s.len() || s[i] != 'x' {
                return Err(Error::parse(i, "expected 'x' after '*'"));
            }
        }
        if i < s.len() && s[i] == 'x' {
            has_x = true;
            degree = 1;
            i += 1;
            skip_ws(&mut i);
            if i < s.len() && s[i] == '^' {
                i += 1;
                skip_ws(&mut i);
                degree =
                    number(&mut i).ok_or_else(|| Error::parse(i, "expected exponent"))? as usize;
            }
        }
        if coeff.is_none() && !has_x {
            return Err(Error::parse(term_start, "expected a term"));
        }
        let c = coeff.unwrap_or(1) % p as u64;
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, 0);
        }
        coeffs[degree] += sign * c as i64;
        skip_ws(&mut i);
    }
    Ok(Poly::new(p, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[i64]) -> Poly {
        Poly::new(p, c.iter().copied())
    }

    #[test]
    fn arithmetic_examples() {
        // gcd(x^2+1, x+1) over F_2 = x+1
        assert_eq!(
            poly(2, &[1, 0, 1]).gcd(&poly(2, &[1, 1])).unwrap(),
            poly(2, &[1, 1])
        );
        // (x^3 - 1) divmod (x - 1) over F_3
        let (q, r) = poly(3, &[-1, 0, 0, 1]).divmod(&poly(3, &[-1, 1])).unwrap();
        assert_eq!(q, poly(3, &[1, 1, 1]));
        assert!(r.is_zero());
        // (x+1)(x+2) = x^2 + 2 over F_3
        assert_eq!(
            poly(3, &[1, 1]).try_mul(&poly(3, &[2, 1])).unwrap(),
            poly(3, &[2, 0, 1])
        );
    }

    #[test]
    fn arithmetic_errors() {
        assert_eq!(
            poly(2, &[1, 1]).divmod(&Poly::zero(2)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            poly(2, &[1, 1]).try_add(&poly(3, &[1])),
            Err(Error::ModulusMismatch(2, 3))
        );
        assert_eq!(
            Poly::one(5).is_irreducible(),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly(2, &[1, 1, 1]).is_irreducible().unwrap());
        assert!(!poly(2, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(poly(2, &[1, 1, 1, 1, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn factorization_examples() {
        let f = poly(2, &[-1, 0, 0, 0, 0, 1]).factorize().unwrap();
        assert_eq!(
            f.factors,
            vec![(poly(2, &[1, 1]), 1), (poly(2, &[1, 1, 1, 1, 1]), 1)]
        );
        let f = poly(3, &[-1, 1]).pow(3).factorize().unwrap();
        assert_eq!(f.factors, vec![(poly(3, &[2, 1]), 3)]);
        let f = poly(5, &[-1, 0, 0, 0, 1]).factorize().unwrap();
        let expect: Vec<_> = (1..=4).map(|c| (poly(5, &[c, 1]), 1)).collect();
        assert_eq!(f.factors, expect);
    }

    #[test]
    fn factorization_with_pth_powers() {
        // (x^2+x+1)^2 (x+1)^3 x over F_2 exercises the p-th root branch.
        let a = poly(2, &[1, 1, 1]).pow(2);
        let b = poly(2, &[1, 1]).pow(3);
        let f = &(&a * &b) * &Poly::x(2);
        let fac = f.factorize().unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (Poly::x(2), 1),
                (poly(2, &[1, 1]), 3),
                (poly(2, &[1, 1, 1]), 2)
            ]
        );
        assert_eq!(fac.product(2), f);
    }

    #[test]
    fn order_examples() {
        assert_eq!(poly(2, &[1, 1, 1]).multiplicative_order().unwrap(), 3);
        assert_eq!(poly(2, &[1, 1, 1, 1, 1]).multiplicative_order().unwrap(), 5);
        assert_eq!(poly(2, &[1, 1, 0, 1]).multiplicative_order().unwrap(), 7);
        assert_eq!(Poly::x(3).multiplicative_order(), Err(Error::OrderOfX));
        assert!(matches!(
            poly(2, &[1, 0, 1]).multiplicative_order(),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(Poly::primitive(2, 3).unwrap(), poly(2, &[1, 1, 0, 1]));
        assert_eq!(Poly::primitive(2, 1).unwrap(), poly(2, &[1, 1]));
        // First degree-2 monic over F_3 in code order with order 8, found by
        // scanning x^2, x^2+1 (order 4), x^2+2, x^2+x, x^2+x+1 = (x+2)^2.
        assert_eq!(Poly::primitive(3, 2).unwrap(), poly(3, &[2, 1, 1]));
    }

    #[test]
    fn text_round_trip() {
        let f = parse_poly("x^3 + x + 1", 2).unwrap();
        assert_eq!(f, poly(2, &[1, 1, 0, 1]));
        assert_eq!(f.to_string(), "x^3+x+1");
        assert_eq!(parse_poly("2*x^2+x-1", 3).unwrap(), poly(3, &[2, 1, 2]));
        assert_eq!(parse_poly("3x", 5).unwrap().to_string(), "3x");
        assert!(parse_poly("x^", 2).is_err());
        assert!(parse_poly("x x", 2).is_err());
    }
}
