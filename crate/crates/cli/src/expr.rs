//! Element expressions: `+` is direct sum, `*` is Kronecker product and
//! binds tighter, atoms are `Jn`, `Sn` or `Sn^i`, `In` and matrix literals
//! `[a,b;c,d]`.
//!
//! ```text
//! expr := prod ("+" prod)*
//! prod := atom ("*" atom)*
//! atom := "J" nat | "S" nat ["^" nat] | "I" nat | "[" rows "]" | "(" expr ")"
//! ```

use std::fmt;

use afftool_core::{Error, Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub enum ExprKind {
    Jordan(usize),
    /// `i` is kept as written; `None` means the full Singer cycle.
    Singer {
        j: usize,
        i: Option<u64>,
    },
    Identity(usize),
    Literal(Vec<Vec<i64>>),
    Sum(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

// Equality is structural; spans are ignored so that reprinted text compares
// equal to the original tree.
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use ExprKind::*;
        match (&self.kind, &other.kind) {
            (Jordan(a), Jordan(b)) | (Identity(a), Identity(b)) => a == b,
            (Singer { j: a, i: x }, Singer { j: b, i: y }) => a == b && x == y,
            (Literal(a), Literal(b)) => a == b,
            (Sum(a, b), Sum(c, d)) | (Tensor(a, b), Tensor(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Eq for Expr {}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Expr {
            kind,
            span: Span { start: 0, end: 0 },
        }
    }

    /// Dimension of the evaluated matrix, without building it.
    pub fn dim(&self) -> Result<usize> {
        Ok(match &self.kind {
            ExprKind::Jordan(n) | ExprKind::Identity(n) => *n,
            ExprKind::Singer { j, .. } => *j,
            ExprKind::Literal(rows) => rows.len(),
            ExprKind::Sum(a, b) => a.dim()? + b.dim()?,
            ExprKind::Tensor(a, b) => a.dim()? * b.dim()?,
        })
    }

    pub fn eval(&self, p: u32) -> Result<Matrix> {
        let at = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                offset: self.span.start,
                message: other.to_string(),
            },
        };
        match &self.kind {
            ExprKind::Jordan(n) => Ok(Matrix::jordan_block(p, *n)),
            ExprKind::Identity(n) => Ok(Matrix::identity(p, *n)),
            ExprKind::Singer { j, i } => Matrix::singer(p, *j, i.unwrap_or(1)).map_err(at),
            ExprKind::Literal(rows) => {
                let m = Matrix::from_rows(p, rows).map_err(at)?;
                if !m.is_square() {
                    return Err(at(Error::ShapeMismatch(
                        "matrix literal must be square".into(),
                    )));
                }
                Ok(m)
            }
            ExprKind::Sum(a, b) => Matrix::direct_sum(p, &[a.eval(p)?, b.eval(p)?]).map_err(at),
            ExprKind::Tensor(a, b) => a.eval(p)?.kronecker(&b.eval(p)?).map_err(at),
        }
    }

    fn prec(&self) -> u8 {
        match self.kind {
            ExprKind::Sum(..) => 0,
            ExprKind::Tensor(..) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Left operands need parentheses below the operator's precedence,
        // right operands at or below it (both operators associate left).
        let side = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match &self.kind {
            ExprKind::Jordan(n) => write!(f, "J{n}"),
            ExprKind::Identity(n) => write!(f, "I{n}"),
            ExprKind::Singer { j, i: None } => write!(f, "S{j}"),
            ExprKind::Singer { j, i: Some(i) } => write!(f, "S{j}^{i}"),
            ExprKind::Literal(rows) => {
                let rows: Vec<String> = rows
                    .iter()
                    .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "[{}]", rows.join(";"))
            }
            ExprKind::Sum(a, b) => {
                side(f, a, 0)?;
                f.write_str("+")?;
                side(f, b, 1)
            }
            ExprKind::Tensor(a, b) => {
                side(f, a, 1)?;
                f.write_str("*")?;
                side(f, b, 2)
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err(start, "number too large"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        let n = self.nat()?;
        let n = i64::try_from(n).or_else(|_| self.err(start, "number too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn size(&mut self) -> Result<usize> {
        let start = self.pos;
        let n = self.nat()?;
        if n > 4096 {
            return self.err(start, "dimension too large");
        }
        Ok(n as usize)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.prod()?;
        while self.eat(b'+') {
            let rhs = self.prod()?;
            let span = Span {
                start: lhs.span.start,
                end: rhs.span.end,
            };
            lhs = Expr {
                kind: ExprKind::Sum(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        while self.eat(b'*') {
            let rhs = self.atom()?;
            let span = Span {
                start: lhs.span.start,
                end: rhs.span.end,
            };
            lhs = Expr {
                kind: ExprKind::Tensor(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "expected J, S, I, [ or (");
        };
        let start = self.pos;
        self.pos += 1;
        let kind = match c {
            b'J' => ExprKind::Jordan(self.size()?),
            b'I' => ExprKind::Identity(self.size()?),
            b'S' => {
                let j = self.size()?;
                let i = if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    Some(self.nat()?)
                } else {
                    None
                };
                ExprKind::Singer { j, i }
            }
            b'[' => ExprKind::Literal(self.rows()?),
            b'(' => {
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err(self.pos, "expected )");
                }
                return Ok(Expr {
                    kind: inner.kind,
                    span: Span {
                        start,
                        end: self.pos,
                    },
                });
            }
            _ => return self.err(start, format!("unexpected `{}`", c as char)),
        };
        Ok(Expr {
            kind,
            span: Span {
                start,
                end: self.pos,
            },
        })
    }

    fn rows(&mut self) -> Result<Vec<Vec<i64>>> {
        let mut rows = vec![vec![self.int()?]];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    rows.last_mut().expect("nonempty").push(self.int()?);
                }
                Some(b';') => {
                    self.pos += 1;
                    rows.push(vec![self.int()?]);
                }
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err(self.pos, "expected `,`, `;` or `]`"),
            }
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return self.err(self.pos - 1, format!("matrix literal is not {n}x{n}"));
        }
        Ok(rows)
    }
}

pub fn parse_element(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{}`", c as char));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn offset(text: &str) -> usize {
        match parse_element(text) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{text}: {other:?}"),
        }
    }

    #[test]
    fn precedence_and_spans() {
        let e = parse_element("J3+S2").unwrap();
        assert_eq!(e.dim().unwrap(), 5);
        assert_eq!(e.span, Span { start: 0, end: 5 });
        let e = parse_element("S1*J2 + J1").unwrap();
        let ExprKind::Sum(a, _) = &e.kind else {
            panic!()
        };
        assert!(matches!(a.kind, ExprKind::Tensor(..)));
        assert_eq!(a.span, Span { start: 0, end: 5 });
        assert_eq!(parse_element("(J1+J1)*J2").unwrap().dim().unwrap(), 4);
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(offset("J2+"), 3);
        assert_eq!(offset("J2 K"), 3);
        assert_eq!(offset("[1,0;0]"), 6);
        assert_eq!(offset("(J1"), 3);
        assert_eq!(offset("S"), 1);
    }

    #[test]
    fn printing_is_minimal() {
        for text in [
            "J3+S2",
            "S2^3*J2+J1",
            "(J1+J1)*J2",
            "J1+(J2+J3)",
            "J2*(J2*J2)",
            "[0,1;1,1]+I2",
        ] {
            assert_eq!(parse_element(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn evaluation_errors_point_at_the_atom() {
        let e = parse_element("J1+[1,2;2,4]").unwrap();
        assert_eq!(e.eval(3).unwrap().det().unwrap(), 0);
        assert!(matches!(
            parse_element("J1+S2").unwrap().eval(4),
            Err(Error::Parse { .. } | Error::NotPrime(_))
        ));
    }
}
