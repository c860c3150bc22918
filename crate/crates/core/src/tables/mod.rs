//! Catalog of the classification tables: every line with its admissible
//! parameter bindings, a representative element, predicted order and cycle
//! lengths, and an invariant-based matcher.
//!
//! Matching never compares against the constructed representative. Each
//! element is reduced to a *pattern*: the sorted multiset of triples
//! `(deg f, ord f, block size)` taken over the irreducible factors `f` of
//! its linear part and the parts of their partitions. A Singer power
//! `s_j^i` contributes `j / e` triples `(e, ord, 1)` where `ord` is its
//! order and `e` the least exponent with `ord | p^e - 1`.

mod lines;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::{affine_order, cycle_structure_capped, AffineMap, CycleStructure};
use crate::arith::{self, gcd, lcm, multiplicative_order_mod};
use crate::conjugacy::{class_invariant, ClassInvariant};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::orbit::MAX_CYCLE_SPACE;

pub use lines::{LineInfo, LINES};

pub const CATALOG_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Orders,
    Cycles,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Orders => "orders",
            Kind::Cycles => "cycles",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orders" => Ok(Kind::Orders),
            "cycles" => Ok(Kind::Cycles),
            other => Err(Error::UnknownStrategy {
                kind: "table kind",
                name: other.to_string(),
            }),
        }
    }
}

/// Free parameters of a table line. Unused fields stay empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Binding {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u64>,
    /// `d_1, ..., d_t`: a distinguished leading part first where the line
    /// has one, the remaining parts decreasing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<u8>,
    /// The element `h'` of a line built as `J_m + h'`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub: Option<Box<SubBinding>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubBinding {
    pub line: String,
    pub binding: Binding,
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items = Vec::new();
        if let Some(i) = self.i {
            items.push(format!("i={i}"));
        }
        if !self.parts.is_empty() {
            let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
            items.push(format!("parts={}", parts.join(":")));
        }
        for (name, val) in [("a", self.a), ("a1", self.a1), ("a2", self.a2)] {
            if let Some(v) = val {
                items.push(format!("{name}={v}"));
            }
        }
        if let Some(v) = self.variant {
            items.push(format!("variant={v}"));
        }
        if let Some(sub) = &self.sub {
            items.push(format!("sub={}[{}]", sub.line, sub.binding));
        }
        write!(f, "{}", items.join(","))
    }
}

/// Building blocks of table elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Summand {
    Jordan(usize),
    Singer { j: usize, i: u64 },
    SingerJordan { j: usize, i: u64, m: usize },
}

/// `(degree, multiplicative order, block size)`.
pub type Triple = (usize, u64, usize);
pub type Pattern = Vec<Triple>;

impl Summand {
    pub fn dim(&self) -> usize {
        match *self {
            Summand::Jordan(m) => m,
            Summand::Singer { j, .. } => j,
            Summand::SingerJordan { j, m, .. } => j * m,
        }
    }

    pub fn matrix(&self, p: u32) -> Result<Matrix> {
        match *self {
            Summand::Jordan(m) => Ok(Matrix::jordan_block(p, m)),
            Summand::Singer { j, i } => Matrix::singer(p, j, i),
            Summand::SingerJordan { j, i, m } => {
                Matrix::singer(p, j, i)?.kronecker(&Matrix::jordan_block(p, m))
            }
        }
    }

    fn triples(&self, p: u32) -> Result<Vec<Triple>> {
        let singer = |j: usize, i: u64, m: usize| -> Result<Vec<Triple>> {
            let q = arith::space_size(p, j, arith::MAX_ORDER_SPACE, "p^j")? - 1;
            let ord = q / gcd(i, q);
            let e = multiplicative_order_mod(p as u64, ord) as usize;
            Ok(vec![(e, ord, m); j / e])
        };
        match *self {
            Summand::Jordan(m) => Ok(if m == 0 { Vec::new() } else { vec![(1, 1, m)] }),
            Summand::Singer { j, i } => singer(j, i, 1),
            Summand::SingerJordan { j, i, m } => singer(j, i, m),
        }
    }

    /// The summand in element-expression syntax.
    pub fn expr(&self) -> String {
        let s = |j: usize, i: u64| {
            if i == 1 {
                format!("S{j}")
            } else {
                format!("S{j}^{i}")
            }
        };
        match *self {
            Summand::Jordan(m) => format!("J{m}"),
            Summand::Singer { j, i } => s(j, i),
            Summand::SingerJordan { j, i, m } => format!("{}*J{m}", s(j, i)),
        }
    }
}

/// A concrete element form: direct sum of summands plus an optional
/// translation by the basis vector `e_k` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub summands: Vec<Summand>,
    pub translation: Option<usize>,
}

impl Shape {
    pub fn dim(&self) -> usize {
        self.summands.iter().map(Summand::dim).sum()
    }

    pub fn element(&self, p: u32) -> Result<AffineMap> {
        let parts = self
            .summands
            .iter()
            .map(|s| s.matrix(p))
            .collect::<Result<Vec<_>>>()?;
        let h = Matrix::direct_sum(p, &parts)?;
        let mut v = vec![0; h.dim()];
        if let Some(k) = self.translation {
            v[k - 1] = 1;
        }
        AffineMap::new(v, h)
    }

    pub fn pattern(&self, p: u32) -> Result<Pattern> {
        let mut out = Vec::new();
        for s in &self.summands {
            out.extend(s.triples(p)?);
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn expr(&self) -> String {
        self.summands
            .iter()
            .map(Summand::expr)
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn translation_text(&self) -> String {
        self.translation
            .map_or_else(|| "0".to_string(), |k| format!("e{k}"))
    }
}

/// Pattern of a linear part from its class invariant.
pub fn pattern_of(inv: &ClassInvariant) -> Result<Pattern> {
    let mut out = Vec::new();
    for b in &inv.blocks {
        let ord = b.poly.multiplicative_order()?;
        out.extend(b.partition.iter().map(|&m| (b.poly.deg(), ord, m)));
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub line: &'static str,
    pub binding: Binding,
    #[serde(skip)]
    pub shape: Shape,
    #[serde(skip)]
    pub pattern: Pattern,
    #[serde(skip)]
    pub delta: u32,
    /// The order column evaluated, or the lcm of the cycle lengths.
    pub order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<u64>>,
}

impl CatalogEntry {
    pub fn info(&self) -> &'static LineInfo {
        lines::info(self.line).expect("catalog line id")
    }
}

pub fn line_info(id: &str) -> Result<&'static LineInfo> {
    lines::info(id).ok_or_else(|| Error::UnknownLine(id.to_string()))
}

fn check_caps(p: u32, d: usize, kind: Kind) -> Result<()> {
    arith::check_prime(p as u64)?;
    let cap = match kind {
        Kind::Orders => arith::MAX_ORDER_SPACE,
        Kind::Cycles => MAX_CYCLE_SPACE,
    };
    arith::space_size(p, d, cap, "p^d for the table catalog")?;
    Ok(())
}

fn entry(line: &'static LineInfo, p: u32, d: usize, binding: Binding) -> Result<CatalogEntry> {
    let shape = lines::shape(line.id, p, d, &binding);
    if shape.dim() != d {
        return Err(Error::Internal(format!(
            "{} {binding} has dimension {}",
            line.id,
            shape.dim()
        )));
    }
    let pattern = shape.pattern(p)?;
    let cycles = lines::cycles_formula(line.id, p, d, &binding);
    let order = match (&cycles, lines::order_formula(line.id, p, d, &binding)) {
        (_, Some(o)) => u64::try_from(o).map_err(|_| Error::Internal("order overflow".into()))?,
        (Some(c), None) => c.iter().fold(1, |acc, &l| lcm(acc, l)),
        (None, None) => return Err(Error::Internal(format!("{} has no order formula", line.id))),
    };
    Ok(CatalogEntry {
        line: line.id,
        binding,
        shape,
        pattern,
        delta: line.delta,
        order,
        cycles,
    })
}

/// All lines of `kind` with every admissible binding at `(p, d)`.
pub fn catalog(p: u32, d: usize, kind: Kind) -> Result<Vec<CatalogEntry>> {
    check_caps(p, d, kind)?;
    let mut out = Vec::new();
    for line in LINES.iter().filter(|l| l.kind == kind) {
        for b in lines::bindings(line.id, p, d) {
            out.push(entry(line, p, d, b)?);
        }
    }
    Ok(out)
}

/// Admissible bindings of one line at `(p, d)`.
pub fn line_bindings(id: &str, p: u32, d: usize) -> Result<Vec<Binding>> {
    line_info(id)?;
    Ok(lines::bindings(id, p, d))
}

fn admissible(id: &str, p: u32, d: usize, binding: &Binding) -> Result<CatalogEntry> {
    let info = line_info(id)?;
    arith::check_prime(p as u64)?;
    if !lines::bindings(id, p, d).contains(binding) {
        return Err(Error::InadmissibleBinding {
            line: id.to_string(),
            reason: format!("`{binding}` is not an admissible binding at p={p}, d={d}"),
        });
    }
    entry(info, p, d, binding.clone())
}

/// Representative element of a line for an admissible binding.
pub fn instantiate(id: &str, p: u32, d: usize, binding: &Binding) -> Result<AffineMap> {
    admissible(id, p, d, binding)?.shape.element(p)
}

pub fn predicted_order(id: &str, p: u32, d: usize, binding: &Binding) -> Result<u64> {
    Ok(admissible(id, p, d, binding)?.order)
}

pub fn predicted_cycles(id: &str, p: u32, d: usize, binding: &Binding) -> Result<Vec<u64>> {
    admissible(id, p, d, binding)?
        .cycles
        .ok_or_else(|| Error::InadmissibleBinding {
            line: id.to_string(),
            reason: "not a cycle-table line".into(),
        })
}

/// A catalog for one `(p, d, kind)` indexed by pattern and delta.
pub struct Catalog {
    pub p: u32,
    pub d: usize,
    pub kind: Kind,
    entries: Vec<CatalogEntry>,
    index: HashMap<(Pattern, u32), Vec<usize>>,
}

impl Catalog {
    pub fn build(p: u32, d: usize, kind: Kind) -> Result<Self> {
        let entries = catalog(p, d, kind)?;
        let mut index: HashMap<(Pattern, u32), Vec<usize>> = HashMap::new();
        for (n, e) in entries.iter().enumerate() {
            index
                .entry((e.pattern.clone(), e.delta))
                .or_default()
                .push(n);
        }
        Ok(Catalog {
            p,
            d,
            kind,
            entries,
            index,
        })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Entries whose pattern and delta agree, and for cycle tables whose
    /// cycle lengths equal `cycles`.
    pub fn lookup(
        &self,
        pattern: &Pattern,
        delta: u32,
        cycles: Option<&[u64]>,
    ) -> Vec<&CatalogEntry> {
        let Some(hits) = self.index.get(&(pattern.clone(), delta)) else {
            return Vec::new();
        };
        hits.iter()
            .map(|&n| &self.entries[n])
            .filter(|e| match (self.kind, cycles) {
                (Kind::Cycles, Some(c)) => e.cycles.as_deref() == Some(c),
                (Kind::Cycles, None) => false,
                (Kind::Orders, _) => true,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineMatch {
    pub line: &'static str,
    pub binding: Binding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub kind: Kind,
    pub order: u64,
    pub delta: u32,
    pub threshold_met: bool,
    pub matched: Vec<LineMatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<CycleStructure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_match: Option<bool>,
}

/// `4 |g| >= p^d`, exactly.
pub fn threshold_met(order: u64, p: u32, d: usize) -> bool {
    match arith::checked_pow(p as u64, d as u32) {
        Some(size) => 4 * order as u128 >= size,
        None => false,
    }
}

/// Which lines of `kind` the element realizes, up to affine conjugacy.
pub fn match_element(g: &AffineMap, kind: Kind) -> Result<MatchResult> {
    let catalog = Catalog::build(g.p(), g.d(), kind)?;
    match_with(&catalog, g)
}

pub fn match_with(catalog: &Catalog, g: &AffineMap) -> Result<MatchResult> {
    if (g.p(), g.d()) != (catalog.p, catalog.d) {
        return Err(Error::shape("element and catalog disagree on (p, d)"));
    }
    let (order, profile) = affine_order(g)?;
    let pattern = pattern_of(&class_invariant(g.h())?)?;
    let cycles = match catalog.kind {
        Kind::Cycles => Some(cycle_structure_capped(g, MAX_CYCLE_SPACE)?),
        Kind::Orders => None,
    };
    let matched: Vec<LineMatch> = catalog
        .lookup(
            &pattern,
            profile.delta,
            cycles.as_ref().map(|c| c.lengths.as_slice()),
        )
        .into_iter()
        .map(|e| LineMatch {
            line: e.line,
            binding: e.binding.clone(),
        })
        .collect();
    let cycle_match = cycles.as_ref().map(|_| !matched.is_empty());
    Ok(MatchResult {
        kind: catalog.kind,
        order,
        delta: profile.delta,
        threshold_met: threshold_met(order, g.p(), g.d()),
        matched,
        cycles,
        cycle_match,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExportLine {
    pub line: &'static str,
    pub form: &'static str,
    pub binding: Binding,
    pub element: String,
    pub translation: String,
    pub order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogExport {
    pub schema_version: u32,
    pub p: u32,
    pub d: usize,
    pub kind: Kind,
    pub lines: Vec<ExportLine>,
}

pub fn export(p: u32, d: usize, kind: Kind) -> Result<CatalogExport> {
    let lines = catalog(p, d, kind)?
        .into_iter()
        .map(|e| ExportLine {
            line: e.line,
            form: e.info().form,
            element: e.shape.expr(),
            translation: e.shape.translation_text(),
            binding: e.binding,
            order: e.order,
            cycles: e.cycles,
        })
        .collect();
    Ok(CatalogExport {
        schema_version: CATALOG_SCHEMA_VERSION,
        p,
        d,
        kind,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(entries: &[CatalogEntry]) -> Vec<&'static str> {
        let mut v: Vec<_> = entries.iter().map(|e| e.line).collect();
        v.dedup();
        v
    }

    fn b_i(i: u64) -> Binding {
        Binding {
            i: Some(i),
            ..Binding::default()
        }
    }

    #[test]
    fn catalog_examples() {
        let c = catalog(5, 1, Kind::Orders).unwrap();
        let t21: Vec<_> = c
            .iter()
            .filter(|e| e.line == "T2.L1")
            .map(|e| e.binding.i.unwrap())
            .collect();
        assert_eq!(t21, vec![1, 2]);
        assert!(ids(&c).contains(&"T2.L3"));
        assert!(ids(&catalog(3, 4, Kind::Orders).unwrap()).contains(&"T4.L2"));
        let c = catalog(2, 3, Kind::Cycles).unwrap();
        let got = ids(&c);
        for want in [
            "T5.L1", "T6.L2", "T7.L3", "T7.L4", "T7.L5", "T7.L10", "T7.L11",
        ] {
            assert!(got.contains(&want), "{want}");
        }
        assert!(!got.contains(&"T6.L1"));
        let t51: Vec<_> = c
            .iter()
            .filter(|e| e.line == "T5.L1")
            .map(|e| e.binding.i.unwrap())
            .collect();
        assert_eq!(t51, vec![1]);
    }

    #[test]
    fn instantiate_examples() {
        let g = instantiate("T7.L8", 2, 5, &Binding::default()).unwrap();
        assert_eq!(g.v(), &[1, 0, 0, 0, 0]);
        assert_eq!(affine_order(&g).unwrap().0, 8);
        let g = instantiate("T2.L1", 2, 3, &b_i(1)).unwrap();
        assert_eq!(affine_order(&g).unwrap().0, 7);
        let b = Binding {
            parts: vec![2, 2, 5, 3],
            ..Binding::default()
        };
        let g = instantiate("T3.L12", 2, 12, &b).unwrap();
        assert_eq!(affine_order(&g).unwrap().0, 651);
        assert!(matches!(
            instantiate("T2.L1", 2, 3, &b_i(2)),
            Err(Error::InadmissibleBinding { .. })
        ));
        assert!(matches!(
            instantiate("T9.L1", 2, 3, &b_i(1)),
            Err(Error::UnknownLine(_))
        ));
    }

    #[test]
    fn cycle_formula_examples() {
        assert_eq!(
            predicted_cycles("T5.L1", 2, 4, &b_i(3)).unwrap(),
            vec![1, 5, 5, 5]
        );
        let b = Binding {
            a: Some(1),
            a1: Some(2),
            a2: Some(3),
            ..Binding::default()
        };
        assert_eq!(
            predicted_cycles("T6.L7", 2, 6, &b).unwrap(),
            vec![2, 6, 14, 42]
        );
        assert_eq!(
            predicted_cycles("T7.L1", 3, 2, &Binding::default()).unwrap(),
            vec![3, 3, 3]
        );
    }

    #[test]
    fn match_examples() {
        let g = AffineMap::linear(Matrix::singer(2, 4, 1).unwrap()).unwrap();
        let m = match_element(&g, Kind::Orders).unwrap();
        assert!(m.matched.contains(&LineMatch {
            line: "T2.L1",
            binding: b_i(1)
        }));
        assert!(m.threshold_met);

        let h = Matrix::direct_sum(
            2,
            &[Matrix::jordan_block(2, 1), Matrix::singer(2, 2, 3).unwrap()],
        )
        .unwrap();
        let g = AffineMap::new(vec![1, 0, 0], h).unwrap();
        let m = match_element(&g, Kind::Orders).unwrap();
        let lines: Vec<_> = m.matched.iter().map(|x| x.line).collect();
        assert!(
            lines.contains(&"T4.L11") && lines.contains(&"T2.L2"),
            "{lines:?}"
        );
        assert!(m.matched.contains(&LineMatch {
            line: "T2.L2",
            binding: b_i(3)
        }));
    }

    #[test]
    fn binding_json_round_trip() {
        let b = Binding {
            sub: Some(Box::new(SubBinding {
                line: "T3.L8".into(),
                binding: Binding {
                    parts: vec![3, 2],
                    ..Binding::default()
                },
            })),
            ..Binding::default()
        };
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(
            text,
            r#"{"sub":{"line":"T3.L8","binding":{"parts":[3,2]}}}"#
        );
        assert_eq!(serde_json::from_str::<Binding>(&text).unwrap(), b);
        assert!(serde_json::from_str::<Binding>(r#"{"j":1}"#).is_err());
    }
}
