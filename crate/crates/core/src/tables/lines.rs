//! Per-line data: applicability, parameter bindings, element shapes and the
//! order and cycle-length formulas.

use crate::arith::gcd;

use super::{Binding, Kind, Shape, SubBinding, Summand};

pub struct LineInfo {
    pub id: &'static str,
    pub kind: Kind,
    /// `|g| = p^delta |h|`.
    pub delta: u32,
    /// Element column in table notation.
    pub form: &'static str,
}

const fn line(id: &'static str, kind: Kind, delta: u32, form: &'static str) -> LineInfo {
    LineInfo {
        id,
        kind,
        delta,
        form,
    }
}

use Kind::{Cycles as C, Orders as O};

pub static LINES: &[LineInfo] = &[
    line("T2.L1", O, 0, "s_d^i"),
    line("T2.L2", O, 1, "J_1 + s_{d-1}^i"),
    line("T2.L3", O, 1, "J_1"),
    line("T3.L1", O, 0, "J_1 + s_{d-1}"),
    line("T3.L2", O, 0, "s_{d_1} + s_{d_2}"),
    line("T3.L3", O, 0, "(s_1 * J_2) + s_{d-2}^i"),
    line("T3.L4", O, 0, "J_2 + s_{d-2}"),
    line("T3.L5", O, 1, "J_1 + h'"),
    line("T3.L6", O, 1, "J_3 + s_{d-3}"),
    line("T3.L7", O, 0, "+_j s_{d_j}, d_1 = 1"),
    line("T3.L8", O, 0, "+_j s_{d_j}"),
    line("T3.L9", O, 0, "(s_2 * J_2) + (+_{j>=2} s_{d_j})"),
    line("T3.L10", O, 0, "J_3 + (+_{j>=2} s_{d_j})"),
    line("T3.L11", O, 0, "J_2 + (+_{j>=2} s_{d_j})"),
    line("T3.L12", O, 0, "+_j s_{d_j}, (d_1, d_2) = 2"),
    line("T3.L13", O, 0, "s_{d_1}^3 + (+_{j>=2} s_{d_j})"),
    line("T3.L14", O, 1, "J_1 + h'"),
    line("T3.L15", O, 1, "J_2 + h'"),
    line("T3.L16", O, 1, "J_4 + h'"),
    line("T3.L17", O, 1, "J_2 + s_{d-2}^i"),
    line("T4.L1", O, 0, "s_1^i * J_2"),
    line("T4.L2", O, 0, "s_2 * J_2"),
    line("T4.L3", O, 1, "J_p"),
    line("T4.L4", O, 0, "J_d"),
    line("T4.L5", O, 0, "J_2 + J_1"),
    line("T4.L6", O, 0, "J_3 + J_1"),
    line("T4.L7", O, 1, "J_4"),
    line("T4.L8", O, 1, "J_2 + J_2"),
    line("T4.L9", O, 1, "J_2 + J_1 + J_1"),
    line("T4.L10", O, 1, "J_2 + J_1"),
    line("T4.L11", O, 1, "J_1 + J_1 + J_1"),
    line("T5.L1", C, 0, "s_d^i"),
    line("T5.L2", C, 0, "s_1 * J_2"),
    line("T5.L3", C, 1, "t_{e_1}"),
    line("T5.L4", C, 1, "t_{e_1}(J_1 + s_{d-1}^i)"),
    line("T6.L1", C, 0, "s_{a_1} + s_{a_2}"),
    line("T6.L2", C, 0, "J_1 + s_{d-1}"),
    line("T6.L3", C, 0, "t_{e_1}(J_3 + s_{d-3})"),
    line("T6.L4", C, 1, "t_{e_1}(J_1 + J_1 + s_{d-2})"),
    line("T6.L5", C, 1, "t_{e_1}(J_2 + s_{d-2}^i)"),
    line("T6.L6", C, 1, "t_{e_1}(J_2 + J_1 + s_{d-3})"),
    line("T6.L7", C, 1, "t_{e_1}(J_a + s_{a_1} + s_{a_2})"),
    line("T6.L8", C, 1, "t_{e_1}(J_4 + s_{d-4})"),
    line("T7.L1", C, 1, "t_{e_1}"),
    line("T7.L2", C, 0, "t_{e_1} J_2"),
    line("T7.L3", C, 0, "t_{e_1} J_3"),
    line("T7.L4", C, 0, "t_{e_3}(J_2 + J_1)"),
    line("T7.L5", C, 0, "J_3"),
    line("T7.L6", C, 0, "t_{e_1}(J_3 + J_1)"),
    line("T7.L7", C, 0, "s_2 * J_2"),
    line("T7.L8", C, 0, "t_{e_1} J_5"),
    line("T7.L9", C, 1, "t_{e_1} J_2"),
    line("T7.L10", C, 1, "t_{e_1}"),
    line("T7.L11", C, 1, "t_{e_1}(J_2 + J_1)"),
    line("T7.L12", C, 1, "t_{e_1} J_3"),
    line(
        "T7.L13",
        C,
        1,
        "t_{e_1}(J_2 + J_2) or t_{e_1}(J_2 + J_1 + J_1)",
    ),
    line("T7.L14", C, 1, "t_{e_1} J_4"),
    line("T7.L15", C, 1, "t_{e_1}(J_4 + J_1)"),
];

pub fn info(id: &str) -> Option<&'static LineInfo> {
    LINES.iter().find(|l| l.id == id)
}

fn pw(p: u32, e: usize) -> u128 {
    (p as u128).pow(e as u32)
}

/// Admissible exponents `1 <= i <= 3` with `i | p^j - 1`, plus `extra`.
fn exponents(p: u32, j: usize, allowed: &[u64]) -> Vec<u64> {
    let q = pw(p, j) - 1;
    allowed
        .iter()
        .copied()
        .filter(|&i| q.is_multiple_of(i as u128))
        .collect()
}

/// Weakly decreasing sequences of pairwise coprime parts in `[min, max]`,
/// each coprime to every entry of `others`, summing to `total`.
fn coprime_parts(
    total: usize,
    min: usize,
    max: usize,
    others: &[usize],
    odd_only: bool,
) -> Vec<Vec<usize>> {
    fn go(
        rem: usize,
        min: usize,
        max: usize,
        odd_only: bool,
        cur: &mut Vec<usize>,
        fixed: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (min..=max.min(rem)).rev() {
            if odd_only && part % 2 == 0 {
                continue;
            }
            let ok = cur
                .iter()
                .chain(fixed)
                .all(|&q| gcd(q as u64, part as u64) == 1);
            if !ok {
                continue;
            }
            cur.push(part);
            go(rem - part, min, part, odd_only, cur, fixed, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, min, max, odd_only, &mut Vec::new(), others, &mut out);
    out
}

fn evens_desc(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).rev().filter(|x| x % 2 == 0).collect()
}

fn parts_binding(parts: Vec<usize>) -> Binding {
    Binding {
        parts,
        ..Binding::default()
    }
}

fn i_binding(i: u64) -> Binding {
    Binding {
        i: Some(i),
        ..Binding::default()
    }
}

fn subs(p: u32, d: usize, lines: &[&'static str]) -> Vec<Binding> {
    let mut out = Vec::new();
    for &l in lines {
        for b in bindings(l, p, d) {
            out.push(Binding {
                sub: Some(Box::new(SubBinding {
                    line: l.to_string(),
                    binding: b,
                })),
                ..Binding::default()
            });
        }
    }
    out
}

const T3_P2_SUBS: &[&str] = &["T3.L7", "T3.L8", "T3.L12", "T3.L13"];

/// All admissible bindings of `id` at `(p, d)`, in a fixed order.
pub fn bindings(id: &str, p: u32, d: usize) -> Vec<Binding> {
    let none = || vec![Binding::default()];
    let when = |cond: bool| if cond { none() } else { Vec::new() };
    match id {
        "T2.L1" if d >= 1 => exponents(p, d, &[1, 2, 3])
            .into_iter()
            .map(i_binding)
            .collect(),
        "T2.L2" if d >= 2 => exponents(p, d - 1, &[1, 2, 3])
            .into_iter()
            .map(i_binding)
            .collect(),
        "T2.L3" => when(d == 1),

        "T3.L1" => when(p == 3 && d >= 3),
        "T3.L2" if p == 3 && d >= 3 => coprime_parts(d, 1, d, &[], false)
            .into_iter()
            .filter(|v| v.len() == 2)
            .map(parts_binding)
            .collect(),
        "T3.L3" if p == 3 && d >= 4 => [1, 2]
            .into_iter()
            .filter(|&i| i == 1 || d % 2 == 1)
            .map(i_binding)
            .collect(),
        "T3.L4" => when(p == 3 && d >= 4),
        "T3.L5" if p == 3 && d >= 4 => subs(p, d - 1, &["T3.L1", "T3.L2"]),
        "T3.L6" => when(p == 3 && d >= 5),

        "T3.L7" if p == 2 && d >= 3 => coprime_parts(d - 1, 2, d, &[], false)
            .into_iter()
            .map(|rest| parts_binding([vec![1], rest].concat()))
            .collect(),
        "T3.L8" if p == 2 && d >= 5 => coprime_parts(d, 2, d, &[], false)
            .into_iter()
            .filter(|v| v.len() >= 2)
            .map(parts_binding)
            .collect(),
        "T3.L9" if p == 2 && d >= 4 => coprime_parts(d - 4, 3, d, &[], true)
            .into_iter()
            .map(|rest| parts_binding([vec![4], rest].concat()))
            .collect(),
        "T3.L10" if p == 2 && d >= 5 => coprime_parts(d - 3, 2, d, &[], false)
            .into_iter()
            .map(|rest| parts_binding([vec![3], rest].concat()))
            .collect(),
        "T3.L11" if p == 2 && d >= 4 => coprime_parts(d - 2, 2, d, &[], false)
            .into_iter()
            .map(|rest| parts_binding([vec![2], rest].concat()))
            .collect(),
        "T3.L12" if p == 2 && d >= 5 => {
            let mut out = Vec::new();
            for d1 in evens_desc(2, d) {
                for d2 in evens_desc(2, d1) {
                    if d1 + d2 > d || gcd(d1 as u64, d2 as u64) != 2 {
                        continue;
                    }
                    for rest in coprime_parts(d - d1 - d2, 2, d, &[d1, d2], false) {
                        out.push(parts_binding([vec![d1, d2], rest].concat()));
                    }
                }
            }
            out
        }
        "T3.L13" if p == 2 && d >= 5 => {
            let mut out = Vec::new();
            for d1 in evens_desc(4, d - 1) {
                for rest in coprime_parts(d - d1, 2, d, &[d1], false) {
                    out.push(parts_binding([vec![d1], rest].concat()));
                }
            }
            out
        }
        "T3.L14" if p == 2 && d >= 4 => subs(p, d - 1, T3_P2_SUBS),
        "T3.L15" if p == 2 && d >= 5 => subs(p, d - 2, T3_P2_SUBS),
        "T3.L16" if p == 2 && d >= 5 => subs(p, d - 4, &["T3.L8", "T2.L1"]),
        "T3.L17" if p == 2 && d >= 4 => exponents(p, d - 2, &[1, 3])
            .into_iter()
            .map(i_binding)
            .collect(),

        "T4.L1" if p >= 3 && d == 2 => exponents(p, 1, &[1, 2, 3])
            .into_iter()
            .map(i_binding)
            .collect(),
        "T4.L2" => when(p == 3 && d == 4),
        "T4.L3" => when((p == 2 || p == 3) && d == p as usize),
        "T4.L4" => when(p == 2 && (2..=5).contains(&d)),
        "T4.L5" | "T4.L10" | "T4.L11" => when(p == 2 && d == 3),
        "T4.L6" | "T4.L7" | "T4.L8" | "T4.L9" => when(p == 2 && d == 4),

        "T5.L1" if d >= 1 => exponents(p, d, &[1, 2, 3])
            .into_iter()
            .map(i_binding)
            .collect(),
        "T5.L2" => when(d == 2),
        "T5.L3" => when(d == 1),
        "T5.L4" if d >= 2 => exponents(p, d - 1, &[1, 2, 3])
            .into_iter()
            .map(i_binding)
            .collect(),

        "T6.L1" if p == 2 && d >= 3 => (2..d)
            .filter(|&a1| a1 < d - a1 && gcd(a1 as u64, (d - a1) as u64) == 1)
            .map(|a1| Binding {
                a1: Some(a1),
                a2: Some(d - a1),
                ..Binding::default()
            })
            .collect(),
        "T6.L2" => when(p == 2 && d >= 3),
        "T6.L3" => when(p == 2 && d >= 5),
        "T6.L4" => when(p == 2 && d >= 4),
        "T6.L5" if p == 2 && d >= 4 => [1u64, 3]
            .into_iter()
            .filter(|&i| i == 1 || d.is_multiple_of(2))
            .map(i_binding)
            .collect(),
        "T6.L6" => when(p == 2 && d >= 5),
        "T6.L7" if p == 2 && d >= 6 => {
            let mut out = Vec::new();
            for a in 1..=2usize {
                for a1 in 2..d {
                    if a + a1 >= d {
                        break;
                    }
                    let a2 = d - a - a1;
                    if a1 < a2 && gcd(a1 as u64, a2 as u64) == 1 {
                        out.push(Binding {
                            a: Some(a),
                            a1: Some(a1),
                            a2: Some(a2),
                            ..Binding::default()
                        });
                    }
                }
            }
            out
        }
        "T6.L8" => when(p == 2 && d >= 6),

        "T7.L1" => when(d == 2 && (p == 2 || p == 3)),
        "T7.L2" => when(d == 2 && p == 3),
        "T7.L3" | "T7.L4" | "T7.L5" | "T7.L10" | "T7.L11" => when(d == 3 && p == 2),
        "T7.L6" | "T7.L7" | "T7.L14" => when(d == 4 && p == 2),
        "T7.L8" | "T7.L15" => when(d == 5 && p == 2),
        "T7.L9" => when(d == 2 && p == 2),
        "T7.L12" => when(d == 3 && p == 3),
        "T7.L13" if d == 4 && p == 2 => (0..2u8)
            .map(|v| Binding {
                variant: Some(v),
                ..Binding::default()
            })
            .collect(),
        _ => Vec::new(),
    }
}

fn singers(parts: &[usize]) -> Vec<Summand> {
    parts.iter().map(|&j| Summand::Singer { j, i: 1 }).collect()
}

fn jordans(sizes: &[usize]) -> Vec<Summand> {
    sizes.iter().map(|&m| Summand::Jordan(m)).collect()
}

fn with_head(head: Vec<Summand>, tail: Vec<Summand>) -> Vec<Summand> {
    [head, tail].concat()
}

/// Element shape of an admissible binding.
pub fn shape(id: &str, p: u32, d: usize, b: &Binding) -> Shape {
    let i = b.i.unwrap_or(1);
    let e1 = Some(1);
    let (summands, translation) = match id {
        "T2.L1" | "T5.L1" => (vec![Summand::Singer { j: d, i }], None),
        "T2.L2" | "T5.L4" => (
            vec![Summand::Jordan(1), Summand::Singer { j: d - 1, i }],
            e1,
        ),
        "T2.L3" | "T5.L3" => (jordans(&[1]), e1),
        "T3.L1" | "T6.L2" => (
            vec![Summand::Jordan(1), Summand::Singer { j: d - 1, i: 1 }],
            None,
        ),
        "T3.L2" | "T3.L7" | "T3.L8" | "T3.L12" => (singers(&b.parts), None),
        "T3.L3" => (
            vec![
                Summand::SingerJordan { j: 1, i: 1, m: 2 },
                Summand::Singer { j: d - 2, i },
            ],
            None,
        ),
        "T3.L4" => (
            vec![Summand::Jordan(2), Summand::Singer { j: d - 2, i: 1 }],
            None,
        ),
        "T3.L6" => (
            vec![Summand::Jordan(3), Summand::Singer { j: d - 3, i: 1 }],
            e1,
        ),
        "T3.L9" => (
            with_head(
                vec![Summand::SingerJordan { j: 2, i: 1, m: 2 }],
                singers(&b.parts[1..]),
            ),
            None,
        ),
        "T3.L10" => (with_head(jordans(&[3]), singers(&b.parts[1..])), None),
        "T3.L11" => (with_head(jordans(&[2]), singers(&b.parts[1..])), None),
        "T3.L13" => (
            with_head(
                vec![Summand::Singer {
                    j: b.parts[0],
                    i: 3,
                }],
                singers(&b.parts[1..]),
            ),
            None,
        ),
        "T3.L5" | "T3.L14" | "T3.L15" | "T3.L16" => {
            let head = match id {
                "T3.L15" => 2,
                "T3.L16" => 4,
                _ => 1,
            };
            let sub = b.sub.as_ref().expect("delegating line without sub-binding");
            let inner = shape(&sub.line, p, d - head, &sub.binding);
            (with_head(jordans(&[head]), inner.summands), e1)
        }
        "T3.L17" | "T6.L5" => (
            vec![Summand::Jordan(2), Summand::Singer { j: d - 2, i }],
            e1,
        ),
        "T4.L1" => (vec![Summand::SingerJordan { j: 1, i, m: 2 }], None),
        "T4.L2" | "T7.L7" => (vec![Summand::SingerJordan { j: 2, i: 1, m: 2 }], None),
        "T4.L3" => (jordans(&[p as usize]), e1),
        "T4.L4" => (jordans(&[d]), None),
        "T4.L5" => (jordans(&[2, 1]), None),
        "T4.L6" => (jordans(&[3, 1]), None),
        "T4.L7" | "T7.L14" => (jordans(&[4]), e1),
        "T4.L8" => (jordans(&[2, 2]), e1),
        "T4.L9" => (jordans(&[2, 1, 1]), e1),
        "T4.L10" | "T7.L11" => (jordans(&[2, 1]), e1),
        "T4.L11" | "T7.L10" => (jordans(&[1, 1, 1]), e1),
        "T5.L2" => (vec![Summand::SingerJordan { j: 1, i: 1, m: 2 }], None),
        "T6.L1" => (singers(&[b.a1.unwrap(), b.a2.unwrap()]), None),
        "T6.L3" => (
            vec![Summand::Jordan(3), Summand::Singer { j: d - 3, i: 1 }],
            e1,
        ),
        "T6.L4" => (with_head(jordans(&[1, 1]), singers(&[d - 2])), e1),
        "T6.L6" => (with_head(jordans(&[2, 1]), singers(&[d - 3])), e1),
        "T6.L7" => (
            with_head(
                jordans(&[b.a.unwrap()]),
                singers(&[b.a1.unwrap(), b.a2.unwrap()]),
            ),
            e1,
        ),
        "T6.L8" => (with_head(jordans(&[4]), singers(&[d - 4])), e1),
        "T7.L1" => (jordans(&[1, 1]), e1),
        "T7.L2" | "T7.L9" => (jordans(&[2]), e1),
        "T7.L3" | "T7.L12" => (jordans(&[3]), e1),
        "T7.L4" => (jordans(&[2, 1]), Some(3)),
        "T7.L5" => (jordans(&[3]), None),
        "T7.L6" => (jordans(&[3, 1]), e1),
        "T7.L8" => (jordans(&[5]), e1),
        "T7.L13" => (
            if b.variant == Some(0) {
                jordans(&[2, 2])
            } else {
                jordans(&[2, 1, 1])
            },
            e1,
        ),
        "T7.L15" => (jordans(&[4, 1]), e1),
        _ => unreachable!("unknown line {id}"),
    };
    Shape {
        summands,
        translation,
    }
}

fn prod_minus_one(p: u32, parts: &[usize]) -> u128 {
    parts.iter().map(|&j| pw(p, j) - 1).product()
}

/// The order column evaluated exactly; `None` for cycle lines, whose order
/// is the lcm of the cycle lengths.
pub fn order_formula(id: &str, p: u32, d: usize, b: &Binding) -> Option<u128> {
    let i = b.i.unwrap_or(1) as u128;
    let sub_order = || {
        let sub = b.sub.as_ref().expect("delegating line without sub-binding");
        let head = match id {
            "T3.L15" => 2,
            "T3.L16" => 4,
            _ => 1,
        };
        order_formula(&sub.line, p, d - head, &sub.binding).expect("sub-line order")
    };
    let pp = p as u128;
    Some(match id {
        "T2.L1" => (pw(p, d) - 1) / i,
        "T2.L2" => (pw(p, d) - pp) / i,
        "T2.L3" => pp,
        "T3.L1" => pw(3, d - 1) - 1,
        "T3.L2" => prod_minus_one(3, &b.parts) / 2,
        "T3.L3" | "T3.L4" => 3 * (pw(3, d - 2) - 1),
        "T3.L5" => 3 * sub_order(),
        "T3.L6" => 9 * (pw(3, d - 3) - 1),
        "T3.L7" | "T3.L8" => prod_minus_one(2, &b.parts),
        "T3.L9" => 6 * prod_minus_one(2, &b.parts[1..]),
        "T3.L10" => 4 * prod_minus_one(2, &b.parts[1..]),
        "T3.L11" => 2 * prod_minus_one(2, &b.parts[1..]),
        "T3.L12" | "T3.L13" => {
            let prod = prod_minus_one(2, &b.parts);
            debug_assert_eq!(prod % 3, 0);
            prod / 3
        }
        "T3.L14" => 2 * sub_order(),
        "T3.L15" => 4 * sub_order(),
        "T3.L16" => 8 * sub_order(),
        "T3.L17" => 4 * (pw(2, d - 2) - 1) / i,
        "T4.L1" => pp * (pp - 1) / i,
        "T4.L2" => 24,
        "T4.L3" => pp * pp,
        "T4.L4" => [2, 4, 4, 8][d - 2],
        "T4.L5" | "T4.L11" => 2,
        "T4.L6" | "T4.L8" | "T4.L9" | "T4.L10" => 4,
        "T4.L7" => 8,
        _ => return None,
    })
}

/// The cycle-length column as a sorted multiset.
pub fn cycles_formula(id: &str, p: u32, d: usize, b: &Binding) -> Option<Vec<u64>> {
    let i = b.i.unwrap_or(1);
    let pp = p as u64;
    let pd = |e: usize| pp.pow(e as u32);
    let repeat = |len: u64, n: u64| std::iter::repeat_n(len, n as usize);
    let mut out: Vec<u64> = match id {
        "T5.L1" => std::iter::once(1)
            .chain(repeat((pd(d) - 1) / i, i))
            .collect(),
        "T5.L2" => vec![1, pp - 1, pp * (pp - 1)],
        "T5.L3" => vec![pp],
        "T5.L4" => std::iter::once(pp)
            .chain(repeat(pp * (pd(d - 1) - 1) / i, i))
            .collect(),
        "T6.L1" | "T6.L7" => {
            let scale = 1u64 << b.a.unwrap_or(0);
            let (x, y) = ((1u64 << b.a1.unwrap()) - 1, (1u64 << b.a2.unwrap()) - 1);
            vec![scale, scale * x, scale * y, scale * x * y]
        }
        "T6.L2" => vec![1, 1, pd(d - 1) - 1, pd(d - 1) - 1],
        "T6.L3" | "T6.L6" => vec![4, 4, pd(d - 1) - 4, pd(d - 1) - 4],
        "T6.L4" => vec![2, 2, pd(d - 1) - 2, pd(d - 1) - 2],
        "T6.L5" => std::iter::once(4)
            .chain(repeat((pd(d) - 4) / i, i))
            .collect(),
        "T6.L8" => vec![8, 8, pd(d - 1) - 8, pd(d - 1) - 8],
        "T7.L1" => repeat(pp, pp).collect(),
        "T7.L2" => vec![3, 3, 3],
        "T7.L3" | "T7.L11" => vec![4, 4],
        "T7.L4" | "T7.L10" => vec![2, 2, 2, 2],
        "T7.L5" => vec![1, 1, 2, 4],
        "T7.L6" | "T7.L13" => vec![4, 4, 4, 4],
        "T7.L7" => vec![1, 3, 6, 6],
        "T7.L8" | "T7.L15" => vec![8, 8, 8, 8],
        "T7.L9" => vec![4],
        "T7.L12" => vec![9, 9, 9],
        "T7.L14" => vec![8, 8],
        _ => return None,
    };
    out.sort_unstable();
    Some(out)
}
