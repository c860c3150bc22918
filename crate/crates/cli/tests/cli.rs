use std::process::Command;

use afftool::{
    parse_binding, parse_element, run, Expr, ExprKind, EXIT_CAP, EXIT_OK, EXIT_USAGE,
    EXIT_VIOLATIONS,
};
use afftool_core::affine::AffineMap;
use afftool_core::matrix::parse_vector;
use afftool_core::tables::{self, Binding, Kind};
use proptest::prelude::*;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("afftool").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_afftool"))
        .args(args)
        .output()
        .unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

#[test]
fn order_of_translated_j5() {
    let (code, out, _) = call(&["order", "--p", "2", "--d", "5", "--h", "J5", "--t", "e1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "8");
}

#[test]
fn cycles_of_translated_j2_mod_3() {
    let (code, out, _) = call(&["cycles", "--p", "3", "--d", "2", "--h", "J2", "--t", "e1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "3,3,3");
}

#[test]
fn classify_finds_the_small_t3_l12_element() {
    let (code, out, _) = call(&[
        "classify",
        "--p",
        "2",
        "--d",
        "12",
        "--h",
        "S2+[0,1;1,1]+S3+S5",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let orders = &v["orders"];
    assert_eq!(orders["order"], 651);
    assert_eq!(orders["threshold_met"], false);
    let lines: Vec<&str> = orders["matched"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m["line"].as_str().unwrap())
        .collect();
    assert_eq!(lines, ["T3.L12"]);
    assert_eq!(
        orders["matched"][0]["binding"]["parts"],
        serde_json::json!([2, 2, 5, 3])
    );
}

#[test]
fn syntax_errors_report_the_offset() {
    let (code, _, err) = call(&["order", "--p", "2", "--h", "J2+"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("offset 3"), "{err}");
}

#[test]
fn exit_codes_from_the_binary() {
    assert_eq!(
        binary(&["order", "--p", "2", "--h", "J5", "--t", "e1"]).0,
        EXIT_OK
    );
    // Bad flags, bad p, dimension mismatches.
    assert_eq!(binary(&["order", "--p", "2", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(binary(&["order", "--p", "4", "--h", "J2"]).0, EXIT_USAGE);
    assert_eq!(
        binary(&["order", "--p", "2", "--d", "3", "--h", "J2"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        binary(&["order", "--p", "2", "--h", "J2", "--t", "1,0,1"]).0,
        EXIT_USAGE
    );
    let (code, _, err) = binary(&["cycles", "--p", "2", "--h", "S30"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("cap"), "{err}");
    assert_eq!(
        binary(&["cycles", "--p", "2", "--h", "S8", "--max-space", "100"]).0,
        EXIT_CAP
    );
    let (code, _, _) = binary(&["verify-orders", "--p", "3", "--d", "4"]);
    assert_eq!(code, EXIT_VIOLATIONS);
    assert_eq!(
        binary(&["verify-orders", "--p", "2", "--d", "4"]).0,
        EXIT_OK
    );
    assert_eq!(
        binary(&["verify-orders", "--p", "2", "--d", "4", "--shard", "2/2"]).0,
        EXIT_USAGE
    );
}

#[test]
fn env_cap_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_afftool"))
        .args(["cycles", "--p", "2", "--h", "S8"])
        .env("AFFTOOL_MAX_SPACE", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_CAP));
}

#[test]
fn construct_prints_the_table_element() {
    let (code, out, _) = call(&[
        "construct",
        "--p",
        "2",
        "--d",
        "5",
        "--line",
        "T7.L8",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 8);
    assert_eq!(v["cycles"], serde_json::json!([8, 8, 8, 8]));
    let (code, out, _) = call(&[
        "construct",
        "--p",
        "2",
        "--d",
        "6",
        "--line",
        "T6.L7",
        "--bind",
        "a=1,a1=2,a2=3",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("cycles 2,6,14,42"), "{out}");
    let (code, _, _) = call(&["construct", "--p", "2", "--d", "5", "--line", "T9.L1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn binding_syntax() {
    assert_eq!(parse_binding("").unwrap(), Binding::default());
    let b = parse_binding("parts=2:2:5:3").unwrap();
    assert_eq!(b.parts, vec![2, 2, 5, 3]);
    let b = parse_binding("sub=T3.L7[parts=1:2]").unwrap();
    let sub = b.sub.unwrap();
    assert_eq!(sub.line, "T3.L7");
    assert_eq!(sub.binding.parts, vec![1, 2]);
    let json = parse_binding(r#"{"a":1,"a1":2,"a2":3}"#).unwrap();
    assert_eq!(json, parse_binding("a=1,a1=2,a2=3").unwrap());
    assert!(parse_binding("q=1").is_err());
}

#[test]
fn sharded_runs_match_the_whole_run() {
    let whole = call(&[
        "verify-cycles",
        "--p",
        "3",
        "--d",
        "3",
        "--format",
        "json",
        "--workers",
        "1",
    ])
    .1;
    let split = call(&[
        "verify-cycles",
        "--p",
        "3",
        "--d",
        "3",
        "--format",
        "json",
        "--workers",
        "3",
        "--shards",
        "4",
    ])
    .1;
    assert_eq!(
        afftool::without_timing(&whole),
        afftool::without_timing(&split)
    );
}

#[test]
fn merge_command_joins_shard_files() {
    let dir = std::env::temp_dir().join(format!("afftool-merge-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut files = Vec::new();
    for i in 0..3 {
        let shard = format!("{i}/3");
        let (_, out, _) = call(&[
            "verify-orders",
            "--p",
            "2",
            "--d",
            "5",
            "--format",
            "json",
            "--shard",
            &shard,
        ]);
        let f = dir.join(format!("s{i}.json"));
        std::fs::write(&f, out).unwrap();
        files.push(f.to_string_lossy().into_owned());
    }
    let mut args = vec!["merge", "--format", "json"];
    args.extend(files.iter().map(String::as_str));
    let (code, merged, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    let whole = call(&["verify-orders", "--p", "2", "--d", "5", "--format", "json"]).1;
    assert_eq!(
        afftool::without_timing(&merged),
        afftool::without_timing(&whole)
    );
    // The same shard twice overlaps.
    let (code, _, err) = call(&["merge", &files[0], &files[0]]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("shard"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

/// (p, h, t, a line the element belongs to by construction).
const CORPUS: &[(u32, &str, &str, &str)] = &[
    (2, "S4", "0", "T2.L1"),
    (3, "J1+S2", "e1", "T2.L2"),
    (5, "J1", "e1", "T2.L3"),
    (3, "J1+S2", "0", "T3.L1"),
    (3, "S2+S1", "0", "T3.L2"),
    (3, "S1*J2+S2", "0", "T3.L3"),
    (3, "J2+S2", "0", "T3.L4"),
    (3, "J1+J1+S2", "e1", "T3.L5"),
    (3, "J3+S2", "e1", "T3.L6"),
    (2, "S1+S2", "0", "T3.L7"),
    (2, "S3+S2", "0", "T3.L8"),
    (2, "S2*J2", "0", "T3.L9"),
    (2, "J3+S2", "0", "T3.L10"),
    (2, "J2+S2", "0", "T3.L11"),
    (2, "S2+[0,1;1,1]+S3+S5", "0", "T3.L12"),
    (2, "S4^3+S3", "0", "T3.L13"),
    (2, "J1+S1+S2", "e1", "T3.L14"),
    (2, "J2+S1+S2", "e1", "T3.L15"),
    (2, "J4+S1", "e1", "T3.L16"),
    (2, "J2+S2", "e1", "T3.L17"),
    (3, "S1*J2", "0", "T4.L1"),
    (3, "S2*J2", "0", "T4.L2"),
    (3, "J3", "e1", "T4.L3"),
    (2, "J3+J1", "0", "T4.L6"),
    (2, "J2+J1+J1", "e1", "T4.L9"),
    (5, "S2", "0", "T5.L1"),
    (3, "S1*J2", "0", "T5.L2"),
    (3, "J1", "e1", "T5.L3"),
    (2, "S2+S3", "0", "T6.L1"),
    (2, "J3+S2", "e1", "T6.L3"),
    (2, "J1+S2+S3", "e1", "T6.L7"),
    (2, "J4+S2", "e1", "T6.L8"),
    (3, "J2", "e1", "T7.L2"),
    (2, "J2+J1", "e3", "T7.L4"),
    (2, "S2*J2", "0", "T7.L7"),
    (2, "J5", "e1", "T7.L8"),
    (3, "J3", "e1", "T7.L12"),
];

#[test]
fn classify_agrees_with_the_matcher_on_the_corpus() {
    let mut tables_seen = std::collections::BTreeSet::new();
    for &(p, h, t, line) in CORPUS {
        let ps = p.to_string();
        let (code, out, err) = call(&[
            "classify", "--p", &ps, "--h", h, "--t", t, "--format", "json",
        ]);
        assert_eq!(code, EXIT_OK, "{h}: {err}");
        let doc: Value = serde_json::from_str(&out).unwrap();

        let m = parse_element(h).unwrap().eval(p).unwrap();
        let g = AffineMap::new(parse_vector(t, p, m.rows()).unwrap(), m).unwrap();
        let kind = tables::line_info(line).unwrap().kind;
        for k in [Kind::Orders, Kind::Cycles] {
            if doc.get(k.as_str()).is_none() {
                continue;
            }
            let expected = serde_json::to_value(tables::match_element(&g, k).unwrap()).unwrap();
            assert_eq!(doc[k.as_str()], expected, "{h} t={t} p={p} {k}");
        }
        let matched: Vec<&str> = doc[kind.as_str()]["matched"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["line"].as_str().unwrap())
            .collect();
        assert!(
            matched.contains(&line),
            "p={p} {h} t={t}: expected {line}, got {matched:?}"
        );
        tables_seen.insert(&line[..2]);
    }
    assert!(CORPUS.len() >= 30);
    assert_eq!(
        tables_seen.into_iter().collect::<Vec<_>>(),
        ["T2", "T3", "T4", "T5", "T6", "T7"]
    );
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (1usize..6).prop_map(|n| Expr::new(ExprKind::Jordan(n))),
        (1usize..6).prop_map(|n| Expr::new(ExprKind::Identity(n))),
        (1usize..6, proptest::option::of(0u64..50))
            .prop_map(|(j, i)| Expr::new(ExprKind::Singer { j, i })),
        (1usize..4)
            .prop_flat_map(|n| proptest::collection::vec(
                proptest::collection::vec(-9i64..10, n),
                n
            ))
            .prop_map(|rows| Expr::new(ExprKind::Literal(rows))),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::new(ExprKind::Sum(Box::new(a), Box::new(b)))),
            (inner.clone(), inner)
                .prop_map(|(a, b)| Expr::new(ExprKind::Tensor(Box::new(a), Box::new(b)))),
        ]
    })
}

proptest! {
    #[test]
    fn parse_print_round_trip(e in arb_expr()) {
        let text = e.to_string();
        let back = parse_element(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn whitespace_is_insignificant(e in arb_expr()) {
        let spaced: String = e.to_string().chars().flat_map(|c| [c, ' ']).collect();
        // Digits must stay together, so only pad around operators and brackets.
        let spaced: String = spaced
            .split(' ')
            .collect::<Vec<_>>()
            .join("")
            .replace('+', " + ")
            .replace('*', " * ")
            .replace('(', "( ")
            .replace(')', " )");
        prop_assert_eq!(parse_element(&spaced).unwrap(), e);
    }
}
