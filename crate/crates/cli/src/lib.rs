//! `afftool`: orders, cycle structures and table classification of affine
//! maps of F_p^d, plus the exhaustive verification drivers.

pub mod expr;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use afftool_core::affine::{affine_order, cycle_structure_capped, AffineMap};
use afftool_core::arith;
use afftool_core::matrix::{format_vector, parse_vector};
use afftool_core::orbit::MAX_CYCLE_SPACE;
use afftool_core::tables::{self, Binding, Kind, MatchResult, SubBinding};
use afftool_core::verify::{
    self, ClassFilter, LemmaOptions, ShardSpec, TranslationScope, VerificationReport, VerifyOptions,
};
use afftool_core::Error;

pub use expr::{parse_element, Expr, ExprKind, Span};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::CapExceeded { .. }) => EXIT_CAP,
            CliError::Core(Error::Internal(_)) => EXIT_VIOLATIONS,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Orders,
    Cycles,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "afftool",
    version,
    about = "Orders and cycle structure of affine maps of F_p^d"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Field characteristic.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Dimension; checked against the element when both are given.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Linear part as an element expression, e.g. "J1+S2^3".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Translation: "0", "eN" or a comma list.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for verify commands (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Run one shard `i/n` of a verify command.
    #[arg(long, global = true)]
    pub shard: Option<String>,
    /// Run a verify command as `n` shards and merge them.
    #[arg(long, global = true)]
    pub shards: Option<usize>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Cap on p^d for cycle enumeration and verification (also read from
    /// AFFTOOL_MAX_SPACE).
    #[arg(long, global = true)]
    pub max_space: Option<u128>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order of t_v h.
    Order,
    /// Cycle lengths of t_v h on F_p^d.
    Cycles,
    /// Table lines realized by t_v h.
    Classify {
        #[arg(long, value_enum, default_value_t = KindArg::All)]
        kind: KindArg,
    },
    /// Representative element of a table line.
    Construct {
        #[arg(long)]
        line: String,
        /// Parameters, e.g. "i=3", "parts=2:2:5:3", "a=1,a1=2,a2=3",
        /// "sub=T3.L8[parts=3:2]", or a JSON object.
        #[arg(long, default_value = "")]
        bind: String,
    },
    /// All table lines and bindings at (p, d).
    Catalog {
        #[arg(long, value_enum, default_value_t = KindArg::Orders)]
        kind: KindArg,
    },
    /// Exhaustive check of the large-order classification.
    VerifyOrders(VerifyArgs),
    /// Exhaustive check of the few-cycles classification.
    VerifyCycles(VerifyArgs),
    /// Lemma property suites on seeded samples and class representatives.
    Properties {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Run only these suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Largest element orders of GL_d(p) and SL_d(p).
    Meo,
    /// Merge shard reports written with --format json.
    Merge { files: Vec<PathBuf> },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Sweep semisimple classes only.
    #[arg(long)]
    pub semisimple: bool,
    /// Use every translation in V rather than those in U.
    #[arg(long)]
    pub all_translations: bool,
}

/// Runs the tool on `args` (program name first), writing to `out` and
/// `err`, and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    let g = &cli.global;
    let (text, code) = match &cli.command {
        Command::Order => order(g)?,
        Command::Cycles => cycles(g)?,
        Command::Classify { kind } => classify(g, *kind)?,
        Command::Construct { line, bind } => construct(g, line, bind)?,
        Command::Catalog { kind } => catalog(g, *kind)?,
        Command::VerifyOrders(a) => run_verify(g, Kind::Orders, a)?,
        Command::VerifyCycles(a) => run_verify(g, Kind::Cycles, a)?,
        Command::Properties { samples, suites } => properties(g, *samples, suites)?,
        Command::Meo => meo(g)?,
        Command::Merge { files } => merge_files(g, files)?,
    };
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(code)
}

fn prime(g: &Global) -> CliResult<u32> {
    let p =
        g.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
    Ok(arith::check_prime(p)?)
}

fn dim(g: &Global) -> CliResult<usize> {
    g.d.ok_or_else(|| CliError::Usage("--d is required".into()))
}

fn max_space(g: &Global) -> CliResult<Option<u128>> {
    if let Some(m) = g.max_space {
        return Ok(Some(m));
    }
    match std::env::var("AFFTOOL_MAX_SPACE") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("AFFTOOL_MAX_SPACE=`{v}` is not a number"))),
        Err(_) => Ok(None),
    }
}

/// The element given by --p, --h, --t (and --d when present).
pub fn element(g: &Global) -> CliResult<(AffineMap, Expr)> {
    let p = prime(g)?;
    let text =
        g.h.as_deref()
            .ok_or_else(|| CliError::Usage("--h is required".into()))?;
    let e = parse_element(text)?;
    let h = e.eval(p)?;
    if let Some(d) = g.d {
        if d != h.dim() {
            return Err(CliError::Usage(format!(
                "--d {d} but `{text}` has dimension {}",
                h.dim()
            )));
        }
    }
    let v = parse_vector(g.t.as_deref().unwrap_or("0"), p, h.dim())?;
    Ok((AffineMap::new(v, h)?, e))
}

fn json_text(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn order(g: &Global) -> CliResult<(String, i32)> {
    let (map, e) = element(g)?;
    let (order, profile) = affine_order(&map)?;
    let text = match g.format {
        Format::Text => order.to_string(),
        Format::Json => json_text(&json!({
            "p": map.p(), "d": map.d(), "element": e.to_string(),
            "translation": format_vector(map.v()), "order": order, "profile": profile,
        })),
        Format::Tsv => {
            let mut s = format!("order\t{order}\n");
            for (k, v) in [
                ("k", profile.k),
                ("delta", profile.delta as u64),
                ("k_p", profile.k_p),
            ] {
                let _ = writeln!(s, "{k}\t{v}");
            }
            let _ = writeln!(s, "a\t{}\nc\t{}\nt\t{}", profile.a, profile.c, profile.t);
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn cycles(g: &Global) -> CliResult<(String, i32)> {
    let (map, e) = element(g)?;
    let cap = max_space(g)?.unwrap_or(MAX_CYCLE_SPACE);
    let cs = cycle_structure_capped(&map, cap)?;
    let text = match g.format {
        Format::Text => cs.to_string(),
        Format::Json => json_text(&json!({
            "p": map.p(), "d": map.d(), "element": e.to_string(),
            "translation": format_vector(map.v()), "cycles": cs.lengths, "count": cs.count, "order": cs.lcm(),
        })),
        Format::Tsv => {
            let mut s = String::from("length\tmultiplicity\n");
            let mut i = 0;
            while i < cs.lengths.len() {
                let l = cs.lengths[i];
                let n = cs.lengths[i..].iter().take_while(|&&x| x == l).count();
                let _ = writeln!(s, "{l}\t{n}");
                i += n;
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn kinds(k: KindArg) -> Vec<Kind> {
    match k {
        KindArg::Orders => vec![Kind::Orders],
        KindArg::Cycles => vec![Kind::Cycles],
        KindArg::All => vec![Kind::Orders, Kind::Cycles],
    }
}

fn match_lines(m: &MatchResult) -> String {
    if m.matched.is_empty() {
        return "none".into();
    }
    m.matched
        .iter()
        .map(|x| {
            if x.binding == Binding::default() {
                x.line.to_string()
            } else {
                format!("{} {}", x.line, x.binding)
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn classify(g: &Global, kind: KindArg) -> CliResult<(String, i32)> {
    let (map, e) = element(g)?;
    let mut results: Vec<MatchResult> = Vec::new();
    for k in kinds(kind) {
        if k == Kind::Cycles && kind == KindArg::All {
            // Cycle tables only make sense where orbits can be walked.
            let fits = arith::checked_pow(map.p() as u64, map.d() as u32)
                .is_some_and(|s| s <= MAX_CYCLE_SPACE);
            if !fits {
                continue;
            }
        }
        results.push(tables::match_element(&map, k)?);
    }
    let text = match g.format {
        Format::Json => {
            let mut doc = json!({
                "p": map.p(), "d": map.d(), "element": e.to_string(), "translation": format_vector(map.v()),
            });
            for r in &results {
                doc[r.kind.as_str()] = serde_json::to_value(r).expect("serializable");
            }
            json_text(&doc)
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(r) = results.first() {
                let _ = writeln!(
                    s,
                    "order {} (4|g| >= p^d: {})",
                    r.order,
                    if r.threshold_met { "yes" } else { "no" }
                );
            }
            for r in &results {
                if let Some(c) = &r.cycles {
                    let _ = writeln!(s, "cycles {} ({} cycles)", c, c.count);
                }
                let _ = writeln!(s, "{}: {}", r.kind, match_lines(r));
            }
            s
        }
        Format::Tsv => {
            let mut s = String::from("kind\tline\tbinding\torder\tthreshold_met\n");
            for r in &results {
                for m in &r.matched {
                    let _ = writeln!(
                        s,
                        "{}\t{}\t{}\t{}\t{}",
                        r.kind, m.line, m.binding, r.order, r.threshold_met
                    );
                }
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

/// Splits on commas outside brackets.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Parses `--bind` text: `key=value` pairs or a JSON object.
pub fn parse_binding(text: &str) -> CliResult<Binding> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| CliError::Usage(format!("binding JSON: {e}")));
    }
    let mut b = Binding::default();
    if t.is_empty() {
        return Ok(b);
    }
    let bad = |what: &str| CliError::Usage(format!("bad binding item `{what}`"));
    for item in split_top(t) {
        let (key, value) = item.split_once('=').ok_or_else(|| bad(item))?;
        let value = value.trim();
        let num = || value.parse::<usize>().map_err(|_| bad(item));
        match key.trim() {
            "i" => b.i = Some(value.parse().map_err(|_| bad(item))?),
            "parts" => {
                b.parts = value
                    .split(':')
                    .map(|x| x.trim().parse().map_err(|_| bad(item)))
                    .collect::<CliResult<_>>()?
            }
            "a" => b.a = Some(num()?),
            "a1" => b.a1 = Some(num()?),
            "a2" => b.a2 = Some(num()?),
            "variant" => b.variant = Some(value.parse().map_err(|_| bad(item))?),
            "sub" => {
                let (line, rest) = value.split_once('[').unwrap_or((value, "]"));
                let inner = rest.strip_suffix(']').ok_or_else(|| bad(item))?;
                b.sub = Some(Box::new(SubBinding {
                    line: line.trim().to_string(),
                    binding: parse_binding(inner)?,
                }));
            }
            _ => return Err(bad(item)),
        }
    }
    Ok(b)
}

fn construct(g: &Global, line: &str, bind: &str) -> CliResult<(String, i32)> {
    let p = prime(g)?;
    let d = dim(g)?;
    let binding = parse_binding(bind)?;
    let map = tables::instantiate(line, p, d, &binding)?;
    let entry = tables::catalog(p, d, tables::line_info(line)?.kind)?
        .into_iter()
        .find(|e| e.line == line && e.binding == binding)
        .ok_or_else(|| {
            CliError::Usage(format!("{line} has no binding `{binding}` at p={p}, d={d}"))
        })?;
    let text = match g.format {
        Format::Json => json_text(&json!({
            "line": line, "binding": binding, "p": p, "d": d,
            "element": entry.shape.expr(), "translation": entry.shape.translation_text(),
            "order": entry.order, "cycles": entry.cycles, "matrix": map.h().to_string(),
        })),
        Format::Text => {
            let mut s = format!(
                "{line}: {} t={} order {}",
                entry.shape.expr(),
                entry.shape.translation_text(),
                entry.order
            );
            if let Some(c) = &entry.cycles {
                let c: Vec<String> = c.iter().map(u64::to_string).collect();
                let _ = write!(s, " cycles {}", c.join(","));
            }
            s
        }
        Format::Tsv => format!(
            "line\telement\ttranslation\torder\n{line}\t{}\t{}\t{}",
            entry.shape.expr(),
            entry.shape.translation_text(),
            entry.order
        ),
    };
    Ok((text, EXIT_OK))
}

fn catalog(g: &Global, kind: KindArg) -> CliResult<(String, i32)> {
    let p = prime(g)?;
    let d = dim(g)?;
    let exports = kinds(kind)
        .into_iter()
        .map(|k| tables::export(p, d, k))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match g.format {
        Format::Json if exports.len() == 1 => json_text(&exports[0]),
        Format::Json => json_text(&exports),
        Format::Text | Format::Tsv => {
            let sep = if g.format == Format::Tsv { "\t" } else { " " };
            let mut s = String::new();
            for ex in &exports {
                for l in &ex.lines {
                    let mut row = vec![
                        l.line.to_string(),
                        l.binding.to_string(),
                        l.element.clone(),
                        format!("t={}", l.translation),
                        format!("order={}", l.order),
                    ];
                    if let Some(c) = &l.cycles {
                        row.push(format!(
                            "cycles={}",
                            c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                        ));
                    }
                    row.retain(|x| !x.is_empty());
                    let _ = writeln!(s, "{}", row.join(sep));
                }
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn report_text(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => r.to_json(),
        Format::Text => {
            let mut s = format!(
                "{} p={} d={}: {} classes, {} elements, {} violations, {} consistency issues, {} informative\n",
                r.kind,
                r.p,
                r.d,
                r.classes_checked,
                r.elements_checked,
                r.violations.len(),
                r.consistency.len(),
                r.informative.len()
            );
            for v in &r.violations {
                let at = v.line.clone().unwrap_or_else(|| v.element.clone());
                let _ = writeln!(
                    s,
                    "violation {:?}: {at} v={} order {}",
                    v.kind,
                    v.v.as_deref().unwrap_or("0"),
                    v.order
                );
            }
            for c in &r.consistency {
                let _ = writeln!(s, "consistency: {} ({})", c.element, c.message);
            }
            for i in &r.informative {
                let _ = writeln!(
                    s,
                    "informative: {} {} = {} order {} < {}/4",
                    i.line, i.binding, i.element, i.order, i.space
                );
            }
            let lines: Vec<String> = r
                .matched_lines
                .iter()
                .map(|(k, n)| format!("{k}:{n}"))
                .collect();
            let _ = writeln!(s, "matched {}", lines.join(" "));
            s
        }
        Format::Tsv => {
            let mut s = String::from("kind\tclass\tv\tline\torder\n");
            for v in &r.violations {
                let _ = writeln!(
                    s,
                    "{:?}\t{}\t{}\t{}\t{}",
                    v.kind,
                    v.element,
                    v.v.as_deref().unwrap_or(""),
                    v.line.as_deref().unwrap_or(""),
                    v.order
                );
            }
            s
        }
    }
}

fn run_verify(g: &Global, kind: Kind, a: &VerifyArgs) -> CliResult<(String, i32)> {
    let p = prime(g)?;
    let d = dim(g)?;
    let name = kind.as_str();
    let base = VerifyOptions {
        shard: None,
        workers: g.workers,
        filter: if a.semisimple {
            ClassFilter::Semisimple
        } else {
            ClassFilter::All
        },
        scope: if a.all_translations {
            TranslationScope::Full
        } else {
            TranslationScope::PrimaryOnly
        },
        max_space: max_space(g)?,
    };
    let report = match (&g.shard, g.shards) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--shard and --shards are exclusive".into()))
        }
        (Some(s), None) => {
            let shard: ShardSpec = s.parse()?;
            verify::verify(
                name,
                p,
                d,
                &VerifyOptions {
                    shard: Some(shard),
                    ..base
                },
            )?
        }
        (None, Some(n)) => {
            let parts = (0..n)
                .map(|i| {
                    verify::verify(
                        name,
                        p,
                        d,
                        &VerifyOptions {
                            shard: Some(ShardSpec::new(i, n)?),
                            ..base.clone()
                        },
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            verify::merge(parts)?
        }
        (None, None) => verify::verify(name, p, d, &base)?,
    };
    let code = if report.is_clean() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    };
    Ok((report_text(&report, g.format), code))
}

fn properties(g: &Global, samples: usize, suites: &[String]) -> CliResult<(String, i32)> {
    let p = prime(g)?;
    let d = dim(g)?;
    let opts = LemmaOptions {
        samples,
        seed: g.seed,
        suites: suites.to_vec(),
        ..LemmaOptions::default()
    };
    let r = verify::verify_lemmas_with(
        p,
        d,
        &opts,
        &afftool_core::affine::geometric_sum_strategies(),
    )?;
    let text = match g.format {
        Format::Json => json_text(&r),
        Format::Text | Format::Tsv => {
            let mut s = String::new();
            for x in &r.suites {
                let status = if x.passed() { "PASS" } else { "FAIL" };
                if g.format == Format::Tsv {
                    let _ = writeln!(
                        s,
                        "{}\t{status}\t{}\t{}\t{}",
                        x.name, x.checked, x.skipped, x.failures
                    );
                } else {
                    let _ = writeln!(
                        s,
                        "{status} {} checked={} skipped={} failures={}",
                        x.name, x.checked, x.skipped, x.failures
                    );
                    if let Some(w) = &x.witness {
                        let _ = writeln!(s, "  witness: {w}");
                    }
                }
            }
            s
        }
    };
    Ok((text, if r.passed() { EXIT_OK } else { EXIT_VIOLATIONS }))
}

fn meo(g: &Global) -> CliResult<(String, i32)> {
    let p = prime(g)?;
    let d = dim(g)?;
    let r = verify::meo_scan(p, d)?;
    let text = match g.format {
        Format::Json => json_text(&r),
        Format::Text => format!(
            "meo GL_{d}({p}) = {}, meo SL_{d}({p}) = {}",
            r.meo_gl, r.meo_sl
        ),
        Format::Tsv => format!("meo_gl\t{}\nmeo_sl\t{}", r.meo_gl, r.meo_sl),
    };
    Ok((text, EXIT_OK))
}

fn merge_files(g: &Global, files: &[PathBuf]) -> CliResult<(String, i32)> {
    let mut reports = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f)?;
        let r: VerificationReport = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!("{}: not a verification report: {e}", f.display()))
        })?;
        reports.push(r);
    }
    let merged = verify::merge(reports)?;
    let code = if merged.is_clean() {
        EXIT_OK
    } else {
        EXIT_VIOLATIONS
    };
    Ok((report_text(&merged, g.format), code))
}

/// Strips the `timing` field from a JSON report, for comparisons.
pub fn without_timing(report_json: &str) -> Option<Value> {
    let mut v: Value = serde_json::from_str(report_json).ok()?;
    v.as_object_mut()?.remove("timing");
    Some(v)
}
