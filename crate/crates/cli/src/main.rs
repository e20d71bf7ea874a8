//! `qsh`: JSON reports on the transvection algebras of so*(2n+4).
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! input cannot be parsed or validated.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsh_tila::catalog::{all_tags, expected_report, make_case, ExpectedReport, Tag};
use qsh_tila::classify::{classify_scan, Grid};
use qsh_tila::rational::{self, Rational};
use qsh_tila::sostar::SkewForm;
use qsh_tila::tila::{build_tila, verification_record, BlockLayout, TauElement, Tila, VerificationRecord};
use qsh_tila::torsion::example_report;
use qsh_tila::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "qsh", version, about = "Exact checks for quaternionic skew-Hermitian transvection algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print a line-per-field summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the algebra of a catalog case or a generator file and check every axiom.
    Verify(CaseArgs),
    /// Scan Jordan-block normal forms and match survivors to the catalog.
    Classify {
        #[arg(long)]
        n: usize,
        /// Largest numerator and denominator of grid values.
        #[arg(long, default_value_t = 4)]
        grid_height: u32,
        /// Closed range of grid values, as `lo,hi`.
        #[arg(long, default_value = "-2,2", allow_hyphen_values = true)]
        grid_range: String,
    },
    /// Torsion functional and generated subalgebra of the non-symmetric example.
    Torsion {
        #[arg(long)]
        n: usize,
    },
    /// Every catalog case up to `--n` with its expected invariants.
    CatalogList {
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// The Killing form of a catalog case or generator file.
    Killing(CaseArgs),
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// A catalog tag such as `ns-even:2,1,0` or `m1:3`, or a family name used with --n/--p/--q.
    tag: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// JSON file `{ "tau": ..., "form": ..., "layout": ... }`.
    #[arg(long, conflicts_with = "tag")]
    input: Option<PathBuf>,
}

#[derive(Deserialize)]
struct CaseFile {
    tau: TauElement,
    form: SkewForm,
    #[serde(default)]
    layout: Option<BlockLayout>,
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// A check failed; the report is still printed: exit 1.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Case {
    tag: Option<Tag>,
    tau: TauElement,
    form: SkewForm,
    layout: Option<BlockLayout>,
    expected: Option<ExpectedReport>,
}

fn resolve(args: &CaseArgs) -> Result<Case, Failure> {
    if let Some(path) = &args.input {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let file: CaseFile = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        if file.tau.n() != file.form.n() {
            return Err(Error::MixedDimension { expected: file.form.n(), found: file.tau.n() }.into());
        }
        return Ok(Case { tag: None, tau: file.tau, form: file.form, layout: file.layout, expected: None });
    }
    let raw = args.tag.as_deref().ok_or_else(|| Failure::Usage("give a tag or --input".into()))?;
    let text = if raw.contains(':') {
        raw.to_string()
    } else {
        let n = args.n.ok_or_else(|| Failure::Usage(format!("{raw} needs --n")))?;
        match (args.p, args.q) {
            (Some(p), Some(q)) => format!("{raw}:{n},{p},{q}"),
            (None, None) => format!("{raw}:{n}"),
            _ => return Err(Failure::Usage("--p and --q go together".into())),
        }
    };
    let tag: Tag = text.parse()?;
    let c = make_case(&tag)?;
    Ok(Case { tag: Some(tag), tau: c.tau, form: c.form, layout: c.layout, expected: Some(c.expected) })
}

fn build(case: &Case) -> Result<Tila, Failure> {
    build_tila(&case.tau, &case.form).map_err(|e| match e {
        Error::SymtestFailed { .. } | Error::NotContained | Error::NotAnIdeal => Failure::Check(json!({
            "tag": case.tag.map(|t| t.to_string()),
            "pass": false,
            "failure": e.to_string(),
        })),
        other => other.into(),
    })
}

fn matches_expected(rec: &VerificationRecord, e: &ExpectedReport) -> bool {
    rec.dim_g == e.dim_g
        && rec.dim_l == e.dim_l
        && rec.levi.radical_dim == e.radical_dim
        && rec.levi.semisimple_dim == e.semisimple_dim
        && (e.r_qh_dim.is_none() || rec.levi.r_qh_dim == e.r_qh_dim)
        && (e.r_deg_dim.is_none() || rec.levi.r_deg_dim == e.r_deg_dim)
        && rec.killing.degenerate == e.trace_form_degenerate
        && e.radical_abelian.is_none_or(|a| a == rec.levi.radical_abelian)
}

fn cmd_verify(args: &CaseArgs) -> Result<Value, Failure> {
    let case = resolve(args)?;
    let t = build(&case)?;
    let rec = verification_record(&t, case.layout.as_ref())?;
    let matches = case.expected.as_ref().map(|e| matches_expected(&rec, e));
    let pass = rec.all_pass() && matches.unwrap_or(true);
    let report = json!({
        "tag": case.tag.map(|t| t.to_string()),
        "pass": pass,
        "record": rec,
        "expected": case.expected,
        "matches_expected": matches,
    });
    if pass {
        Ok(report)
    } else {
        Err(Failure::Check(report))
    }
}

fn cmd_killing(args: &CaseArgs) -> Result<Value, Failure> {
    let case = resolve(args)?;
    let t = build(&case)?;
    let b = t.killing_form();
    let rank = qsh_tila::subspace::linalg::rank(b);
    let matrix: Vec<Vec<String>> = b.iter().map(|row| row.iter().map(rational::format).collect()).collect();
    Ok(json!({
        "tag": case.tag.map(|t| t.to_string()),
        "dim_g": t.dim_g(),
        "labels": t.presentation().labels(),
        "rank": rank,
        "degenerate": rank < t.dim_g(),
        "matrix": matrix,
    }))
}

fn parse_range(s: &str) -> Result<(Rational, Rational), Failure> {
    let (lo, hi) = s.split_once(',').ok_or_else(|| Failure::Usage(format!("grid range {s:?} is not lo,hi")))?;
    Ok((rational::parse(lo.trim())?, rational::parse(hi.trim())?))
}

fn cmd_classify(n: usize, height: u32, range: &str) -> Result<Value, Failure> {
    let (lo, hi) = parse_range(range)?;
    let grid = Grid::new(height, lo, hi)?;
    let report = classify_scan(n, &grid)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if report.unmatched.is_empty() && report.excluded_survivors.is_empty() {
        Ok(value)
    } else {
        Err(Failure::Check(value))
    }
}

fn cmd_torsion(n: usize) -> Result<Value, Failure> {
    let report = example_report(n)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if report.on_line {
        Ok(value)
    } else {
        Err(Failure::Check(value))
    }
}

#[derive(Serialize)]
struct CatalogEntry {
    tag: Tag,
    expected: ExpectedReport,
}

fn cmd_catalog_list(n: usize) -> Result<Value, Failure> {
    if n < 2 {
        return Err(Failure::Usage(format!("n must be at least 2, got {n}")));
    }
    let entries = all_tags(n)
        .into_iter()
        .map(|tag| Ok(CatalogEntry { tag, expected: expected_report(&tag)? }))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(serde_json::to_value(entries).expect("catalog serializes"))
}

/// `path: value` lines for every leaf, with arrays of scalars kept on one line.
fn summarize(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                summarize(x, &p, out);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                summarize(x, &format!("{path}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{path}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, v: &Value) -> Result<(), String> {
    let text = if cli.pretty {
        let mut s = String::new();
        summarize(v, "", &mut s);
        s
    } else {
        let mut s = serde_json::to_string(v).expect("json values serialize");
        s.push('\n');
        s
    };
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Killing(args) => cmd_killing(args),
        Command::Classify { n, grid_height, grid_range } => cmd_classify(*n, *grid_height, grid_range),
        Command::Torsion { n } => cmd_torsion(*n),
        Command::CatalogList { n } => cmd_catalog_list(*n),
    };
    let (value, code) = match result {
        Ok(v) => (v, 0),
        Err(Failure::Check(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("qsh: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("qsh: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
