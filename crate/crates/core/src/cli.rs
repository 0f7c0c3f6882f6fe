//! The `tmotive` command line: `analyze`, `reverse`, `janet` and `verify`.

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::anderson::{
    analyze_tmodule, check_effective, presentation_from_motive, presentation_from_tmodule, tmodule_from_motive,
    AndersonError, Pipeline, Side,
};
use crate::diagram::{self, Cones};
use crate::freemod::OrderSpec;
use crate::input::{parse_input, DiagramFormat, DocError, Format, InputDoc, ObjectSpec};
use crate::janet::{janet_algorithm, JanetError, DEFAULT_MAX_ROUNDS};
use crate::oracle::{verify_janet, DegreeBox, OracleVerdict};
use crate::report::{analyze_report, janet_only_report, reverse_report, Report};
use crate::structure::analyze;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const INPUT: i32 = 2;
    /// Not abelian, not coabelian, or no associated t-module.
    pub const NOT_FINITE: i32 = 3;
    pub const NOT_EFFECTIVE: i32 = 4;
    pub const NOT_ANDERSON: i32 = 5;
    pub const VERIFY_FAILED: i32 = 6;
}

#[derive(Parser, Debug)]
#[command(name = "tmotive", version, about = "Janet bases for Anderson t-modules, t-motives and t-comotives")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Structure of the t-motive or t-comotive of a t-module.
    Analyze(RunArgs),
    /// Reconstruct a t-module from a t-motive or t-comotive.
    Reverse(RunArgs),
    /// Janet basis of a presentation.
    Janet(RunArgs),
    /// Check a stored JSON report with the brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Input document (TOML), or `-` for stdin.
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub side: Option<Side>,
    /// 1-based sheet permutation, greatest first, e.g. `2,1`.
    #[arg(long, value_delimiter = ',')]
    pub order: Option<Vec<usize>>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_enum)]
    pub diagram: Option<DiagramFormat>,
    #[arg(long)]
    pub max_rounds: Option<usize>,
    /// Oracle degree box `K,J`; implies `--oracle`.
    #[arg(long = "box", value_parser = parse_box)]
    pub bx: Option<DegreeBox>,
    /// Run the oracle and include its verdict.
    #[arg(long)]
    pub oracle: bool,
    /// Include the elapsed time (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A JSON report written by `--format json`.
    pub report: PathBuf,
    #[arg(long = "box", value_parser = parse_box)]
    pub bx: Option<DegreeBox>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn parse_box(s: &str) -> Result<DegreeBox, String> {
    let (k, j) = s.split_once(',').ok_or("expected K,J")?;
    let k = k.trim().parse().map_err(|_| format!("bad K in '{s}'"))?;
    let j = j.trim().parse().map_err(|_| format!("bad J in '{s}'"))?;
    Ok(DegreeBox::new(k, j))
}

/// Everything a run produces; `main` only prints it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Outcome {
        Outcome { stdout: String::new(), stderr: msg.into() + "\n", code }
    }
}

fn read_source(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Parses arguments and runs; never panics on bad input.
pub fn execute<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match cli.command {
        Cmd::Verify(v) => match read_source(&v.report) {
            Ok(text) => verify_text(&text, v.bx, v.format.unwrap_or_default()),
            Err(e) => Outcome::fail(exit::INPUT, e),
        },
        Cmd::Analyze(a) => with_doc(&a, run_analyze),
        Cmd::Reverse(a) => with_doc(&a, run_reverse),
        Cmd::Janet(a) => with_doc(&a, run_janet),
    }
}

fn with_doc(a: &RunArgs, f: impl FnOnce(&InputDoc, &RunArgs) -> Outcome) -> Outcome {
    let text = match read_source(&a.input) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(exit::INPUT, e),
    };
    match parse_input(&text) {
        Ok(doc) => f(&doc, a),
        Err(DocError::Input(e)) => Outcome::fail(exit::INPUT, format!("input error: {e}")),
        Err(DocError::NotAnderson(e)) => Outcome::fail(exit::NOT_ANDERSON, e),
    }
}

struct Settings {
    order: OrderSpec,
    side: Side,
    max_rounds: usize,
    format: Format,
    diagram: DiagramFormat,
    oracle: Option<Option<DegreeBox>>,
}

fn settings(doc: &InputDoc, a: &RunArgs) -> Result<Settings, Outcome> {
    let mut doc_order = doc.clone().options;
    if let Some(o) = &a.order {
        doc_order.order = Some(o.clone());
    }
    let probe = InputDoc { field: doc.field.clone(), object: doc.object.clone(), options: doc_order };
    let order = probe.order().map_err(|e| Outcome::fail(exit::INPUT, format!("input error: {e}")))?;
    let bx = a.bx.or(doc.options.bx);
    Ok(Settings {
        order,
        side: a.side.or(doc.options.side).unwrap_or(Side::Motive),
        max_rounds: a.max_rounds.or(doc.options.max_rounds).unwrap_or(DEFAULT_MAX_ROUNDS),
        format: a.format.or(doc.options.format).unwrap_or_default(),
        diagram: a.diagram.or(doc.options.diagram).unwrap_or_default(),
        oracle: (a.oracle || bx.is_some()).then_some(bx),
    })
}

fn pipeline_error(e: AndersonError) -> Outcome {
    match e {
        AndersonError::NotAnderson(_) => Outcome::fail(exit::NOT_ANDERSON, e.to_string()),
        AndersonError::NotEffective(_) => Outcome::fail(exit::NOT_EFFECTIVE, e.to_string()),
        AndersonError::Janet(JanetError::MaxRounds { rounds, .. }) => {
            Outcome::fail(exit::INTERNAL, format!("no Janet basis after {rounds} rounds; raise --max-rounds"))
        }
        AndersonError::Empty | AndersonError::NotSquare { .. } | AndersonError::WrongTwist { .. } | AndersonError::Order(_) => {
            Outcome::fail(exit::INPUT, format!("input error: {e}"))
        }
        other => Outcome::fail(exit::INTERNAL, format!("internal error: {other}")),
    }
}

/// Adds diagram, oracle and timing, renders, and picks the exit code.
fn finish(mut rep: Report, p: &Pipeline, s: &Settings, started: Instant, timing: bool, code: i32) -> Outcome {
    let mut code = code;
    if let Some(bx) = s.oracle {
        let bx = bx.unwrap_or_else(|| DegreeBox::for_janet(&p.janet));
        match verify_janet(&p.janet, &p.presentation, bx) {
            Ok(v) => {
                if !v.passed() && code == exit::OK {
                    code = exit::VERIFY_FAILED;
                }
                rep.oracle = Some(v);
            }
            Err(e) => return Outcome::fail(exit::INPUT, e.to_string()),
        }
    }
    let cones = Cones::of(&p.janet);
    rep.diagram = match s.diagram {
        DiagramFormat::Ascii => Some(diagram::ascii(&cones)),
        DiagramFormat::Svg => Some(diagram::svg(&cones)),
        DiagramFormat::None => None,
    };
    if timing {
        rep.elapsed_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    let stdout = match s.format {
        Format::Json => rep.to_json() + "\n",
        Format::Text => rep.to_text(),
    };
    Outcome { stdout, stderr: String::new(), code }
}

fn run_analyze(doc: &InputDoc, a: &RunArgs) -> Outcome {
    let started = Instant::now();
    let s = match settings(doc, a) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let ObjectSpec::TModule(tm) = &doc.object else {
        return Outcome::fail(exit::INPUT, format!("analyze needs a [tmodule] document, got [{}]", doc.object.kind()));
    };
    let p = match analyze_tmodule(tm, s.side, &s.order, s.max_rounds) {
        Ok(p) => p,
        Err(e) => return pipeline_error(e),
    };
    let rep = analyze_report(&doc.field, &p);
    let code = if p.is_finite() { exit::OK } else { exit::NOT_FINITE };
    finish(rep, &p, &s, started, a.timing, code)
}

fn run_reverse(doc: &InputDoc, a: &RunArgs) -> Outcome {
    let started = Instant::now();
    let s = match settings(doc, a) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let ObjectSpec::Motive(m) = &doc.object else {
        return Outcome::fail(exit::INPUT, format!("reverse needs a [motive] or [comotive] document, got [{}]", doc.object.kind()));
    };
    let eff = check_effective(m);
    if !eff.effective {
        return Outcome::fail(exit::NOT_EFFECTIVE, format!("not effective: {}", eff.diagnostic));
    }
    let r = match tmodule_from_motive(m, &s.order, s.max_rounds) {
        Ok(r) => r,
        Err(e) => return pipeline_error(e),
    };
    let rep = reverse_report(&doc.field, &r, &eff);
    let code = if r.tmodule.is_some() { exit::OK } else { exit::NOT_FINITE };
    finish(rep, &r.pipeline, &s, started, a.timing, code)
}

fn run_janet(doc: &InputDoc, a: &RunArgs) -> Outcome {
    let started = Instant::now();
    let s = match settings(doc, a) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let (rels, side) = match &doc.object {
        ObjectSpec::TModule(tm) => (presentation_from_tmodule(tm, s.side).0, Some(s.side)),
        ObjectSpec::Motive(m) => (presentation_from_motive(m).0, Some(m.side())),
        ObjectSpec::Presentation { relations, .. } => (relations.clone(), None),
    };
    let janet = match janet_algorithm(&rels, &s.order, s.max_rounds) {
        Ok(j) => j,
        Err(e) => return pipeline_error(e.into()),
    };
    let analysis = match analyze(&janet) {
        Ok(x) => x,
        Err(e) => return pipeline_error(e.into()),
    };
    let p = Pipeline { side: side.unwrap_or(Side::Motive), presentation: rels, janet, analysis };
    let rep = janet_only_report(&doc.field, doc.object.kind(), side, &p);
    finish(rep, &p, &s, started, a.timing, exit::OK)
}

/// Runs the oracle on a stored JSON report.
pub fn verify_text(text: &str, bx: Option<DegreeBox>, format: Format) -> Outcome {
    let rep: Report = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit::INPUT, format!("input error: report is not valid JSON: {e}")),
    };
    let restored = match rep.restore() {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit::INPUT, format!("input error: {e}")),
    };
    let bx = bx.or(rep.oracle.as_ref().map(|v| v.bx)).unwrap_or_else(|| DegreeBox::for_janet(&restored.janet));
    let v: OracleVerdict = match verify_janet(&restored.janet, &restored.gens, bx) {
        Ok(v) => v,
        Err(e) => return Outcome::fail(exit::INPUT, e.to_string()),
    };
    let code = if v.passed() { exit::OK } else { exit::VERIFY_FAILED };
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("verdicts serialize") + "\n",
        Format::Text => {
            let mut o = format!(
                "oracle box ({},{}): {}\n  membership {}\n  disjoint {}\n  coverage {}\n  staircase {} ({} of {} box monomials)\n",
                v.bx.k_max,
                v.bx.j_max,
                if v.passed() { "passed" } else { "FAILED" },
                v.membership,
                v.disjoint,
                v.coverage,
                v.staircase,
                v.staircase_count,
                bx.monomial_count(restored.janet.rank())
            );
            for f in &v.failures {
                o.push_str(&format!("  {f}\n"));
            }
            o
        }
    };
    Outcome { stdout, stderr: String::new(), code }
}
