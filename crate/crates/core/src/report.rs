//! Serializable reports and their text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::anderson::{Effectiveness, Pipeline, Reconstruction, Side};
use crate::coeff::Field;
use crate::freemod::{ModElem, OrderSpec};
use crate::input::FieldSpec;
use crate::janet::{ConePair, JanetSet, Mult};
use crate::oracle::OracleVerdict;
use crate::parse::{parse_expr, ExprContext};
use crate::skew::TwistPair;
use crate::structure::{Analysis, SkewMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Analyze,
    Reverse,
    Janet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    /// One expression per sheet.
    pub components: Vec<String>,
    /// Names of the multiplicative variables.
    pub multiplicative: Vec<String>,
    pub leading: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JanetReport {
    pub certified: bool,
    pub rounds: usize,
    pub pairs: Vec<PairReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TModuleReport {
    pub dim: usize,
    /// The matrix of `φ_t` over `K⟨τ⟩`.
    pub matrix: Vec<Vec<String>>,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivenessReport {
    pub effective: bool,
    pub det: String,
    pub cofactor: String,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Command,
    pub field: FieldSpec,
    pub object: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    pub twist: TwistPair,
    pub variables: [String; 2],
    /// 1-based, greatest sheet first.
    pub order: Vec<usize>,
    pub verdict: String,
    pub finite: bool,
    pub presentation: Vec<Vec<String>>,
    pub janet: JanetReport,
    pub n: Vec<Option<u32>>,
    pub m: Vec<Option<u32>>,
    pub rank: Option<u32>,
    pub generators: Option<Vec<String>>,
    pub relations: Option<Vec<Vec<String>>>,
    pub basis: Option<Vec<String>>,
    pub action: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tmodule: Option<TModuleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effectiveness: Option<EffectivenessReport>,
    pub perfection_level: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

fn components(e: &ModElem) -> Vec<String> {
    (0..e.rank()).map(|i| e.component(i).to_string()).collect()
}

fn mult_names(mu: Mult, twist: TwistPair) -> Vec<String> {
    let (r, s) = twist.names();
    let mut v = Vec::new();
    if mu.rho {
        v.push(r.to_string());
    }
    if mu.sigma {
        v.push(s.to_string());
    }
    v
}

pub fn janet_report(j: &JanetSet) -> JanetReport {
    JanetReport {
        certified: j.is_certified(),
        rounds: j.rounds(),
        pairs: j
            .pairs()
            .iter()
            .map(|p| PairReport {
                components: components(p.elem()),
                multiplicative: mult_names(p.mu(), j.twist()),
                leading: p.lm().render(j.twist()),
            })
            .collect(),
    }
}

fn matrix_strings(m: &SkewMatrix) -> Vec<Vec<String>> {
    m.render()
}

fn structure_fields(a: &Analysis, twist: TwistPair) -> StructureFields {
    let s = &a.structure;
    StructureFields {
        n: s.n.clone(),
        m: s.m.clone(),
        rank: s.rank,
        generators: s.w_gen.as_ref().map(|w| w.iter().map(|m| m.render(twist)).collect()),
        relations: s.relations.as_ref().map(matrix_strings),
        basis: a.free.as_ref().map(|f| f.basis.iter().map(ModElem::to_string).collect()),
        action: a.free.as_ref().map(|f| matrix_strings(&f.action)),
    }
}

struct StructureFields {
    n: Vec<Option<u32>>,
    m: Vec<Option<u32>>,
    rank: Option<u32>,
    generators: Option<Vec<String>>,
    relations: Option<Vec<Vec<String>>>,
    basis: Option<Vec<String>>,
    action: Option<Vec<Vec<String>>>,
}

fn base(command: Command, field: &Field, object: &str, side: Option<Side>, p: &Pipeline, verdict: String) -> Report {
    let twist = p.janet.twist();
    let (r, s) = twist.names();
    let sf = structure_fields(&p.analysis, twist);
    Report {
        command,
        field: FieldSpec::of(field),
        object: object.to_string(),
        side,
        twist,
        variables: [r.to_string(), s.to_string()],
        order: p.janet.order().perm().iter().map(|i| i + 1).collect(),
        verdict,
        finite: p.is_finite(),
        presentation: p.presentation.iter().map(components).collect(),
        janet: janet_report(&p.janet),
        n: sf.n,
        m: sf.m,
        rank: sf.rank,
        generators: sf.generators,
        relations: sf.relations,
        basis: sf.basis,
        action: sf.action,
        tmodule: None,
        effectiveness: None,
        perfection_level: p.perfection_level(),
        oracle: None,
        diagram: None,
        elapsed_ms: None,
    }
}

pub fn forward_verdict(side: Side, finite: bool) -> &'static str {
    match (side, finite) {
        (Side::Motive, true) => "abelian",
        (Side::Motive, false) => "not abelian",
        (Side::Comotive, true) => "coabelian",
        (Side::Comotive, false) => "not coabelian",
    }
}

pub fn analyze_report(field: &Field, p: &Pipeline) -> Report {
    let verdict = forward_verdict(p.side, p.is_finite()).to_string();
    base(Command::Analyze, field, "tmodule", Some(p.side), p, verdict)
}

pub fn effectiveness_report(e: &Effectiveness) -> EffectivenessReport {
    EffectivenessReport { effective: e.effective, det: e.det.to_string(), cofactor: e.c.to_string(), multiplicity: e.s }
}

pub fn reverse_report(field: &Field, r: &Reconstruction, eff: &Effectiveness) -> Report {
    let p = &r.pipeline;
    let level = r.perfection_level();
    let verdict = match (&r.tmodule, level) {
        (None, _) => "no associated t-module",
        (Some(_), 0) => "t-module",
        (Some(_), _) => "t-module over the perfection",
    };
    let mut rep = base(Command::Reverse, field, p.side.name(), Some(p.side), p, verdict.to_string());
    rep.perfection_level = level;
    rep.effectiveness = Some(effectiveness_report(eff));
    rep.tmodule = r.tmodule.as_ref().map(|tm| TModuleReport {
        dim: tm.dim(),
        matrix: matrix_strings(tm.matrix()),
        nilpotent: tm.is_nilpotent(),
    });
    rep
}

pub fn janet_only_report(field: &Field, object: &str, side: Option<Side>, p: &Pipeline) -> Report {
    let verdict = if p.is_finite() { "finitely generated" } else { "not finitely generated" };
    base(Command::Janet, field, object, side, p, verdict.to_string())
}

/// Errors rebuilding objects from a stored report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("report is inconsistent: {0}")]
pub struct ReportError(pub String);

/// The presentation and Janet set stored in a report, parsed back.
pub struct Restored {
    pub field: Field,
    pub gens: Vec<ModElem>,
    pub janet: JanetSet,
}

impl Report {
    pub fn restore(&self) -> Result<Restored, ReportError> {
        let field = self.field.build().map_err(ReportError)?;
        let ctx = ExprContext::ring(&field, self.twist);
        let elem = |comps: &[String]| -> Result<ModElem, ReportError> {
            let polys = comps
                .iter()
                .map(|c| parse_expr(c, &ctx).map_err(|e| ReportError(format!("'{c}': {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ModElem::from_components(&field, self.twist, &polys))
        };
        let gens = self.presentation.iter().map(|c| elem(c)).collect::<Result<Vec<_>, _>>()?;
        let d = gens.first().map(ModElem::rank).ok_or_else(|| ReportError("empty presentation".into()))?;
        let order = OrderSpec::from_one_based(&self.order).map_err(|e| ReportError(e.to_string()))?;
        let (r, s) = self.twist.names();
        let mut pairs = Vec::new();
        for p in &self.janet.pairs {
            let e = elem(&p.components)?;
            if e.is_zero() {
                return Err(ReportError("zero element in the Janet set".into()));
            }
            let mu = Mult { rho: p.multiplicative.iter().any(|v| v == r), sigma: p.multiplicative.iter().any(|v| v == s) };
            pairs.push(ConePair::new(e, mu, &order));
        }
        let janet = JanetSet::from_pairs(&field, self.twist, d, order, pairs);
        Ok(Restored { field, gens, janet })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let fs = &self.field;
        let q = fs.p.pow(fs.n);
        let _ = writeln!(o, "field: F_{q}(T)");
        let side = match (self.object.as_str(), self.side) {
            ("tmodule", Some(s)) => format!(" ({})", s.name()),
            _ => String::new(),
        };
        let _ = writeln!(o, "object: {}{side}", self.object);
        let _ = writeln!(o, "ring: K{{{},{}}}, order {:?}", self.variables[0], self.variables[1], self.order);
        let _ = writeln!(o, "verdict: {}", self.verdict);
        if let Some(e) = &self.effectiveness {
            let _ = writeln!(o, "det: {} (multiplicity of t - T: {})", e.det, e.multiplicity);
        }
        let _ = writeln!(o, "presentation:");
        for (i, p) in self.presentation.iter().enumerate() {
            let _ = writeln!(o, "  p{} = {}", i + 1, join_components(p));
        }
        let _ = writeln!(o, "janet basis ({} rounds):", self.janet.rounds);
        for (i, p) in self.janet.pairs.iter().enumerate() {
            let _ = writeln!(o, "  {:>2}. [{}] lm {}: {}", i + 1, p.multiplicative.join(","), p.leading, join_components(&p.components));
        }
        let inf = |v: &[Option<u32>]| v.iter().map(|x| x.map_or("inf".to_string(), |n| n.to_string())).collect::<Vec<_>>().join(", ");
        let _ = writeln!(o, "n = ({}), m = ({})", inf(&self.n), inf(&self.m));
        let _ = match (self.rank, self.finite) {
            (Some(r), true) => writeln!(o, "rank: {r}"),
            (Some(r), false) => writeln!(o, "rational dimension: {r}"),
            (None, _) => writeln!(o, "rank: infinite"),
        };
        if let Some(g) = &self.generators {
            let _ = writeln!(o, "generators: {}", g.join(", "));
        }
        if let Some(b) = &self.basis {
            let _ = writeln!(o, "basis:");
            for (i, e) in b.iter().enumerate() {
                let _ = writeln!(o, "  e{} = {e}", i + 1);
            }
        }
        if let Some(a) = &self.action {
            let _ = writeln!(o, "action of {} on the basis:", self.variables[0]);
            for (i, row) in a.iter().enumerate() {
                let _ = writeln!(o, "  {}(e{}) = {}", self.variables[0], i + 1, combination(row, "e"));
            }
        }
        if let Some(t) = &self.tmodule {
            let _ = writeln!(o, "t-module of dimension {}:", t.dim);
            for row in &t.matrix {
                let _ = writeln!(o, "  [{}]", row.join(", "));
            }
        }
        if self.perfection_level > 0 {
            let _ = writeln!(o, "perfection level: {}", self.perfection_level);
        }
        if let Some(v) = &self.oracle {
            let _ = writeln!(
                o,
                "oracle box ({},{}): membership {}, disjoint {}, coverage {}, staircase {}",
                v.bx.k_max,
                v.bx.j_max,
                ok(v.membership),
                ok(v.disjoint),
                ok(v.coverage),
                ok(v.staircase)
            );
            for f in &v.failures {
                let _ = writeln!(o, "  {f}");
            }
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(o, "elapsed: {ms:.1} ms");
        }
        if let Some(d) = &self.diagram {
            o.push('\n');
            o.push_str(d);
        }
        o
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn join_components(c: &[String]) -> String {
    combination(c, "k")
}

fn combination(c: &[String], basis: &str) -> String {
    let parts: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, s)| s.as_str() != "0")
        .map(|(i, s)| {
            let b = format!("{basis}{}", i + 1);
            match s.as_str() {
                "1" => b,
                "-1" => format!("-{b}"),
                _ if crate::skew::needs_parens(s) => format!("({s})*{b}"),
                _ => format!("{s}*{b}"),
            }
        })
        .collect();
    crate::coeff::join_signed(&parts)
}
