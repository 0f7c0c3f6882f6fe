//! Input documents (TOML) with position-annotated errors.
//!
//! ```toml
//! [field]
//! p = 3            # or q = 9, optionally with n and irreducible
//!
//! [tmodule]        # or [motive] / [comotive] with Theta, or [presentation]
//! D = [["T + tau^2", "tau^3"], ["1 + tau", "T + tau^2"]]
//!
//! [options]
//! order = [2, 1]
//! side = "motive"
//! ```

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use crate::anderson::{AndersonError, MotiveData, Side, TModuleData};
use crate::coeff::Field;
use crate::freemod::{ModElem, OrderSpec};
use crate::oracle::DegreeBox;
use crate::parse::{parse_expr, ExprContext};
use crate::skew::{SkewPoly, TwistPair};
use crate::structure::SkewMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct InputError {
    pub message: String,
    /// 1-based line and column, when known.
    pub position: Option<(usize, usize)>,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((l, c)) => write!(f, "line {l}, column {c}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DiagramFormat {
    Ascii,
    Svg,
    #[default]
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub n: u32,
    /// Coefficients of the modulus, low to high; empty for prime fields.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub irreducible: Vec<u32>,
}

impl FieldSpec {
    pub fn of(field: &Field) -> FieldSpec {
        FieldSpec {
            p: field.characteristic(),
            n: field.degree(),
            irreducible: if field.degree() > 1 { field.modulus().to_vec() } else { Vec::new() },
        }
    }

    pub fn build(&self) -> Result<Field, String> {
        let r = if self.n <= 1 {
            Field::prime(self.p)
        } else if self.irreducible.is_empty() {
            Field::new(self.p, self.n)
        } else {
            Field::with_modulus(self.p, self.irreducible.clone())
        };
        r.map_err(|e| e.to_string())
    }
}

/// The mathematical object of a document.
#[derive(Clone, Debug)]
pub enum ObjectSpec {
    TModule(TModuleData),
    Motive(MotiveData),
    /// Raw relations over a ring with the given twists.
    Presentation { twist: TwistPair, relations: Vec<ModElem> },
}

impl ObjectSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ObjectSpec::TModule(_) => "tmodule",
            ObjectSpec::Motive(m) => m.side().name(),
            ObjectSpec::Presentation { .. } => "presentation",
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ObjectSpec::TModule(t) => t.dim(),
            ObjectSpec::Motive(m) => m.rank(),
            ObjectSpec::Presentation { relations, .. } => relations[0].rank(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// 1-based permutation, greatest sheet first.
    pub order: Option<Vec<usize>>,
    pub side: Option<Side>,
    pub max_rounds: Option<usize>,
    pub bx: Option<DegreeBox>,
    pub format: Option<Format>,
    pub diagram: Option<DiagramFormat>,
}

#[derive(Clone, Debug)]
pub struct InputDoc {
    pub field: Field,
    pub object: ObjectSpec,
    pub options: Options,
}

impl InputDoc {
    pub fn order(&self) -> Result<OrderSpec, InputError> {
        let d = self.object.rank();
        match &self.options.order {
            None => Ok(OrderSpec::identity(d)),
            Some(p) if p.len() != d => Err(InputError {
                message: format!("order has {} entries but the rank is {d}", p.len()),
                position: None,
            }),
            Some(p) => OrderSpec::from_one_based(p).map_err(|e| InputError { message: e.to_string(), position: None }),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    p: Option<u32>,
    n: Option<u32>,
    q: Option<u32>,
    irreducible: Option<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTModule {
    #[serde(rename = "D")]
    d: Spanned<Vec<Vec<Spanned<String>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMotive {
    #[serde(rename = "Theta")]
    theta: Spanned<Vec<Vec<Spanned<String>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    twist: [i32; 2],
    relations: Spanned<Vec<Vec<Spanned<String>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    order: Option<Vec<usize>>,
    side: Option<Side>,
    max_rounds: Option<usize>,
    #[serde(rename = "box")]
    bx: Option<[u32; 2]>,
    format: Option<Format>,
    diagram: Option<DiagramFormat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    field: Spanned<RawField>,
    tmodule: Option<Spanned<RawTModule>>,
    motive: Option<Spanned<RawMotive>>,
    comotive: Option<Spanned<RawMotive>>,
    presentation: Option<Spanned<RawPresentation>>,
    options: Option<RawOptions>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, col)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, message: impl Into<String>, span: Option<Range<usize>>) -> InputError {
        InputError { message: message.into(), position: span.map(|s| line_col(self.text, s.start)) }
    }

    /// Parses a string cell; error positions point inside the string.
    fn expr(&self, cell: &Spanned<String>, ctx: &ExprContext) -> Result<SkewPoly, InputError> {
        parse_expr(cell.get_ref(), ctx).map_err(|e| {
            let start = cell.span().start;
            let raw = &self.text[start.min(self.text.len())..];
            let quote = if raw.starts_with("\"\"\"") || raw.starts_with("'''") { 3 } else { 1 };
            let at = start + quote + e.offset;
            self.err(e.message, Some(at..at))
        })
    }

    fn square(&self, m: &Spanned<Vec<Vec<Spanned<String>>>>) -> Result<usize, InputError> {
        let rows = m.get_ref();
        if rows.is_empty() || rows.iter().all(Vec::is_empty) {
            return Err(self.err("dimension must be ≥ 1", Some(m.span())));
        }
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            let span = r.first().map_or(m.span(), |c| c.span());
            return Err(self.err(format!("matrix must be square: a row has {} entries, expected {n}", r.len()), Some(span)));
        }
        Ok(n)
    }

    fn matrix(&self, m: &Spanned<Vec<Vec<Spanned<String>>>>, ctx: &ExprContext, twist: i32) -> Result<SkewMatrix, InputError> {
        self.square(m)?;
        let mut rows = Vec::new();
        for r in m.get_ref() {
            let mut row = Vec::new();
            for cell in r {
                let p = self.expr(cell, ctx)?;
                let ore = p.as_rho_poly().map_err(|e| self.err(e.to_string(), Some(cell.span())))?;
                debug_assert_eq!(ore.twist(), twist);
                row.push(ore);
            }
            rows.push(row);
        }
        Ok(SkewMatrix::from_rows(rows))
    }
}

fn anderson_err(ctx: &Ctx<'_>, e: AndersonError, span: Range<usize>) -> InputError {
    ctx.err(e.to_string(), Some(span))
}

/// Parses and validates a whole document.
///
/// A t-module failing the nilpotence condition is reported as
/// [`DocError::NotAnderson`] so that callers can tell it apart from syntax
/// problems.
pub fn parse_input(text: &str) -> Result<InputDoc, DocError> {
    let raw: RawDoc = toml::from_str(text).map_err(|e| {
        DocError::Input(InputError { message: e.message().to_string(), position: e.span().map(|s| line_col(text, s.start)) })
    })?;
    let ctx = Ctx { text };
    let rf = raw.field.get_ref();
    let field_err = |m: String| DocError::Input(ctx.err(m, Some(raw.field.span())));
    let (p, n) = match (rf.p, rf.q, rf.n) {
        (Some(p), None, n) => (p, n.unwrap_or(1)),
        (p, Some(q), n) => {
            let (qp, qn) = prime_power(q).ok_or_else(|| field_err(format!("q = {q} is not a prime power")))?;
            if p.is_some_and(|p| p != qp) || n.is_some_and(|n| n != qn) {
                return Err(field_err(format!("q = {q} disagrees with p and n")));
            }
            (qp, qn)
        }
        (None, None, _) => return Err(field_err("field needs p or q".into())),
    };
    let spec = FieldSpec { p, n, irreducible: rf.irreducible.clone().unwrap_or_default() };
    let field = spec.build().map_err(field_err)?;

    let present = [raw.tmodule.is_some(), raw.motive.is_some(), raw.comotive.is_some(), raw.presentation.is_some()];
    if present.iter().filter(|&&b| b).count() != 1 {
        return Err(DocError::Input(ctx.err("exactly one of [tmodule], [motive], [comotive], [presentation] is required", None)));
    }
    let object = if let Some(t) = &raw.tmodule {
        let m = ctx.matrix(&t.get_ref().d, &ExprContext::tau_only(&field), 1)?;
        match TModuleData::new(&field, m) {
            Ok(tm) => ObjectSpec::TModule(tm),
            Err(e @ AndersonError::NotAnderson(_)) => return Err(DocError::NotAnderson(e.to_string())),
            Err(e) => return Err(DocError::Input(anderson_err(&ctx, e, t.span()))),
        }
    } else if let Some((m, side)) = raw
        .motive
        .as_ref()
        .map(|m| (m, Side::Motive))
        .or_else(|| raw.comotive.as_ref().map(|m| (m, Side::Comotive)))
    {
        let mat = ctx.matrix(&m.get_ref().theta, &ExprContext::t_only(&field), 0)?;
        ObjectSpec::Motive(MotiveData::new(&field, side, mat).map_err(|e| anderson_err(&ctx, e, m.span()))?)
    } else {
        let pres = raw.presentation.as_ref().unwrap();
        let rp = pres.get_ref();
        let twist = TwistPair::new(rp.twist[0], rp.twist[1]);
        let rows = rp.relations.get_ref();
        if rows.is_empty() || rows[0].is_empty() {
            return Err(DocError::Input(ctx.err("dimension must be ≥ 1", Some(rp.relations.span()))));
        }
        let d = rows[0].len();
        let ectx = ExprContext::ring(&field, twist);
        let mut relations = Vec::new();
        for r in rows {
            if r.len() != d {
                let span = r.first().map_or(rp.relations.span(), |c| c.span());
                return Err(DocError::Input(ctx.err(format!("relation has {} components, expected {d}", r.len()), Some(span))));
            }
            let comps = r.iter().map(|c| ctx.expr(c, &ectx)).collect::<Result<Vec<_>, _>>()?;
            relations.push(ModElem::from_components(&field, twist, &comps));
        }
        if relations.iter().all(ModElem::is_zero) {
            return Err(DocError::Input(ctx.err("all relations are zero", Some(rp.relations.span()))));
        }
        ObjectSpec::Presentation { twist, relations }
    };

    let options = match raw.options {
        None => Options::default(),
        Some(o) => Options {
            order: o.order,
            side: o.side,
            max_rounds: o.max_rounds,
            bx: o.bx.map(|[k, j]| DegreeBox::new(k, j)),
            format: o.format,
            diagram: o.diagram,
        },
    };
    let doc = InputDoc { field, object, options };
    doc.order().map_err(DocError::Input)?;
    Ok(doc)
}

/// Failure classes of [`parse_input`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("{0}")]
    NotAnderson(String),
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_tmodule_document() {
        let doc = parse_input(
            r#"
[field]
q = 3
[tmodule]
D = [["T + tau^2", "tau^3"], ["1 + tau", "T + tau^2"]]
[options]
order = [2, 1]
"#,
        )
        .unwrap();
        let ObjectSpec::TModule(tm) = &doc.object else { panic!() };
        assert_eq!(tm.dim(), 2);
        assert_eq!(tm.matrix().get(0, 1).to_string(), "tau^3");
        assert_eq!(doc.order().unwrap().perm(), &[1, 0]);
    }

    #[test]
    fn empty_matrix() {
        let e = parse_input("[field]\np = 3\n[tmodule]\nD = []\n").unwrap_err();
        assert!(e.to_string().contains("dimension must be ≥ 1"), "{e}");
    }

    #[test]
    fn wrong_variable_position() {
        let e = parse_input("[field]\np = 3\n[tmodule]\nD = [[\"T + t\"]]\n").unwrap_err();
        let DocError::Input(e) = e else { panic!() };
        assert_eq!(e.position, Some((4, 12)));
    }

    #[test]
    fn toml_syntax_error() {
        let e = parse_input("[field\np = 3\n").unwrap_err();
        let DocError::Input(e) = e else { panic!() };
        assert_eq!(e.position.map(|p| p.0), Some(1));
    }

    #[test]
    fn non_nilpotent() {
        let e = parse_input("[field]\np = 3\n[tmodule]\nD = [[\"1 + tau\"]]\n").unwrap_err();
        assert!(matches!(e, DocError::NotAnderson(_)));
    }

    #[test]
    fn field_from_q() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        let doc = parse_input("[field]\nq = 4\n[motive]\nTheta = [[\"t - T\"]]\n").unwrap();
        assert_eq!(doc.field.order(), 4);
    }
}
