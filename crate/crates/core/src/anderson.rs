//! Anderson t-modules, t-motives and t-comotives: presentations in both
//! directions, the nilpotence and effectiveness conditions, and the full
//! analysis pipelines.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Field, FieldElem};
use crate::freemod::{ModElem, ModError, OrderSpec};
use crate::janet::{janet_algorithm, JanetError, JanetSet};
use crate::skew::{OrePoly, SkewPoly, TwistPair};
use crate::structure::{analyze, Analysis, SkewMatrix, StructureError};

#[derive(Debug, Clone, Error)]
pub enum AndersonError {
    #[error("dimension must be ≥ 1")]
    Empty,
    #[error("matrix must be square, got {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix entries have twist {got}, expected {expected}")]
    WrongTwist { expected: i32, got: i32 },
    #[error("not an Anderson t-module: {0}")]
    NotAnderson(String),
    #[error("not effective: {0}")]
    NotEffective(String),
    #[error(transparent)]
    Order(#[from] ModError),
    #[error(transparent)]
    Janet(#[from] JanetError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Which of the two dual objects attached to a t-module is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Motive,
    Comotive,
}

impl Side {
    /// Ring of the forward presentation (`ρ` is the Frobenius variable).
    pub fn forward_twist(self) -> TwistPair {
        match self {
            Side::Motive => TwistPair::TAU_T,
            Side::Comotive => TwistPair::SIGMA_T,
        }
    }

    /// Ring of the reverse presentation (`ρ = t`).
    pub fn reverse_twist(self) -> TwistPair {
        match self {
            Side::Motive => TwistPair::T_TAU,
            Side::Comotive => TwistPair::T_SIGMA,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Motive => "motive",
            Side::Comotive => "comotive",
        }
    }
}

/// An Anderson t-module `(G_a^d, φ)` with `φ_t = D` over `K⟨τ⟩` and
/// `ℓ(t) = θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TModuleData {
    field: Field,
    d: SkewMatrix,
}

impl TModuleData {
    /// Validates shape, twist and nilpotence of `D₀ − θ`.
    ///
    /// Checking `a = t` suffices: `φ` is an `F_q`-algebra map and `t`
    /// generates `F_q[t]`.
    pub fn new(field: &Field, d: SkewMatrix) -> Result<TModuleData, AndersonError> {
        check_square(&d, 1)?;
        let tm = TModuleData { field: field.clone(), d };
        if !tm.is_nilpotent() {
            return Err(AndersonError::NotAnderson("D₀ − θ·I is not nilpotent".into()));
        }
        Ok(tm)
    }

    /// A Drinfeld module `φ_t = θ + a_1 τ + … + a_r τ^r`.
    pub fn drinfeld(field: &Field, a: &[FieldElem]) -> Result<TModuleData, AndersonError> {
        let mut coeffs = vec![FieldElem::theta(field)];
        coeffs.extend(a.iter().cloned());
        TModuleData::new(field, SkewMatrix::from_rows(vec![vec![OrePoly::from_coeffs(field, 1, coeffs)]]))
    }

    /// The `d`-th tensor power of the Carlitz module.
    pub fn carlitz_power(field: &Field, d: usize) -> Result<TModuleData, AndersonError> {
        if d == 0 {
            return Err(AndersonError::Empty);
        }
        let th = OrePoly::constant(field, 1, FieldElem::theta(field));
        let mut m = SkewMatrix::zeros(field, 1, d, d);
        for i in 0..d {
            m.set(i, i, th.clone());
            if i + 1 < d {
                m.set(i, i + 1, OrePoly::one(field, 1));
            }
        }
        let tau = OrePoly::var(field, 1);
        m.set(d - 1, 0, m.get(d - 1, 0).add(&tau));
        TModuleData::new(field, m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d.rows()
    }

    /// The matrix of `φ_t`.
    pub fn matrix(&self) -> &SkewMatrix {
        &self.d
    }

    pub fn theta(&self) -> FieldElem {
        FieldElem::theta(&self.field)
    }

    /// `(D₀ − θ·I)^d = 0`.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.dim();
        let th = self.theta();
        let base: Vec<Vec<FieldElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.d.get(i, j).coeff(0);
                        if i == j {
                            c.sub(&th)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        let mut acc = base.clone();
        for _ in 1..n {
            acc = field_matmul(&self.field, &acc, &base);
        }
        acc.iter().flatten().all(FieldElem::is_zero)
    }
}

/// A t-motive or t-comotive given by `τ·e = Θ·e` (or `σ·e = Θ·e`) on a
/// `K[t]`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotiveData {
    field: Field,
    side: Side,
    theta: SkewMatrix,
}

impl MotiveData {
    /// `theta` has entries in `K[t]` (twist 0).
    pub fn new(field: &Field, side: Side, theta: SkewMatrix) -> Result<MotiveData, AndersonError> {
        check_square(&theta, 0)?;
        Ok(MotiveData { field: field.clone(), side, theta })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rank(&self) -> usize {
        self.theta.rows()
    }

    pub fn matrix(&self) -> &SkewMatrix {
        &self.theta
    }
}

fn check_square(m: &SkewMatrix, twist: i32) -> Result<(), AndersonError> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(AndersonError::Empty);
    }
    if m.rows() != m.cols() {
        return Err(AndersonError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if let Some(e) = (0..m.rows()).flat_map(|i| m.row(i)).find(|e| e.twist() != twist) {
        return Err(AndersonError::WrongTwist { expected: twist, got: e.twist() });
    }
    Ok(())
}

fn field_matmul(field: &Field, a: &[Vec<FieldElem>], b: &[Vec<FieldElem>]) -> Vec<Vec<FieldElem>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| row.iter().zip(b).fold(FieldElem::zero(field), |acc, (x, br)| acc.add(&x.mul(&br[j]))))
                .collect()
        })
        .collect()
}

/// `M ↦ star(Mᵀ)`: the matrix of `t` on the comotive basis, and back.
pub fn star_transpose(m: &SkewMatrix) -> SkewMatrix {
    m.transpose().map(OrePoly::star)
}

/// The relations `p_i = t·κ_i − Σ_j D_ij κ_j` (motive) or
/// `p_i = t·ǩ_i − Σ_j D*_ij ǩ_j` (comotive).
pub fn presentation_from_tmodule(tm: &TModuleData, side: Side) -> (Vec<ModElem>, TwistPair) {
    let tw = side.forward_twist();
    let f = &tm.field;
    let mat = match side {
        Side::Motive => tm.d.clone(),
        Side::Comotive => star_transpose(&tm.d),
    };
    let n = tm.dim();
    let t = SkewPoly::sigma(f, tw);
    let rels = (0..n)
        .map(|i| {
            let comps: Vec<SkewPoly> = (0..n)
                .map(|j| {
                    let e = mat.get(i, j).to_skew_rho(tw).neg();
                    if i == j {
                        e.add(&t)
                    } else {
                        e
                    }
                })
                .collect();
            ModElem::from_components(f, tw, &comps)
        })
        .collect();
    (rels, tw)
}

/// The relations `p_i = X·e_i − Σ_j Θ_ij e_j` with `X = τ` or `σ`, over the
/// ring where `t` is the first variable.
pub fn presentation_from_motive(m: &MotiveData) -> (Vec<ModElem>, TwistPair) {
    let tw = m.side.reverse_twist();
    let f = &m.field;
    let n = m.rank();
    let x = SkewPoly::sigma(f, tw);
    let rels = (0..n)
        .map(|i| {
            let comps: Vec<SkewPoly> = (0..n)
                .map(|j| {
                    let e = m.theta.get(i, j).to_skew_rho(tw).neg();
                    if i == j {
                        e.add(&x)
                    } else {
                        e
                    }
                })
                .collect();
            ModElem::from_components(f, tw, &comps)
        })
        .collect();
    (rels, tw)
}

/// A presentation together with its Janet basis and structural data.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub side: Side,
    pub presentation: Vec<ModElem>,
    pub janet: JanetSet,
    pub analysis: Analysis,
}

impl Pipeline {
    fn run(side: Side, presentation: Vec<ModElem>, order: &OrderSpec, max_rounds: usize) -> Result<Pipeline, AndersonError> {
        if order.len() != presentation.len() {
            return Err(ModError::BadOrder(format!("order has {} entries, need {}", order.len(), presentation.len())).into());
        }
        let janet = janet_algorithm(&presentation, order, max_rounds)?;
        let analysis = analyze(&janet)?;
        Ok(Pipeline { side, presentation, janet, analysis })
    }

    /// All `n_i` finite: abelian (motive), coabelian (comotive) or finitely
    /// generated over the operator ring (reverse).
    pub fn is_finite(&self) -> bool {
        self.analysis.structure.is_finitely_generated()
    }

    /// `Σ m_i`: the rank, or the dimension of the rationalization when not
    /// finite.
    pub fn rank(&self) -> Option<u32> {
        self.analysis.structure.rank
    }

    /// Largest perfection level among the basis and action coefficients.
    pub fn perfection_level(&self) -> u32 {
        self.analysis.free.as_ref().map_or(0, |fm| {
            let b = fm.basis.iter().map(ModElem::max_level).max().unwrap_or(0);
            b.max(fm.action.max_level())
        })
    }
}

/// Forward direction: the structure of the (co)motive of a t-module over
/// `K[t]`.
pub fn analyze_tmodule(tm: &TModuleData, side: Side, order: &OrderSpec, max_rounds: usize) -> Result<Pipeline, AndersonError> {
    let (rels, _) = presentation_from_tmodule(tm, side);
    Pipeline::run(side, rels, order, max_rounds)
}

/// Reverse direction: the pipeline run and, when the (co)motive is finitely
/// generated over `K⟨τ⟩` (or `K⟨σ⟩`), the reconstructed t-module.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub pipeline: Pipeline,
    pub tmodule: Option<TModuleData>,
}

impl Reconstruction {
    pub fn perfection_level(&self) -> u32 {
        let t = self.tmodule.as_ref().map_or(0, |tm| tm.d.max_level());
        t.max(self.pipeline.perfection_level())
    }
}

pub fn tmodule_from_motive(m: &MotiveData, order: &OrderSpec, max_rounds: usize) -> Result<Reconstruction, AndersonError> {
    let eff = check_effective(m);
    if !eff.effective {
        return Err(AndersonError::NotEffective(eff.diagnostic));
    }
    let (rels, _) = presentation_from_motive(m);
    let pipeline = Pipeline::run(m.side, rels, order, max_rounds)?;
    let Some(free) = pipeline.analysis.free.as_ref() else {
        return Ok(Reconstruction { pipeline, tmodule: None });
    };
    let d = match m.side {
        Side::Motive => free.action.clone(),
        Side::Comotive => star_transpose(&free.action),
    };
    if d.rows() == 0 {
        return Err(AndersonError::NotAnderson("the operator-ring basis is empty".into()));
    }
    let tm = TModuleData::new(&m.field, d)?;
    Ok(Reconstruction { pipeline, tmodule: Some(tm) })
}

/// Outcome of the effectiveness test `det Θ = c·(t−θ)^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effectiveness {
    pub effective: bool,
    pub det: OrePoly,
    /// The cofactor left after removing all `(t−θ)` factors.
    pub c: OrePoly,
    pub s: u32,
    pub diagnostic: String,
}

pub fn check_effective(m: &MotiveData) -> Effectiveness {
    let f = &m.field;
    let det = determinant(&m.theta);
    if det.is_zero() {
        return Effectiveness {
            effective: false,
            c: det.clone(),
            det,
            s: 0,
            diagnostic: "det Θ = 0, the action is not injective after rationalization".into(),
        };
    }
    let lin = OrePoly::from_coeffs(f, 0, vec![FieldElem::theta(f).neg(), FieldElem::one(f)]);
    let mut c = det.clone();
    let mut s = 0;
    loop {
        let (q, r) = c.right_divmod(&lin).expect("t − θ is nonzero");
        if !r.is_zero() {
            break;
        }
        c = q;
        s += 1;
    }
    let effective = c.degree() == Some(0);
    let diagnostic = if effective { String::new() } else { format!("det Θ = ({c})·(t − T)^{s} with a non-constant cofactor") };
    Effectiveness { effective, det, c, s, diagnostic }
}

/// Determinant over the commutative ring `K[t]` by fraction-free elimination.
pub fn determinant(m: &SkewMatrix) -> OrePoly {
    let n = m.rows();
    let mut a = m.to_rows();
    let field = a[0][0].field().clone();
    let mut negate = false;
    let mut prev = OrePoly::one(&field, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return OrePoly::zero(&field, 0);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                let (q, r) = num.right_divmod(&prev).expect("pivot is nonzero");
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::janet::DEFAULT_MAX_ROUNDS;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn tpoly(f: &Field, c: &[FieldElem]) -> OrePoly {
        OrePoly::from_coeffs(f, 0, c.to_vec())
    }

    fn example_64(f: &Field) -> TModuleData {
        let th = FieldElem::theta(f);
        let one = FieldElem::one(f);
        let z = FieldElem::zero(f);
        let p = |c: Vec<FieldElem>| OrePoly::from_coeffs(f, 1, c);
        TModuleData::new(
            f,
            SkewMatrix::from_rows(vec![
                vec![p(vec![th.clone(), z.clone(), one.clone()]), p(vec![z.clone(), z.clone(), z.clone(), one.clone()])],
                vec![p(vec![one.clone(), one.clone()]), p(vec![th.clone(), z.clone(), one.clone()])],
            ]),
        )
        .unwrap()
    }

    #[test]
    fn carlitz_square_presentation() {
        let f = f3();
        let tm = TModuleData::carlitz_power(&f, 2).unwrap();
        let (rels, _) = presentation_from_tmodule(&tm, Side::Motive);
        assert_eq!(rels[0].to_string(), "(t - T)*k1 - k2");
        assert_eq!(rels[1].to_string(), "-tau*k1 + (t - T)*k2");
    }

    #[test]
    fn nilpotence_rejects() {
        let f = f3();
        let m = SkewMatrix::from_rows(vec![vec![OrePoly::constant(&f, 1, FieldElem::one(&f))]]);
        assert!(matches!(TModuleData::new(&f, m), Err(AndersonError::NotAnderson(_))));
    }

    #[test]
    fn comotive_presentation_of_example_64() {
        let f = f3();
        let (rels, tw) = presentation_from_tmodule(&example_64(&f), Side::Comotive);
        assert_eq!(tw, TwistPair::SIGMA_T);
        assert_eq!(rels[0].to_string(), "(-sigma^2 + t - T)*k1 + (-sigma - 1)*k2");
        assert_eq!(rels[1].to_string(), "-sigma^3*k1 + (-sigma^2 + t - T)*k2");
    }

    #[test]
    fn star_transpose_is_involutive() {
        let f = f3();
        let d = example_64(&f).matrix().clone();
        assert_eq!(star_transpose(&star_transpose(&d)), d);
    }

    #[test]
    fn carlitz_powers_are_abelian() {
        let f = f3();
        for d in 1..=3 {
            let tm = TModuleData::carlitz_power(&f, d).unwrap();
            let p = analyze_tmodule(&tm, Side::Motive, &OrderSpec::identity(d), DEFAULT_MAX_ROUNDS).unwrap();
            assert!(p.is_finite());
            assert_eq!(p.rank(), Some(1));
            let act = &p.analysis.free.as_ref().unwrap().action;
            let lin = tpoly(&f, &[FieldElem::theta(&f).neg(), FieldElem::one(&f)]);
            let mut expect = OrePoly::one(&f, 0);
            for _ in 0..d {
                expect = expect.mul(&lin);
            }
            assert_eq!(act.get(0, 0), &expect);
        }
    }

    #[test]
    fn effectiveness() {
        let f = f3();
        let th = FieldElem::theta(&f);
        let one = FieldElem::one(&f);
        let lin = tpoly(&f, &[th.neg(), one.clone()]);
        let cube = lin.mul(&lin).mul(&lin);
        let m = MotiveData::new(&f, Side::Motive, SkewMatrix::from_rows(vec![vec![cube]])).unwrap();
        let e = check_effective(&m);
        assert!(e.effective);
        assert_eq!((e.s, e.c.is_one()), (3, true));
        let tri = SkewMatrix::from_rows(vec![vec![lin.clone(), OrePoly::one(&f, 0)], vec![OrePoly::zero(&f, 0), lin.clone()]]);
        let e = check_effective(&MotiveData::new(&f, Side::Motive, tri).unwrap());
        assert!(e.effective);
        assert_eq!(e.s, 2);
        let bad = tpoly(&f, &[th.mul(&th).neg(), one]);
        let e = check_effective(&MotiveData::new(&f, Side::Motive, SkewMatrix::from_rows(vec![vec![bad]])).unwrap());
        assert!(!e.effective);
        assert_eq!(e.s, 0);
    }

    #[test]
    fn carlitz_from_motive() {
        let f = f3();
        let th = FieldElem::theta(&f);
        let lin = tpoly(&f, &[th.neg(), FieldElem::one(&f)]);
        let m = MotiveData::new(&f, Side::Motive, SkewMatrix::from_rows(vec![vec![lin.clone()]])).unwrap();
        let r = tmodule_from_motive(&m, &OrderSpec::identity(1), DEFAULT_MAX_ROUNDS).unwrap();
        let tm = r.tmodule.unwrap();
        assert_eq!(tm.dim(), 1);
        assert_eq!(tm.matrix().get(0, 0).to_string(), "tau + T");
        let m2 = MotiveData::new(&f, Side::Motive, SkewMatrix::from_rows(vec![vec![lin.mul(&lin)]])).unwrap();
        let r2 = tmodule_from_motive(&m2, &OrderSpec::identity(1), DEFAULT_MAX_ROUNDS).unwrap();
        let tm2 = r2.tmodule.unwrap();
        assert_eq!(tm2.dim(), 2);
        let back = analyze_tmodule(&tm2, Side::Motive, &OrderSpec::identity(2), DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(back.rank(), Some(1));
    }

    #[test]
    fn example_64_both_sides() {
        let f = f3();
        let tm = example_64(&f);
        let ord = OrderSpec::from_one_based(&[2, 1]).unwrap();
        let p = analyze_tmodule(&tm, Side::Motive, &ord, DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(p.rank(), Some(3));
        let fm = p.analysis.free.as_ref().unwrap();
        assert_eq!(fm.basis.len(), 3);
        assert_eq!(fm.action.get(1, 0).to_string(), "1");
        assert_eq!(p.perfection_level(), 0);
        let c = analyze_tmodule(&tm, Side::Comotive, &OrderSpec::identity(2), DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(c.rank(), Some(3));
        let fc = c.analysis.free.as_ref().unwrap();
        assert_eq!(fc.basis.len(), 3);
        assert_eq!(c.perfection_level(), 1);
    }
}
