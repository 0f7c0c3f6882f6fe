//! Brute-force checks by linear algebra over `K` on degree boxes.
//!
//! Nothing here calls the Janet machinery: submodules are truncated to the
//! `K`-span of monomial shifts of their generators and row reduced.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::FieldElem;
use crate::freemod::{ModElem, Monomial, OrderSpec};
use crate::janet::{JanetSet, Mult};

pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("box ({k_max},{j_max}) on {d} sheets has {count} monomials, over the budget of {budget}; use a smaller box")]
    Budget { k_max: u32, j_max: u32, d: usize, count: usize, budget: usize },
    #[error("no generators")]
    Empty,
}

/// Monomials `ρ^k σ^j κ_i` with `k ≤ k_max`, `j ≤ j_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBox {
    pub k_max: u32,
    pub j_max: u32,
}

impl DegreeBox {
    pub fn new(k_max: u32, j_max: u32) -> DegreeBox {
        DegreeBox { k_max, j_max }
    }

    /// `(max n_i + 2, max(4, max σ-degree + 2))`, with `n_i` replaced by the
    /// largest leading `ρ`-degree on sheets where it is infinite.
    pub fn for_janet(j: &JanetSet) -> DegreeBox {
        let k = j.pairs().iter().map(|p| p.lm().k).max().unwrap_or(0);
        let s = j.pairs().iter().map(|p| p.lm().j).max().unwrap_or(0);
        DegreeBox { k_max: k + 2, j_max: (s + 2).max(4) }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.k <= self.k_max && m.j <= self.j_max
    }

    pub fn monomial_count(&self, d: usize) -> usize {
        d * (self.k_max as usize + 1) * (self.j_max as usize + 1)
    }

    /// All box monomials, descending in `ord`.
    pub fn monomials(&self, d: usize, ord: &OrderSpec) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.monomial_count(d));
        for &sheet in ord.perm() {
            for k in (0..=self.k_max).rev() {
                for j in (0..=self.j_max).rev() {
                    out.push(Monomial::new(sheet, k, j));
                }
            }
        }
        debug_assert_eq!(out.len(), self.monomial_count(d));
        out
    }
}

type Col = Reverse<(usize, u32, u32)>;

/// A row-echelon basis of a `K`-subspace of the free module, pivots at
/// leading monomials.
#[derive(Clone, Debug)]
pub struct Echelon {
    order: OrderSpec,
    rows: BTreeMap<Col, BTreeMap<Col, FieldElem>>,
}

impl Echelon {
    pub fn new(order: &OrderSpec) -> Echelon {
        Echelon { order: order.clone(), rows: BTreeMap::new() }
    }

    fn to_row(&self, f: &ModElem) -> BTreeMap<Col, FieldElem> {
        f.terms().map(|(m, c)| (Reverse(self.order.key(m)), c.clone())).collect()
    }

    fn reduce_row(&self, mut row: BTreeMap<Col, FieldElem>) -> BTreeMap<Col, FieldElem> {
        let mut done: BTreeMap<Col, FieldElem> = BTreeMap::new();
        while let Some((col, c)) = row.pop_first() {
            match self.rows.get(&col) {
                Some(p) => {
                    for (pc, pv) in p.iter().skip(1) {
                        let v = row.get(pc).cloned().unwrap_or_else(|| FieldElem::zero(c.field())).sub(&c.mul(pv));
                        if v.is_zero() {
                            row.remove(pc);
                        } else {
                            row.insert(*pc, v);
                        }
                    }
                }
                None => {
                    done.insert(col, c);
                }
            }
        }
        done
    }

    /// Adds a vector; returns `false` if it was already in the span.
    pub fn insert(&mut self, f: &ModElem) -> bool {
        let row = self.reduce_row(self.to_row(f));
        let Some((&lead, lc)) = row.first_key_value() else { return false };
        let inv = lc.inv().expect("nonzero pivot");
        let row = row.into_iter().map(|(k, v)| (k, v.mul(&inv))).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `f` modulo the span; supported on non-pivot monomials.
    pub fn reduce(&self, f: &ModElem) -> ModElem {
        let rest = self.reduce_row(self.to_row(f));
        let mut out = ModElem::zero(f.field(), f.twist(), f.rank());
        for (Reverse(key), c) in rest {
            out.add_term(self.order.from_key(key), &c);
        }
        out
    }

    pub fn contains(&self, f: &ModElem) -> bool {
        self.reduce(f).is_zero()
    }

    /// Leading monomials of the span (the pivots), descending.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.rows.keys().map(|Reverse(k)| self.order.from_key(*k)).collect()
    }

    /// Back-substitutes so every pivot column is zero in the other rows.
    pub fn into_rref(mut self) -> Echelon {
        let keys: Vec<Col> = self.rows.keys().rev().copied().collect();
        for col in keys {
            let pivot = self.rows[&col].clone();
            for (_, row) in self.rows.range_mut(..col) {
                if let Some(c) = row.get(&col).cloned() {
                    for (pc, pv) in &pivot {
                        let v = row.get(pc).cloned().unwrap_or_else(|| FieldElem::zero(c.field())).sub(&c.mul(pv));
                        if v.is_zero() {
                            row.remove(pc);
                        } else {
                            row.insert(*pc, v);
                        }
                    }
                }
            }
        }
        self
    }

    /// Rows as module elements, descending by pivot.
    pub fn rows(&self, proto: &ModElem) -> Vec<ModElem> {
        self.rows
            .values()
            .map(|r| {
                let mut e = ModElem::zero(proto.field(), proto.twist(), proto.rank());
                for (Reverse(k), c) in r {
                    e.add_term(self.order.from_key(*k), c);
                }
                e
            })
            .collect()
    }
}

/// The `K`-span of all shifts `ρ^a σ^b · g` whose leading monomial lies in
/// the box. Supports may leave the box.
pub fn truncated_submodule(gens: &[ModElem], bx: DegreeBox, ord: &OrderSpec) -> Result<Echelon, OracleError> {
    truncated_submodule_with_budget(gens, bx, ord, DEFAULT_BUDGET)
}

pub fn truncated_submodule_with_budget(
    gens: &[ModElem],
    bx: DegreeBox,
    ord: &OrderSpec,
    budget: usize,
) -> Result<Echelon, OracleError> {
    let d = gens.first().ok_or(OracleError::Empty)?.rank();
    let count = bx.monomial_count(d);
    if count > budget {
        return Err(OracleError::Budget { k_max: bx.k_max, j_max: bx.j_max, d, count, budget });
    }
    let mut ech = Echelon::new(ord);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let lm = g.leading(ord).expect("nonzero").0;
        if !bx.contains(&lm) {
            continue;
        }
        for a in 0..=bx.k_max - lm.k {
            for b in 0..=bx.j_max - lm.j {
                ech.insert(&g.shift_left(a, b));
            }
        }
    }
    Ok(ech)
}

fn cone_contains(lm: &Monomial, mu: Mult, m: &Monomial) -> bool {
    lm.sheet == m.sheet
        && (if mu.rho { m.k >= lm.k } else { m.k == lm.k })
        && (if mu.sigma { m.j >= lm.j } else { m.j == lm.j })
}

/// Outcome of the four box checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    #[serde(rename = "box")]
    pub bx: DegreeBox,
    /// `J ⊆ ⟨gens⟩` and `gens ⊆ ⟨J⟩` inside the box.
    pub membership: bool,
    pub disjoint: bool,
    /// Cone union equals the leading monomials of the truncated submodule.
    pub coverage: bool,
    /// Staircase monomials are independent modulo the truncated submodule
    /// and their number is the box count minus the leading monomials.
    pub staircase: bool,
    pub quotient_dim: usize,
    pub staircase_count: usize,
    pub failures: Vec<String>,
}

impl OracleVerdict {
    pub fn passed(&self) -> bool {
        self.membership && self.disjoint && self.coverage && self.staircase
    }
}

pub fn verify_janet(j: &JanetSet, gens: &[ModElem], bx: DegreeBox) -> Result<OracleVerdict, OracleError> {
    verify_janet_with_budget(j, gens, bx, DEFAULT_BUDGET)
}

pub fn verify_janet_with_budget(
    j: &JanetSet,
    gens: &[ModElem],
    bx: DegreeBox,
    budget: usize,
) -> Result<OracleVerdict, OracleError> {
    let ord = j.order();
    let d = j.rank();
    let tw = j.twist();
    let elems: Vec<ModElem> = j.pairs().iter().map(|p| p.elem().clone()).collect();
    let mut failures = Vec::new();

    let span_gens = truncated_submodule_with_budget(gens, bx, ord, budget)?;
    let span_j = truncated_submodule_with_budget(&elems, bx, ord, budget)?;
    let mut membership = true;
    for (i, b) in elems.iter().enumerate() {
        if bx.contains(&b.leading(ord).expect("nonzero").0) && !span_gens.contains(b) {
            membership = false;
            failures.push(format!("basis element {} not in the span of the generators", i + 1));
        }
    }
    for (i, g) in gens.iter().enumerate() {
        if !g.is_zero() && bx.contains(&g.leading(ord).expect("nonzero").0) && !span_j.contains(g) {
            membership = false;
            failures.push(format!("generator {} not in the span of the basis", i + 1));
        }
    }

    let cones: Vec<(Monomial, Mult)> = j.pairs().iter().map(|p| (p.lm(), p.mu())).collect();
    let box_monos = bx.monomials(d, ord);
    let mut disjoint = true;
    let mut covered = Vec::with_capacity(box_monos.len());
    for m in &box_monos {
        let hits: Vec<usize> = (0..cones.len()).filter(|&i| cone_contains(&cones[i].0, cones[i].1, m)).collect();
        if hits.len() > 1 {
            disjoint = false;
            failures.push(format!("{} lies in cones {:?}", m.render(tw), hits.iter().map(|i| i + 1).collect::<Vec<_>>()));
        }
        covered.push(!hits.is_empty());
    }

    let both: Vec<ModElem> = gens.iter().chain(&elems).cloned().collect();
    let full = truncated_submodule_with_budget(&both, bx, ord, budget)?;
    let lms: Vec<Monomial> = full.leading_monomials().into_iter().filter(|m| bx.contains(m)).collect();
    let mut coverage = true;
    for (m, &c) in box_monos.iter().zip(&covered) {
        let is_lm = lms.contains(m);
        if c != is_lm {
            coverage = false;
            failures.push(if c {
                format!("{} is covered by a cone but leads no element", m.render(tw))
            } else {
                format!("{} leads an element but no cone covers it", m.render(tw))
            });
        }
    }

    let quotient_dim = box_monos.len() - lms.len();
    let stairs: Vec<&Monomial> = box_monos.iter().zip(&covered).filter(|(_, &c)| !c).map(|(m, _)| m).collect();
    let staircase_count = stairs.len();
    let mut stacked = full.clone();
    let mut independent = true;
    for m in &stairs {
        let e = ModElem::term(j.field(), tw, d, **m, FieldElem::one(j.field()));
        if !stacked.insert(&e) {
            independent = false;
            failures.push(format!("staircase monomial {} is dependent modulo the submodule", m.render(tw)));
        }
    }
    let staircase = independent && quotient_dim == staircase_count;
    if quotient_dim != staircase_count {
        failures.push(format!("quotient dimension {quotient_dim} but {staircase_count} staircase monomials"));
    }
    Ok(OracleVerdict { bx, membership, disjoint, coverage, staircase, quotient_dim, staircase_count, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::janet::{janet_algorithm, ConePair, DEFAULT_MAX_ROUNDS};
    use crate::skew::{SkewPoly, TwistPair};

    fn running(f: &Field) -> Vec<ModElem> {
        let tw = TwistPair::TAU_T;
        let th = FieldElem::theta(f);
        let one = FieldElem::one(f);
        let mono = |c: &FieldElem, k, j| SkewPoly::monomial(f, tw, c.clone(), k, j);
        let lin = |c: &FieldElem| mono(&one, 0, 2).sub(&mono(c, 0, 0));
        vec![
            ModElem::from_components(f, tw, &[mono(&one, 2, 0), lin(&th).neg()]),
            ModElem::from_components(f, tw, &[lin(&th).neg(), mono(&one, 0, 0)]),
            ModElem::from_components(
                f,
                tw,
                &[SkewPoly::zero(f, tw), mono(&one, 2, 0).sub(&lin(&th).mul(&lin(&th.frobenius(2))))],
            ),
        ]
    }

    #[test]
    fn unit_sheet_spans_box() {
        let f = Field::prime(3).unwrap();
        let k1 = ModElem::basis(&f, TwistPair::TAU_T, 1, 0);
        let e = truncated_submodule(&[k1], DegreeBox::new(1, 1), &OrderSpec::identity(1)).unwrap();
        assert_eq!(e.dim(), 4);
        assert_eq!(e.into_rref().dim(), 4);
    }

    #[test]
    fn running_example_membership() {
        let f = Field::prime(3).unwrap();
        let g = running(&f);
        let ord = OrderSpec::identity(2);
        let span = truncated_submodule(&g[..2], DegreeBox::new(3, 4), &ord).unwrap();
        assert!(span.contains(&g[2]));
        assert!(span.contains(&g[1].shift_left(2, 0)));
    }

    #[test]
    fn janet_basis_passes_and_controls_fail() {
        let f = Field::prime(3).unwrap();
        let g = running(&f);
        let ord = OrderSpec::identity(2);
        let j = janet_algorithm(&g, &ord, DEFAULT_MAX_ROUNDS).unwrap();
        let bx = DegreeBox::new(3, 4);
        let v = verify_janet(&j, &g, bx).unwrap();
        assert!(v.passed(), "{:?}", v.failures);
        assert_eq!(v.quotient_dim, v.staircase_count);

        let mut pairs: Vec<ConePair> = j.pairs().to_vec();
        let idx = pairs.iter().position(|p| p.mu() == Mult::SIGMA).unwrap();
        pairs[idx] = ConePair::new(pairs[idx].elem().clone(), Mult::FULL, &ord);
        let bad = JanetSet::from_pairs(&f, TwistPair::TAU_T, 2, ord.clone(), pairs);
        assert!(!verify_janet(&bad, &g, bx).unwrap().disjoint);

        let pairs: Vec<ConePair> = j.pairs().iter().filter(|p| p.lm().sheet == 0).cloned().collect();
        let bad = JanetSet::from_pairs(&f, TwistPair::TAU_T, 2, ord.clone(), pairs);
        assert!(!verify_janet(&bad, &g, bx).unwrap().coverage);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(2).unwrap();
        let k1 = ModElem::basis(&f, TwistPair::TAU_T, 1, 0);
        let err = truncated_submodule(&[k1], DegreeBox::new(200, 200), &OrderSpec::identity(1)).unwrap_err();
        assert!(matches!(err, OracleError::Budget { .. }));
    }
}
