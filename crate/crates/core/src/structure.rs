//! Structural data read off a certified Janet basis: the finiteness
//! quantities, generators and relations over `K⟨σ⟩`, the action of `ρ`, and
//! a free basis found by elementary divisors.

use std::fmt;

use thiserror::Error;

use crate::coeff::{Field, FieldElem};
use crate::freemod::{ModElem, Monomial, OrderSpec};
use crate::janet::{normal_form, JanetSet, Mult};
use crate::skew::{OrePoly, TwistPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("the Janet set is not certified")]
    Uncertified,
    #[error("module is not finitely generated over the second variable (n is infinite on sheet {0})")]
    NotFinitelyGenerated(usize),
    #[error("module not torsion-free: non-unit elementary divisor {0}")]
    NotTorsionFree(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A matrix over a one-variable skew polynomial ring.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<OrePoly>,
}

impl SkewMatrix {
    pub fn zeros(field: &Field, twist: i32, rows: usize, cols: usize) -> SkewMatrix {
        SkewMatrix { rows, cols, entries: vec![OrePoly::zero(field, twist); rows * cols] }
    }

    pub fn identity(field: &Field, twist: i32, n: usize) -> SkewMatrix {
        let mut m = SkewMatrix::zeros(field, twist, n, n);
        for i in 0..n {
            m.set(i, i, OrePoly::one(field, twist));
        }
        m
    }

    /// From row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<OrePoly>>) -> SkewMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        SkewMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &OrePoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: OrePoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[OrePoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<OrePoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &SkewMatrix) -> SkewMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let sample = self.entries.first().or(other.entries.first());
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = match sample {
                    Some(s) => OrePoly::zero(s.field(), s.twist()),
                    None => unreachable!("empty products have no entries"),
                };
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.push(acc);
            }
        }
        SkewMatrix { rows: self.rows, cols: other.cols, entries: out }
    }

    /// Entrywise Frobenius on coefficients.
    pub fn coeff_twist(&self, power: i32) -> SkewMatrix {
        SkewMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e.coeff_twist(power)).collect() }
    }

    /// `rows × cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> SkewMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            for j in c0..c0 + cols {
                entries.push(self.get(i, j).clone());
            }
        }
        SkewMatrix { rows, cols, entries }
    }

    pub fn transpose(&self) -> SkewMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        SkewMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Entrywise map.
    pub fn map(&self, f: impl Fn(&OrePoly) -> OrePoly) -> SkewMatrix {
        SkewMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn max_level(&self) -> u32 {
        self.entries.iter().map(|e| e.max_level()).max().unwrap_or(0)
    }

    /// Rendered entries, row by row.
    pub fn render(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_string()).collect()).collect()
    }

    fn swap_rows_rotate(&mut self, from: usize, to: usize) {
        // moves row `from` up to `to`, shifting the rows in between down
        for r in (to..from).rev() {
            for c in 0..self.cols {
                self.entries.swap(r * self.cols + c, (r + 1) * self.cols + c);
            }
        }
    }

    fn rotate_cols(&mut self, from: usize, to: usize) {
        for r in 0..self.rows {
            let row = &mut self.entries[r * self.cols..(r + 1) * self.cols];
            row[to..=from].rotate_right(1);
        }
    }
}

impl fmt::Debug for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.render()).finish()
    }
}

/// Finiteness quantities, generators, relations and the `ρ`-action.
#[derive(Clone, Debug)]
pub struct Structure {
    pub twist: TwistPair,
    pub order: OrderSpec,
    /// Least pure `ρ`-degree of a leading monomial per sheet; `None` is ∞.
    pub n: Vec<Option<u32>>,
    /// Least `ρ`-degree of a leading monomial per sheet; `None` is ∞.
    pub m: Vec<Option<u32>>,
    /// Generators `ρ^j κ_i` in descending order; `None` when infinite.
    pub w_gen: Option<Vec<Monomial>>,
    pub w_ind: Vec<Monomial>,
    /// `Σ m_i`, when every `m_i` is finite.
    pub rank: Option<u32>,
    /// `b_i` with `lm(b_i) = ρ^{n_i} κ_i`, indexed by sheet.
    pub b_top: Vec<ModElem>,
    pub b_low: Vec<ModElem>,
    /// Rows are the `B_low` elements in `W_gen` coordinates.
    pub relations: Option<SkewMatrix>,
    /// `ρ·w_gen = C·w_gen`.
    pub action: Option<SkewMatrix>,
}

impl Structure {
    pub fn is_finitely_generated(&self) -> bool {
        self.n.iter().all(|x| x.is_some())
    }
}

/// Computes `n`, `m`, `W_gen`, `W_ind` and the rank from a certified basis.
pub fn quantities(j: &JanetSet) -> Result<Structure, StructureError> {
    if !j.is_certified() {
        return Err(StructureError::Uncertified);
    }
    let d = j.rank();
    let mut n: Vec<Option<u32>> = vec![None; d];
    let mut m: Vec<Option<u32>> = vec![None; d];
    for p in j.pairs() {
        let lm = p.lm();
        let s = lm.sheet;
        if lm.j == 0 {
            n[s] = Some(n[s].map_or(lm.k, |x| x.min(lm.k)));
        }
        m[s] = Some(m[s].map_or(lm.k, |x| x.min(lm.k)));
    }
    let ord = j.order();
    let list = |bound: &[Option<u32>]| -> Vec<Monomial> {
        let mut out = Vec::new();
        for &sheet in ord.perm() {
            if let Some(b) = bound[sheet] {
                for k in (0..b).rev() {
                    out.push(Monomial::new(sheet, k, 0));
                }
            }
        }
        out
    };
    let w_gen = n.iter().all(|x| x.is_some()).then(|| list(&n));
    let w_ind = list(&m);
    let rank = m.iter().try_fold(0u32, |acc, x| x.map(|v| acc + v));
    Ok(Structure {
        twist: j.twist(),
        order: ord.clone(),
        n,
        m,
        w_gen,
        w_ind,
        rank,
        b_top: Vec::new(),
        b_low: Vec::new(),
        relations: None,
        action: None,
    })
}

/// Writes an element whose monomials lie in `Mon(σ)·W_gen` as a row of
/// `K⟨σ⟩`-coefficients.
pub fn wgen_coordinates(e: &ModElem, w_gen: &[Monomial], sigma_twist: i32) -> Result<Vec<OrePoly>, StructureError> {
    let field = e.field();
    let mut coeffs: Vec<Vec<FieldElem>> = vec![Vec::new(); w_gen.len()];
    for (mono, c) in e.terms() {
        let idx = w_gen
            .iter()
            .position(|w| w.sheet == mono.sheet && w.k == mono.k)
            .ok_or_else(|| StructureError::Internal(format!("monomial {mono:?} outside Mon(σ)·W_gen")))?;
        let v = &mut coeffs[idx];
        if v.len() <= mono.j as usize {
            v.resize(mono.j as usize + 1, FieldElem::zero(field));
        }
        v[mono.j as usize] = c.clone();
    }
    Ok(coeffs.into_iter().map(|v| OrePoly::from_coeffs(field, sigma_twist, v)).collect())
}

/// Inverse of [`wgen_coordinates`]: `Σ row_j · w_j`.
pub fn from_wgen_coordinates(field: &Field, twist: TwistPair, d: usize, row: &[OrePoly], w_gen: &[Monomial]) -> ModElem {
    let mut e = ModElem::zero(field, twist, d);
    for (p, w) in row.iter().zip(w_gen) {
        for (l, c) in p.coeffs().iter().enumerate() {
            e.add_term(Monomial::new(w.sheet, w.k, l as u32), c);
        }
    }
    e
}

/// Fills `b_top`, `b_low` and the relations matrix.
pub fn split_top_low(j: &JanetSet, s: &mut Structure) -> Result<(), StructureError> {
    let Some(w_gen) = s.w_gen.clone() else {
        let sheet = s.n.iter().position(|x| x.is_none()).unwrap();
        return Err(StructureError::NotFinitelyGenerated(sheet));
    };
    let d = j.rank();
    let mut top: Vec<Option<ModElem>> = vec![None; d];
    let mut low = Vec::new();
    for (idx, p) in j.pairs().iter().enumerate() {
        let lm = p.lm();
        if lm.j == 0 && Some(lm.k) == s.n[lm.sheet] {
            if p.mu() != Mult::FULL {
                return Err(StructureError::Internal(format!("top element on sheet {} lacks a full cone", lm.sheet + 1)));
            }
            top[lm.sheet] = Some(p.elem().clone());
        } else {
            low.push(normal_form(p.elem(), &j.without(idx)));
        }
    }
    s.b_top = top.into_iter().map(|x| x.expect("n finite implies a top element")).collect();
    let rows = low
        .iter()
        .map(|b| wgen_coordinates(b, &w_gen, j.twist().sigma))
        .collect::<Result<Vec<_>, _>>()?;
    s.relations = Some(if rows.is_empty() {
        SkewMatrix::zeros(j.field(), j.twist().sigma, 0, w_gen.len())
    } else {
        SkewMatrix::from_rows(rows)
    });
    s.b_low = low;
    Ok(())
}

/// The matrix `C` with `ρ·w = Σ C_{w,v} v` over `W_gen`.
pub fn action_on_generators(field: &Field, s: &Structure) -> Result<SkewMatrix, StructureError> {
    let w_gen = s.w_gen.as_ref().ok_or_else(|| {
        StructureError::NotFinitelyGenerated(s.n.iter().position(|x| x.is_none()).unwrap_or(0))
    })?;
    if s.b_top.len() != s.n.len() {
        return Err(StructureError::Internal("split_top_low has not run".into()));
    }
    let d = s.n.len();
    let mut rows = Vec::with_capacity(w_gen.len());
    for w in w_gen {
        let ni = s.n[w.sheet].unwrap();
        let next = ModElem::term(field, s.twist, d, Monomial::new(w.sheet, w.k + 1, 0), FieldElem::one(field));
        let image = if w.k + 1 < ni {
            next
        } else {
            let b = &s.b_top[w.sheet];
            let lc = b.leading(&s.order).unwrap().1;
            next.sub(&b.scale_left(&lc.inv().unwrap()))
        };
        rows.push(wgen_coordinates(&image, w_gen, s.twist.sigma)?);
    }
    Ok(SkewMatrix::from_rows(rows))
}

/// A free `K⟨σ⟩`-basis with the `ρ`-action on it.
#[derive(Clone, Debug)]
pub struct FreeModel {
    /// Number of unit elementary divisors.
    pub s0: usize,
    pub u: SkewMatrix,
    pub u_inv: SkewMatrix,
    pub v: SkewMatrix,
    pub v_inv: SkewMatrix,
    /// Basis elements as elements of the free module.
    pub basis: Vec<ModElem>,
    /// Basis elements in `W_gen` coordinates (rows of `V⁻¹`).
    pub basis_coords: SkewMatrix,
    /// `ρ·e = C̃·e`.
    pub action: SkewMatrix,
}

impl FreeModel {
    pub fn basis_size(&self) -> usize {
        self.basis.len()
    }
}

struct Reducer {
    b: SkewMatrix,
    u: SkewMatrix,
    u_inv: SkewMatrix,
    v: SkewMatrix,
    v_inv: SkewMatrix,
}

impl Reducer {
    /// `row_i -= q·row_k`.
    fn row_op(&mut self, i: usize, k: usize, q: &OrePoly) {
        for m in [&mut self.b, &mut self.u] {
            for c in 0..m.cols {
                let v = m.get(i, c).sub(&q.mul(m.get(k, c)));
                m.set(i, c, v);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            let v = m.get(r, k).add(&m.get(r, i).mul(q));
            m.set(r, k, v);
        }
    }

    /// `col_j -= col_k·q`.
    fn col_op(&mut self, j: usize, k: usize, q: &OrePoly) {
        for m in [&mut self.b, &mut self.v] {
            for r in 0..m.rows {
                let v = m.get(r, j).sub(&m.get(r, k).mul(q));
                m.set(r, j, v);
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols {
            let v = m.get(k, c).add(&q.mul(m.get(j, c)));
            m.set(k, c, v);
        }
    }

    /// `row_k := c·row_k` for a nonzero constant `c`.
    fn scale_row(&mut self, k: usize, c: &FieldElem) {
        let cp = OrePoly::constant(c.field(), self.b.get(0, 0).twist(), c.clone());
        let ci = OrePoly::constant(c.field(), cp.twist(), c.inv().unwrap());
        for m in [&mut self.b, &mut self.u] {
            for col in 0..m.cols {
                let v = cp.mul(m.get(k, col));
                m.set(k, col, v);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            let v = m.get(r, k).mul(&ci);
            m.set(r, k, v);
        }
    }

    fn move_row(&mut self, from: usize, to: usize) {
        self.b.swap_rows_rotate(from, to);
        self.u.swap_rows_rotate(from, to);
        self.u_inv.rotate_cols(from, to);
    }

    fn move_col(&mut self, from: usize, to: usize) {
        self.b.rotate_cols(from, to);
        self.v.rotate_cols(from, to);
        self.v_inv.swap_rows_rotate(from, to);
    }

    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..self.b.rows {
            for j in k..self.b.cols {
                if let Some(deg) = self.b.get(i, j).degree() {
                    if best.is_none_or(|(d, _, _)| deg < d) {
                        best = Some((deg, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Diagonalizes the relations and extracts a basis with its `ρ`-action.
pub fn free_model(field: &Field, s: &Structure, action: &SkewMatrix) -> Result<FreeModel, StructureError> {
    let w_gen = s.w_gen.as_ref().ok_or(StructureError::NotFinitelyGenerated(0))?;
    let rel = s.relations.as_ref().ok_or_else(|| StructureError::Internal("relations missing".into()))?;
    let tw = s.twist.sigma;
    let (r, c) = (rel.rows(), w_gen.len());
    let mut red = Reducer {
        b: rel.clone(),
        u: SkewMatrix::identity(field, tw, r),
        u_inv: SkewMatrix::identity(field, tw, r),
        v: SkewMatrix::identity(field, tw, c),
        v_inv: SkewMatrix::identity(field, tw, c),
    };
    let mut k = 0;
    while k < r.min(c) {
        let Some((pi, pj)) = red.pivot(k) else { break };
        red.move_row(pi, k);
        red.move_col(pj, k);
        loop {
            let g = red.b.get(k, k).clone();
            let mut restart = false;
            for i in k + 1..r {
                if red.b.get(i, k).is_zero() {
                    continue;
                }
                let (q, rem) = red.b.get(i, k).right_divmod(&g).map_err(|e| StructureError::Internal(e.to_string()))?;
                red.row_op(i, k, &q);
                if !rem.is_zero() {
                    restart = true;
                }
            }
            for j in k + 1..c {
                if red.b.get(k, j).is_zero() {
                    continue;
                }
                let (q, rem) = red.b.get(k, j).left_divmod(&g).map_err(|e| StructureError::Internal(e.to_string()))?;
                red.col_op(j, k, &q);
                if !rem.is_zero() {
                    restart = true;
                }
            }
            if !restart {
                break;
            }
            // a remainder of lower degree than the pivot appeared; re-pivot
            let (pi, pj) = red.pivot_in_cross(k);
            red.move_row(pi, k);
            red.move_col(pj, k);
        }
        let g = red.b.get(k, k).clone();
        if !g.is_unit() {
            return Err(StructureError::NotTorsionFree(g.to_string()));
        }
        red.scale_row(k, &g.lead().unwrap().inv().unwrap());
        k += 1;
    }
    let s0 = k;
    if (s0..r).any(|i| red.b.row(i).iter().any(|e| !e.is_zero())) {
        return Err(StructureError::Internal("elementary divisor reduction left nonzero rows".into()));
    }
    let n = c - s0;
    let basis_coords = red.v_inv.block(s0, 0, n, c);
    let basis = (0..n)
        .map(|i| from_wgen_coordinates(field, s.twist, s.n.len(), basis_coords.row(i), w_gen))
        .collect();
    let full = red.v_inv.coeff_twist(s.twist.rho).mul(action).mul(&red.v);
    let reduced = full.block(s0, s0, n, n);
    let model = FreeModel { s0, u: red.u, u_inv: red.u_inv, v: red.v, v_inv: red.v_inv, basis, basis_coords, action: reduced };
    verify_transforms(rel, &model)?;
    Ok(model)
}

impl Reducer {
    /// Least-degree nonzero entry in row `k` or column `k` (beyond the corner
    /// this is where new remainders live).
    fn pivot_in_cross(&self, k: usize) -> (usize, usize) {
        let mut best = (self.b.get(k, k).degree().unwrap_or(usize::MAX), k, k);
        for i in k + 1..self.b.rows {
            if let Some(d) = self.b.get(i, k).degree() {
                if d < best.0 {
                    best = (d, i, k);
                }
            }
        }
        for j in k + 1..self.b.cols {
            if let Some(d) = self.b.get(k, j).degree() {
                if d < best.0 {
                    best = (d, k, j);
                }
            }
        }
        (best.1, best.2)
    }
}

/// Checks `U·B·V = diag(1, 0)`, `U·U⁻¹ = 1` and `V·V⁻¹ = 1` exactly.
pub fn verify_transforms(b: &SkewMatrix, model: &FreeModel) -> Result<(), StructureError> {
    let (r, c) = (b.rows(), b.cols());
    if r > 0 && c > 0 {
        let ubv = model.u.mul(b).mul(&model.v);
        for i in 0..r {
            for j in 0..c {
                let e = ubv.get(i, j);
                let ok = if i == j && i < model.s0 { e.is_one() } else { e.is_zero() };
                if !ok {
                    return Err(StructureError::Internal(format!("U·B·V entry ({i},{j}) is {e}")));
                }
            }
        }
    }
    let check_id = |m: &SkewMatrix, name: &str| -> Result<(), StructureError> {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = m.get(i, j);
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return Err(StructureError::Internal(format!("{name} is not the identity at ({i},{j})")));
                }
            }
        }
        Ok(())
    };
    if r > 0 {
        check_id(&model.u.mul(&model.u_inv), "U·U⁻¹")?;
    }
    if c > 0 {
        check_id(&model.v.mul(&model.v_inv), "V·V⁻¹")?;
    }
    Ok(())
}

/// Everything the pipeline computes for one presentation.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub structure: Structure,
    pub free: Option<FreeModel>,
}

/// Runs quantities, and when finitely generated the split, the action and
/// the free model.
pub fn analyze(j: &JanetSet) -> Result<Analysis, StructureError> {
    let mut s = quantities(j)?;
    if !s.is_finitely_generated() {
        return Ok(Analysis { structure: s, free: None });
    }
    split_top_low(j, &mut s)?;
    let c = action_on_generators(j.field(), &s)?;
    s.action = Some(c.clone());
    let free = free_model(j.field(), &s, &c)?;
    Ok(Analysis { structure: s, free: Some(free) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::janet::{janet_algorithm, DEFAULT_MAX_ROUNDS};
    use crate::skew::SkewPoly;

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
    fn running_example_structure() {
        let f = Field::prime(3).unwrap();
        let j = janet_algorithm(&running(&f), &OrderSpec::identity(2), DEFAULT_MAX_ROUNDS).unwrap();
        let a = analyze(&j).unwrap();
        let s = &a.structure;
        assert_eq!(s.n, vec![Some(2), Some(2)]);
        assert_eq!(s.m, vec![Some(0), Some(2)]);
        assert_eq!(s.rank, Some(2));
        let free = a.free.unwrap();
        assert_eq!(free.action.rows(), 2);
        assert_eq!(free.basis_size(), 2);
    }
}
