//! The free module `⊕ D·κ_i` over a skew ring, with its position-over-term
//! monomial order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{join_signed, Field, FieldElem};
use crate::skew::{needs_parens, render_power, SkewPoly, TwistPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModError {
    #[error("the zero element has no leading term")]
    Zero,
    #[error("invalid order: {0}")]
    BadOrder(String),
    #[error("component count {got} does not match rank {expected}")]
    Rank { expected: usize, got: usize },
}

/// The monomial `ρ^k σ^j κ_{sheet+1}` (sheets are 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub sheet: usize,
    pub k: u32,
    pub j: u32,
}

impl Monomial {
    pub fn new(sheet: usize, k: u32, j: u32) -> Monomial {
        Monomial { sheet, k, j }
    }

    /// `true` if `self` divides `other` (same sheet, componentwise ≤).
    pub fn divides(&self, other: &Monomial) -> bool {
        self.sheet == other.sheet && self.k <= other.k && self.j <= other.j
    }

    pub fn render(&self, twist: TwistPair) -> String {
        let (rn, sn) = twist.names();
        let mut parts: Vec<String> = [render_power(rn, self.k), render_power(sn, self.j)].into_iter().flatten().collect();
        parts.push(format!("k{}", self.sheet + 1));
        parts.join("*")
    }
}

/// A position-over-term order: sheets ranked by a permutation (first entry is
/// the greatest), then lexicographic in `(k, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct OrderSpec {
    perm: Vec<usize>,
    rank: Vec<usize>,
}

impl TryFrom<Vec<usize>> for OrderSpec {
    type Error = ModError;

    fn try_from(perm: Vec<usize>) -> Result<OrderSpec, ModError> {
        OrderSpec::new(perm)
    }
}

impl From<OrderSpec> for Vec<usize> {
    fn from(o: OrderSpec) -> Vec<usize> {
        o.perm
    }
}

impl OrderSpec {
    /// `κ_1 ≻ κ_2 ≻ …`.
    pub fn identity(d: usize) -> OrderSpec {
        OrderSpec::new((0..d).collect()).unwrap()
    }

    /// From a 0-based permutation listing sheets from greatest to least.
    pub fn new(perm: Vec<usize>) -> Result<OrderSpec, ModError> {
        let d = perm.len();
        let mut rank = vec![usize::MAX; d];
        for (pos, &s) in perm.iter().enumerate() {
            if s >= d || rank[s] != usize::MAX {
                return Err(ModError::BadOrder(format!("{perm:?} is not a permutation of 0..{d}")));
            }
            rank[s] = pos;
        }
        Ok(OrderSpec { perm, rank })
    }

    /// From a 1-based permutation, as written by users.
    pub fn from_one_based(perm: &[usize]) -> Result<OrderSpec, ModError> {
        if perm.contains(&0) {
            return Err(ModError::BadOrder("sheet indices start at 1".into()));
        }
        OrderSpec::new(perm.iter().map(|&i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Position of a sheet (0 = greatest).
    pub fn rank_of(&self, sheet: usize) -> usize {
        self.rank[sheet]
    }

    /// Sort key: larger key means larger monomial.
    pub fn key(&self, m: &Monomial) -> (usize, u32, u32) {
        (self.perm.len() - 1 - self.rank[m.sheet], m.k, m.j)
    }

    pub fn from_key(&self, key: (usize, u32, u32)) -> Monomial {
        Monomial { sheet: self.perm[self.perm.len() - 1 - key.0], k: key.1, j: key.2 }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// An element of the free module `⊕_{i<d} D·κ_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModElem {
    field: Field,
    twist: TwistPair,
    d: usize,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl ModElem {
    pub fn zero(field: &Field, twist: TwistPair, d: usize) -> ModElem {
        ModElem { field: field.clone(), twist, d, terms: BTreeMap::new() }
    }

    /// `c·ρ^k σ^j κ_sheet`.
    pub fn term(field: &Field, twist: TwistPair, d: usize, m: Monomial, c: FieldElem) -> ModElem {
        let mut e = ModElem::zero(field, twist, d);
        e.add_term(m, &c);
        e
    }

    /// The basis vector `κ_sheet`.
    pub fn basis(field: &Field, twist: TwistPair, d: usize, sheet: usize) -> ModElem {
        ModElem::term(field, twist, d, Monomial::new(sheet, 0, 0), FieldElem::one(field))
    }

    /// `Σ_i comps[i]·κ_i`.
    pub fn from_components(field: &Field, twist: TwistPair, comps: &[SkewPoly]) -> ModElem {
        let mut e = ModElem::zero(field, twist, comps.len());
        for (i, p) in comps.iter().enumerate() {
            for (&(k, j), c) in p.terms() {
                e.add_term(Monomial::new(i, k, j), c);
            }
        }
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn twist(&self) -> TwistPair {
        self.twist
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FieldElem> {
        self.terms.get(m)
    }

    pub fn component(&self, sheet: usize) -> SkewPoly {
        let mut p = SkewPoly::zero(&self.field, self.twist);
        for (m, c) in self.terms.range(Monomial::new(sheet, 0, 0)..Monomial::new(sheet + 1, 0, 0)) {
            p.add_term(m.k, m.j, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &ModElem) -> ModElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &ModElem) -> ModElem {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &c.neg());
        }
        out
    }

    pub fn neg(&self) -> ModElem {
        ModElem {
            field: self.field.clone(),
            twist: self.twist,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    /// `c·f`.
    pub fn scale_left(&self, c: &FieldElem) -> ModElem {
        if c.is_zero() {
            return ModElem::zero(&self.field, self.twist, self.d);
        }
        ModElem {
            field: self.field.clone(),
            twist: self.twist,
            d: self.d,
            terms: self.terms.iter().map(|(m, x)| (*m, c.mul(x))).collect(),
        }
    }

    /// `ρ^k σ^j · f`.
    pub fn shift_left(&self, k: u32, j: u32) -> ModElem {
        let s = self.twist.shift(k, j);
        ModElem {
            field: self.field.clone(),
            twist: self.twist,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (Monomial::new(m.sheet, m.k + k, m.j + j), x.frobenius(s)))
                .collect(),
        }
    }

    /// `p · f` for a ring element `p`.
    pub fn mul_left(&self, p: &SkewPoly) -> ModElem {
        let mut out = ModElem::zero(&self.field, self.twist, self.d);
        for (&(k, j), c) in p.terms() {
            let s = self.twist.shift(k, j);
            for (m, x) in &self.terms {
                out.add_term(Monomial::new(m.sheet, m.k + k, m.j + j), &c.mul(&x.frobenius(s)));
            }
        }
        out
    }

    pub fn coeff_twist(&self, power: i32) -> ModElem {
        ModElem {
            field: self.field.clone(),
            twist: self.twist,
            d: self.d,
            terms: self.terms.iter().map(|(m, x)| (*m, x.frobenius(power))).collect(),
        }
    }

    /// Leading monomial and coefficient under `ord`.
    pub fn leading(&self, ord: &OrderSpec) -> Result<(Monomial, FieldElem), ModError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.compare(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
            .ok_or(ModError::Zero)
    }

    pub fn max_level(&self) -> u32 {
        self.terms.values().map(|c| c.level()).max().unwrap_or(0)
    }

    /// Sheets with a nonzero component.
    pub fn support_sheets(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().map(|m| m.sheet).collect();
        s.dedup();
        s
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for sheet in self.support_sheets() {
            let comp = self.component(sheet).to_string();
            let basis = format!("k{}", sheet + 1);
            parts.push(if comp == "1" {
                basis
            } else if comp == "-1" {
                format!("-{basis}")
            } else if needs_parens(&comp) {
                format!("({comp})*{basis}")
            } else {
                format!("{comp}*{basis}")
            });
        }
        write!(f, "{}", join_signed(&parts))
    }
}

impl fmt::Debug for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;

    #[test]
    fn order_examples() {
        let ord = OrderSpec::identity(2);
        let m = Monomial::new;
        assert_eq!(ord.compare(&m(0, 0, 1), &m(0, 1, 0)), Ordering::Less);
        assert_eq!(ord.compare(&m(1, 3, 0), &m(0, 0, 1)), Ordering::Less);
        assert_eq!(ord.compare(&m(0, 2, 1), &m(0, 3, 0)), Ordering::Less);
        let swapped = OrderSpec::from_one_based(&[2, 1]).unwrap();
        assert_eq!(swapped.compare(&m(1, 0, 0), &m(0, 5, 5)), Ordering::Greater);
        assert_eq!(swapped.from_key(swapped.key(&m(1, 2, 3))), m(1, 2, 3));
        assert!(OrderSpec::from_one_based(&[1, 1]).is_err());
    }

    #[test]
    fn leading_examples() {
        let f = Field::prime(3).unwrap();
        let tw = TwistPair::new(1, 0);
        let one = FieldElem::one(&f);
        let mut p1 = ModElem::zero(&f, tw, 2);
        p1.add_term(Monomial::new(0, 1, 1), &one.neg());
        p1.add_term(Monomial::new(0, 1, 0), &one);
        p1.add_term(Monomial::new(1, 1, 0), &one);
        p1.add_term(Monomial::new(1, 0, 1), &one);
        let ord = OrderSpec::identity(2);
        assert_eq!(p1.leading(&ord).unwrap(), (Monomial::new(0, 1, 1), one.neg()));
        assert_eq!(p1.to_string(), "(-tau*t + tau)*k1 + (tau + t)*k2");
        let k1 = ModElem::basis(&f, tw, 2, 0);
        assert_eq!(k1.leading(&ord).unwrap(), (Monomial::new(0, 0, 0), one.clone()));
        assert!(ModElem::zero(&f, tw, 2).leading(&ord).is_err());
    }
}
