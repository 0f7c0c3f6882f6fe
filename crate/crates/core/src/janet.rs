//! Normal forms, Janet decompositions and the Janet completion algorithm for
//! submodules of a free module over `K{ρ,σ}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Field, FieldElem};
use crate::freemod::{ModElem, Monomial, OrderSpec};
use crate::skew::TwistPair;

pub const DEFAULT_MAX_ROUNDS: usize = 1000;

#[derive(Debug, Clone, Error)]
pub enum JanetError {
    #[error("no nonzero generators")]
    Empty,
    #[error("generators live in different free modules")]
    Mismatch,
    #[error("leading monomial {0:?} divides {1:?}; auto-reduce first")]
    NotAutoReduced(Monomial, Monomial),
    #[error("no Janet basis after {rounds} rounds")]
    MaxRounds { rounds: usize, partial: Box<JanetSet> },
    #[error("the set is not a certified Janet basis")]
    Uncertified,
    #[error("a coefficient outgrew {limit} stored θ-coefficients")]
    CoefficientGrowth { limit: usize },
}

/// Stored size of a coefficient: numerator plus denominator length.
fn coeff_size(c: &FieldElem) -> usize {
    c.numerator().len() + c.denominator().len()
}

/// Multiplicative variables of a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mult {
    pub rho: bool,
    pub sigma: bool,
}

impl Mult {
    pub const FULL: Mult = Mult { rho: true, sigma: true };
    pub const SIGMA: Mult = Mult { rho: false, sigma: true };
    pub const RHO: Mult = Mult { rho: true, sigma: false };
    pub const NONE: Mult = Mult { rho: false, sigma: false };
}

/// A generator with its multiplicative variables; leading data is cached.
#[derive(Clone, Debug, PartialEq)]
pub struct ConePair {
    elem: ModElem,
    mu: Mult,
    lm: Monomial,
    lc: FieldElem,
}

impl ConePair {
    /// Panics on a zero element.
    pub fn new(elem: ModElem, mu: Mult, ord: &OrderSpec) -> ConePair {
        let (lm, lc) = elem.leading(ord).expect("cone generator must be nonzero");
        ConePair { elem, mu, lm, lc }
    }

    pub fn elem(&self) -> &ModElem {
        &self.elem
    }

    pub fn mu(&self) -> Mult {
        self.mu
    }

    pub fn lm(&self) -> Monomial {
        self.lm
    }

    pub fn lc(&self) -> &FieldElem {
        &self.lc
    }

    /// Membership of a monomial in `Mon(μ)·lm`.
    pub fn covers(&self, m: &Monomial) -> bool {
        self.lm.divides(m) && (self.mu.rho || m.k == self.lm.k) && (self.mu.sigma || m.j == self.lm.j)
    }
}

/// A list of cone pairs under a fixed order. `certified` is set only by
/// [`janet_algorithm`].
#[derive(Clone, Debug)]
pub struct JanetSet {
    field: Field,
    twist: TwistPair,
    d: usize,
    order: OrderSpec,
    pairs: Vec<ConePair>,
    certified: bool,
    rounds: usize,
}

impl JanetSet {
    /// An uncertified set from explicit pairs.
    pub fn from_pairs(field: &Field, twist: TwistPair, d: usize, order: OrderSpec, pairs: Vec<ConePair>) -> JanetSet {
        JanetSet { field: field.clone(), twist, d, order, pairs, certified: false, rounds: 0 }
    }

    pub fn pairs(&self) -> &[ConePair] {
        &self.pairs
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
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

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Loop iterations used by [`janet_algorithm`] (0 for hand-built sets).
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// The set with pair `idx` removed (uncertified).
    pub fn without(&self, idx: usize) -> JanetSet {
        let mut pairs = self.pairs.clone();
        pairs.remove(idx);
        JanetSet::from_pairs(&self.field, self.twist, self.d, self.order.clone(), pairs)
    }

    /// `true` if some cone contains `m`.
    pub fn covers(&self, m: &Monomial) -> bool {
        self.pairs.iter().any(|p| p.covers(m))
    }
}

/// Picks the covering pair with the greatest leading monomial, earliest first.
fn best_cover<'a>(pairs: &'a [ConePair], skip: Option<usize>, m: &Monomial, ord: &OrderSpec) -> Option<&'a ConePair> {
    let mut best: Option<&ConePair> = None;
    for (i, p) in pairs.iter().enumerate() {
        if Some(i) == skip || !p.covers(m) {
            continue;
        }
        match best {
            Some(b) if ord.compare(&p.lm, &b.lm) != std::cmp::Ordering::Greater => {}
            _ => best = Some(p),
        }
    }
    best
}

fn reduce(g: &ModElem, pairs: &[ConePair], skip: Option<usize>, ord: &OrderSpec, cap: Option<usize>) -> Result<ModElem, JanetError> {
    let twist = g.twist();
    let mut work: BTreeMap<(usize, u32, u32), FieldElem> = g.terms().map(|(m, c)| (ord.key(m), c.clone())).collect();
    let mut cursor: Option<(usize, u32, u32)> = None;
    loop {
        let next = match cursor {
            None => work.iter().next_back(),
            Some(c) => work.range(..c).next_back(),
        };
        let Some((&key, coeff)) = next else { break };
        cursor = Some(key);
        let m = ord.from_key(key);
        let Some(pair) = best_cover(pairs, skip, &m, ord) else { continue };
        let (a, b) = (m.k - pair.lm.k, m.j - pair.lm.j);
        let s = twist.shift(a, b);
        let c = coeff.div(&pair.lc.frobenius(s)).expect("leading coefficient is nonzero");
        for (bm, bc) in pair.elem.terms() {
            let k2 = ord.key(&Monomial::new(bm.sheet, bm.k + a, bm.j + b));
            let v = c.mul(&bc.frobenius(s));
            let y = match work.get(&k2) {
                Some(x) => x.sub(&v),
                None => v.neg(),
            };
            if let Some(limit) = cap.filter(|&l| coeff_size(&y) > l) {
                return Err(JanetError::CoefficientGrowth { limit });
            }
            if y.is_zero() {
                work.remove(&k2);
            } else {
                work.insert(k2, y);
            }
        }
        debug_assert!(!work.contains_key(&key));
    }
    let mut out = ModElem::zero(g.field(), twist, g.rank());
    for (k, c) in work {
        out.add_term(ord.from_key(k), &c);
    }
    Ok(out)
}

fn reduce_unbounded(g: &ModElem, pairs: &[ConePair], skip: Option<usize>, ord: &OrderSpec) -> ModElem {
    match reduce(g, pairs, skip, ord, None) {
        Ok(e) => e,
        Err(_) => unreachable!("reduction without a cap cannot fail"),
    }
}

/// Normal form of `g` with respect to the cones of `t`.
pub fn normal_form(g: &ModElem, t: &JanetSet) -> ModElem {
    reduce_unbounded(g, &t.pairs, None, &t.order)
}

fn full_pairs(g: &[ModElem], ord: &OrderSpec) -> Vec<ConePair> {
    g.iter().map(|e| ConePair::new(e.clone(), Mult::FULL, ord)).collect()
}

/// Normal form with respect to full cones on every element of `g`.
pub fn normal_form_full(f: &ModElem, g: &[ModElem], ord: &OrderSpec) -> ModElem {
    reduce_unbounded(f, &full_pairs(g, ord), None, ord)
}

/// Descending by leading monomial; ties are broken by the remaining
/// monomials, so the result does not depend on the input order.
fn sort_desc(g: &mut [ModElem], ord: &OrderSpec) {
    g.sort_by_cached_key(|e| {
        let mut keys: Vec<(usize, u32, u32)> = e.terms().map(|(m, _)| ord.key(m)).collect();
        keys.sort_unstable_by(|a, b| b.cmp(a));
        std::cmp::Reverse(keys)
    });
}

/// Janet decomposition of an auto-reduced list.
pub fn janet_decomposition(g: &[ModElem], ord: &OrderSpec) -> Result<JanetSet, JanetError> {
    let first = g.iter().find(|e| !e.is_zero()).ok_or(JanetError::Empty)?;
    let (field, twist, d) = (first.field().clone(), first.twist(), first.rank());
    if g.iter().any(|e| e.is_zero() || e.twist() != twist || e.rank() != d) {
        return Err(JanetError::Mismatch);
    }
    let mut sorted = g.to_vec();
    sort_desc(&mut sorted, ord);
    let lms: Vec<Monomial> = sorted.iter().map(|e| e.leading(ord).unwrap().0).collect();
    for (i, a) in lms.iter().enumerate() {
        for (j, b) in lms.iter().enumerate() {
            if i != j && a.divides(b) {
                return Err(JanetError::NotAutoReduced(*a, *b));
            }
        }
    }
    let mut pairs = Vec::new();
    let mut prev: Option<Monomial> = None;
    for (e, lm) in sorted.into_iter().zip(lms) {
        match prev {
            Some(p) if p.sheet == lm.sheet => {
                for k in (0..p.k - lm.k).rev() {
                    pairs.push(ConePair::new(e.shift_left(k, 0), Mult::SIGMA, ord));
                }
            }
            _ => pairs.push(ConePair::new(e, Mult::FULL, ord)),
        }
        prev = Some(lm);
    }
    Ok(JanetSet::from_pairs(&field, twist, d, ord.clone(), pairs))
}

/// Replaces elements by their normal forms modulo the others until stable.
/// Zeros are dropped; the result is sorted by descending leading monomial.
pub fn auto_reduce(g: &[ModElem], ord: &OrderSpec) -> Vec<ModElem> {
    match auto_reduce_capped(g, ord, None) {
        Ok(v) => v,
        Err(_) => unreachable!("reduction without a cap cannot fail"),
    }
}

fn auto_reduce_capped(g: &[ModElem], ord: &OrderSpec, cap: Option<usize>) -> Result<Vec<ModElem>, JanetError> {
    let mut g: Vec<ModElem> = g.iter().filter(|e| !e.is_zero()).cloned().collect();
    sort_desc(&mut g, ord);
    'outer: loop {
        let pairs = full_pairs(&g, ord);
        for i in 0..g.len() {
            let h = reduce(&g[i], &pairs, Some(i), ord, cap)?;
            if h != g[i] {
                if h.is_zero() {
                    g.remove(i);
                } else {
                    g[i] = h;
                }
                sort_desc(&mut g, ord);
                continue 'outer;
            }
        }
        return Ok(g);
    }
}

/// Completes `g` to a certified Janet basis of the submodule it generates.
pub fn janet_algorithm(g: &[ModElem], ord: &OrderSpec, max_rounds: usize) -> Result<JanetSet, JanetError> {
    janet_algorithm_capped(g, ord, max_rounds, None)
}

/// As [`janet_algorithm`], but gives up once a coefficient needs more than
/// `cap` stored `θ`-coefficients.
pub fn janet_algorithm_capped(g: &[ModElem], ord: &OrderSpec, max_rounds: usize, cap: Option<usize>) -> Result<JanetSet, JanetError> {
    let mut current: Vec<ModElem> = g.to_vec();
    let mut last: Option<JanetSet> = None;
    for round in 1..=max_rounds {
        let reduced = auto_reduce_capped(&current, ord, cap)?;
        let mut j = janet_decomposition(&reduced, ord)?;
        let mut p = Vec::new();
        for pair in &j.pairs {
            if !pair.mu.rho {
                let h = reduce(&pair.elem.shift_left(1, 0), &j.pairs, None, ord, cap)?;
                if !h.is_zero() {
                    p.push(h);
                }
            }
            if !pair.mu.sigma {
                let h = reduce(&pair.elem.shift_left(0, 1), &j.pairs, None, ord, cap)?;
                if !h.is_zero() {
                    p.push(h);
                }
            }
        }
        if p.is_empty() {
            j.certified = true;
            j.rounds = round;
            return Ok(j);
        }
        current = j.pairs.iter().map(|pr| pr.elem.clone()).chain(p).collect();
        last = Some(j);
    }
    Err(JanetError::MaxRounds { rounds: max_rounds, partial: Box::new(last.expect("at least one round")) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::skew::SkewPoly;

    /// `g1 = ρ²κ1 + (θ - σ²)κ2`, `g2 = (θ - σ²)κ1 + κ2`,
    /// `g3 = (ρ² - (σ² - θ)(σ² - θ^(q²)))κ2` with `γ_ρ = Frob`, `γ_σ = id`.
    fn running(f: &Field) -> Vec<ModElem> {
        let tw = TwistPair::TAU_T;
        let th = FieldElem::theta(f);
        let one = FieldElem::one(f);
        let mono = |c: &FieldElem, k, j| SkewPoly::monomial(f, tw, c.clone(), k, j);
        let lin = |c: &FieldElem| mono(&one, 0, 2).sub(&mono(c, 0, 0));
        let g1 = ModElem::from_components(f, tw, &[mono(&one, 2, 0), lin(&th).neg()]);
        let g2 = ModElem::from_components(f, tw, &[lin(&th).neg(), mono(&one, 0, 0)]);
        let g3 = ModElem::from_components(
            f,
            tw,
            &[SkewPoly::zero(f, tw), mono(&one, 2, 0).sub(&lin(&th).mul(&lin(&th.frobenius(2))))],
        );
        vec![g1, g2, g3]
    }

    #[test]
    fn running_example_is_one_round() {
        let f = Field::prime(3).unwrap();
        let ord = OrderSpec::identity(2);
        let g = running(&f);
        assert_eq!(auto_reduce(&g, &ord), g);
        let j = janet_algorithm(&g, &ord, DEFAULT_MAX_ROUNDS).unwrap();
        assert_eq!(j.rounds(), 1);
        let expect = [
            (g[0].clone(), Mult::FULL),
            (g[1].shift_left(1, 0), Mult::SIGMA),
            (g[1].clone(), Mult::SIGMA),
            (g[2].clone(), Mult::FULL),
        ];
        let got: Vec<(ModElem, Mult)> = j.pairs().iter().map(|p| (p.elem().clone(), p.mu())).collect();
        assert_eq!(got, expect);
        assert!(normal_form(&g[1].shift_left(2, 0), &j).is_zero());
    }

    #[test]
    fn zero_reduces_to_zero() {
        let f = Field::prime(3).unwrap();
        let ord = OrderSpec::identity(2);
        let g = running(&f);
        let j = janet_decomposition(&g[..1], &ord).unwrap();
        assert_eq!(j.pairs().len(), 1);
        assert_eq!(j.pairs()[0].mu(), Mult::FULL);
        assert!(normal_form(&ModElem::zero(&f, TwistPair::TAU_T, 2), &j).is_zero());
    }

    #[test]
    fn normal_form_is_idempotent_and_reduced() {
        let f = Field::prime(3).unwrap();
        let ord = OrderSpec::identity(2);
        let j = janet_algorithm(&running(&f), &ord, DEFAULT_MAX_ROUNDS).unwrap();
        let x = ModElem::term(&f, TwistPair::TAU_T, 2, Monomial::new(0, 3, 4), FieldElem::theta(&f))
            .add(&ModElem::term(&f, TwistPair::TAU_T, 2, Monomial::new(1, 2, 5), FieldElem::one(&f)));
        let h = normal_form(&x, &j);
        assert_eq!(normal_form(&h, &j), h);
        assert!(h.terms().all(|(m, _)| !j.covers(m)));
    }

    #[test]
    fn auto_reduce_cancels() {
        let f = Field::prime(3).unwrap();
        let tw = TwistPair::TAU_T;
        let ord = OrderSpec::identity(2);
        let k1 = ModElem::basis(&f, tw, 2, 0);
        let k2 = ModElem::basis(&f, tw, 2, 1);
        let out = auto_reduce(&[k1.clone(), k1.add(&k2)], &ord);
        assert_eq!(out, vec![k1, k2]);
    }

    #[test]
    fn divisibility_is_rejected() {
        let f = Field::prime(3).unwrap();
        let tw = TwistPair::TAU_T;
        let ord = OrderSpec::identity(1);
        let k1 = ModElem::basis(&f, tw, 1, 0);
        let r = janet_decomposition(&[k1.clone(), k1.shift_left(1, 0)], &ord);
        assert!(matches!(r, Err(JanetError::NotAutoReduced(..))));
    }

    #[test]
    fn max_rounds_carries_partial_state() {
        let f = Field::prime(3).unwrap();
        let tw = TwistPair::TAU_T;
        let ord = OrderSpec::identity(1);
        let th = FieldElem::theta(&f);
        let g = ModElem::from_components(
            &f,
            tw,
            &[SkewPoly::monomial(&f, tw, FieldElem::one(&f), 1, 1).add(&SkewPoly::monomial(&f, tw, th, 0, 0))],
        );
        let h = ModElem::from_components(&f, tw, &[SkewPoly::monomial(&f, tw, FieldElem::one(&f), 2, 0)]);
        let full = janet_algorithm(&[g.clone(), h.clone()], &ord, DEFAULT_MAX_ROUNDS).unwrap();
        if full.rounds() > 1 {
            match janet_algorithm(&[g, h], &ord, 1) {
                Err(JanetError::MaxRounds { rounds: 1, partial }) => assert!(!partial.pairs().is_empty()),
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
