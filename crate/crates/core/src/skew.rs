//! Skew polynomial rings `K{ρ,σ}` with commuting variables twisted by
//! Frobenius powers, and their one-variable subrings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("twist mismatch: {0:?} vs {1:?}")]
    TwistMismatch(TwistPair, TwistPair),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not univariate in the requested variable")]
    NotUnivariate,
}

/// Frobenius exponents of the two twist endomorphisms: `ρ·x = x^(q^rho)·ρ`
/// and `σ·x = x^(q^sigma)·σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistPair {
    pub rho: i32,
    pub sigma: i32,
}

impl TwistPair {
    /// `K{τ,t}`: the ring acting on t-motives.
    pub const TAU_T: TwistPair = TwistPair { rho: 1, sigma: 0 };
    /// `K{σ,t}`: the ring acting on t-comotives.
    pub const SIGMA_T: TwistPair = TwistPair { rho: -1, sigma: 0 };
    /// `K{t,τ}`: motives viewed from the `t` side.
    pub const T_TAU: TwistPair = TwistPair { rho: 0, sigma: 1 };
    /// `K{t,σ}`: comotives viewed from the `t` side.
    pub const T_SIGMA: TwistPair = TwistPair { rho: 0, sigma: -1 };

    pub fn new(rho: i32, sigma: i32) -> TwistPair {
        TwistPair { rho, sigma }
    }

    /// Frobenius exponent picked up by moving a coefficient past `ρ^k σ^j`.
    pub fn shift(&self, k: u32, j: u32) -> i32 {
        self.rho * k as i32 + self.sigma * j as i32
    }

    /// Display names of the two variables.
    pub fn names(&self) -> (&'static str, &'static str) {
        let r = var_name(self.rho).unwrap_or("r");
        let s = var_name(self.sigma).unwrap_or("s");
        if r == s {
            ("r", "s")
        } else {
            (r, s)
        }
    }

    /// The twist pair of the opposite ring reached by [`SkewPoly::star`].
    pub fn opposite(&self) -> TwistPair {
        TwistPair { rho: -self.rho, sigma: -self.sigma }
    }
}

/// Name of a single variable with the given twist.
pub fn var_name(twist: i32) -> Option<&'static str> {
    match twist {
        1 => Some("tau"),
        -1 => Some("sigma"),
        0 => Some("t"),
        _ => None,
    }
}

/// `true` if the string is a sum at top level and needs parentheses when
/// used as a factor.
pub(crate) fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ' ' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Renders `coeff * monomial`, where `mono` is already rendered ("" for 1).
pub(crate) fn render_term(coeff: &FieldElem, mono: &str) -> String {
    let c = coeff.to_string();
    if mono.is_empty() {
        return c;
    }
    if c == "1" {
        return mono.to_string();
    }
    if c == "-1" {
        return format!("-{mono}");
    }
    if needs_parens(&c) {
        format!("({c})*{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

pub(crate) fn render_power(var: &str, k: u32) -> Option<String> {
    match k {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{k}")),
    }
}

/// An element of `K{ρ,σ}`: a finite sum of terms `x·ρ^k·σ^j`.
///
/// Terms are keyed by `(k, j)`; the map order is the lexicographic monomial
/// order with `ρ` dominant, so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    field: Field,
    twist: TwistPair,
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl SkewPoly {
    pub fn zero(field: &Field, twist: TwistPair) -> SkewPoly {
        SkewPoly { field: field.clone(), twist, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, twist: TwistPair, c: FieldElem) -> SkewPoly {
        SkewPoly::monomial(field, twist, c, 0, 0)
    }

    pub fn one(field: &Field, twist: TwistPair) -> SkewPoly {
        SkewPoly::constant(field, twist, FieldElem::one(field))
    }

    /// `c·ρ^k·σ^j`.
    pub fn monomial(field: &Field, twist: TwistPair, c: FieldElem, k: u32, j: u32) -> SkewPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((k, j), c);
        }
        SkewPoly { field: field.clone(), twist, terms }
    }

    pub fn rho(field: &Field, twist: TwistPair) -> SkewPoly {
        SkewPoly::monomial(field, twist, FieldElem::one(field), 1, 0)
    }

    pub fn sigma(field: &Field, twist: TwistPair) -> SkewPoly {
        SkewPoly::monomial(field, twist, FieldElem::one(field), 0, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn twist(&self) -> TwistPair {
        self.twist
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: u32, j: u32) -> Option<&FieldElem> {
        self.terms.get(&(k, j))
    }

    /// Leading exponent and coefficient.
    pub fn leading(&self) -> Option<((u32, u32), &FieldElem)> {
        self.terms.iter().next_back().map(|(&m, c)| (m, c))
    }

    pub fn rho_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(k, _)| k).max()
    }

    pub fn sigma_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Adds `c·ρ^k·σ^j` in place.
    pub fn add_term(&mut self, k: u32, j: u32, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(k, j)) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.terms.remove(&(k, j));
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert((k, j), c.clone());
            }
        }
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (&(k, j), c) in &other.terms {
            out.add_term(k, j, c);
        }
        out
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            field: self.field.clone(),
            twist: self.twist,
            terms: self.terms.iter().map(|(&m, c)| (m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        let mut out = self.clone();
        for (&(k, j), c) in &other.terms {
            out.add_term(k, j, &c.neg());
        }
        out
    }

    /// Product under the twisted commutation rules; errors on twist mismatch.
    pub fn try_mul(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        if self.twist != other.twist {
            return Err(SkewError::TwistMismatch(self.twist, other.twist));
        }
        let mut out = SkewPoly::zero(&self.field, self.twist);
        for (&(k, j), x) in &self.terms {
            let shift = self.twist.shift(k, j);
            for (&(l, m), y) in &other.terms {
                out.add_term(k + l, j + m, &x.mul(&y.frobenius(shift)));
            }
        }
        Ok(out)
    }

    /// Product; panics if the twists differ. See [`SkewPoly::try_mul`].
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        self.try_mul(other).expect("skew product of polynomials from different rings")
    }

    /// `c·f`.
    pub fn scale_left(&self, c: &FieldElem) -> SkewPoly {
        if c.is_zero() {
            return SkewPoly::zero(&self.field, self.twist);
        }
        SkewPoly {
            field: self.field.clone(),
            twist: self.twist,
            terms: self.terms.iter().map(|(&m, x)| (m, c.mul(x))).collect(),
        }
    }

    /// `ρ^k σ^j · f`.
    pub fn shift_left(&self, k: u32, j: u32) -> SkewPoly {
        let s = self.twist.shift(k, j);
        SkewPoly {
            field: self.field.clone(),
            twist: self.twist,
            terms: self.terms.iter().map(|(&(a, b), x)| ((a + k, b + j), x.frobenius(s))).collect(),
        }
    }

    /// Applies `Frob^power` to every coefficient, leaving the variables alone.
    pub fn coeff_twist(&self, power: i32) -> SkewPoly {
        SkewPoly {
            field: self.field.clone(),
            twist: self.twist,
            terms: self.terms.iter().map(|(&m, x)| (m, x.frobenius(power))).collect(),
        }
    }

    /// The anti-isomorphism onto the opposite ring: `x·ρ^kσ^j ↦ ρ'^kσ'^j·x`
    /// rewritten with coefficients on the left. For a `τ`-polynomial this is
    /// `Σ a_i τ^i ↦ Σ a_i^(1/q^i) σ^i`.
    pub fn star(&self) -> SkewPoly {
        let twist = self.twist.opposite();
        SkewPoly {
            field: self.field.clone(),
            twist,
            terms: self.terms.iter().map(|(&(k, j), x)| ((k, j), x.frobenius(twist.shift(k, j)))).collect(),
        }
    }

    /// Largest perfection level among the coefficients.
    pub fn max_level(&self) -> u32 {
        self.terms.values().map(|c| c.level()).max().unwrap_or(0)
    }

    /// View as a polynomial in `ρ` (requires no `σ`).
    pub fn as_rho_poly(&self) -> Result<OrePoly, SkewError> {
        let mut coeffs = Vec::new();
        for (&(k, j), c) in &self.terms {
            if j != 0 {
                return Err(SkewError::NotUnivariate);
            }
            if coeffs.len() <= k as usize {
                coeffs.resize(k as usize + 1, FieldElem::zero(&self.field));
            }
            coeffs[k as usize] = c.clone();
        }
        Ok(OrePoly::from_coeffs(&self.field, self.twist.rho, coeffs))
    }

    /// View as a polynomial in `σ` (requires no `ρ`).
    pub fn as_sigma_poly(&self) -> Result<OrePoly, SkewError> {
        let mut coeffs = Vec::new();
        for (&(k, j), c) in &self.terms {
            if k != 0 {
                return Err(SkewError::NotUnivariate);
            }
            if coeffs.len() <= j as usize {
                coeffs.resize(j as usize + 1, FieldElem::zero(&self.field));
            }
            coeffs[j as usize] = c.clone();
        }
        Ok(OrePoly::from_coeffs(&self.field, self.twist.sigma, coeffs))
    }

    /// Right division `f = q·g + r` of univariate polynomials in the same
    /// variable.
    pub fn right_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly), SkewError> {
        if self.twist != g.twist {
            return Err(SkewError::TwistMismatch(self.twist, g.twist));
        }
        let rho_ok = self.sigma_degree().unwrap_or(0) == 0 && g.sigma_degree().unwrap_or(0) == 0;
        if rho_ok {
            let (q, r) = self.as_rho_poly()?.right_divmod(&g.as_rho_poly()?)?;
            return Ok((q.to_skew_rho(self.twist), r.to_skew_rho(self.twist)));
        }
        let (q, r) = self.as_sigma_poly()?.right_divmod(&g.as_sigma_poly()?)?;
        Ok((q.to_skew_sigma(self.twist), r.to_skew_sigma(self.twist)))
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (rn, sn) = self.twist.names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(k, j), c)| {
                let mono: Vec<String> = [render_power(rn, k), render_power(sn, j)].into_iter().flatten().collect();
                render_term(c, &mono.join("*"))
            })
            .collect();
        write!(f, "{}", crate::coeff::join_signed(&parts))
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A univariate skew polynomial `Σ a_i X^i` with `X·x = x^(q^twist)·X`.
#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly {
    field: Field,
    twist: i32,
    coeffs: Vec<FieldElem>,
}

impl OrePoly {
    pub fn zero(field: &Field, twist: i32) -> OrePoly {
        OrePoly { field: field.clone(), twist, coeffs: Vec::new() }
    }

    pub fn one(field: &Field, twist: i32) -> OrePoly {
        OrePoly::constant(field, twist, FieldElem::one(field))
    }

    pub fn constant(field: &Field, twist: i32, c: FieldElem) -> OrePoly {
        OrePoly::from_coeffs(field, twist, vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(field: &Field, twist: i32, c: FieldElem, k: usize) -> OrePoly {
        let mut coeffs = vec![FieldElem::zero(field); k + 1];
        coeffs[k] = c;
        OrePoly::from_coeffs(field, twist, coeffs)
    }

    pub fn var(field: &Field, twist: i32) -> OrePoly {
        OrePoly::monomial(field, twist, FieldElem::one(field), 1)
    }

    /// Coefficients low to high; trailing zeros are dropped.
    pub fn from_coeffs(field: &Field, twist: i32, mut coeffs: Vec<FieldElem>) -> OrePoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        OrePoly { field: field.clone(), twist, coeffs }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn twist(&self) -> i32 {
        self.twist
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElem::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Nonzero constants are exactly the units.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &OrePoly) -> OrePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        OrePoly::from_coeffs(&self.field, self.twist, coeffs)
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly { field: self.field.clone(), twist: self.twist, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, other: &OrePoly) -> OrePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        OrePoly::from_coeffs(&self.field, self.twist, coeffs)
    }

    pub fn mul(&self, other: &OrePoly) -> OrePoly {
        assert_eq!(self.twist, other.twist, "Ore product across different twists");
        if self.is_zero() || other.is_zero() {
            return OrePoly::zero(&self.field, self.twist);
        }
        let mut out = vec![FieldElem::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let s = self.twist * i as i32;
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(&b.frobenius(s)));
            }
        }
        OrePoly::from_coeffs(&self.field, self.twist, out)
    }

    /// `c·f`.
    pub fn scale_left(&self, c: &FieldElem) -> OrePoly {
        let coeffs = self.coeffs.iter().map(|x| c.mul(x)).collect();
        OrePoly::from_coeffs(&self.field, self.twist, coeffs)
    }

    /// `f·c`.
    pub fn scale_right(&self, c: &FieldElem) -> OrePoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, x)| x.mul(&c.frobenius(self.twist * i as i32)))
            .collect();
        OrePoly::from_coeffs(&self.field, self.twist, coeffs)
    }

    pub fn coeff_twist(&self, power: i32) -> OrePoly {
        OrePoly {
            field: self.field.clone(),
            twist: self.twist,
            coeffs: self.coeffs.iter().map(|c| c.frobenius(power)).collect(),
        }
    }

    /// `Σ a_i X^i ↦ Σ Frob^(-twist·i)(a_i) Y^i` in the ring with the opposite
    /// twist. An involutive anti-isomorphism.
    pub fn star(&self) -> OrePoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.frobenius(-self.twist * i as i32))
            .collect();
        OrePoly { field: self.field.clone(), twist: -self.twist, coeffs }
    }

    /// Right division `f = q·g + r` with `deg r < deg g`. Needs no `q`-th roots.
    pub fn right_divmod(&self, g: &OrePoly) -> Result<(OrePoly, OrePoly), SkewError> {
        let gd = g.degree().ok_or(SkewError::DivisionByZero)?;
        let glead = g.lead().unwrap();
        let mut r = self.clone();
        let mut q = vec![FieldElem::zero(&self.field); self.coeffs.len().saturating_sub(gd)];
        while let Some(rd) = r.degree() {
            if rd < gd {
                break;
            }
            let m = rd - gd;
            let c = r.lead().unwrap().div(&glead.frobenius(self.twist * m as i32)).unwrap();
            r = r.sub(&OrePoly::monomial(&self.field, self.twist, c.clone(), m).mul(g));
            q[m] = c;
        }
        Ok((OrePoly::from_coeffs(&self.field, self.twist, q), r))
    }

    /// Left division `f = g·q + r` with `deg r < deg g`. Uses `q`-th roots
    /// when the twist is positive, which may raise the perfection level.
    pub fn left_divmod(&self, g: &OrePoly) -> Result<(OrePoly, OrePoly), SkewError> {
        let gd = g.degree().ok_or(SkewError::DivisionByZero)?;
        let glead = g.lead().unwrap();
        let mut r = self.clone();
        let mut q = vec![FieldElem::zero(&self.field); self.coeffs.len().saturating_sub(gd)];
        while let Some(rd) = r.degree() {
            if rd < gd {
                break;
            }
            let m = rd - gd;
            let c = r.lead().unwrap().div(glead).unwrap().frobenius(-self.twist * gd as i32);
            r = r.sub(&g.mul(&OrePoly::monomial(&self.field, self.twist, c.clone(), m)));
            q[m] = c;
        }
        Ok((OrePoly::from_coeffs(&self.field, self.twist, q), r))
    }

    pub fn max_level(&self) -> u32 {
        self.coeffs.iter().map(|c| c.level()).max().unwrap_or(0)
    }

    pub fn to_skew_rho(&self, twist: TwistPair) -> SkewPoly {
        let mut p = SkewPoly::zero(&self.field, twist);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(i as u32, 0, c);
        }
        p
    }

    pub fn to_skew_sigma(&self, twist: TwistPair) -> SkewPoly {
        let mut p = SkewPoly::zero(&self.field, twist);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(0, i as u32, c);
        }
        p
    }

    /// Renders with an explicit variable name.
    pub fn render(&self, var: &str) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| render_term(c, &render_power(var, i as u32).unwrap_or_default()))
            .collect();
        crate::coeff::join_signed(&parts)
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(var_name(self.twist).unwrap_or("X")))
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn th(f: &Field) -> FieldElem {
        FieldElem::theta(f)
    }

    #[test]
    fn tau_moves_past_theta() {
        let f = f3();
        let tau = SkewPoly::rho(&f, TwistPair::TAU_T);
        let theta = SkewPoly::constant(&f, TwistPair::TAU_T, th(&f));
        let p = tau.mul(&theta);
        assert_eq!(p, SkewPoly::monomial(&f, TwistPair::TAU_T, th(&f).pow(3), 1, 0));
        let t = SkewPoly::sigma(&f, TwistPair::TAU_T);
        assert_eq!(t.mul(&theta), theta.mul(&t));
    }

    #[test]
    fn expand_product() {
        let f = f3();
        let tw = TwistPair::TAU_T;
        let tau = SkewPoly::rho(&f, tw);
        let theta = SkewPoly::constant(&f, tw, th(&f));
        let p = tau.add(&theta).mul(&tau.sub(&theta));
        let expected = SkewPoly::monomial(&f, tw, FieldElem::one(&f), 2, 0)
            .add(&SkewPoly::monomial(&f, tw, th(&f).sub(&th(&f).pow(3)), 1, 0))
            .sub(&SkewPoly::constant(&f, tw, th(&f).pow(2)));
        assert_eq!(p, expected);
        assert!(p.mul(&tau).try_mul(&SkewPoly::rho(&f, TwistPair::SIGMA_T)).is_err());
    }

    #[test]
    fn twist_coefficients() {
        let f = f3();
        let t = OrePoly::var(&f, 0);
        let lin = |c: FieldElem| t.sub(&OrePoly::constant(&f, 0, c));
        let p = lin(th(&f));
        assert_eq!(p.coeff_twist(1), lin(th(&f).pow(3)));
        assert_eq!(p.coeff_twist(0), p);
        let prod = lin(th(&f)).mul(&lin(th(&f).pow(3)));
        assert_eq!(prod.coeff_twist(-1), lin(th(&f).frobenius(-1)).mul(&lin(th(&f))));
    }

    #[test]
    fn right_division_examples() {
        let f = f3();
        let tau = OrePoly::var(&f, 1);
        let (q, r) = tau.mul(&tau).right_divmod(&tau).unwrap();
        assert_eq!((q, r.is_zero()), (tau.clone(), true));

        let t = OrePoly::var(&f, 0);
        let a = t.sub(&OrePoly::constant(&f, 0, th(&f)));
        let b = t.sub(&OrePoly::constant(&f, 0, th(&f).pow(3)));
        let (q, r) = a.mul(&b).right_divmod(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());

        let one = FieldElem::one(&f);
        let fpoly = tau.mul(&tau).add(&OrePoly::monomial(&f, 1, th(&f), 1));
        let g = tau.add(&OrePoly::one(&f, 1));
        let (q, r) = fpoly.right_divmod(&g).unwrap();
        assert_eq!(q, tau.add(&OrePoly::constant(&f, 1, th(&f).sub(&one))));
        assert_eq!(r, OrePoly::constant(&f, 1, one.sub(&th(&f))));
        assert_eq!(q.mul(&g).add(&r), fpoly);
    }

    #[test]
    fn left_division_uses_roots() {
        let f = f3();
        let tau = OrePoly::var(&f, 1);
        let fpoly = OrePoly::monomial(&f, 1, th(&f), 1);
        let (q, r) = fpoly.left_divmod(&tau).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.max_level(), 1);
        assert_eq!(tau.mul(&q), fpoly);
    }

    #[test]
    fn star_examples() {
        let f = f3();
        let tau = OrePoly::var(&f, 1);
        let sigma = OrePoly::var(&f, -1);
        assert_eq!(tau.star(), sigma);
        assert_eq!(OrePoly::one(&f, 1).add(&tau).star(), OrePoly::one(&f, -1).add(&sigma));
        let x = OrePoly::monomial(&f, 1, th(&f), 2);
        assert_eq!(x.star(), OrePoly::monomial(&f, -1, th(&f).frobenius(-2), 2));
        let y = OrePoly::monomial(&f, 1, th(&f), 1);
        assert_eq!(tau.mul(&y).star(), y.star().mul(&tau.star()));
        assert_eq!(x.star().star(), x);
    }

    #[test]
    fn render_names() {
        let f = f3();
        let tw = TwistPair::TAU_T;
        let p = SkewPoly::monomial(&f, tw, th(&f).add(&FieldElem::one(&f)), 2, 1)
            .sub(&SkewPoly::sigma(&f, tw));
        assert_eq!(p.to_string(), "(T + 1)*tau^2*t - t");
    }
}
