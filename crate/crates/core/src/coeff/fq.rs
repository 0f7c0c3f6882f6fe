//! Finite fields `F_q` with `q = p^n`.
//!
//! Elements are encoded as integers in `0..q`: the base-`p` digits are the
//! coefficients (low to high) of the residue polynomial modulo a fixed monic
//! irreducible of degree `n`. Prime-power fields multiply through log/exp
//! tables built from a primitive element.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use super::CoeffError;

/// Largest prime-power order (with `n > 1`) for which tables are built.
pub const MAX_TABLE_ORDER: u32 = 4096;

/// An element of `F_q`, encoded as described in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FqElem(pub u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Built-in irreducible polynomials (coefficients low to high, monic) for
/// the prime-power orders up to 16.
fn builtin_modulus(p: u32, n: u32) -> Option<Vec<u32>> {
    match (p, n) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The finite field itself. Shared through [`Field`].
pub struct GaloisField {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Cheaply clonable handle to a [`GaloisField`].
#[derive(Clone)]
pub struct Field(Arc<GaloisField>);

impl Deref for Field {
    type Target = GaloisField;

    fn deref(&self) -> &GaloisField {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p == other.p && self.n == other.n && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field, CoeffError> {
        Field::new(p, 1)
    }

    /// `F_{p^n}` with a built-in modulus (or the first irreducible found by
    /// search when no table entry exists).
    pub fn new(p: u32, n: u32) -> Result<Field, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        if n == 0 {
            return Err(CoeffError::BadModulus("extension degree must be at least 1".into()));
        }
        if n == 1 {
            return Field::with_modulus(p, vec![0, 1]);
        }
        let modulus = match builtin_modulus(p, n) {
            Some(m) => m,
            None => search_irreducible(p, n)?,
        };
        Field::with_modulus(p, modulus)
    }

    /// `F_{p^n}` from an explicit monic irreducible of degree `n`
    /// (coefficients low to high).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(CoeffError::BadModulus("modulus must have degree at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(CoeffError::BadModulus(format!("coefficients must lie in 0..{p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(CoeffError::BadModulus("modulus must be monic".into()));
        }
        let n = (modulus.len() - 1) as u32;
        if n == 1 {
            // the field structure does not depend on the linear modulus
            return Ok(Field(Arc::new(GaloisField {
                p,
                n,
                q: p,
                modulus: vec![0, 1],
                exp: Vec::new(),
                log: Vec::new(),
            })));
        }
        let q = (p as u64).pow(n);
        if q > MAX_TABLE_ORDER as u64 {
            return Err(CoeffError::UnsupportedField { p, n });
        }
        let q = q as u32;
        let mut gf = GaloisField { p, n, q, modulus, exp: Vec::new(), log: Vec::new() };
        gf.build_tables()?;
        Ok(Field(Arc::new(gf)))
    }
}

fn search_irreducible(p: u32, n: u32) -> Result<Vec<u32>, CoeffError> {
    let q = (p as u64).pow(n);
    if q > MAX_TABLE_ORDER as u64 {
        return Err(CoeffError::UnsupportedField { p, n });
    }
    // enumerate monic polynomials x^n + lower, lower encoded base p
    for code in 0..(p as u64).pow(n) {
        let mut coeffs = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        if Field::with_modulus(p, coeffs.clone()).is_ok() {
            return Ok(coeffs);
        }
    }
    Err(CoeffError::UnsupportedField { p, n })
}

impl GaloisField {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// The order `q` of the field.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// The defining modulus over `F_p`, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut a = a;
        for _ in 0..self.n {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &x| acc * self.p + x)
    }

    /// Multiplication of residue polynomials, used only while building tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, &m) in self.modulus[..n].iter().enumerate() {
                let idx = top - n + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let res: Vec<u32> = prod[..n].iter().map(|&x| x as u32).collect();
        self.undigits(&res)
    }

    fn build_tables(&mut self) -> Result<(), CoeffError> {
        let order = self.q - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut seen = vec![false; self.q as usize];
            let mut x = 1u32;
            let mut ok = true;
            for _ in 0..order {
                if x == 0 || seen[x as usize] {
                    ok = false;
                    break;
                }
                seen[x as usize] = true;
                exp.push(x);
                x = self.slow_mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        Err(CoeffError::BadModulus("modulus is not irreducible".into()))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FqElem {
        FqElem(v.rem_euclid(self.p as i64) as u32)
    }

    /// The class of `x` in `F_p[x]/(modulus)`; only meaningful when `n > 1`.
    pub fn generator(&self) -> FqElem {
        if self.n == 1 {
            FqElem::ONE
        } else {
            FqElem(self.p)
        }
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.n == 1 {
            return FqElem(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32);
        }
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.n == 1 {
            return FqElem((self.p - a.0 % self.p) % self.p);
        }
        if self.p == 2 {
            return a;
        }
        let d: Vec<u32> = self.digits(a.0).iter().map(|&x| (self.p - x) % self.p).collect();
        FqElem(self.undigits(&d))
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.n == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let order = self.q - 1;
        let l = (self.log[a.0 as usize] + self.log[b.0 as usize]) % order;
        FqElem(self.exp[l as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        if self.n == 1 {
            return Some(self.pow(a, (self.p - 2) as u64));
        }
        let order = self.q - 1;
        let l = (order - self.log[a.0 as usize]) % order;
        Some(FqElem(self.exp[l as usize]))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `true` when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: FqElem) -> bool {
        a.0 < self.p
    }

    /// Residue digits of an element (coefficients of the generator powers).
    pub fn coordinates(&self, a: FqElem) -> Vec<u32> {
        self.digits(a.0)
    }

    /// Render an element: symmetric integers for the prime subfield, a
    /// polynomial in `a` otherwise.
    pub fn render(&self, a: FqElem) -> String {
        if self.is_prime_subfield(a) {
            return render_int(a.0, self.p);
        }
        let digits = self.digits(a.0);
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            let coeff = render_int(c, self.p);
            let term = if var.is_empty() {
                coeff
            } else if coeff == "1" {
                var
            } else if coeff == "-1" {
                format!("-{var}")
            } else {
                format!("{coeff}*{var}")
            };
            parts.push(term);
        }
        join_signed(&parts)
    }
}

fn render_int(v: u32, p: u32) -> String {
    if p > 2 && v > p / 2 {
        format!("-{}", p - v)
    } else {
        v.to_string()
    }
}

/// Joins rendered terms into a sum, folding leading minus signs.
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, t) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(f: &Field) {
        let q = f.order();
        for a in 0..q {
            let a = FqElem(a);
            assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
            if a.0 != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
            }
            // Frobenius x -> x^q is the identity
            assert_eq!(f.pow(a, q as u64), a);
        }
    }

    #[test]
    fn small_fields_are_fields() {
        for (p, n) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (2, 4), (3, 2), (5, 2)] {
            let f = Field::new(p, n).unwrap();
            assert_eq!(f.order(), p.pow(n));
            check_field_axioms(&f);
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(Field::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(Field::new(4, 1).is_err());
        assert!(Field::with_modulus(3, vec![1, 1]).is_ok());
    }

    #[test]
    fn render_symmetric() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.render(FqElem(4)), "-1");
        assert_eq!(f.render(FqElem(2)), "2");
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.render(f4.generator()), "a");
        assert_eq!(f4.render(FqElem(3)), "a + 1");
    }
}
