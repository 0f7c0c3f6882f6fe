use std::fmt;
use std::hash::{Hash, Hasher};

use super::fq::{join_signed, Field, FqElem};
use super::upoly::{self, Poly};
use super::CoeffError;

/// An element of `F_q(θ^{1/q^e})`, stored as a reduced fraction `num/den` of
/// polynomials in `u = θ^{1/q^e}`.
///
/// Values are always canonical: `den` is monic, the fraction is reduced, and
/// the level `e` is as small as possible. Structural equality is therefore
/// value equality.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    level: u32,
    num: Poly,
    den: Poly,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &FieldElem) -> bool {
        self.level == other.level && self.num == other.num && self.den == other.den
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.level.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElem {
    pub fn zero(field: &Field) -> FieldElem {
        FieldElem { field: field.clone(), level: 0, num: Vec::new(), den: vec![FqElem::ONE] }
    }

    pub fn one(field: &Field) -> FieldElem {
        FieldElem::from_fq(field, FqElem::ONE)
    }

    /// The transcendental `θ`.
    pub fn theta(field: &Field) -> FieldElem {
        FieldElem { field: field.clone(), level: 0, num: vec![FqElem::ZERO, FqElem::ONE], den: vec![FqElem::ONE] }
    }

    pub fn from_int(field: &Field, v: i64) -> FieldElem {
        FieldElem::from_fq(field, field.from_int(v))
    }

    pub fn from_fq(field: &Field, c: FqElem) -> FieldElem {
        FieldElem { field: field.clone(), level: 0, num: upoly::constant(c), den: vec![FqElem::ONE] }
    }

    /// `c · θ^(exp / q^level)`.
    pub fn monomial(field: &Field, c: FqElem, exp: u64, level: u32) -> FieldElem {
        let mut num = vec![FqElem::ZERO; exp as usize + 1];
        num[exp as usize] = c;
        FieldElem::canonical(field.clone(), level, upoly::trim(num), vec![FqElem::ONE])
    }

    /// Polynomial in `θ` from coefficients low to high.
    pub fn from_coeffs(field: &Field, coeffs: &[FqElem]) -> FieldElem {
        FieldElem::canonical(field.clone(), 0, upoly::trim(coeffs.to_vec()), vec![FqElem::ONE])
    }

    /// Builds `num/den` at the given level and canonicalizes.
    pub fn from_fraction(field: &Field, level: u32, num: &[FqElem], den: &[FqElem]) -> Result<FieldElem, CoeffError> {
        let den = upoly::trim(den.to_vec());
        if den.is_empty() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(FieldElem::canonical(field.clone(), level, upoly::trim(num.to_vec()), den))
    }

    fn canonical(field: Field, mut level: u32, mut num: Poly, mut den: Poly) -> FieldElem {
        if num.is_empty() {
            return FieldElem::zero(&field);
        }
        if den.len() > 1 {
            let g = upoly::gcd(&field, &num, &den);
            if g.len() > 1 {
                num = upoly::divmod(&field, &num, &g).0;
                den = upoly::divmod(&field, &den, &g).0;
            }
        }
        let lc = *den.last().unwrap();
        if lc != FqElem::ONE {
            let inv = field.inv(lc).unwrap();
            num = upoly::scale(&field, &num, inv);
            den = upoly::scale(&field, &den, inv);
        }
        let q = field.order() as u64;
        while level > 0 {
            match (upoly::compress(&num, q), upoly::compress(&den, q)) {
                (Some(n), Some(d)) => {
                    num = n;
                    den = d;
                    level -= 1;
                }
                _ => break,
            }
        }
        FieldElem { field, level, num, den }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Perfection level: the value lives in `F_q(θ^{1/q^level})`.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Numerator coefficients in `θ^{1/q^level}`, low to high.
    pub fn numerator(&self) -> &[FqElem] {
        &self.num
    }

    pub fn denominator(&self) -> &[FqElem] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.len() == 1 && self.num.len() == 1 && self.num[0] == FqElem::ONE
    }

    /// `true` when the value lies in `F_q`.
    pub fn is_constant(&self) -> bool {
        self.den.len() == 1 && self.num.len() <= 1
    }

    /// The `F_q` value of a constant element.
    pub fn as_constant(&self) -> Option<FqElem> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.first().copied().unwrap_or(FqElem::ZERO))
    }

    /// `true` when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    fn lifted(&self, level: u32) -> (Poly, Poly) {
        if level == self.level {
            return (self.num.clone(), self.den.clone());
        }
        let k = (self.field.order() as u64).pow(level - self.level);
        (upoly::spread(&self.num, k), upoly::spread(&self.den, k))
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let f = &self.field;
        let level = self.level.max(other.level);
        let (n1, d1) = self.lifted(level);
        let (n2, d2) = other.lifted(level);
        if d1 == d2 {
            let num = upoly::add(f, &n1, &n2);
            return FieldElem::canonical(f.clone(), level, num, d1);
        }
        let num = upoly::add(f, &upoly::mul(f, &n1, &d2), &upoly::mul(f, &n2, &d1));
        let den = upoly::mul(f, &d1, &d2);
        FieldElem::canonical(f.clone(), level, num, den)
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            level: self.level,
            num: upoly::neg(&self.field, &self.num),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        if self.is_zero() || other.is_zero() {
            return FieldElem::zero(&self.field);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let f = &self.field;
        let level = self.level.max(other.level);
        let (n1, d1) = self.lifted(level);
        let (n2, d2) = other.lifted(level);
        let num = upoly::mul(f, &n1, &n2);
        let den = upoly::mul(f, &d1, &d2);
        FieldElem::canonical(f.clone(), level, num, den)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(FieldElem::canonical(self.field.clone(), self.level, self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem, CoeffError> {
        let inv = other.inv().ok_or(CoeffError::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = FieldElem::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `x^(q^power)`; negative powers take `q`-th roots in the perfection.
    pub fn frobenius(&self, power: i32) -> FieldElem {
        if power == 0 || self.is_zero() {
            return self.clone();
        }
        if power < 0 {
            let level = self.level + power.unsigned_abs();
            return FieldElem::canonical(self.field.clone(), level, self.num.clone(), self.den.clone());
        }
        let up = power as u32;
        if self.level >= up {
            // raising to the q-th power only moves u one level down
            return FieldElem {
                field: self.field.clone(),
                level: self.level - up,
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        let k = (self.field.order() as u64).pow(up - self.level);
        FieldElem {
            field: self.field.clone(),
            level: 0,
            num: upoly::spread(&self.num, k),
            den: upoly::spread(&self.den, k),
        }
    }

    /// Evaluates a level-0 polynomial at `θ = x`; `None` otherwise.
    pub fn eval_polynomial(&self, x: FqElem) -> Option<FqElem> {
        if self.level != 0 || !self.is_polynomial() {
            return None;
        }
        Some(upoly::eval(&self.field, &self.num, x))
    }

    /// Number of terms in the numerator.
    pub fn term_count(&self) -> usize {
        self.num.iter().filter(|c| !c.is_zero()).count()
    }
}

fn render_exponent(i: usize, level: u32, q: u64) -> String {
    if i == 0 {
        return String::new();
    }
    let mut num = i as u64;
    let mut den = q.pow(level);
    let g = gcd(num, den);
    num /= g;
    den /= g;
    match (num, den) {
        (1, 1) => "T".to_string(),
        (n, 1) => format!("T^{n}"),
        (n, d) => format!("T^({n}/{d})"),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn render_poly(field: &Field, coeffs: &[FqElem], level: u32) -> (String, usize) {
    let q = field.order() as u64;
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let var = render_exponent(i, level, q);
        let cs = field.render(c);
        let compound = !field.is_prime_subfield(c) && cs.contains(' ');
        let term = if var.is_empty() {
            if compound {
                format!("({cs})")
            } else {
                cs
            }
        } else if cs == "1" {
            var
        } else if cs == "-1" {
            format!("-{var}")
        } else if compound {
            format!("({cs})*{var}")
        } else {
            format!("{cs}*{var}")
        };
        parts.push(term);
    }
    let n = parts.len();
    (join_signed(&parts), n)
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, nterms) = render_poly(&self.field, &self.num, self.level);
        if self.den.len() == 1 {
            return write!(f, "{num}");
        }
        let (den, dterms) = render_poly(&self.field, &self.den, self.level);
        let num = if nterms > 1 { format!("({num})") } else { num };
        let den = if dterms > 1 { format!("({den})") } else { den };
        write!(f, "{num}/{den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn characteristic_three_addition() {
        let f = f3();
        let t = FieldElem::theta(&f);
        assert_eq!(t.add(&t), FieldElem::from_int(&f, 2).mul(&t));
        assert_eq!(t.add(&t).to_string(), "-T");
    }

    #[test]
    fn root_products() {
        let f = f3();
        let u = FieldElem::theta(&f).frobenius(-1);
        assert_eq!(u.level(), 1);
        assert_eq!(u.to_string(), "T^(1/3)");
        let u2 = u.mul(&u);
        assert_eq!(u2.level(), 1);
        assert_eq!(u2.numerator().len(), 3);
        assert_eq!(u2.to_string(), "T^(2/3)");
        // u^3 = θ drops back to level 0
        assert_eq!(u2.mul(&u), FieldElem::theta(&f));
    }

    #[test]
    fn fraction_reduces() {
        let f = f3();
        let t = FieldElem::theta(&f);
        let one = FieldElem::one(&f);
        let x = t.mul(&t).sub(&one).div(&t.add(&one)).unwrap();
        assert_eq!(x.mul(&one), t.add(&FieldElem::from_int(&f, 2)));
        assert!(x.is_polynomial());
    }

    #[test]
    fn frobenius_examples() {
        let f = f3();
        let t = FieldElem::theta(&f);
        assert_eq!(t.frobenius(1), t.pow(3));
        let one = FieldElem::one(&f);
        assert_eq!(t.add(&one).frobenius(1), t.pow(3).add(&one));
        assert_eq!(t.add(&one).pow(3), t.pow(3).add(&one));
        let x = t.add(&one).div(&t.mul(&t).add(&one)).unwrap();
        assert_eq!(x.frobenius(-1).frobenius(1), x);
        assert_eq!(x.frobenius(-1).frobenius(1).level(), 0);
        assert_eq!(x.frobenius(2).frobenius(-2), x);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = f3();
        assert_eq!(FieldElem::one(&f).div(&FieldElem::zero(&f)), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn rendering() {
        let f = f3();
        let t = FieldElem::theta(&f);
        let one = FieldElem::one(&f);
        assert_eq!(t.sub(&one).to_string(), "T - 1");
        let x = one.div(&t.add(&one)).unwrap();
        assert_eq!(x.to_string(), "1/(T + 1)");
        assert_eq!(t.neg().div(&t.pow(2)).unwrap().to_string(), "-1/T");
    }
}
