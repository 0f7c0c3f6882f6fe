//! Dense univariate polynomials over `F_q`, stored low to high with no
//! trailing zeros.

use super::fq::{FqElem, GaloisField};

pub(crate) type Poly = Vec<FqElem>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn constant(c: FqElem) -> Poly {
    trim(vec![c])
}

pub(crate) fn add(f: &GaloisField, a: &[FqElem], b: &[FqElem]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(FqElem::ZERO);
        let y = b.get(i).copied().unwrap_or(FqElem::ZERO);
        out.push(f.add(x, y));
    }
    trim(out)
}

pub(crate) fn neg(f: &GaloisField, a: &[FqElem]) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub(crate) fn scale(f: &GaloisField, a: &[FqElem], c: FqElem) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub(crate) fn mul(f: &GaloisField, a: &[FqElem], b: &[FqElem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if b.len() == 1 {
        return scale(f, a, b[0]);
    }
    if a.len() == 1 {
        return scale(f, b, a[0]);
    }
    let mut out = vec![FqElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Euclidean division `a = q*b + r`. Panics on `b = 0`; callers check.
pub(crate) fn divmod(f: &GaloisField, a: &[FqElem], b: &[FqElem]) -> (Poly, Poly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lead_inv = f.inv(*b.last().unwrap()).expect("trimmed");
    let mut r = a.to_vec();
    let mut q = vec![FqElem::ZERO; a.len() - b.len() + 1];
    for top in (b.len() - 1..a.len()).rev() {
        let c = r[top];
        if c.is_zero() {
            continue;
        }
        let factor = f.mul(c, lead_inv);
        let shift = top + 1 - b.len();
        q[shift] = factor;
        for (k, &bk) in b.iter().enumerate() {
            r[shift + k] = f.sub(r[shift + k], f.mul(factor, bk));
        }
    }
    (trim(q), trim(r))
}

pub(crate) fn monic(f: &GaloisField, a: &[FqElem]) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(f, a, f.inv(lc).unwrap()),
    }
}

/// Monic greatest common divisor.
pub(crate) fn gcd(f: &GaloisField, a: &[FqElem], b: &[FqElem]) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divmod(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Substitutes `u -> u^k`.
pub(crate) fn spread(a: &[FqElem], k: u64) -> Poly {
    if k == 1 || a.len() <= 1 {
        return a.to_vec();
    }
    let mut out = vec![FqElem::ZERO; (a.len() - 1) * k as usize + 1];
    for (i, &c) in a.iter().enumerate() {
        out[i * k as usize] = c;
    }
    out
}

/// Inverse of [`spread`] when every exponent in the support is divisible by `k`.
pub(crate) fn compress(a: &[FqElem], k: u64) -> Option<Poly> {
    let k = k as usize;
    if a.iter().enumerate().any(|(i, c)| !c.is_zero() && i % k != 0) {
        return None;
    }
    Some(a.iter().step_by(k).copied().collect())
}

pub(crate) fn eval(f: &GaloisField, a: &[FqElem], x: FqElem) -> FqElem {
    a.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;

    fn p(f: &GaloisField, v: &[i64]) -> Poly {
        trim(v.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn gcd_over_f3() {
        let f = Field::prime(3).unwrap();
        // gcd(T^2 - 1, T + 1) = T + 1
        let g = gcd(&f, &p(&f, &[-1, 0, 1]), &p(&f, &[1, 1]));
        assert_eq!(g, p(&f, &[1, 1]));
        let (q, r) = divmod(&f, &p(&f, &[-1, 0, 1]), &p(&f, &[1, 1]));
        assert_eq!(q, p(&f, &[-1, 1]));
        assert!(r.is_empty());
    }

    #[test]
    fn spread_compress_roundtrip() {
        let f = Field::prime(3).unwrap();
        let a = p(&f, &[1, 2, 0, 1]);
        let s = spread(&a, 3);
        assert_eq!(s.len(), 10);
        assert_eq!(compress(&s, 3).unwrap(), a);
        assert!(compress(&a, 3).is_none());
    }
}
