//! Builders shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tmotive::anderson::TModuleData;
use tmotive::coeff::{Field, FieldElem, FqElem};
use tmotive::freemod::ModElem;
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::skew::{OrePoly, SkewPoly, TwistPair};
use tmotive::structure::SkewMatrix;

pub fn f3() -> Field {
    Field::prime(3).unwrap()
}

pub fn poly(f: &Field, tw: TwistPair, src: &str) -> SkewPoly {
    parse_expr(src, &ExprContext::ring(f, tw)).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// A polynomial in the second variable only.
pub fn sigma_poly(f: &Field, tw: TwistPair, src: &str) -> OrePoly {
    poly(f, tw, src).as_sigma_poly().unwrap()
}

pub fn elem(f: &Field, tw: TwistPair, comps: &[&str]) -> ModElem {
    let comps: Vec<SkewPoly> = comps.iter().map(|s| poly(f, tw, s)).collect();
    ModElem::from_components(f, tw, &comps)
}

pub fn tau_matrix(f: &Field, rows: &[&[&str]]) -> SkewMatrix {
    let ctx = ExprContext::tau_only(f);
    SkewMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_expr(s, &ctx).unwrap().as_rho_poly().unwrap()).collect())
            .collect(),
    )
}

pub fn t_matrix(f: &Field, rows: &[&[&str]]) -> SkewMatrix {
    let ctx = ExprContext::t_only(f);
    SkewMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|s| parse_expr(s, &ctx).unwrap().as_rho_poly().unwrap()).collect())
            .collect(),
    )
}

pub fn sigma_rows(f: &Field, tw: TwistPair, rows: &[&[&str]]) -> Vec<Vec<OrePoly>> {
    rows.iter().map(|r| r.iter().map(|s| sigma_poly(f, tw, s)).collect()).collect()
}

/// The running example `g1, g2, g3` with `ρ = τ`, `σ = t`.
pub fn running(f: &Field) -> Vec<ModElem> {
    let tw = TwistPair::TAU_T;
    vec![
        elem(f, tw, &["tau^2", "T - t^2"]),
        elem(f, tw, &["T - t^2", "1"]),
        elem(f, tw, &["0", "tau^2 - (t^2 - T)*(t^2 - T^9)"]),
    ]
}

pub fn special(f: &Field) -> TModuleData {
    TModuleData::new(f, tau_matrix(f, &[&["T + tau^2", "tau^3"], &["1 + tau", "T + tau^2"]])).unwrap()
}

pub fn quasi_periodic(f: &Field, psi: &str, delta: &str) -> TModuleData {
    TModuleData::new(f, tau_matrix(f, &[&[psi, "0"], &[delta, "T"]])).unwrap()
}

/// Where each expected basis element sits in the computed basis.
pub fn match_basis(got: &[ModElem], want: &[ModElem]) -> Result<Vec<usize>, String> {
    if got.len() != want.len() {
        return Err(format!("basis has {} elements, expected {}", got.len(), want.len()));
    }
    want.iter()
        .map(|w| got.iter().position(|g| g == w).ok_or_else(|| format!("{w} is not among the basis {got:?}")))
        .collect()
}

/// The action matrix rewritten in the order of `perm`.
pub fn permuted(m: &SkewMatrix, perm: &[usize]) -> Vec<Vec<OrePoly>> {
    perm.iter().map(|&i| perm.iter().map(|&j| m.get(i, j).clone()).collect()).collect()
}

pub fn compare_rows(got: &[Vec<OrePoly>], want: &[Vec<OrePoly>], var: &str) -> Result<(), String> {
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        for (j, (a, b)) in g.iter().zip(w).enumerate() {
            if a != b {
                return Err(format!("entry ({}, {}): got {}, expected {}", i + 1, j + 1, a.render(var), b.render(var)));
            }
        }
    }
    Ok(())
}

pub fn random_fq(rng: &mut ChaCha8Rng, f: &Field) -> FqElem {
    FqElem(rng.gen_range(0..f.order()))
}

/// A polynomial in `θ` of degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, f: &Field, deg: usize) -> FieldElem {
    let c: Vec<FqElem> = (0..=deg).map(|_| random_fq(rng, f)).collect();
    FieldElem::from_coeffs(f, &c)
}

/// A nonzero element of the perfection: a quotient of small polynomials,
/// possibly a `q`-th root.
pub fn random_elem(rng: &mut ChaCha8Rng, f: &Field) -> FieldElem {
    let num = random_poly(rng, f, 2);
    let den = loop {
        let d = random_poly(rng, f, 1);
        if !d.is_zero() {
            break d;
        }
    };
    let x = num.div(&den).unwrap();
    match rng.gen_range(0..4) {
        0 => x.frobenius(-1),
        _ => x,
    }
}

pub fn random_skew(rng: &mut ChaCha8Rng, f: &Field, tw: TwistPair, max_k: u32, max_j: u32, density: f64) -> SkewPoly {
    let mut p = SkewPoly::zero(f, tw);
    for k in 0..=max_k {
        for j in 0..=max_j {
            if rng.gen_bool(density) {
                p.add_term(k, j, &random_elem(rng, f));
            }
        }
    }
    p
}

pub fn random_ore(rng: &mut ChaCha8Rng, f: &Field, twist: i32, max_deg: usize) -> OrePoly {
    let n = rng.gen_range(0..=max_deg + 1);
    let coeffs = (0..n).map(|_| if rng.gen_bool(0.8) { random_elem(rng, f) } else { FieldElem::zero(f) }).collect();
    OrePoly::from_coeffs(f, twist, coeffs)
}

/// A small random presentation: every entry has at most two terms of
/// `ρ`- and `σ`-degree at most `deg`, with coefficients in `F_q[θ]` of degree
/// at most 2.
pub fn random_presentation(rng: &mut ChaCha8Rng, f: &Field, d: usize, count: usize, deg: u32) -> Vec<ModElem> {
    let tw = TwistPair::TAU_T;
    (0..count)
        .map(|_| loop {
            let comps: Vec<SkewPoly> = (0..d)
                .map(|_| {
                    let mut p = SkewPoly::zero(f, tw);
                    for _ in 0..rng.gen_range(0..=2) {
                        p.add_term(rng.gen_range(0..=deg), rng.gen_range(0..=deg), &random_poly(rng, f, 2));
                    }
                    p
                })
                .collect();
            let e = ModElem::from_components(f, tw, &comps);
            if !e.is_zero() {
                break e;
            }
        })
        .collect()
}
