//! Arithmetic in the coefficient field and the two-sided skew ring.

use tmotive::coeff::{Field, FieldElem};
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::skew::TwistPair;

fn main() {
    let f = Field::prime(3).expect("3 is prime");
    let theta = FieldElem::theta(&f);

    let x = theta.add(&FieldElem::one(&f)).div(&theta).expect("nonzero");
    println!("x = {x}");
    println!("x^q = {}", x.frobenius(1));
    println!("x^(1/q) = {}", x.frobenius(-1));
    assert_eq!(x.frobenius(-1).frobenius(1), x);

    let ctx = ExprContext::ring(&f, TwistPair::TAU_T);
    let a = parse_expr("tau + T", &ctx).unwrap();
    let b = parse_expr("t - T", &ctx).unwrap();
    println!("(tau + T)(t - T) = {}", a.mul(&b));
    println!("(t - T)(tau + T) = {}", b.mul(&a));

    let r = parse_expr("tau^2 + T*t", &ctx).unwrap().as_rho_poly();
    println!("as a polynomial in tau alone: {}", r.map_or("no".into(), |p| p.render("tau")));

    let sigma = ExprContext::ring(&f, TwistPair::SIGMA_T);
    let s = parse_expr("sigma*T", &sigma).unwrap();
    println!("sigma*T = {s}");
}
