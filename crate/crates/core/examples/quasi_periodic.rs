//! A non-abelian t-module: the motive is not finitely generated over `K[t]`,
//! yet its rationalization still has a dimension.

use tmotive::anderson::{analyze_tmodule, Side, TModuleData};
use tmotive::coeff::Field;
use tmotive::diagram::{ascii, Cones};
use tmotive::freemod::OrderSpec;
use tmotive::janet::DEFAULT_MAX_ROUNDS;
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::structure::SkewMatrix;

fn main() {
    let f = Field::prime(3).unwrap();
    let ctx = ExprContext::tau_only(&f);
    let cell = |s: &str| parse_expr(s, &ctx).unwrap().as_rho_poly().unwrap();
    let d = SkewMatrix::from_rows(vec![vec![cell("T + tau + T*tau^2"), cell("0")], vec![cell("(T + 1)*tau"), cell("T")]]);
    let tm = TModuleData::new(&f, d).unwrap();

    let order = OrderSpec::from_one_based(&[2, 1]).unwrap();
    let p = analyze_tmodule(&tm, Side::Motive, &order, DEFAULT_MAX_ROUNDS).unwrap();
    let s = &p.analysis.structure;
    println!("abelian: {}", p.is_finite());
    println!("n = {:?}, m = {:?}", s.n, s.m);
    println!("rational dimension: {:?}", p.rank());
    print!("{}", ascii(&Cones::of(&p.janet)));
}
