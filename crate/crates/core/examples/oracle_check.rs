//! Brute-force confirmation of a Janet basis inside a degree box, plus a
//! membership query the oracle answers on its own.

use tmotive::coeff::Field;
use tmotive::freemod::{ModElem, OrderSpec};
use tmotive::janet::{janet_algorithm, DEFAULT_MAX_ROUNDS};
use tmotive::oracle::{truncated_submodule, verify_janet, DegreeBox};
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::skew::TwistPair;

fn main() {
    let f = Field::prime(3).unwrap();
    let tw = TwistPair::TAU_T;
    let ctx = ExprContext::ring(&f, tw);
    let relation = |cells: [&str; 2]| {
        let comps: Vec<_> = cells.iter().map(|c| parse_expr(c, &ctx).unwrap()).collect();
        ModElem::from_components(&f, tw, &comps)
    };
    let gens = vec![
        relation(["tau^2", "T - t^2"]),
        relation(["T - t^2", "1"]),
        relation(["0", "tau^2 - (t^2 - T)*(t^2 - T^9)"]),
    ];
    let ord = OrderSpec::identity(2);
    let j = janet_algorithm(&gens, &ord, DEFAULT_MAX_ROUNDS).unwrap();

    let bx = DegreeBox::new(3, 4);
    let v = verify_janet(&j, &gens, bx).unwrap();
    println!("box ({}, {}): passed {}", bx.k_max, bx.j_max, v.passed());
    println!("quotient dimension {} = staircase count {}", v.quotient_dim, v.staircase_count);

    let span = truncated_submodule(&gens, bx, &ord).unwrap();
    let rho2_g2 = gens[1].shift_left(2, 0);
    println!("tau^2 g2 in the truncated span: {}", span.contains(&rho2_g2));
}
