//! Janet basis and structure of a three-relation presentation of rank 2.

use tmotive::coeff::Field;
use tmotive::freemod::{ModElem, OrderSpec};
use tmotive::janet::{janet_algorithm, DEFAULT_MAX_ROUNDS};
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::skew::TwistPair;
use tmotive::structure::analyze;

fn relation(f: &Field, cells: [&str; 2]) -> ModElem {
    let ctx = ExprContext::ring(f, TwistPair::TAU_T);
    let comps: Vec<_> = cells.iter().map(|c| parse_expr(c, &ctx).unwrap()).collect();
    ModElem::from_components(f, TwistPair::TAU_T, &comps)
}

fn main() {
    let f = Field::prime(3).unwrap();
    let gens = vec![
        relation(&f, ["tau^2", "T - t^2"]),
        relation(&f, ["T - t^2", "1"]),
        relation(&f, ["0", "tau^2 - (t^2 - T)*(t^2 - T^9)"]),
    ];
    let j = janet_algorithm(&gens, &OrderSpec::identity(2), DEFAULT_MAX_ROUNDS).expect("terminates");
    println!("Janet basis ({} prolongation rounds):", j.rounds());
    for p in j.pairs() {
        let cone = match (p.mu().rho, p.mu().sigma) {
            (true, true) => "tau, t",
            (false, true) => "t",
            (true, false) => "tau",
            (false, false) => "none",
        };
        println!("  {}  multiplicative in {cone}", p.elem());
    }

    let a = analyze(&j).unwrap();
    let s = &a.structure;
    println!("n = {:?}, m = {:?}, rank = {:?}", s.n, s.m, s.rank);
    let free = a.free.expect("finitely generated");
    for (i, e) in free.basis.iter().enumerate() {
        println!("e{} = {e}", i + 1);
    }
    println!("tau acts by {:?}", free.action.render());
}
