//! A two-dimensional t-module seen from both sides. The comotive needs
//! `q`-th roots of `θ`.

use tmotive::anderson::{analyze_tmodule, Side, TModuleData};
use tmotive::coeff::Field;
use tmotive::freemod::OrderSpec;
use tmotive::janet::DEFAULT_MAX_ROUNDS;
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::structure::SkewMatrix;

fn main() {
    let f = Field::prime(3).unwrap();
    let ctx = ExprContext::tau_only(&f);
    let cell = |s: &str| parse_expr(s, &ctx).unwrap().as_rho_poly().unwrap();
    let d = SkewMatrix::from_rows(vec![
        vec![cell("T + tau^2"), cell("tau^3")],
        vec![cell("1 + tau"), cell("T + tau^2")],
    ]);
    let tm = TModuleData::new(&f, d).unwrap();

    let sides = [
        (Side::Motive, OrderSpec::from_one_based(&[2, 1]).unwrap()),
        (Side::Comotive, OrderSpec::identity(2)),
    ];
    for (side, order) in sides {
        let p = analyze_tmodule(&tm, side, &order, DEFAULT_MAX_ROUNDS).unwrap();
        let free = p.analysis.free.as_ref().unwrap();
        println!("{}: rank {:?}, perfection level {}", side.name(), p.rank(), p.perfection_level());
        for (i, e) in free.basis.iter().enumerate() {
            println!("  e{} = {e}", i + 1);
        }
        for row in free.action.render() {
            println!("  [{}]", row.join(", "));
        }
    }
}
