//! From a motive given by `τ e = Θ e` back to a t-module.

use tmotive::anderson::{check_effective, tmodule_from_motive, MotiveData, Side};
use tmotive::coeff::Field;
use tmotive::freemod::OrderSpec;
use tmotive::janet::DEFAULT_MAX_ROUNDS;
use tmotive::parse::{parse_expr, ExprContext};
use tmotive::structure::SkewMatrix;

fn motive(f: &Field, rows: &[&[&str]]) -> MotiveData {
    let ctx = ExprContext::t_only(f);
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_expr(s, &ctx).unwrap().as_rho_poly().unwrap()).collect())
        .collect();
    MotiveData::new(f, Side::Motive, SkewMatrix::from_rows(rows)).unwrap()
}

fn main() {
    let f = Field::prime(3).unwrap();
    let cases: [&[&[&str]]; 3] = [
        &[&["t - T"]],
        &[&["(t - T)^2"]],
        &[&["t - T", "0"], &["1", "t - T"]],
    ];
    for theta in cases {
        let m = motive(&f, theta);
        let eff = check_effective(&m);
        println!("Theta = {:?}: det = {}, (t - T)^{}", m.matrix().render(), eff.det.render("t"), eff.s);
        match tmodule_from_motive(&m, &OrderSpec::identity(m.rank()), DEFAULT_MAX_ROUNDS) {
            Ok(r) => match r.tmodule {
                Some(tm) => println!("  t-module of dimension {}: {:?}", tm.dim(), tm.matrix().render()),
                None => println!("  not finitely generated over K<tau>"),
            },
            Err(e) => println!("  {e}"),
        }
    }
}
