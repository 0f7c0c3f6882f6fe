//! Tensor powers of the Carlitz module: rank 1 with `τ` acting by `(t − θ)^d`.

use tmotive::anderson::{analyze_tmodule, Side, TModuleData};
use tmotive::coeff::Field;
use tmotive::freemod::OrderSpec;
use tmotive::janet::DEFAULT_MAX_ROUNDS;

fn main() {
    let f = Field::prime(3).unwrap();
    for d in 1..=4 {
        let c = TModuleData::carlitz_power(&f, d).unwrap();
        let p = analyze_tmodule(&c, Side::Motive, &OrderSpec::identity(d), DEFAULT_MAX_ROUNDS).unwrap();
        let free = p.analysis.free.as_ref().unwrap();
        println!("C^{d}: rank {:?}, basis {}, tau acts by {}", p.rank(), free.basis[0], free.action.get(0, 0).render("t"));
    }
}
