//! The motive of a Drinfeld module `φ_t = T + a₁τ + … + a_rτ^r`.

use tmotive::anderson::{analyze_tmodule, Side, TModuleData};
use tmotive::coeff::{Field, FieldElem};
use tmotive::freemod::OrderSpec;
use tmotive::janet::DEFAULT_MAX_ROUNDS;

fn main() {
    let f = Field::prime(3).unwrap();
    let theta = FieldElem::theta(&f);
    let one = FieldElem::one(&f);
    let phi = TModuleData::drinfeld(&f, &[theta.clone(), one, theta]).expect("top coefficient nonzero");
    println!("phi_t = {:?}", phi.matrix().render());

    let p = analyze_tmodule(&phi, Side::Motive, &OrderSpec::identity(1), DEFAULT_MAX_ROUNDS).unwrap();
    println!("abelian: {}, rank: {:?}", p.is_finite(), p.rank());
    let free = p.analysis.free.as_ref().unwrap();
    for (i, e) in free.basis.iter().enumerate() {
        println!("e{} = {e}", i + 1);
    }
    println!("tau e = {:?} e", free.action.render());
}
