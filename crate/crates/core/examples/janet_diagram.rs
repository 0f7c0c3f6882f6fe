//! Cone diagrams of a Janet basis, as text and as SVG.

use tmotive::anderson::{analyze_tmodule, Side, TModuleData};
use tmotive::coeff::Field;
use tmotive::diagram::{ascii, svg, Cones};
use tmotive::freemod::OrderSpec;
use tmotive::janet::DEFAULT_MAX_ROUNDS;

fn main() {
    let f = Field::prime(3).unwrap();
    let c = TModuleData::carlitz_power(&f, 2).unwrap();
    let p = analyze_tmodule(&c, Side::Motive, &OrderSpec::identity(2), DEFAULT_MAX_ROUNDS).unwrap();
    let cones = Cones::of(&p.janet);
    print!("{}", ascii(&cones));

    let path = std::env::temp_dir().join("carlitz_square.svg");
    std::fs::write(&path, svg(&cones)).expect("temp dir is writable");
    println!("svg written to {}", path.display());
}
