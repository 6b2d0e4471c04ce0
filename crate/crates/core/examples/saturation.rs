//! The factor-extend-rerun loop on a toy system. x is known to be nonzero,
//! so a basis element divisible by x contributes its cofactor; z = 1 is
//! declared a contradiction.

use rank6::exact::{MonomialOrder, VarRegistry};
use rank6::groebner::{saturation_loop, IdealSpec};

fn main() {
    let reg = VarRegistry::new(&["x", "y", "z"]).unwrap();
    let mut spec = IdealSpec::new(&reg, MonomialOrder::GrevLex, 4);
    spec.generators = ["x*y - x", "y^2*z + z - 2", "x*z^3 - x^2"]
        .iter()
        .map(|s| spec.poly(s).unwrap())
        .collect();
    spec.nonzero_atoms = vec![spec.poly("x").unwrap()];
    spec.forbidden_relations = vec![spec.poly("z - 1").unwrap()];
    let trace = saturation_loop(&spec).unwrap();
    print!("{}", trace.to_markdown());
    println!("\noutcome: {}", trace.outcome.label());
}
