//! The sixteen sign choices, their orbits under relabeling, and the
//! degeneracy cases of the T-spectrum.

use rank6::classify::{enumerate_degeneracy_cases, enumerate_sign_choices, SIGMA};

fn main() {
    let cat = enumerate_sign_choices();
    for sc in &cat.all16 {
        println!("choice {:>2}: {:?}", sc.index, sc.signs);
    }
    println!("orbits {:?}", cat.orbits);
    println!("representatives {:?}", cat.representatives);
    for (c, why) in &cat.excluded {
        println!("excluded {c}: {why}");
    }
    for case in enumerate_degeneracy_cases(&SIGMA) {
        println!(
            "case {}: equal thetas {:?}, known distinct {:?}",
            case.index, case.equalities, case.case_atoms
        );
    }
}
