//! Builds both rank-6 families and runs the admissibility checks on each.

use rank6::classify::{construct_family_a, construct_family_b};
use rank6::modular::{admissibility_check, numeric_residual};

fn main() {
    for (name, md) in [("A", construct_family_a()), ("B", construct_family_b())] {
        let rep = admissibility_check(&md);
        println!("# Family {name}\n");
        print!("{}", rep.to_markdown());
        println!("numeric residual {:.2e}\n", numeric_residual(&md));
    }
}
