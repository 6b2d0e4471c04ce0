//! Galois conjugates of a family, as labeled data and up to relabeling.
//! Pass `A` or `B` (default B).

use rank6::classify::{construct_family_a, construct_family_b, galois_images, galois_orbit};
use rank6::cli::root_label;
use rank6::modular::{admissibility_check, galois_permutations, sign_function_extract};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "B".into());
    let md = match which.as_str() {
        "A" => construct_family_a(),
        _ => construct_family_b(),
    };
    println!("ambient conductor {}", md.ambient_conductor());
    for (k, img) in galois_images(&md) {
        let t: Vec<String> = img.t().iter().map(root_label).collect();
        println!("zeta -> zeta^{k:<3} T = [{}] admissible {}", t.join(", "), admissibility_check(&img).all_pass());
    }
    println!("{} distinct up to relabeling", galois_orbit(&md).len());

    for sigma in galois_permutations(&md).expect("Galois action on S") {
        if let Ok(eps) = sign_function_extract(&md, &sigma) {
            println!("sigma {} (exponent {}): signs {:?}", sigma.cycles(), sigma.field_exponent, eps.signs);
        }
    }
}
