//! Fusion rules of the second family from the Verlinde formula, with the
//! characteristic polynomials of the fusion matrices and the cubic field
//! generated by r1, r2, r3.

use rank6::classify::{construct_family_b, family_b_r, verify_fusion_relabeling};
use rank6::exact::{MonomialOrder, Poly, VarRegistry};
use rank6::modular::{char_polys, verlinde};

fn main() {
    let fr = verlinde(&construct_family_b()).expect("integral fusion rules");
    for (i, m) in fr.matrices.iter().enumerate() {
        println!("N_{i}:");
        for row in m {
            println!("  {row:?}");
        }
    }
    for (i, p) in char_polys(&fr).iter().enumerate() {
        println!("char poly of N_{i}: {p}");
    }
    println!("matches the printed data: {}", verify_fusion_relabeling(&fr).pass);

    let x = VarRegistry::new(&["x"]).unwrap();
    let [r1, r2, r3] = family_b_r();
    for (name, r) in [("r1", &r1), ("r2", &r2), ("r3", &r3)] {
        let mp = Poly::from_univariate(&x, MonomialOrder::GrevLex, 0, &r.min_poly_coeffs());
        println!("{name} = {r} ~ {:.6}, minimal polynomial {mp}", r.embed().re);
    }
    println!("r1 + r2 + r3 = {}", &(&r1 + &r2) + &r3);
    println!("r1 r2 + r2 r3 + r3 r1 = {}", &(&(&r1 * &r2) + &(&r2 * &r3)) + &(&r3 * &r1));
}
