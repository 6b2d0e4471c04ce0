//! Exact arithmetic in cyclotomic fields: mixed conductors, Galois action,
//! minimal polynomials and the complex embedding.

use rank6::exact::{Cyclotomic, MonomialOrder, Poly, VarRegistry};

fn main() {
    let x = VarRegistry::new(&["x"]).unwrap();
    let z9 = Cyclotomic::zeta_pow(9, 1);
    let i = Cyclotomic::zeta_pow(4, 1);
    let a = &(&z9 + &z9.conj()) + &i;
    println!("a = {a}");
    println!("a ~ {:?}", a.embed());
    for k in [1, 5, 7] {
        println!("sigma_{k}(a) = {}", a.galois(k).unwrap());
    }
    let mp = Poly::from_univariate(&x, MonomialOrder::GrevLex, 0, &a.min_poly_coeffs());
    println!("minimal polynomial {mp}");
    println!("norm {}", a.norm());
    println!("1/a = {}", a.inverse().unwrap());
    let d = &Cyclotomic::zeta_pow(14, 1) + &Cyclotomic::zeta_pow(14, -1);
    println!("2cos(pi/7) = {d}, order of zeta_14^3: {:?}", Cyclotomic::zeta_pow(14, 3).root_of_unity_order());
}
