//! Degree-capped Buchberger over Q and modulo a prime on a small system.

use rank6::exact::{MonomialOrder, Poly, VarRegistry};
use rank6::groebner::{buchberger_capped, buchberger_mod_p, Budget};

fn main() {
    let reg = VarRegistry::new(&["x", "y", "z"]).unwrap();
    let p = |s: &str| Poly::parse(&reg, MonomialOrder::GrevLex, s).unwrap();
    let gens = vec![
        p("x + 2*y + 2*z - 1"),
        p("x^2 + 2*y^2 + 2*z^2 - x"),
        p("2*x*y + 2*y*z - y"),
    ];
    let budget = Budget::default();
    for cap in [Some(2), Some(3), None] {
        let gb = buchberger_capped(&gens, cap, &budget).unwrap();
        println!("cap {cap:?}: complete {}, {} pairs reduced", gb.complete, gb.stats.pairs_reduced);
        for g in &gb.basis {
            println!("  {g}");
        }
    }
    let q = 2_147_483_629;
    let gb = buchberger_mod_p(&gens, q, None, &budget).unwrap();
    println!("mod {q}:");
    for g in &gb.basis {
        println!("  {}", g.lift(&reg, MonomialOrder::GrevLex, q).map_or("(no small lift)".into(), |f| f.to_string()));
    }
}
