use std::sync::Arc;

mod common;

use common::{monic_all, naive_gb};
use proptest::prelude::*;
use rank6::exact::{Monomial, MonomialOrder, Poly, Rational, VarRegistry};
use rank6::groebner::{
    buchberger_capped, buchberger_mod_p, divide_out_atoms, groebner_basis, normal_form, Budget,
};

fn registry() -> Arc<VarRegistry> {
    common::xyz()
}

fn arb_poly(reg: Arc<VarRegistry>, order: MonomialOrder) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u8..3, 0u8..3, 0u8..2), -3i64..=3), 1..4).prop_map(move |terms| {
        let terms: Vec<_> = terms
            .into_iter()
            .filter(|((a, b, c), _)| a + b + c <= 3)
            .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), Rational::from_integer(k)))
            .collect();
        Poly::from_terms(&reg, order, terms)
    })
}

fn arb_ideal(order: MonomialOrder) -> impl Strategy<Value = Vec<Poly>> {
    let reg = registry();
    prop::collection::vec(arb_poly(reg, order), 1..4)
        .prop_filter("nonconstant", |g| g.iter().any(|p| !p.is_zero()))
        .prop_map(|g| g.into_iter().filter(|p| !p.is_zero()).collect())
}

fn budget() -> Budget {
    Budget {
        guide_prime: None,
        ..Budget::default()
    }
}

fn mod_p(c: &Rational, p: u64) -> u32 {
    let m = |x: &num_bigint::BigInt| -> u64 {
        let r = x % num_bigint::BigInt::from(p);
        let r: i64 = r.try_into().unwrap();
        r.rem_euclid(p as i64) as u64
    };
    let (n, d) = (m(c.numer()), m(c.denom()));
    let inv = pow_mod(d, p - 2, p);
    (n * inv % p) as u32
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn uncapped_basis_matches_oracle(gens in arb_ideal(MonomialOrder::GrevLex)) {
        let ours = groebner_basis(&gens, &budget()).unwrap();
        prop_assert_eq!(monic_all(&ours), naive_gb(&gens));
    }

    #[test]
    fn guided_run_matches_unguided(gens in arb_ideal(MonomialOrder::GrevLex)) {
        let plain = groebner_basis(&gens, &budget()).unwrap();
        let guided = groebner_basis(&gens, &Budget::default()).unwrap();
        prop_assert_eq!(plain, guided);
    }

    #[test]
    fn lex_basis_matches_oracle(gens in arb_ideal(MonomialOrder::Lex)) {
        let ours = groebner_basis(&gens, &budget()).unwrap();
        prop_assert_eq!(monic_all(&ours), naive_gb(&gens));
    }

    #[test]
    fn capped_basis_is_sound(gens in arb_ideal(MonomialOrder::GrevLex), cap in 1u32..5) {
        let full = naive_gb(&gens);
        let capped = buchberger_capped(&gens, Some(cap), &budget()).unwrap();
        for g in &capped.basis {
            prop_assert!(g.reduce(&full).unwrap().is_zero(), "{g} not in ideal");
        }
        for g in &gens {
            prop_assert!(normal_form(g, &capped.basis, &budget()).unwrap().is_zero());
        }
        if capped.complete {
            prop_assert_eq!(monic_all(&capped.basis), full);
        }
    }

    #[test]
    fn modular_basis_is_reduction_of_rational(gens in arb_ideal(MonomialOrder::GrevLex)) {
        let p = 1_000_003u32;
        let over_q = monic_all(&groebner_basis(&gens, &budget()).unwrap());
        let over_p = buchberger_mod_p(&gens, p, None, &budget()).unwrap();
        prop_assert!(over_p.complete);
        // Equal at all but finitely many primes; a random ideal with tiny
        // coefficients is never unlucky at this size.
        prop_assert_eq!(over_p.basis.len(), over_q.len());
        for (a, b) in over_p.basis.iter().zip(&over_q) {
            let reduced: Vec<(Monomial, u32)> = b
                .terms()
                .iter()
                .map(|(m, c)| (*m, mod_p(c, p as u64)))
                .filter(|(_, c)| *c != 0)
                .collect();
            prop_assert_eq!(&a.terms, &reduced);
        }
        for g in &gens {
            prop_assert!(over_p.reduces_to_zero(g).unwrap());
        }
    }

    #[test]
    fn atom_division_recombines(f in arb_poly(registry(), MonomialOrder::GrevLex)) {
        prop_assume!(!f.is_zero());
        let reg = registry();
        let x = Poly::var_index(&reg, MonomialOrder::GrevLex, 0);
        let y1 = Poly::parse(&reg, MonomialOrder::GrevLex, "y + 1").unwrap();
        let g = f.try_mul(&x).unwrap().try_mul(&y1).unwrap().try_mul(&y1).unwrap();
        let d = divide_out_atoms(&g, &[x.clone(), y1.clone()]);
        prop_assert_eq!(d.recombine(), g.clone());
        prop_assert!(d.cofactor.exact_div(&x).is_none());
        prop_assert!(d.cofactor.exact_div(&y1).is_none());
        prop_assert!(d.divided.iter().filter(|a| **a == x).count() >= 1);
        prop_assert!(d.divided.iter().filter(|a| **a == y1).count() >= 2);
    }

    #[test]
    fn deterministic(gens in arb_ideal(MonomialOrder::GrevLex)) {
        let a = buchberger_capped(&gens, Some(3), &Budget::default()).unwrap();
        let b = buchberger_capped(&gens, Some(3), &Budget::default()).unwrap();
        prop_assert_eq!(a.basis, b.basis);
        prop_assert_eq!(a.complete, b.complete);
    }
}

#[test]
fn katsura3_against_oracle() {
    let reg = VarRegistry::new(&["x", "y", "z"]).unwrap();
    let p = |s: &str| Poly::parse(&reg, MonomialOrder::GrevLex, s).unwrap();
    let gens = vec![
        p("x + 2*y + 2*z - 1"),
        p("x^2 + 2*y^2 + 2*z^2 - x"),
        p("2*x*y + 2*y*z - y"),
    ];
    let ours = groebner_basis(&gens, &Budget::default()).unwrap();
    assert_eq!(monic_all(&ours), naive_gb(&gens));
}
