use std::sync::Arc;

use proptest::prelude::*;
use rank6::exact::{Cyclotomic, Monomial, MonomialOrder, Poly, Rational, VarRegistry};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn registry() -> Arc<VarRegistry> {
    VarRegistry::new(&["a", "b", "c"]).unwrap()
}

fn poly() -> impl Strategy<Value = Poly> {
    let reg = registry();
    prop::collection::vec(((0u8..3, 0u8..3, 0u8..3), rational()), 0..5).prop_map(move |terms| {
        let terms: Vec<_> = terms
            .into_iter()
            .map(|((a, b, c), q)| (Monomial::from_exponents(&[a, b, c]), q))
            .collect();
        Poly::from_terms(&reg, MonomialOrder::GrevLex, terms)
    })
}

/// Elements of Q(ζ_n) for a conductor drawn from a few small fields.
fn cyclotomic(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0i64..n as i64, rational()), 0..4)
        .prop_map(move |terms| Cyclotomic::from_powers(n, &terms))
}

fn conductor() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 9, 12, 15, 21, 36])
}

fn three_cyc() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    conductor().prop_flat_map(|n| (cyclotomic(n), cyclotomic(n), cyclotomic(n)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
        let parsed: Rational = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn poly_ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f + &(-&f), Poly::zero(&registry(), MonomialOrder::GrevLex));
        let one = Poly::one(&registry(), MonomialOrder::GrevLex);
        prop_assert_eq!(&f * &one, f.clone());
        if !f.is_zero() && !g.is_zero() {
            prop_assert_eq!((&f * &g).total_degree(), f.total_degree() + g.total_degree());
            prop_assert_eq!((&f * &g).exact_div(&g), Some(f.clone()));
        }
    }

    #[test]
    fn poly_parse_round_trip(f in poly()) {
        let back = Poly::parse(&registry(), MonomialOrder::GrevLex, &f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn poly_evaluation_is_a_homomorphism(f in poly(), g in poly(), x in rational(), y in rational(), z in rational()) {
        let at = |p: &Poly| p.evaluate(&[x.clone(), y.clone(), z.clone()], |q: &Rational| q.clone());
        prop_assert_eq!(at(&(&f * &g)), at(&f) * at(&g));
        prop_assert_eq!(at(&(&f + &g)), at(&f) + at(&g));
    }

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in three_cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn cyclotomic_mixed_conductors(a in cyclotomic(9), b in cyclotomic(4)) {
        // sums across fields land in the compositum and embed consistently
        let s = &a + &b;
        let p = &a * &b;
        prop_assert!(s.embed().dist(a.embed() + b.embed()) < 1e-9);
        prop_assert!(p.embed().dist(a.embed() * b.embed()) < 1e-9);
        prop_assert_eq!(&s - &b, a);
    }

    #[test]
    fn galois_action_is_a_ring_automorphism((a, b, _c) in three_cyc(), k in 1i64..200) {
        prop_assume!(num_integer::gcd(k, 2 * i64::from(a.conductor()) * i64::from(b.conductor())) == 1);
        let ga = a.galois(k).unwrap();
        let gb = b.galois(k).unwrap();
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &ga * &gb);
        prop_assert_eq!((&a + &b).galois(k).unwrap(), &ga + &gb);
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.conj(), a.galois(-1).unwrap());
    }

    #[test]
    fn embedding_is_multiplicative((a, b, _c) in three_cyc()) {
        prop_assert!((&a * &b).embed().dist(a.embed() * b.embed()) < 1e-9);
        prop_assert!(a.conj().embed().dist(rank6::exact::Complex64::new(a.embed().re, -a.embed().im)) < 1e-9);
    }

    #[test]
    fn min_poly_annihilates(a in conductor().prop_flat_map(cyclotomic)) {
        let coeffs = a.min_poly_coeffs();
        // Horner in the field: Σ c_i a^i = 0
        let val = coeffs.iter().rev().fold(Cyclotomic::zero(), |acc, c| &(acc * &a) + &Cyclotomic::from_rational(c.clone()));
        prop_assert!(val.is_zero());
    }
}

#[test]
fn roots_of_unity_orders() {
    for n in [1u32, 2, 3, 4, 6, 9, 12, 36] {
        for e in 0..n as i64 {
            let z = Cyclotomic::zeta_pow(n, e);
            let want = n / num_integer::gcd(n, e as u32);
            assert_eq!(z.root_of_unity_order().map(|(o, _)| o), Some(want), "zeta_{n}^{e}");
            assert!(z.pow(n).is_one());
        }
    }
}
