use proptest::prelude::*;
use rank6::classify::{construct_family_a, construct_family_b, rank3_factor, relabeling_between};
use rank6::exact::{units_mod, Cyclotomic, Rational};
use rank6::modular::{
    admissibility_check, derive_scalars, fs_indicator, kronecker_product, numeric_residual,
    verlinde, ModularData,
};

fn matmul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Cyclotomic::zero(), |acc, k| acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// SS† = D²I, (ST)³ = p₊S² and p₊p₋ = D², checked exactly.
fn exact_identities(md: &ModularData) -> Result<(), String> {
    let r = md.rank();
    let s: Vec<Vec<Cyclotomic>> = md.s().to_vec();
    let sdag: Vec<Vec<Cyclotomic>> = (0..r).map(|i| (0..r).map(|j| s[j][i].conj()).collect()).collect();
    let sc = derive_scalars(md);
    let ssd = matmul(&s, &sdag);
    for i in 0..r {
        for j in 0..r {
            let want = if i == j { sc.dsq.clone() } else { Cyclotomic::zero() };
            if ssd[i][j] != want {
                return Err(format!("(SS^dag)[{i}][{j}] = {}", ssd[i][j]));
            }
        }
    }
    let st: Vec<Vec<Cyclotomic>> = (0..r)
        .map(|i| (0..r).map(|j| &s[i][j] * md.theta(j)).collect())
        .collect();
    let st3 = matmul(&matmul(&st, &st), &st);
    let s2 = matmul(&s, &s);
    for i in 0..r {
        for j in 0..r {
            if st3[i][j] != &sc.p_plus * &s2[i][j] {
                return Err(format!("(ST)^3[{i}][{j}] differs from p+ S^2"));
            }
        }
    }
    if &sc.p_plus * &sc.p_minus != sc.dsq {
        return Err("p+ p- != D^2".into());
    }
    Ok(())
}

fn families() -> Vec<(&'static str, ModularData)> {
    vec![("A", construct_family_a()), ("B", construct_family_b())]
}

#[test]
fn families_satisfy_modular_identities() {
    for (name, md) in families() {
        exact_identities(&md).unwrap_or_else(|e| panic!("family {name}: {e}"));
        assert!(numeric_residual(&md) < 1e-9, "family {name}");
        let rep = admissibility_check(&md);
        assert!(rep.all_pass(), "family {name}: {}", rep.to_markdown());
    }
}

#[test]
fn family_b_scalars() {
    let md = construct_family_b();
    let rep = admissibility_check(&md);
    assert_eq!(rep.scalars.dsq, Cyclotomic::from_int(9));
    assert_eq!(rep.t_order, Some(9));
    assert_eq!(rep.galois_group, vec!["()".to_string(), "(0 1 2)(3 4 5)".into(), "(0 2 1)(3 5 4)".into()]);
}

#[test]
fn frobenius_schur_indicators() {
    for (name, md) in families() {
        let fr = verlinde(&md).unwrap();
        let one = Cyclotomic::one();
        assert_eq!(fs_indicator(&md, &fr, 2, 0), one, "family {name}");
        for k in 0..6 {
            let v = fs_indicator(&md, &fr, 2, k);
            assert!(v == one || v == -&one, "family {name}: nu_2({k}) = {v}");
        }
    }
}

#[test]
fn galois_conjugates_keep_identities() {
    for (name, md) in families() {
        let m = md.ambient_conductor();
        for k in units_mod(m) {
            let conj = md.galois_conjugate(k as i64).unwrap();
            exact_identities(&conj).unwrap_or_else(|e| panic!("family {name}, k = {k}: {e}"));
            assert!(numeric_residual(&conj) < 1e-9, "family {name}, k = {k}");
        }
    }
}

#[test]
fn kronecker_with_semion() {
    let a = rank3_factor();
    let b = ModularData::semion();
    let prod = kronecker_product(&b, &a);
    assert!(numeric_residual(&prod) < 1e-9);
    exact_identities(&prod).unwrap();
    assert!(admissibility_check(&prod).all_pass());
    let fr = verlinde(&prod).unwrap();
    let expect = verlinde(&b).unwrap().kronecker(&verlinde(&a).unwrap());
    assert_eq!(fr, expect);
}

#[test]
fn perturbed_s_fails() {
    for (name, md) in families() {
        let mut s = md.s().to_vec();
        s[1][2] = &s[1][2] + &Cyclotomic::from_rational(Rational::new(1, 1000).unwrap());
        s[2][1] = s[1][2].clone();
        let bad = ModularData::new(6, s, md.t().to_vec()).unwrap();
        assert!(exact_identities(&bad).is_err(), "family {name}");
        assert!(numeric_residual(&bad) > 1e-6, "family {name}");
        assert!(!admissibility_check(&bad).all_pass(), "family {name}");
    }
}

#[test]
fn perturbed_t_fails() {
    for (name, md) in families() {
        let mut t = md.t().to_vec();
        t[3] = &t[3] * &Cyclotomic::zeta_pow(3, 1);
        let bad = ModularData::new(6, md.s().to_vec(), t).unwrap();
        assert!(exact_identities(&bad).is_err(), "family {name}");
        assert!(numeric_residual(&bad) > 1e-6, "family {name}");
        assert!(!admissibility_check(&bad).all_pass(), "family {name}");
    }
}

fn relabeling() -> impl Strategy<Value = Vec<usize>> {
    Just(vec![1usize, 2, 3, 4, 5])
        .prop_shuffle()
        .prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn relabeling_preserves_admissibility(perm in relabeling(), fam in 0usize..2) {
        let md = families()[fam].1.clone();
        let moved = md.relabeled(&perm);
        prop_assert!(admissibility_check(&moved).all_pass());
        prop_assert!(numeric_residual(&moved) < 1e-9);
        prop_assert!(relabeling_between(&md, &moved).is_some());
        let fr = verlinde(&md).unwrap().relabeled(&perm);
        prop_assert_eq!(verlinde(&moved).unwrap(), fr);
    }

    #[test]
    fn verlinde_is_symmetric_and_commutative(fam in 0usize..2, k in 0usize..6) {
        let md = families()[fam].1.clone();
        let fr = verlinde(&md).unwrap();
        prop_assert!(fr.is_symmetric());
        prop_assert!(fr.commute());
        for i in 0..6 {
            for j in 0..6 {
                prop_assert!(fr.coeff(i, j, k) >= 0);
                prop_assert_eq!(fr.coeff(i, j, k), fr.coeff(j, i, k));
            }
            prop_assert_eq!(fr.coeff(0, i, k), i64::from(i == k));
        }
    }
}
