use crate::exact::{units_mod, Cyclotomic, Rational};
use crate::modular::{char_polys, kronecker_product, parse_x_poly, Check, FusionRules, ModularData};

/// The fusion matrix N_4 of the second family, as printed.
pub const PRINTED_N4: [[i64; 6]; 6] = [
    [0, 0, 0, 0, 1, 0],
    [0, 1, 1, 1, 0, 1],
    [0, 1, 1, 0, 1, 0],
    [0, 1, 0, 1, 0, 0],
    [1, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 1, 0],
];

/// Characteristic polynomials n_0..n_5 of the second family's fusion matrices.
pub const PRINTED_CHAR_POLYS: [&str; 6] = [
    "(x-1)^6",
    "(x+1)^3*(x^3-6*x^2+3*x+1)",
    "(x-1)^3*(x^3-3*x^2-6*x-1)",
    "(x^3-3*x+1)*(x^3-3*x^2+1)",
    "(x^3-3*x+1)*(x^3-3*x^2+1)",
    "(x^3-3*x+1)*(x^3-3*x^2+1)",
];

/// d = 2cos(π/7).
pub fn golden_heptagon_d() -> Cyclotomic {
    &Cyclotomic::zeta_pow(14, 1) + &Cyclotomic::zeta_pow(14, -1)
}

/// Rank-3 factor: S = [[1, d, d²−1], [d, −(d²−1), 1], [d²−1, 1, −d]],
/// T = diag(1, e^{2πi/7}, e^{10πi/7}).
pub fn rank3_factor() -> ModularData {
    let one = Cyclotomic::one();
    let d = golden_heptagon_d();
    let e = &(&d * &d) - &one;
    let s = vec![
        vec![one.clone(), d.clone(), e.clone()],
        vec![d.clone(), -&e, one.clone()],
        vec![e, one.clone(), -&d],
    ];
    let t = vec![one, Cyclotomic::zeta_pow(7, 1), Cyclotomic::zeta_pow(7, 5)];
    ModularData::new(3, s, t).expect("rank-3 shape")
}

/// Semion ⊗ rank-3 factor, conductor 28.
pub fn construct_family_a() -> ModularData {
    kronecker_product(&ModularData::semion(), &rank3_factor())
}

/// r_1, r_2, r_3 with α = e^{iπ/9}.
pub fn family_b_r() -> [Cyclotomic; 3] {
    let a = |terms: &[(i64, i64)]| {
        let t: Vec<(i64, Rational)> = terms.iter().map(|&(e, c)| (e, Rational::from(c))).collect();
        Cyclotomic::from_powers(18, &t)
    };
    [
        a(&[(1, -1), (2, -1), (5, 1)]),
        a(&[(1, 1), (2, 1), (4, -1)]),
        a(&[(4, 1), (5, -1)]),
    ]
}

pub fn construct_family_b() -> ModularData {
    let [r1, r2, r3] = family_b_r();
    let one = Cyclotomic::one();
    let m = -&one;
    let rows = vec![
        vec![one.clone(), m.clone(), one.clone(), r1.clone(), r2.clone(), r3.clone()],
        vec![m.clone(), one.clone(), m.clone(), -&r2, -&r3, -&r1],
        vec![one.clone(), m.clone(), one.clone(), r3.clone(), r1.clone(), r2.clone()],
        vec![r1.clone(), -&r2, r3.clone(), one.clone(), one.clone(), one.clone()],
        vec![r2.clone(), -&r3, r1.clone(), one.clone(), one.clone(), one.clone()],
        vec![r3, -&r1, r2, one.clone(), one.clone(), one.clone()],
    ];
    let t = vec![
        one,
        Cyclotomic::zeta_pow(3, 1),
        Cyclotomic::zeta_pow(3, 2),
        Cyclotomic::zeta_pow(9, -2),
        Cyclotomic::zeta_pow(9, 4),
        Cyclotomic::zeta_pow(9, 1),
    ];
    ModularData::new(6, rows, t).expect("family B shape")
}

/// All permutations of `0..n` fixing 0, in lexicographic order.
pub fn relabelings(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 1..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut used = vec![false; n];
    used[0] = true;
    go(&mut vec![0], &mut used, &mut out);
    out
}

/// A relabeling π fixing 0 with `a.relabeled(π) == b`, if one exists.
pub fn relabeling_between(a: &ModularData, b: &ModularData) -> Option<Vec<usize>> {
    if a.rank() != b.rank() {
        return None;
    }
    let r = a.rank();
    relabelings(r).into_iter().find(|p| {
        (0..r).all(|i| a.theta(i) == b.theta(p[i]))
            && (0..r).all(|i| (0..r).all(|j| a.s_entry(i, j) == b.s_entry(p[i], p[j])))
    })
}

/// Galois conjugates of `md` under every automorphism of its ambient
/// cyclotomic field, deduplicated up to relabeling (first representative
/// kept, in order of the exponent).
pub fn galois_orbit(md: &ModularData) -> Vec<(u32, ModularData)> {
    let m = md.ambient_conductor();
    let mut out: Vec<(u32, ModularData)> = Vec::new();
    for k in units_mod(m) {
        let k = if m == 1 { 1 } else { k };
        let conj = md.galois_conjugate(k as i64).expect("unit exponent");
        if !out.iter().any(|(_, o)| relabeling_between(o, &conj).is_some()) {
            out.push((k, conj));
        }
    }
    out
}

/// Images of `md` under every automorphism of its ambient cyclotomic
/// field, keeping distinct labeled data only.
pub fn galois_images(md: &ModularData) -> Vec<(u32, ModularData)> {
    let m = md.ambient_conductor();
    let mut out: Vec<(u32, ModularData)> = Vec::new();
    for k in units_mod(m) {
        let k = if m == 1 { 1 } else { k };
        let conj = md.galois_conjugate(k as i64).expect("unit exponent");
        if !out.iter().any(|(_, o)| *o == conj) {
            out.push((k, conj));
        }
    }
    out
}

/// Compares N_4 and every characteristic polynomial with the printed data.
pub fn verify_fusion_relabeling(fr: &FusionRules) -> Check {
    let mut bad = Vec::new();
    if fr.rank != 6 {
        return Check::from_witnesses(vec![format!("rank {} instead of 6", fr.rank)]);
    }
    let printed: Vec<Vec<i64>> = PRINTED_N4.iter().map(|r| r.to_vec()).collect();
    if fr.matrices[4] != printed {
        bad.push(format!("N_4 = {:?} differs from the printed matrix", fr.matrices[4]));
    }
    for (i, (got, text)) in char_polys(fr).iter().zip(PRINTED_CHAR_POLYS).enumerate() {
        let want = parse_x_poly(text).expect("printed polynomial parses");
        if *got != want {
            bad.push(format!("n_{i} = {got}, printed {text}"));
        }
    }
    Check::from_witnesses(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{admissibility_check, derive_scalars, verlinde};

    #[test]
    fn relabeling_count() {
        assert_eq!(relabelings(6).len(), 120);
        assert_eq!(relabelings(1), vec![vec![0]]);
    }

    #[test]
    fn family_b_dsq() {
        assert_eq!(derive_scalars(&construct_family_b()).dsq, Cyclotomic::from_int(9));
    }

    #[test]
    fn family_b_fusion_matches_print() {
        let fr = verlinde(&construct_family_b()).unwrap();
        let c = verify_fusion_relabeling(&fr);
        assert!(c.pass, "{:?}", c.witnesses);
    }

    #[test]
    fn families_admissible() {
        for md in [construct_family_a(), construct_family_b()] {
            let rep = admissibility_check(&md);
            assert!(rep.all_pass(), "{}", rep.to_markdown());
        }
    }
}
