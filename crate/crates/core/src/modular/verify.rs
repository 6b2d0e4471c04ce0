use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::data::{complex_matmul, derive_scalars, DerivedScalars, ModularData};
use super::fusion::{balancing_check, dual_map, fs_indicator, verlinde, FusionRules};
use super::galois::{cycle_notation, galois_group, galois_permutations, lift_unit};
use crate::exact::{units_mod, Complex64, Cyclotomic};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub rank: usize,
    pub conditions: Vec<ConditionReport>,
    pub scalars: DerivedScalars,
    #[serde(rename = "N")]
    pub t_order: Option<u32>,
    pub galois_group: Vec<String>,
    pub fusion: Option<FusionRules>,
}

impl AdmissibilityReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.condition == name)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("rank {}, D^2 = {}, N = {}\n\n", self.rank, self.scalars.dsq, fmt_opt(self.t_order)));
        out.push_str("| Condition | Pass | Witnesses |\n|---|---|---|\n");
        for c in &self.conditions {
            let w = if c.witnesses.is_empty() { String::new() } else { c.witnesses.join("; ") };
            let name = match &c.note {
                Some(n) => format!("{} ({n})", c.condition),
                None => c.condition.clone(),
            };
            out.push_str(&format!("| {name} | {} | {w} |\n", c.pass));
        }
        out.push_str(&format!("\nGalois group: {}\n", self.galois_group.join(", ")));
        out
    }
}

fn fmt_opt(v: Option<u32>) -> String {
    v.map(|n| n.to_string()).unwrap_or_else(|| "undefined".into())
}

fn report(name: &str, witnesses: Vec<String>) -> ConditionReport {
    let mut witnesses = witnesses;
    witnesses.sort();
    witnesses.dedup();
    ConditionReport {
        condition: name.into(),
        pass: witnesses.is_empty(),
        witnesses,
        note: None,
    }
}

fn matmul(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let n = a.len();
    let mut out = vec![vec![Cyclotomic::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

/// Whether `x` lies in Q(zeta_n).
fn in_cyclotomic_field(x: &Cyclotomic, n: u32) -> bool {
    let c = x.minimal_form().conductor();
    n % c == 0 || (n % 2 == 1 && (2 * n) % c == 0)
}

/// Algebraic integrality: coordinates in the power basis of the minimal
/// cyclotomic field are integers.
fn is_cyclotomic_integer(x: &Cyclotomic) -> bool {
    x.minimal_form().coeffs().iter().all(|c| c.is_integer())
}

fn prime_support(n: &BigInt) -> BTreeSet<u64> {
    let mut n = n.abs();
    let mut out = BTreeSet::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            out.insert(p.to_u64().unwrap_or(u64::MAX));
            n /= &p;
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.insert(n.to_u64().unwrap_or(u64::MAX));
    }
    out
}

fn condition_i(md: &ModularData, sc: &DerivedScalars) -> ConditionReport {
    let r = md.rank();
    let mut w = Vec::new();
    for j in 0..r {
        if !md.dim(j).is_real() {
            w.push(format!("d_{j} = {} is not real", md.dim(j)));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if md.s_entry(i, j) != md.s_entry(j, i) {
                w.push(format!("S_{i}{j} != S_{j}{i}"));
            }
        }
    }
    for i in 0..r {
        for j in 0..r {
            let mut acc = Cyclotomic::zero();
            for k in 0..r {
                acc = acc + &(md.s_entry(i, k) * &md.s_entry(j, k).conj());
            }
            let expect = if i == j { sc.dsq.clone() } else { Cyclotomic::zero() };
            if acc != expect {
                w.push(format!("(S S^dagger)_{i}{j} = {acc}, expected {expect}"));
            }
        }
    }
    for (j, th) in md.t().iter().enumerate() {
        if th.root_of_unity_order().is_none() {
            w.push(format!("theta_{j} = {th} is not a root of unity"));
        }
    }
    report("i", w)
}

fn condition_ii(md: &ModularData, sc: &DerivedScalars) -> ConditionReport {
    let r = md.rank();
    let mut w = Vec::new();
    let st: Vec<Vec<Cyclotomic>> = (0..r)
        .map(|i| (0..r).map(|j| md.s_entry(i, j) * md.theta(j)).collect())
        .collect();
    let st3 = matmul(&matmul(&st, &st), &st);
    let s2 = matmul(md.s(), md.s());
    for i in 0..r {
        for j in 0..r {
            let rhs = &sc.p_plus * &s2[i][j];
            if st3[i][j] != rhs {
                w.push(format!("((ST)^3)_{i}{j} = {}, p+ (S^2)_{i}{j} = {rhs}", st3[i][j]));
            }
        }
    }
    let prod = &sc.p_plus * &sc.p_minus;
    if prod != sc.dsq {
        w.push(format!("p+ p- = {prod}, D^2 = {}", sc.dsq));
    }
    match sc.p_plus.checked_div(&sc.p_minus) {
        Ok(q) if q.root_of_unity_order().is_some() => {}
        Ok(q) => w.push(format!("p+/p- = {q} is not a root of unity")),
        Err(_) => w.push("p- = 0".into()),
    }
    report("ii", w)
}

fn condition_v(md: &ModularData, fr: &FusionRules, n_order: Option<u32>) -> ConditionReport {
    let r = md.rank();
    let mut w = Vec::new();
    let dual = match dual_map(fr) {
        Ok(d) => d,
        Err(e) => return report("v", vec![e.to_string()]),
    };
    for k in 0..r {
        let nu = fs_indicator(md, fr, 2, k);
        if dual[k] == k {
            if nu != Cyclotomic::one() && nu != Cyclotomic::from_int(-1) {
                w.push(format!("nu_2({k}) = {nu}, expected +1 or -1"));
            }
        } else if !nu.is_zero() {
            w.push(format!("nu_2({k}) = {nu}, expected 0 for a non-self-dual label"));
        }
    }
    match n_order {
        Some(n) => {
            for e in 1..=n {
                for k in 0..r {
                    let nu = fs_indicator(md, fr, e, k);
                    if !in_cyclotomic_field(&nu, n) || !is_cyclotomic_integer(&nu) {
                        w.push(format!("nu_{e}({k}) = {nu} is not in Z[zeta_{n}]"));
                    }
                }
            }
        }
        None => w.push("T has no finite order".into()),
    }
    report("v", w)
}

fn condition_vi(md: &ModularData, n_order: Option<u32>) -> (ConditionReport, Vec<String>) {
    let mut w = Vec::new();
    let Some(n) = n_order else {
        return (report("vi", vec!["T has no finite order".into()]), Vec::new());
    };
    for (i, row) in md.s().iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !in_cyclotomic_field(x, n) {
                w.push(format!("S_{i}{j} = {x} does not lie in Q(zeta_{n})"));
            }
        }
    }
    let perms = match galois_permutations(md) {
        Ok(p) => p,
        Err(e) => {
            w.push(e.to_string());
            return (report("vi", w), Vec::new());
        }
    };
    let group: Vec<String> = galois_group(&perms).iter().map(|p| cycle_notation(p)).collect();
    if !w.is_empty() {
        return (report("vi", w), group);
    }
    // H = Gal(Q_N / F_S): units mod N fixing every S entry
    let m = md.s_ambient_conductor().lcm(&n);
    let f = md.s_field_conductor();
    let h: Vec<u32> = units_mod(n)
        .into_iter()
        .filter(|&k| {
            let kk = lift_unit(if n == 1 { 1 } else { k }, n, m) as i64;
            md.s().iter().flatten().all(|x| x.galois(kk).map(|y| y == *x).unwrap_or(false))
        })
        .collect();
    for &k in &h {
        if n > 1 && (k as u64 * k as u64) % n as u64 != 1 {
            w.push(format!("Gal(Q_{n}/F_S) contains {k} of order > 2"));
        }
    }
    // the column action of Gal(F_S/Q) must be faithful
    let ms = md.s_ambient_conductor();
    for p in perms.iter().filter(|p| p.is_identity()) {
        let k = p.field_exponent;
        let kk = lift_unit(k, f, ms) as i64;
        if !md.s().iter().flatten().all(|x| x.galois(kk).map(|y| y == *x).unwrap_or(false)) {
            w.push(format!("exponent {k} acts trivially on columns but moves S"));
        }
    }
    (report("vi", w), group)
}

fn condition_vii(sc: &DerivedScalars, n_order: Option<u32>) -> ConditionReport {
    let Some(n) = n_order else {
        return report("vii", vec!["T has no finite order".into()]);
    };
    let norm = sc.dsq.norm();
    let mut lhs = prime_support(norm.numer());
    lhs.extend(prime_support(norm.denom()));
    let rhs = prime_support(&BigInt::from(n));
    let mut w = Vec::new();
    if lhs != rhs {
        w.push(format!("primes of N(D^2) = {lhs:?}, primes of N = {rhs:?}"));
    }
    let mut c = report("vii", w);
    c.note = Some("surrogate: rational primes of the field norm of D^2 versus primes of N".into());
    c
}

/// Evaluates conditions (i)–(vii) exactly. Every condition is reported;
/// when the fusion rules cannot be formed, (iii)–(v) fail with that witness.
pub fn admissibility_check(md: &ModularData) -> AdmissibilityReport {
    let sc = derive_scalars(md);
    let n_order = md.t_order();
    let mut conditions = vec![condition_i(md, &sc), condition_ii(md, &sc)];
    let fr = verlinde(md);
    match &fr {
        Ok(fr) => {
            let mut w = Vec::new();
            if !fr.is_symmetric() {
                w.push("N_ij^k != N_ji^k".into());
            }
            if !fr.commute() {
                w.push("fusion matrices do not commute".into());
            }
            conditions.push(report("iii", w));
            conditions.push(report("iv", balancing_check(md, fr).witnesses));
            conditions.push(condition_v(md, fr, n_order));
        }
        Err(e) => {
            for name in ["iii", "iv", "v"] {
                conditions.push(report(name, vec![e.to_string()]));
            }
        }
    }
    let (vi, group) = condition_vi(md, n_order);
    conditions.push(vi);
    conditions.push(condition_vii(&sc, n_order));
    AdmissibilityReport {
        rank: md.rank(),
        conditions,
        scalars: sc,
        t_order: n_order,
        galois_group: group,
        fusion: fr.ok(),
    }
}

/// Largest deviation from the exact identities SS† = D²I,
/// (ST)³ = p₊S² and p₊p₋ = D² under the complex embedding.
pub fn numeric_residual(md: &ModularData) -> f64 {
    let r = md.rank();
    let s = md.embed_s();
    let t = md.embed_t();
    let sc = derive_scalars(md);
    let (dsq, pp, pm) = (sc.dsq.embed(), sc.p_plus.embed(), sc.p_minus.embed());
    let sdag: Vec<Vec<Complex64>> = (0..r)
        .map(|i| (0..r).map(|j| Complex64::new(s[j][i].re, -s[j][i].im)).collect())
        .collect();
    let mut worst: f64 = 0.0;
    let ssd = complex_matmul(&s, &sdag);
    for i in 0..r {
        for j in 0..r {
            let expect = if i == j { dsq } else { Complex64::default() };
            worst = worst.max(ssd[i][j].dist(expect));
        }
    }
    let st: Vec<Vec<Complex64>> = (0..r).map(|i| (0..r).map(|j| s[i][j] * t[j]).collect()).collect();
    let st3 = complex_matmul(&complex_matmul(&st, &st), &st);
    let s2 = complex_matmul(&s, &s);
    for i in 0..r {
        for j in 0..r {
            worst = worst.max(st3[i][j].dist(pp * s2[i][j]));
        }
    }
    worst.max((pp * pm).dist(dsq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_is_admissible() {
        let rep = admissibility_check(&ModularData::trivial());
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.galois_group, vec!["()".to_string()]);
    }

    #[test]
    fn semion_is_admissible() {
        let rep = admissibility_check(&ModularData::semion());
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.t_order, Some(4));
        assert!(numeric_residual(&ModularData::semion()) < 1e-12);
    }

    #[test]
    fn primes() {
        assert_eq!(prime_support(&BigInt::from(28)), [2, 7].into_iter().collect());
        assert_eq!(prime_support(&BigInt::from(1)), BTreeSet::new());
    }
}
