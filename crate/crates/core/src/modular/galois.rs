use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use super::data::ModularData;
use super::ModularError;
use crate::exact::{units_mod, Cyclotomic};

/// Column permutation of S̃ induced by zeta -> zeta^k:
/// galois(S̃[i][j], k) = S̃[i][permutation[j]].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisPermutation {
    pub field_exponent: u32,
    pub permutation: Vec<usize>,
}

impl GaloisPermutation {
    pub fn identity(rank: usize) -> Self {
        GaloisPermutation {
            field_exponent: 1,
            permutation: (0..rank).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse_permutation(&self) -> Vec<usize> {
        let mut inv = vec![0; self.permutation.len()];
        for (i, &j) in self.permutation.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }

    pub fn cycles(&self) -> String {
        cycle_notation(&self.permutation)
    }
}

/// Cycle notation with fixed points omitted, e.g. `(0 1 2)(3 4 5)`;
/// the identity is `()`.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut j = perm[start];
        while j != start {
            seen[j] = true;
            cyc.push(j);
            j = perm[j];
        }
        let body: Vec<String> = cyc.iter().map(usize::to_string).collect();
        out.push('(');
        out.push_str(&body.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Smallest representative of `k` modulo `f` that is a unit modulo `m`
/// (`f` divides `m`).
pub(crate) fn lift_unit(k: u32, f: u32, m: u32) -> u32 {
    let mut c = k % m.max(1);
    while c.gcd(&m) != 1 && m > 1 {
        c += f;
    }
    c
}

/// One entry per unit k modulo the conductor of the field of S entries.
pub fn galois_permutations(md: &ModularData) -> Result<Vec<GaloisPermutation>, ModularError> {
    let st = md.s_tilde()?;
    let r = md.rank();
    let f = md.s_field_conductor();
    let m = md.s_ambient_conductor();
    let mut out = Vec::new();
    for k in units_mod(f) {
        let k = if f == 1 { 1 } else { k };
        let kk = lift_unit(k, f, m) as i64;
        let images: Vec<Vec<Cyclotomic>> = (0..r)
            .map(|j| (0..r).map(|i| st[i][j].galois(kk)).collect::<Result<_, _>>())
            .collect::<Result<_, _>>()?;
        let mut perm = Vec::with_capacity(r);
        for (j, img) in images.iter().enumerate() {
            let hit: Vec<usize> = (0..r).filter(|&c| (0..r).all(|i| img[i] == st[i][c])).collect();
            match hit.as_slice() {
                [c] => perm.push(*c),
                _ => return Err(ModularError::NotPermutation { exponent: k, column: j }),
            }
        }
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..r).collect::<Vec<_>>() {
            return Err(ModularError::NotPermutation { exponent: k, column: 0 });
        }
        out.push(GaloisPermutation {
            field_exponent: k,
            permutation: perm,
        });
    }
    Ok(out)
}

/// Distinct permutations of `galois_permutations`, sorted.
pub fn galois_group(perms: &[GaloisPermutation]) -> Vec<Vec<usize>> {
    let mut g: Vec<Vec<usize>> = perms.iter().map(|p| p.permutation.clone()).collect();
    g.sort();
    g.dedup();
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignFunction {
    pub sigma: GaloisPermutation,
    pub signs: Vec<i8>,
}

/// Solves S_ij = ε(i)ε(σj)·S_{σ⁻¹(i), σ(j)} for ε with ε(0) = +1, and
/// checks Π ε(i) = sign(σ) when the rank is even.
pub fn sign_function_extract(md: &ModularData, sigma: &GaloisPermutation) -> Result<SignFunction, ModularError> {
    let r = md.rank();
    if r > 20 {
        return Err(ModularError::Shape("sign extraction supports rank at most 20".into()));
    }
    let p = &sigma.permutation;
    let pinv = sigma.inverse_permutation();
    // ratio[i][j] = S_ij / S_{σ⁻¹ i, σ j} must be ±1
    let mut ratio = vec![vec![0i8; r]; r];
    for i in 0..r {
        for j in 0..r {
            let a = md.s_entry(i, j);
            let b = md.s_entry(pinv[i], p[j]);
            ratio[i][j] = if a == b {
                1
            } else if *a == -b {
                -1
            } else {
                return Err(ModularError::NoConsistentSigns);
            };
        }
    }
    for mask in 0u32..(1 << (r - 1)) {
        let eps: Vec<i8> = (0..r)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 })
            .collect();
        let ok = (0..r).all(|i| (0..r).all(|j| md.s_entry(i, j).is_zero() || eps[i] * eps[p[j]] == ratio[i][j]));
        if ok {
            if r % 2 == 0 && eps.iter().product::<i8>() != permutation_sign(p) {
                return Err(ModularError::NoConsistentSigns);
            }
            return Ok(SignFunction {
                sigma: sigma.clone(),
                signs: eps,
            });
        }
    }
    Err(ModularError::NoConsistentSigns)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TSpectrum {
    pub gamma: Cyclotomic,
    pub t: Vec<Cyclotomic>,
}

/// Finds a root of unity γ such that t_i = γθ_i satisfies
/// σ²(t_i) = t_{σ(i)} for every lift of σ to the field of S and T.
/// Since t_0 = γ and the order of γT divides 12N, candidates are the
/// 12N-th roots of unity, tried in order of exponent.
pub fn t_spectrum_check(md: &ModularData, sigma: &GaloisPermutation) -> Result<TSpectrum, ModularError> {
    let n = md.t_order().ok_or(ModularError::GaloisSymmetryViolated)?;
    let f = md.s_field_conductor();
    let order = 12 * n;
    let m = md.ambient_conductor().lcm(&order).lcm(&f);
    let lifts: Vec<i64> = units_mod(m)
        .into_iter()
        .filter(|k| f == 1 || k % f == sigma.field_exponent % f)
        .map(i64::from)
        .collect();
    let p = &sigma.permutation;
    for e in 0..order {
        let gamma = Cyclotomic::zeta_pow(order, e as i64);
        let t: Vec<Cyclotomic> = md.t().iter().map(|th| &gamma * th).collect();
        let ok = lifts.iter().all(|&k| {
            t.iter()
                .enumerate()
                .all(|(i, ti)| ti.galois(k * k).map(|v| v == t[p[i]]).unwrap_or(false))
        });
        if ok {
            return Ok(TSpectrum { gamma: gamma.minimal_form(), t });
        }
    }
    Err(ModularError::GaloisSymmetryViolated)
}

/// Map from permutation (in cycle notation) to the exponents inducing it.
pub fn exponents_by_permutation(perms: &[GaloisPermutation]) -> BTreeMap<String, Vec<u32>> {
    let mut out: BTreeMap<String, Vec<u32>> = BTreeMap::new();
    for p in perms {
        out.entry(p.cycles()).or_default().push(p.field_exponent);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        assert_eq!(cycle_notation(&[1, 2, 0, 4, 5, 3]), "(0 1 2)(3 4 5)");
        assert_eq!(cycle_notation(&[0, 1]), "()");
        assert_eq!(permutation_sign(&[1, 2, 0, 4, 5, 3]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
    }

    #[test]
    fn trivial_data() {
        let md = ModularData::trivial();
        let g = galois_permutations(&md).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g[0].is_identity());
        let sf = sign_function_extract(&md, &g[0]).unwrap();
        assert_eq!(sf.signs, vec![1]);
        assert!(t_spectrum_check(&md, &g[0]).is_ok());
    }

    #[test]
    fn identity_sigma_gives_positive_signs() {
        let md = ModularData::semion();
        let sf = sign_function_extract(&md, &GaloisPermutation::identity(2)).unwrap();
        assert_eq!(sf.signs, vec![1, 1]);
    }
}
