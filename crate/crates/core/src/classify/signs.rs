use serde::Serialize;

/// Galois permutation σ = (012)(345) acting on labels.
pub const SIGMA: [usize; 6] = [1, 2, 0, 4, 5, 3];

/// Sign function ε with ε₀ = +1 and ε₀ε₁ε₂ = ε₃ε₄ε₅.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignChoice {
    pub index: u8,
    pub signs: [i8; 6],
}

impl SignChoice {
    /// Choice `index` from the standard list of sixteen.
    pub fn new(index: u8) -> Option<SignChoice> {
        let mut s = [1i8; 6];
        match index {
            0 => {}
            // only the listed labels are positive
            1..=5 => {
                s = [-1; 6];
                s[0] = 1;
                s[index as usize] = 1;
            }
            // only the listed labels are negative
            6..=15 => {
                let (a, b) = match index {
                    6 => (1, 5),
                    7 => (2, 5),
                    8 => (3, 5),
                    9 => (4, 5),
                    10 => (1, 4),
                    11 => (2, 4),
                    12 => (3, 4),
                    13 => (1, 3),
                    14 => (2, 3),
                    _ => (1, 2),
                };
                s[a] = -1;
                s[b] = -1;
            }
            _ => return None,
        }
        Some(SignChoice { index, signs: s })
    }

    pub fn eps(&self, label: usize) -> i8 {
        self.signs[label]
    }

    /// Sign vector after relabeling the simple objects by `perm`
    /// (label `i` becomes `perm[i]`).
    pub fn relabeled(&self, perm: &[usize; 6]) -> [i8; 6] {
        let mut out = [0i8; 6];
        for i in 0..6 {
            out[perm[i]] = self.signs[i];
        }
        out
    }

    pub fn from_signs(signs: [i8; 6]) -> Option<SignChoice> {
        (0..16).filter_map(SignChoice::new).find(|c| c.signs == signs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignChoiceCatalog {
    pub all16: Vec<SignChoice>,
    pub orbits: Vec<Vec<u8>>,
    pub representatives: Vec<u8>,
    pub excluded: Vec<(u8, String)>,
}

/// The sixteen admissible sign choices, their orbits under the relabeling
/// (345), and the representatives that need to be examined.
pub fn enumerate_sign_choices() -> SignChoiceCatalog {
    let all16: Vec<SignChoice> = (0..16).filter_map(SignChoice::new).collect();
    let relabel = [0, 1, 2, 4, 5, 3];
    let mut orbits: Vec<Vec<u8>> = Vec::new();
    for c in &all16 {
        if orbits.iter().any(|o| o.contains(&c.index)) {
            continue;
        }
        let mut orbit = vec![c.index];
        let mut cur = *c;
        loop {
            let next = SignChoice::from_signs(cur.relabeled(&relabel))
                .expect("relabeling preserves parity");
            if next.index == c.index {
                break;
            }
            orbit.push(next.index);
            cur = next;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let excluded = vec![(
        0,
        "all signs positive: the Frobenius-Perron column of the normalized S is \
         entrywise positive and repeats across columns, so it cannot be orthogonal"
            .to_string(),
    )];
    let representatives = orbits
        .iter()
        .map(|o| o[0])
        .filter(|i| !excluded.iter().any(|(e, _)| e == i))
        .collect();
    SignChoiceCatalog {
        all16,
        orbits,
        representatives,
        excluded,
    }
}

/// A degeneracy pattern of the T-spectrum: classes of labels whose twists
/// coincide (θ₀ = 1), closed under σ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyCase {
    pub index: u8,
    /// Sorted pairs (i, j), i < j, with θ_i = θ_j.
    pub equalities: Vec<(usize, usize)>,
    /// Pairs (i, j) with θ_i − θ_j known to be nonzero in this case.
    pub case_atoms: Vec<(usize, usize)>,
}

impl DegeneracyCase {
    /// Equivalence classes of size at least two, each sorted.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        classes_of(&self.equalities)
    }

    /// Generating equalities: θ_j = 1 for each j in the class of 0, and
    /// chains θ_a = θ_b = θ_c inside the other classes.
    pub fn chain_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in self.classes() {
            if c[0] == 0 {
                out.extend(c[1..].iter().map(|&j| (0, j)));
            } else {
                out.extend(c.windows(2).map(|w| (w[0], w[1])));
            }
        }
        out
    }
}

fn classes_of(pairs: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..6).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..6 {
        let r = find(&mut parent, i);
        match classes.iter_mut().find(|c| c[0] == r) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes.retain(|c| c.len() > 1);
    classes
}

/// All pairs implied by `seed` under the action i ↦ sigma(i), as sorted
/// pairs of distinct labels (transitively closed).
pub fn close_equalities(seed: &[(usize, usize)], sigma: &[usize; 6]) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seed {
        let (mut i, mut j) = (a, b);
        for _ in 0..6 {
            pairs.push((i, j));
            i = sigma[i];
            j = sigma[j];
        }
    }
    let mut out = Vec::new();
    for c in classes_of(&pairs) {
        for x in 0..c.len() {
            for y in x + 1..c.len() {
                out.push((c[x], c[y]));
            }
        }
    }
    out.sort_unstable();
    out
}

/// The five degeneracy cases: seeds θ₀ = θ₁, θ₃ = θ₄, θ₀ = θ₃, θ₀ = θ₄,
/// θ₀ = θ₅ closed under `sigma`.
pub fn enumerate_degeneracy_cases(sigma: &[usize; 6]) -> Vec<DegeneracyCase> {
    let seeds = [(0, 1), (3, 4), (0, 3), (0, 4), (0, 5)];
    let mut out: Vec<DegeneracyCase> = Vec::new();
    for seed in seeds {
        let equalities = close_equalities(&[seed], sigma);
        if equalities.is_empty() || out.iter().any(|c| c.equalities == equalities) {
            continue;
        }
        let index = out.len() as u8 + 1;
        // case 2 runs after case 1 is excluded, so θ₁, θ₂ are distinct and not 1
        let case_atoms = if index == 2 {
            vec![(1, 2), (0, 1), (0, 2)]
        } else {
            Vec::new()
        };
        out.push(DegeneracyCase {
            index,
            equalities,
            case_atoms,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_choices_satisfy_parity() {
        let cat = enumerate_sign_choices();
        assert_eq!(cat.all16.len(), 16);
        for c in &cat.all16 {
            assert_eq!(c.signs[0], 1);
            let prod: i8 = c.signs.iter().product();
            assert_eq!(prod, 1, "choice {}", c.index);
        }
        let mut distinct: Vec<_> = cat.all16.iter().map(|c| c.signs).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 16);
    }

    #[test]
    fn orbits_and_representatives() {
        let cat = enumerate_sign_choices();
        assert_eq!(cat.representatives, vec![1, 2, 3, 6, 7, 8, 15]);
        for o in [vec![3, 4, 5], vec![6, 10, 13], vec![8, 9, 12], vec![7, 11, 14]] {
            assert!(cat.orbits.contains(&o), "{o:?}");
        }
        assert_eq!(cat.excluded[0].0, 0);
        assert_eq!(SignChoice::new(1).unwrap().signs, [1, 1, -1, -1, -1, -1]);
        assert_eq!(SignChoice::new(15).unwrap().signs, [1, -1, -1, 1, 1, 1]);
    }

    #[test]
    fn five_cases() {
        let cases = enumerate_degeneracy_cases(&SIGMA);
        assert_eq!(cases.len(), 5);
        assert_eq!(cases[0].classes(), vec![vec![0, 1, 2]]);
        assert_eq!(cases[1].classes(), vec![vec![3, 4, 5]]);
        assert_eq!(cases[2].classes(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(cases[3].classes(), vec![vec![0, 4], vec![1, 5], vec![2, 3]]);
        assert_eq!(cases[4].classes(), vec![vec![0, 5], vec![1, 3], vec![2, 4]]);
        assert!(close_equalities(&[(0, 0)], &SIGMA).is_empty());
    }

    #[test]
    fn closure_is_equivariant() {
        for c in enumerate_degeneracy_cases(&SIGMA) {
            for &(i, j) in &c.equalities {
                let (a, b) = (SIGMA[i].min(SIGMA[j]), SIGMA[i].max(SIGMA[j]));
                assert!(c.equalities.contains(&(a, b)));
            }
            assert_eq!(close_equalities(&c.equalities, &SIGMA), c.equalities);
        }
    }
}
