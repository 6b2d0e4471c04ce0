use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::exact::{MonomialOrder, Poly, Rational, VarRegistry};
use crate::groebner::IdealSpec;

use super::signs::{DegeneracyCase, SignChoice, SIGMA};
use super::ClassifyError;

/// Variables of the elimination ideals, in decreasing precedence.
pub const CAMPAIGN_VARIABLES: [&str; 17] = [
    "k", "x", "th1", "th2", "th3", "th4", "th5", "s33", "s34", "s35", "d1", "d2", "d3", "d4",
    "d5", "p", "Dsq",
];

pub fn campaign_registry() -> Arc<VarRegistry> {
    VarRegistry::new(&CAMPAIGN_VARIABLES).expect("valid names")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SSymbol {
    One,
    /// d_k = S_{0k}
    Dim(usize),
    /// free entry s_ij of the lower-right block
    Block(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SEntry {
    pub sign: i8,
    pub symbol: SSymbol,
}

/// The S-matrix shape forced by a sign choice: every entry is ± one of
/// 1, d_k, or a block unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralS {
    pub choice: SignChoice,
    pub entries: [[SEntry; 6]; 6],
    pub unknowns: Vec<(usize, usize)>,
}

impl StructuralS {
    pub fn entry_poly(&self, registry: &Arc<VarRegistry>, order: MonomialOrder, i: usize, j: usize) -> Poly {
        let e = self.entries[i][j];
        let base = match e.symbol {
            SSymbol::One => Poly::one(registry, order),
            SSymbol::Dim(k) => Poly::var(registry, order, &format!("d{k}")).expect("campaign registry"),
            SSymbol::Block(a, b) => {
                Poly::var(registry, order, &format!("s{a}{b}")).expect("campaign registry")
            }
        };
        base.scale(&Rational::from(e.sign as i64))
    }

    pub fn polys(&self, registry: &Arc<VarRegistry>, order: MonomialOrder) -> Vec<Vec<Poly>> {
        (0..6)
            .map(|i| (0..6).map(|j| self.entry_poly(registry, order, i, j)).collect())
            .collect()
    }
}

/// Propagates S_ij = ε(i)ε(σj)·S_{σ⁻¹(i), σ(j)} and symmetry from the unit
/// row, introducing block unknowns for whatever stays undetermined.
pub fn structural_s_matrix(choice: &SignChoice) -> Result<StructuralS, ClassifyError> {
    let mut sigma_inv = [0usize; 6];
    for (i, &s) in SIGMA.iter().enumerate() {
        sigma_inv[s] = i;
    }
    let mut cells: [[Option<SEntry>; 6]; 6] = [[None; 6]; 6];
    let mut unknowns = Vec::new();

    let mut seeds: Vec<((usize, usize), SSymbol)> = vec![((0, 0), SSymbol::One)];
    seeds.extend((1..6).map(|k| ((0, k), SSymbol::Dim(k))));
    let mut pending = seeds.into_iter();
    loop {
        let next = pending.next().or_else(|| {
            (0..36)
                .map(|n| (n / 6, n % 6))
                .find(|&(i, j)| cells[i][j].is_none())
                .map(|(i, j)| ((i, j), SSymbol::Block(i, j)))
        });
        let Some(((i0, j0), symbol)) = next else { break };
        if cells[i0][j0].is_some() {
            continue;
        }
        if let SSymbol::Block(a, b) = symbol {
            unknowns.push((a, b));
        }
        cells[i0][j0] = Some(SEntry { sign: 1, symbol });
        let mut queue = VecDeque::from([(i0, j0)]);
        while let Some((i, j)) = queue.pop_front() {
            let cur = cells[i][j].unwrap();
            let s = choice.eps(i) * choice.eps(SIGMA[j]);
            let nbrs = [
                ((sigma_inv[i], SIGMA[j]), s),
                ((SIGMA[i], sigma_inv[j]), choice.eps(SIGMA[i]) * choice.eps(j)),
                ((j, i), 1),
            ];
            for ((a, b), sign) in nbrs {
                let want = SEntry {
                    sign: cur.sign * sign,
                    symbol: cur.symbol,
                };
                match cells[a][b] {
                    None => {
                        cells[a][b] = Some(want);
                        queue.push_back((a, b));
                    }
                    Some(have) if have == want => {}
                    Some(have) => {
                        return Err(ClassifyError::InconsistentSigns(format!(
                            "choice {}: S[{a}][{b}] forced to both {have:?} and {want:?}",
                            choice.index
                        )))
                    }
                }
            }
        }
    }
    let entries = cells.map(|row| row.map(|c| c.expect("all cells assigned")));
    Ok(StructuralS {
        choice: *choice,
        entries,
        unknowns,
    })
}

/// Starting degree limit for a campaign run, as used in the published
/// computation.
pub fn paper_degree_cap(choice: u8, case: u8) -> u32 {
    match (choice, case) {
        (15, 1) => 8,
        (2, 1 | 2) => 9,
        (_, 1) => 9,
        (_, 2) => 8,
        _ => 7,
    }
}

fn theta(registry: &Arc<VarRegistry>, order: MonomialOrder, i: usize) -> Poly {
    if i == 0 {
        Poly::one(registry, order)
    } else {
        Poly::var(registry, order, &format!("th{i}")).expect("campaign registry")
    }
}

/// Relations satisfied by any modular data with structural S for `s`:
/// orthogonality, the definitions of Dsq and p, balancing θ_iθ_j(S T S)_ij = p·S_ij,
/// and the nonvanishing of the dimensions and twists.
pub fn modular_relations(s: &StructuralS, registry: &Arc<VarRegistry>, order: MonomialOrder) -> Vec<Poly> {
    let sp = s.polys(registry, order);
    let v = |n: &str| Poly::var(registry, order, n).expect("campaign registry");
    let one = Poly::one(registry, order);
    let dsq = v("Dsq");
    let p = v("p");
    let th: Vec<Poly> = (0..6).map(|i| theta(registry, order, i)).collect();
    let mut gens = Vec::new();
    for i in 0..6 {
        for j in i..6 {
            let mut acc = Poly::zero(registry, order);
            for k in 0..6 {
                acc = &acc + &(&sp[k][i] * &sp[k][j]);
            }
            if i == j {
                acc = &acc - &dsq;
            }
            gens.push(acc);
        }
    }
    let mut sum_sq = one.clone();
    let mut gauss = one.clone();
    for k in 1..6 {
        let sq = &sp[0][k] * &sp[0][k];
        gauss = &gauss + &(&sq * &th[k]);
        sum_sq = &sum_sq + &sq;
    }
    gens.push(&dsq - &sum_sq);
    gens.push(&p - &gauss);
    for i in 0..6 {
        for j in i..6 {
            let mut acc = Poly::zero(registry, order);
            for k in 0..6 {
                acc = &acc + &(&(&sp[i][k] * &th[k]) * &sp[k][j]);
            }
            let lhs = &(&th[i] * &th[j]) * &acc;
            gens.push(&lhs - &(&p * &sp[i][j]));
        }
    }
    let mut dprod = v("k");
    let mut tprod = v("x");
    for k in 1..6 {
        dprod = &dprod * &v(&format!("d{k}"));
        tprod = &tprod * &th[k];
    }
    gens.push(&dprod - &one);
    gens.push(&tprod - &one);
    gens.retain(|g| !g.is_zero());
    gens.into_iter().map(|g| g.primitive()).collect()
}

/// Elimination ideal for one (sign choice, degeneracy case) pair.
pub fn build_ideal(choice: &SignChoice, dcase: &DegeneracyCase) -> Result<IdealSpec, ClassifyError> {
    let registry = campaign_registry();
    let order = MonomialOrder::GrevLex;
    let s = structural_s_matrix(choice)?;
    let th = |i: usize| theta(&registry, order, i);
    let diff = |i: usize, j: usize| (&th(i) - &th(j)).primitive();

    let mut spec = IdealSpec::new(&registry, order, paper_degree_cap(choice.index, dcase.index));
    spec.generators = modular_relations(&s, &registry, order);
    spec.generators
        .extend(dcase.chain_pairs().into_iter().map(|(i, j)| diff(i, j)));

    let mut atoms: Vec<Poly> = ["p", "Dsq"]
        .iter()
        .map(|n| Poly::var(&registry, order, n).unwrap())
        .collect();
    atoms.extend((1..6).map(|k| Poly::var(&registry, order, &format!("d{k}")).unwrap()));
    atoms.extend((1..6).map(th));
    atoms.extend(dcase.case_atoms.iter().map(|&(i, j)| diff(i, j)));
    spec.nonzero_atoms = atoms;

    if dcase.index == 1 {
        for t in [4, 5] {
            let one = Poly::one(&registry, order);
            spec.forbidden_relations.push(&(&th(t) * &th(t)) - &one);
            spec.forbidden_relations.push(&th(t) - &one);
            spec.forbidden_relations.push(&th(t) + &one);
        }
    }
    if dcase.index >= 3 {
        for (i, j) in [(1, 0), (2, 0), (1, 2)] {
            spec.reduction_relations.push((diff(i, j), "case 1".into()));
        }
        for (i, j) in [(3, 4), (4, 5), (3, 5)] {
            spec.reduction_relations.push((diff(i, j), "case 2".into()));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::signs::enumerate_degeneracy_cases;

    #[test]
    fn every_choice_propagates_consistently() {
        for idx in 0..16 {
            let c = SignChoice::new(idx).unwrap();
            let s = structural_s_matrix(&c).unwrap();
            assert_eq!(s.entries[0][0].symbol, SSymbol::One);
            for i in 0..6 {
                for j in 0..6 {
                    assert_eq!(s.entries[i][j], s.entries[j][i]);
                }
            }
        }
    }

    #[test]
    fn choice_15_block_unknowns() {
        let s = structural_s_matrix(&SignChoice::new(15).unwrap()).unwrap();
        assert_eq!(s.unknowns, vec![(3, 3), (3, 4), (3, 5)]);
        for k in 1..6 {
            assert_eq!(s.entries[0][k].symbol, SSymbol::Dim(k));
            assert_eq!(s.entries[0][k].sign, 1);
        }
    }

    #[test]
    fn case_generators_present() {
        let r = campaign_registry();
        let o = MonomialOrder::GrevLex;
        let cases = enumerate_degeneracy_cases(&SIGMA);
        let spec = build_ideal(&SignChoice::new(1).unwrap(), &cases[0]).unwrap();
        for rel in ["th1 - 1", "th2 - 1", "d1*d2*d3*d4*d5*k - 1"] {
            let want = Poly::parse(&r, o, rel).unwrap();
            assert!(spec.generators.contains(&want), "{rel}");
        }
        let spec = build_ideal(&SignChoice::new(3).unwrap(), &cases[1]).unwrap();
        for rel in ["th3 - th4", "th4 - th5"] {
            let want = Poly::parse(&r, o, rel).unwrap();
            assert!(spec.generators.contains(&want), "{rel}");
        }
        spec.validate().unwrap();
    }
}
