use std::sync::Arc;

use serde::Serialize;

use super::ClassifyError;
use crate::exact::{Cyclotomic, MonomialOrder, Poly, Rational, VarRegistry};
use crate::groebner::{buchberger_mod_p, groebner_basis, normal_form, s_polynomial, Budget};
use crate::modular::{fs_indicator, verlinde, ModularData};

/// Variables of the T-ideal: the five nontrivial twists, the inverse of
/// their product, and the generator d5 = S_05 of the field of S.
pub const T_VARIABLES: [&str; 7] = ["th1", "th2", "th3", "th4", "th5", "x", "d5"];

/// The relations printed for the second family, with the last one read
/// as θ5² + xθ5 − d5.
pub const PRINTED_T_RELATIONS: [&str; 6] = [
    "th2^2 + th2 + 1",
    "th1 + th2 + 1",
    "th3 + th4 + th5",
    "th2*th4 - th5",
    "x^2 + x + 1",
    "th5^2 + x*th5 - d5",
];

/// The last printed relation verbatim.
pub const PRINTED_T_RELATION_AS_TYPESET: &str = "th5^2 + x + th5 - d5";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TSolution {
    /// Value of d5; a Galois conjugate of S_05.
    pub d5: Cyclotomic,
    /// θ_0..θ_5 with θ_0 = 1.
    pub thetas: Vec<Cyclotomic>,
    pub x: Cyclotomic,
}

#[derive(Clone, Debug, Serialize)]
pub struct TSolveResult {
    /// Reduced Gröbner basis of the T-ideal, as strings.
    pub relations: Vec<String>,
    #[serde(skip)]
    pub basis: Vec<Poly>,
    /// S_05, the value d5 stands for.
    pub d5: Cyclotomic,
    /// Minimal polynomial of d5, expressed in d5.
    pub d5_min_poly: String,
    /// Every entry of S written as a polynomial in d5.
    #[serde(skip)]
    pub s_polys: Vec<Vec<Poly>>,
    /// Every printed relation lies in the T-ideal.
    pub printed_in_ideal: bool,
    /// Basis elements outside the ideal of the printed relations and the
    /// minimal polynomial of d5; empty when the two ideals agree.
    pub not_in_printed: Vec<String>,
    /// Common zeros of the printed relations and the minimal polynomial of d5.
    pub solutions: Vec<TSolution>,
    /// Common zeros of the full T-ideal.
    pub ideal_solutions: Vec<TSolution>,
    /// Largest root-of-unity order searched.
    pub search_order: u32,
}

pub fn t_registry() -> Arc<VarRegistry> {
    VarRegistry::new(&T_VARIABLES).expect("static registry")
}

/// Solves Σ c_i g^i = y over Q with i < degree of g, if possible.
fn express_in_powers(g: &Cyclotomic, degree: usize, y: &Cyclotomic) -> Option<Vec<Rational>> {
    let mut powers = vec![Cyclotomic::one()];
    for _ in 1..degree {
        let next = powers.last().unwrap() * g;
        powers.push(next);
    }
    let m = powers
        .iter()
        .chain(std::iter::once(y))
        .fold(1u32, |acc, p| num_integer::lcm(acc, p.conductor()));
    let cols: Vec<Vec<Rational>> = powers.iter().map(|p| p.lift(m).coeffs().to_vec()).collect();
    let rhs = y.lift(m).coeffs().to_vec();
    let rows = rhs.len();
    // Gaussian elimination on the rows x (degree + 1) augmented system
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..degree {
        let Some(p) = (pr..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(pr, p);
        let inv = a[pr][c].recip().ok()?;
        for v in a[pr].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != pr && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..=degree {
                    let t = &a[pr][k] * &f;
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    if a[pr..].iter().any(|row| !row[degree].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); degree];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = a[r][degree].clone();
    }
    Some(sol)
}

/// The twist and orthogonality relations for S with unknown T, the minimal
/// polynomial of d5 = S_05, and θ1θ2θ3θ4θ5x − 1.
pub fn t_ideal_generators(s: &[Vec<Cyclotomic>]) -> Result<(Vec<Poly>, Vec<Vec<Poly>>, Poly), ClassifyError> {
    let r = s.len();
    if r != 6 || s.iter().any(|row| row.len() != 6) {
        return Err(ClassifyError::TSolve("S must be 6x6".into()));
    }
    let reg = t_registry();
    let ord = MonomialOrder::GrevLex;
    let d5_var = 6;
    let g = &s[0][5];
    let minp = g.min_poly_coeffs();
    let degree = minp.len() - 1;
    let minpoly = Poly::from_univariate(&reg, ord, d5_var, &minp);
    let mut sp = vec![vec![Poly::zero(&reg, ord); r]; r];
    for i in 0..r {
        for j in 0..r {
            let c = express_in_powers(g, degree, &s[i][j]).ok_or_else(|| {
                ClassifyError::TSolve(format!("S_{i}{j} does not lie in Q(S_05)"))
            })?;
            sp[i][j] = Poly::from_univariate(&reg, ord, d5_var, &c);
        }
    }
    let theta: Vec<Poly> = std::iter::once(Poly::one(&reg, ord))
        .chain((0..5).map(|i| Poly::var_index(&reg, ord, i)))
        .collect();
    let budget = Budget::default();
    let nf = |p: &Poly| normal_form(p, std::slice::from_ref(&minpoly), &budget);
    let mut gens = vec![minpoly.clone()];
    let mut prod = Poly::var_index(&reg, ord, 5);
    for th in &theta[1..] {
        prod = &prod * th;
    }
    gens.push(&prod - &Poly::one(&reg, ord));
    let mut p = Poly::zero(&reg, ord);
    for k in 0..r {
        p = &p + &(&(&sp[0][k] * &sp[0][k]) * &theta[k]);
    }
    let mut dsq = Poly::zero(&reg, ord);
    for k in 0..r {
        dsq = &dsq + &(&sp[0][k] * &sp[0][k]);
    }
    for i in 0..r {
        for j in i..r {
            let mut orth = Poly::zero(&reg, ord);
            let mut sts = Poly::zero(&reg, ord);
            for k in 0..r {
                orth = &orth + &(&sp[k][i] * &sp[k][j]);
                sts = &sts + &(&(&sp[i][k] * &theta[k]) * &sp[k][j]);
            }
            if i == j {
                orth = &orth - &dsq;
            }
            let twist = &(&(&theta[i] * &theta[j]) * &sts) - &(&p * &sp[i][j]);
            for rel in [orth, twist] {
                let rel = nf(&rel)?;
                if !rel.is_zero() {
                    gens.push(rel);
                }
            }
        }
    }
    Ok((gens, sp, minpoly))
}

/// Primes for the modular Gröbner computation of the T-ideal.
pub const T_PRIMES: [u32; 2] = [2_147_483_629, 2_147_483_587];

/// Reduced Gröbner basis over Q reconstructed from computations modulo
/// each of `primes`, which must agree. The result is checked exactly to be
/// a Gröbner basis (every S-polynomial reduces to zero) of an ideal
/// containing every generator.
pub fn modular_groebner(gens: &[Poly], primes: &[u32]) -> Result<Vec<Poly>, ClassifyError> {
    let budget = Budget::default();
    let reg = gens[0].registry().clone();
    let ord = gens[0].order();
    let mut lifted: Option<Vec<Poly>> = None;
    for &p in primes {
        let mb = buchberger_mod_p(gens, p, None, &budget)?;
        let basis: Vec<Poly> = mb
            .basis
            .iter()
            .map(|m| m.lift(&reg, ord, p))
            .collect::<Option<_>>()
            .ok_or_else(|| ClassifyError::TSolve(format!("no rational lift modulo {p}")))?;
        match &lifted {
            None => lifted = Some(basis),
            Some(prev) if *prev == basis => {}
            Some(_) => return Err(ClassifyError::TSolve("modular bases disagree between primes".into())),
        }
    }
    let basis = lifted.ok_or_else(|| ClassifyError::TSolve("no primes given".into()))?;
    for g in gens {
        if !normal_form(g, &basis, &budget)?.is_zero() {
            return Err(ClassifyError::TSolve(format!("generator {g} does not reduce to zero")));
        }
    }
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !normal_form(&s_polynomial(f, g)?, &basis, &budget)?.is_zero() {
                return Err(ClassifyError::TSolve("reconstructed basis is not a Groebner basis".into()));
            }
        }
    }
    Ok(basis)
}

/// Value of a T-ideal polynomial at an assignment of all seven variables.
fn eval(p: &Poly, vals: &[Cyclotomic]) -> Cyclotomic {
    p.evaluate(vals, |c| Cyclotomic::from_rational(c.clone()))
}

/// All common zeros with θ's and x roots of unity of order dividing
/// `order` and d5 a conjugate of S_05. Backtracks over d5, x, th2, th1,
/// th5, th4, th3, checking each basis element once its variables are set.
pub fn enumerate_solutions(basis: &[Poly], d5_values: &[Cyclotomic], order: u32) -> Vec<TSolution> {
    let assign_order = [6usize, 5, 1, 0, 4, 3, 2];
    let mut checks: Vec<Vec<&Poly>> = vec![Vec::new(); assign_order.len()];
    for p in basis {
        let vars = p.variables();
        let level = vars
            .iter()
            .map(|v| assign_order.iter().position(|a| a == v).unwrap())
            .max()
            .unwrap_or(0);
        checks[level].push(p);
    }
    let roots: Vec<Cyclotomic> = (0..order).map(|e| Cyclotomic::zeta_pow(order, e as i64).minimal_form()).collect();
    let mut out = Vec::new();
    let mut vals = vec![Cyclotomic::zero(); 7];
    fn go(
        level: usize,
        assign_order: &[usize; 7],
        checks: &[Vec<&Poly>],
        roots: &[Cyclotomic],
        d5_values: &[Cyclotomic],
        vals: &mut Vec<Cyclotomic>,
        out: &mut Vec<TSolution>,
    ) {
        if level == assign_order.len() {
            let mut thetas = vec![Cyclotomic::one()];
            thetas.extend(vals[..5].iter().map(Cyclotomic::minimal_form));
            out.push(TSolution {
                d5: vals[6].minimal_form(),
                thetas,
                x: vals[5].minimal_form(),
            });
            return;
        }
        let var = assign_order[level];
        let cands = if var == 6 { d5_values } else { roots };
        for c in cands {
            vals[var] = c.clone();
            if checks[level].iter().all(|p| eval(p, vals).is_zero()) {
                go(level + 1, assign_order, checks, roots, d5_values, vals, out);
            }
        }
    }
    go(0, &assign_order, &checks, &roots, d5_values, &mut vals, &mut out);
    out
}

/// Reduced basis of the T-ideal of `s`, its comparison with the printed
/// relations, and the root-of-unity zeros of both. Searches orders dividing
/// 36 first and 108 if the printed system does not have 12 zeros there.
pub fn solve_t_ideal(s: &[Vec<Cyclotomic>]) -> Result<TSolveResult, ClassifyError> {
    let (gens, sp, minpoly) = t_ideal_generators(s)?;
    let basis = modular_groebner(&gens, &T_PRIMES)?;
    let mut printed = parse_t_relations(&PRINTED_T_RELATIONS)?;
    printed.push(minpoly.clone());
    let budget = Budget::default();
    let printed_gb = groebner_basis(&printed, &budget)?;
    let mut printed_in_ideal = true;
    for p in &printed {
        if !normal_form(p, &basis, &budget)?.is_zero() {
            printed_in_ideal = false;
        }
    }
    let mut not_in_printed = Vec::new();
    for b in &basis {
        if !normal_form(b, &printed_gb, &budget)?.is_zero() {
            not_in_printed.push(b.to_string());
        }
    }
    let mut d5_values: Vec<Cyclotomic> = Vec::new();
    for c in s[0][5].conjugates() {
        let c = c.minimal_form();
        if !d5_values.contains(&c) {
            d5_values.push(c);
        }
    }
    let mut order = 36;
    let mut solutions = enumerate_solutions(&printed_gb, &d5_values, order);
    if solutions.len() != 12 {
        order = 108;
        solutions = enumerate_solutions(&printed_gb, &d5_values, order);
    }
    let ideal_solutions = enumerate_solutions(&basis, &d5_values, order);
    Ok(TSolveResult {
        relations: basis.iter().map(Poly::to_string).collect(),
        basis,
        d5: s[0][5].minimal_form(),
        d5_min_poly: minpoly.to_string(),
        s_polys: sp,
        printed_in_ideal,
        not_in_printed,
        solutions,
        ideal_solutions,
        search_order: order,
    })
}

impl TSolveResult {
    /// Mutual containment of the T-ideal and the printed relations.
    pub fn matches_printed(&self) -> bool {
        self.printed_in_ideal && self.not_in_printed.is_empty()
    }
}

/// Whether `basis` and `other` generate the same ideal, decided by
/// reducing each against a Gröbner basis of the other.
pub fn same_ideal(basis: &[Poly], other: &[Poly]) -> Result<bool, ClassifyError> {
    let budget = Budget::default();
    let gb_other = groebner_basis(other, &budget)?;
    let gb_self = groebner_basis(basis, &budget)?;
    for p in basis {
        if !normal_form(p, &gb_other, &budget)?.is_zero() {
            return Ok(false);
        }
    }
    for p in other {
        if !normal_form(p, &gb_self, &budget)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn parse_t_relations(texts: &[&str]) -> Result<Vec<Poly>, ClassifyError> {
    let reg = t_registry();
    texts
        .iter()
        .map(|t| Poly::parse(&reg, MonomialOrder::GrevLex, t).map_err(|e| ClassifyError::TSolve(e.to_string())))
        .collect()
}

/// S with d5 specialized to the solution's value, and T from its twists.
pub fn solution_data(res: &TSolveResult, sol: &TSolution) -> Result<ModularData, ClassifyError> {
    let mut vals = vec![Cyclotomic::zero(); 7];
    vals[6] = sol.d5.clone();
    let s: Vec<Vec<Cyclotomic>> = res
        .s_polys
        .iter()
        .map(|row| row.iter().map(|p| eval(p, &vals).minimal_form()).collect())
        .collect();
    ModularData::new(6, s, sol.thetas.clone()).map_err(|e| ClassifyError::TSolve(e.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FsFilter {
    /// ν_2(k) for every solution and label, in solution order.
    pub indicators: Vec<Vec<Cyclotomic>>,
    /// Indices of the solutions with every ν_2(k) equal to ±1.
    pub survivors: Vec<usize>,
    /// Survivors whose d5 is S_05 itself rather than a conjugate.
    pub survivors_for_s: Vec<usize>,
    pub evaluations: usize,
}

impl FsFilter {
    /// The survivors for S form one complex-conjugate pair.
    pub fn conjugate_pair(&self, solutions: &[TSolution]) -> bool {
        match self.survivors_for_s.as_slice() {
            [a, b] => solutions[*a]
                .thetas
                .iter()
                .zip(&solutions[*b].thetas)
                .all(|(u, v)| u.conj().minimal_form() == *v),
            _ => false,
        }
    }
}

/// Keeps the zeros of the printed relations whose second indicators are
/// all ±1 (every label of these data is self-dual).
pub fn filter_by_fs(res: &TSolveResult) -> Result<(FsFilter, Vec<ModularData>), ClassifyError> {
    let mut indicators = Vec::new();
    let mut survivors = Vec::new();
    let mut survivors_for_s = Vec::new();
    let mut data = Vec::new();
    let mut evaluations = 0;
    for (idx, sol) in res.solutions.iter().enumerate() {
        let md = solution_data(res, sol)?;
        let fr = verlinde(&md).map_err(|e| ClassifyError::TSolve(e.to_string()))?;
        let nus: Vec<Cyclotomic> = (0..md.rank()).map(|k| fs_indicator(&md, &fr, 2, k).minimal_form()).collect();
        evaluations += nus.len();
        let ok = nus.iter().all(|v| *v == Cyclotomic::one() || *v == Cyclotomic::from_int(-1));
        if ok {
            survivors.push(idx);
            if sol.d5 == res.d5 {
                survivors_for_s.push(idx);
            }
            data.push(md);
        }
        indicators.push(nus);
    }
    Ok((
        FsFilter {
            indicators,
            survivors,
            survivors_for_s,
            evaluations,
        },
        data,
    ))
}
