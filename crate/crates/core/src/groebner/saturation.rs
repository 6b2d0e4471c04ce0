use std::fmt::Write as _;

use serde::Serialize;

use crate::exact::Poly;

use super::modp::ModReducer;
use super::{
    buchberger_capped, buchberger_mod_p, normal_form, Arithmetic, Budget, GroebnerError, IdealSpec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDivision {
    pub cofactor: Poly,
    /// Atoms divided out, with repetition, in the order they were removed.
    pub divided: Vec<Poly>,
}

impl AtomDivision {
    /// Product of the atoms in `divided` times `cofactor`.
    pub fn recombine(&self) -> Poly {
        self.divided
            .iter()
            .fold(self.cofactor.clone(), |acc, a| &acc * a)
    }
}

/// Strips every factor of `f` that is one of the `atoms`. Single-term atoms
/// are removed from the monomial content; other atoms by exact trial
/// division. `cofactor * product(divided) == f`.
pub fn divide_out_atoms(f: &Poly, atoms: &[Poly]) -> AtomDivision {
    let mut cofactor = f.clone();
    let mut divided = Vec::new();
    if f.is_zero() {
        return AtomDivision { cofactor, divided };
    }
    for atom in atoms.iter().filter(|a| a.len() == 1 && !a.is_constant()) {
        let (m, c) = atom.leading_term().unwrap().clone();
        let inv = c.recip().expect("nonzero coefficient");
        while m.divides(&cofactor.monomial_content()) {
            cofactor = cofactor.div_monomial(&m).unwrap().scale(&inv);
            divided.push(atom.clone());
        }
    }
    let poly_atoms: Vec<&Poly> = atoms.iter().filter(|a| a.len() > 1).collect();
    loop {
        let mut progress = false;
        for atom in &poly_atoms {
            while !cofactor.is_constant() && could_divide(&cofactor, atom) {
                match cofactor.exact_div(atom) {
                    Some(q) => {
                        cofactor = q;
                        divided.push((*atom).clone());
                        progress = true;
                    }
                    None => break,
                }
            }
        }
        if !progress {
            break;
        }
    }
    AtomDivision { cofactor, divided }
}

fn could_divide(f: &Poly, g: &Poly) -> bool {
    g.total_degree() <= f.total_degree()
        && g.variables().iter().all(|&v| g.degree_in(v) <= f.degree_in(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    UnitIdeal,
    Forbidden {
        #[serde(serialize_with = "ser_poly")]
        relation: Poly,
    },
    Reduction {
        target: String,
        #[serde(serialize_with = "ser_poly")]
        relation: Poly,
    },
    Stalled {
        reason: String,
        #[serde(serialize_with = "ser_polys")]
        basis: Vec<Poly>,
    },
}

impl Outcome {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Outcome::UnitIdeal | Outcome::Forbidden { .. })
    }

    pub fn label(&self) -> String {
        match self {
            Outcome::UnitIdeal => "UnitIdeal".into(),
            Outcome::Forbidden { relation } => format!("Forbidden({relation})"),
            Outcome::Reduction { target, .. } => format!("Reduction({target})"),
            Outcome::Stalled { .. } => "Stalled".into(),
        }
    }
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub degree_cap: u32,
    pub basis_size: usize,
    /// Modular basis elements whose coefficients could not be lifted to Q
    /// (they take no part in atom division).
    pub unlifted: usize,
    /// Whether every S-pair was processed (no pair exceeded the cap).
    pub complete: bool,
    /// Basis elements from which atoms were divided, with the atoms removed.
    #[serde(serialize_with = "ser_factored")]
    pub factored: Vec<(Poly, Vec<Poly>)>,
    #[serde(serialize_with = "ser_polys")]
    pub added: Vec<Poly>,
    /// The round exhibited 1 (or a pure atom product) in the ideal.
    pub unit: bool,
}

fn ser_factored<S: serde::Serializer>(v: &[(Poly, Vec<Poly>)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(f, atoms)| factored_form(f, atoms)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationTrace {
    pub rounds: Vec<RoundRecord>,
    pub outcome: Outcome,
    pub arithmetic: Arithmetic,
}

impl SaturationTrace {
    /// Every relation the loop adjoined, in order.
    pub fn added_relations(&self) -> Vec<Poly> {
        self.rounds.iter().flat_map(|r| r.added.iter().cloned()).collect()
    }

    /// Table with the columns "Degree Limit", "Factored Polynomials",
    /// "Zero Factors Added".
    pub fn to_markdown(&self) -> String {
        let mut out = String::from(
            "| Degree Limit | Factored Polynomials | Zero Factors Added |\n|---|---|---|\n",
        );
        for r in &self.rounds {
            let mut factored: Vec<String> =
                r.factored.iter().map(|(f, a)| factored_form(f, a)).collect();
            if r.unit && factored.is_empty() {
                factored.push("1".into());
            }
            let added: Vec<String> = r.added.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                r.degree_cap,
                factored.join(", "),
                added.join(", ")
            );
        }
        out
    }
}

/// Renders `f` as `atom^k*...*(cofactor)`.
fn factored_form(f: &Poly, divided: &[Poly]) -> String {
    let div = divide_out_atoms(f, divided);
    let mut parts: Vec<String> = Vec::new();
    let mut seen: Vec<(&Poly, usize)> = Vec::new();
    for a in divided {
        match seen.iter_mut().find(|(p, _)| *p == a) {
            Some(e) => e.1 += 1,
            None => seen.push((a, 1)),
        }
    }
    for (a, k) in seen {
        let base = if a.len() > 1 { format!("({a})") } else { a.to_string() };
        parts.push(if k > 1 { format!("{base}^{k}") } else { base });
    }
    let c = div.cofactor;
    if let Some(v) = c.constant_value() {
        if !v.is_one() || parts.is_empty() {
            parts.insert(0, v.to_string());
        }
    } else if c.len() > 1 {
        parts.push(format!("({c})"));
    } else {
        parts.push(c.to_string());
    }
    parts.join("*")
}

/// Approximate ideal membership against a growing list of reducers.
enum Membership {
    Rational(Vec<Poly>, Budget),
    Modular(ModReducer),
}

impl Membership {
    fn contains(&self, f: &Poly) -> Result<bool, GroebnerError> {
        match self {
            Membership::Rational(divs, budget) => Ok(normal_form(f, divs, budget)?.is_zero()),
            Membership::Modular(red) => red.reduces_to_zero(f),
        }
    }

    fn add(&mut self, f: Poly) -> Result<(), GroebnerError> {
        match self {
            Membership::Rational(divs, _) => divs.push(f),
            Membership::Modular(red) => {
                red.absorb(&f)?;
            }
        }
        Ok(())
    }
}

struct Round {
    /// Basis elements over Q; modular elements whose coefficients do not
    /// lift are left out.
    elements: Vec<Poly>,
    size: usize,
    unlifted: usize,
    complete: bool,
    unit: bool,
    members: Membership,
}

fn compute_round(
    spec: &IdealSpec,
    prime: Option<u32>,
    gens: &[Poly],
    cap: u32,
) -> Result<Round, GroebnerError> {
    match prime {
        None => {
            let b = buchberger_capped(gens, Some(cap), &spec.budget)?;
            Ok(Round {
                size: b.basis.len(),
                unlifted: 0,
                complete: b.complete,
                unit: b.is_unit(),
                members: Membership::Rational(b.basis.clone(), spec.budget.clone()),
                elements: b.basis,
            })
        }
        Some(p) => {
            let b = buchberger_mod_p(gens, p, Some(cap), &spec.budget)?;
            let lifted: Vec<Option<Poly>> = b
                .basis
                .iter()
                .map(|f| f.lift(&spec.registry, spec.order, p))
                .collect();
            let unlifted = lifted.iter().filter(|f| f.is_none()).count();
            Ok(Round {
                size: b.basis.len(),
                unlifted,
                complete: b.complete,
                unit: b.is_unit(),
                elements: lifted.into_iter().flatten().collect(),
                members: Membership::Modular(b.into_reducer()),
            })
        }
    }
}

/// Alternates capped Buchberger runs with atom division until the ideal
/// becomes the unit ideal, a forbidden or reduction relation is derived, or
/// nothing new appears even at the largest allowed degree cap.
///
/// With modular arithmetic the whole loop is repeated for every listed
/// prime; a disagreement between the primes ends the run as `Stalled`.
pub fn saturation_loop(spec: &IdealSpec) -> Result<SaturationTrace, GroebnerError> {
    spec.validate()?;
    match &spec.arithmetic {
        Arithmetic::Rational => run_loop(spec, None),
        Arithmetic::Modular(primes) => {
            let first = run_loop(spec, Some(primes[0]))?;
            for &q in &primes[1..] {
                let other = run_loop(spec, Some(q))?;
                if other.rounds != first.rounds || other.outcome != first.outcome {
                    let basis = spec.generators.clone();
                    return Ok(SaturationTrace {
                        rounds: first.rounds,
                        outcome: Outcome::Stalled {
                            reason: format!(
                                "traces modulo {} and {q} disagree ({} vs {})",
                                primes[0],
                                first.outcome.label(),
                                other.outcome.label()
                            ),
                            basis,
                        },
                        arithmetic: spec.arithmetic.clone(),
                    });
                }
            }
            Ok(first)
        }
    }
}

fn run_loop(spec: &IdealSpec, prime: Option<u32>) -> Result<SaturationTrace, GroebnerError> {
    let mut gens = spec.generators.clone();
    let mut cap = spec.degree_cap;
    let mut rounds = Vec::new();
    let done = |rounds: Vec<RoundRecord>, outcome: Outcome| SaturationTrace {
        rounds,
        outcome,
        arithmetic: spec.arithmetic.clone(),
    };
    loop {
        let round = match compute_round(spec, prime, &gens, cap) {
            Ok(b) => b,
            Err(GroebnerError::Budget(msg)) => {
                let outcome = Outcome::Stalled {
                    reason: format!("degree cap {cap}: {msg}"),
                    basis: gens,
                };
                return Ok(done(rounds, outcome));
            }
            Err(e) => return Err(e),
        };
        let mut record = RoundRecord {
            degree_cap: cap,
            basis_size: round.size,
            unlifted: round.unlifted,
            complete: round.complete,
            factored: Vec::new(),
            added: Vec::new(),
            unit: false,
        };
        if round.unit {
            record.unit = true;
            rounds.push(record);
            return Ok(done(rounds, Outcome::UnitIdeal));
        }
        let mut members = round.members;
        if let Some(outcome) = derived_relation(spec, &members)? {
            rounds.push(record);
            return Ok(done(rounds, outcome));
        }

        for g in &round.elements {
            let div = divide_out_atoms(g, &spec.nonzero_atoms);
            if div.divided.is_empty() {
                continue;
            }
            if div.cofactor.is_constant() {
                record.factored.push((g.clone(), div.divided));
                record.unit = true;
                break;
            }
            let cof = div.cofactor.primitive();
            if members.contains(&cof)? {
                continue;
            }
            record.factored.push((g.clone(), div.divided));
            record.added.push(cof.clone());
            members.add(cof)?;
        }
        if record.unit {
            rounds.push(record);
            return Ok(done(rounds, Outcome::UnitIdeal));
        }
        if let Some(outcome) = derived_relation(spec, &members)? {
            if let Outcome::Forbidden { relation } = &outcome {
                record.added.retain(|p| !p.is_scalar_multiple_of(relation));
                let forbidden = &spec.forbidden_relations;
                record
                    .added
                    .retain(|p| !forbidden.iter().any(|f| p.is_scalar_multiple_of(f)));
            }
            rounds.push(record);
            return Ok(done(rounds, outcome));
        }
        if record.added.is_empty() {
            let complete = round.complete;
            rounds.push(record);
            if complete || cap >= spec.max_degree_cap {
                let reason = if complete {
                    "complete basis has no atom factors".to_string()
                } else {
                    format!("no new relations up to degree cap {cap}")
                };
                let outcome = Outcome::Stalled {
                    reason,
                    basis: round.elements,
                };
                return Ok(done(rounds, outcome));
            }
            cap += 1;
            if prime.is_none() {
                gens = round.elements;
            }
            continue;
        }
        if prime.is_none() {
            gens = round.elements;
        }
        gens.extend(record.added.iter().cloned());
        rounds.push(record);
    }
}

fn derived_relation(spec: &IdealSpec, members: &Membership) -> Result<Option<Outcome>, GroebnerError> {
    for f in &spec.forbidden_relations {
        if members.contains(f)? {
            return Ok(Some(Outcome::Forbidden { relation: f.clone() }));
        }
    }
    for (f, target) in &spec.reduction_relations {
        if members.contains(f)? {
            return Ok(Some(Outcome::Reduction {
                target: target.clone(),
                relation: f.clone(),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{MonomialOrder, VarRegistry};

    fn atoms_spec() -> IdealSpec {
        let r = VarRegistry::new(&["th5", "d3", "d4", "d5", "p", "Dsq"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 9);
        spec.nonzero_atoms = ["p", "Dsq", "d3", "d4", "d5", "th5"]
            .iter()
            .map(|s| spec.poly(s).unwrap())
            .collect();
        spec
    }

    #[test]
    fn atom_division_examples() {
        let spec = atoms_spec();
        let f = spec.poly("p*(d3 + d4 + d5)*Dsq").unwrap();
        let div = divide_out_atoms(&f, &spec.nonzero_atoms);
        assert_eq!(div.cofactor, spec.poly("d3 + d4 + d5").unwrap());
        assert_eq!(div.divided.len(), 2);
        assert_eq!(div.recombine(), f);

        let f = spec.poly("th5*(th5 + 1)*d5*Dsq^2").unwrap();
        let div = divide_out_atoms(&f, &spec.nonzero_atoms);
        assert_eq!(div.cofactor, spec.poly("th5 + 1").unwrap());
        assert_eq!(div.recombine(), f);

        let f = spec.poly("p*Dsq").unwrap();
        let div = divide_out_atoms(&f, &spec.nonzero_atoms);
        assert!(div.cofactor.is_unit());
    }

    #[test]
    fn polynomial_atoms_divide_repeatedly() {
        let r = VarRegistry::new(&["a", "b", "p"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 9);
        spec.nonzero_atoms = vec![spec.poly("p").unwrap(), spec.poly("b - 1").unwrap()];
        let f = spec.poly("3*(b - 1)^3*p*(a + b)").unwrap();
        let div = divide_out_atoms(&f, &spec.nonzero_atoms);
        assert_eq!(div.divided.len(), 4);
        assert_eq!(div.cofactor, spec.poly("3*a + 3*b").unwrap());
        assert_eq!(div.recombine(), f);
    }

    #[test]
    fn loop_finds_contradiction_through_atoms() {
        // the S-pair already yields x^2, a pure atom power
        let r = VarRegistry::new(&["x", "y"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 4);
        spec.generators = vec![
            spec.poly("x^2*y - x^2").unwrap(),
            spec.poly("x*y^2 - 2*x*y").unwrap(),
        ];
        spec.nonzero_atoms = vec![spec.poly("x").unwrap()];
        let trace = saturation_loop(&spec).unwrap();
        assert_eq!(trace.outcome, Outcome::UnitIdeal);
        assert_eq!(trace.rounds.len(), 1);
        let md = trace.to_markdown();
        assert!(md.starts_with("| Degree Limit | Factored Polynomials | Zero Factors Added |"));
        assert!(md.contains("| 4 | x^2 |  |"), "{md}");
    }

    #[test]
    fn forbidden_and_reduction_outcomes() {
        let r = VarRegistry::new(&["x", "y"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 4);
        spec.generators = vec![spec.poly("x*y^2 - x").unwrap()];
        spec.nonzero_atoms = vec![spec.poly("x").unwrap()];
        spec.forbidden_relations = vec![spec.poly("y^2 - 1").unwrap()];
        let trace = saturation_loop(&spec).unwrap();
        assert!(matches!(trace.outcome, Outcome::Forbidden { .. }));
        assert!(trace.rounds[0].added.is_empty());
        assert_eq!(trace.rounds[0].factored.len(), 1);

        spec.forbidden_relations.clear();
        spec.reduction_relations = vec![(spec.poly("y^2 - 1").unwrap(), "case 1".into())];
        let trace = saturation_loop(&spec).unwrap();
        assert_eq!(trace.outcome.label(), "Reduction(case 1)");
    }

    #[test]
    fn stalls_when_nothing_new() {
        let r = VarRegistry::new(&["x", "y"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 2);
        spec.max_degree_cap = 3;
        spec.generators = vec![spec.poly("x^2 + y^2 - 1").unwrap()];
        spec.nonzero_atoms = vec![spec.poly("x").unwrap()];
        let trace = saturation_loop(&spec).unwrap();
        assert!(matches!(trace.outcome, Outcome::Stalled { .. }));
    }
}
