use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::{MonomialOrder, Poly, VarRegistry};

use super::{Budget, GroebnerError};

/// Field over which the saturation loop computes its Gröbner bases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    #[default]
    Rational,
    /// Bases modulo each listed prime. Relations are lifted to Q from the
    /// first prime, and every further prime must reproduce the same trace.
    Modular(Vec<u32>),
}

/// A polynomial system together with the facts the saturation loop may use:
/// elements known not to vanish, relations that are contradictions, and
/// relations that move the problem to another (already handled) case.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub registry: Arc<VarRegistry>,
    pub order: MonomialOrder,
    pub generators: Vec<Poly>,
    pub nonzero_atoms: Vec<Poly>,
    pub degree_cap: u32,
    /// Largest cap the loop may escalate to when a round finds nothing new.
    pub max_degree_cap: u32,
    pub forbidden_relations: Vec<Poly>,
    pub reduction_relations: Vec<(Poly, String)>,
    pub budget: Budget,
    pub arithmetic: Arithmetic,
}

impl IdealSpec {
    pub fn new(registry: &Arc<VarRegistry>, order: MonomialOrder, degree_cap: u32) -> Self {
        IdealSpec {
            registry: registry.clone(),
            order,
            generators: Vec::new(),
            nonzero_atoms: Vec::new(),
            degree_cap,
            max_degree_cap: degree_cap.max(12),
            forbidden_relations: Vec::new(),
            reduction_relations: Vec::new(),
            budget: Budget::default(),
            arithmetic: Arithmetic::Rational,
        }
    }

    pub fn poly(&self, text: &str) -> Result<Poly, GroebnerError> {
        Ok(Poly::parse(&self.registry, self.order, text)?)
    }

    pub fn validate(&self) -> Result<(), GroebnerError> {
        let all = self
            .generators
            .iter()
            .chain(&self.nonzero_atoms)
            .chain(&self.forbidden_relations)
            .chain(self.reduction_relations.iter().map(|(p, _)| p));
        let reference = Poly::zero(&self.registry, self.order);
        for p in all {
            if !p.is_compatible(&reference) {
                return Err(GroebnerError::RegistryMismatch);
            }
        }
        if self.generators.iter().all(Poly::is_zero) {
            return Err(GroebnerError::Spec("no nonzero generators".into()));
        }
        if let Some(a) = self.nonzero_atoms.iter().find(|a| a.is_zero()) {
            return Err(GroebnerError::Spec(format!("atom {a} is zero")));
        }
        let max_deg = self.generators.iter().map(Poly::total_degree).max().unwrap_or(0);
        if self.degree_cap < max_deg {
            return Err(GroebnerError::Spec(format!(
                "degree cap {} below generator degree {max_deg}",
                self.degree_cap
            )));
        }
        if let Arithmetic::Modular(primes) = &self.arithmetic {
            if primes.is_empty() || primes.iter().any(|&p| p < 3 || p >= 1 << 31) {
                return Err(GroebnerError::Spec("moduli must be primes in 3..2^31".into()));
            }
        }
        if self.max_degree_cap < self.degree_cap {
            return Err(GroebnerError::Spec("max_degree_cap below degree_cap".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let strs = |v: &[Poly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let doc = SpecJson {
            variables: self.registry.names().to_vec(),
            order: match self.order {
                MonomialOrder::GrevLex => "grevlex".into(),
                MonomialOrder::Lex => "lex".into(),
            },
            generators: strs(&self.generators),
            nonzero_atoms: strs(&self.nonzero_atoms),
            degree_cap: self.degree_cap,
            max_degree_cap: self.max_degree_cap,
            forbidden_relations: strs(&self.forbidden_relations),
            reduction_relations: self
                .reduction_relations
                .iter()
                .map(|(p, l)| ReductionJson {
                    relation: p.to_string(),
                    target: l.clone(),
                })
                .collect(),
            arithmetic: self.arithmetic.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, GroebnerError> {
        let doc: SpecJson =
            serde_json::from_str(text).map_err(|e| GroebnerError::Spec(e.to_string()))?;
        let registry = VarRegistry::new(&doc.variables)?;
        let order = match doc.order.as_str() {
            "grevlex" => MonomialOrder::GrevLex,
            "lex" => MonomialOrder::Lex,
            other => return Err(GroebnerError::Spec(format!("unknown order {other:?}"))),
        };
        let parse_all = |v: &[String]| -> Result<Vec<Poly>, GroebnerError> {
            v.iter()
                .map(|s| Ok(Poly::parse(&registry, order, s)?))
                .collect()
        };
        let spec = IdealSpec {
            generators: parse_all(&doc.generators)?,
            nonzero_atoms: parse_all(&doc.nonzero_atoms)?,
            forbidden_relations: parse_all(&doc.forbidden_relations)?,
            reduction_relations: doc
                .reduction_relations
                .iter()
                .map(|r| Ok((Poly::parse(&registry, order, &r.relation)?, r.target.clone())))
                .collect::<Result<_, GroebnerError>>()?,
            degree_cap: doc.degree_cap,
            max_degree_cap: doc.max_degree_cap,
            registry,
            order,
            budget: Budget::default(),
            arithmetic: doc.arithmetic,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    variables: Vec<String>,
    order: String,
    generators: Vec<String>,
    nonzero_atoms: Vec<String>,
    degree_cap: u32,
    max_degree_cap: u32,
    #[serde(default)]
    forbidden_relations: Vec<String>,
    #[serde(default)]
    reduction_relations: Vec<ReductionJson>,
    #[serde(default)]
    arithmetic: Arithmetic,
}

#[derive(Serialize, Deserialize)]
struct ReductionJson {
    relation: String,
    target: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let r = VarRegistry::new(&["x", "y", "t"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 4);
        spec.generators = vec![spec.poly("x^2*y - 1").unwrap(), spec.poly("x*y*t - 1").unwrap()];
        spec.nonzero_atoms = vec![spec.poly("x").unwrap(), spec.poly("y - 1").unwrap()];
        spec.forbidden_relations = vec![spec.poly("t + 1").unwrap()];
        spec.reduction_relations = vec![(spec.poly("x - y").unwrap(), "case 1".into())];
        spec.arithmetic = Arithmetic::Modular(vec![101, 103]);
        let back = IdealSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back.to_json(), spec.to_json());
        assert_eq!(back.generators.len(), 2);
        assert_eq!(back.reduction_relations[0].1, "case 1");
        assert_eq!(back.arithmetic, spec.arithmetic);
    }

    #[test]
    fn cap_below_generator_degree_rejected() {
        let r = VarRegistry::new(&["x"]).unwrap();
        let mut spec = IdealSpec::new(&r, MonomialOrder::GrevLex, 2);
        spec.generators = vec![spec.poly("x^3 - 1").unwrap()];
        assert!(matches!(spec.validate(), Err(GroebnerError::Spec(_))));
    }
}
