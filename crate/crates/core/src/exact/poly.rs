use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{common_denominator, Rational};
use super::ExactError;

/// Upper bound on the number of variables a registry may hold.
pub const MAX_VARS: usize = 24;

/// Ordered list of variable names. The position of a name fixes its
/// precedence in every monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, ExactError> {
        if names.len() > MAX_VARS {
            return Err(ExactError::TooManyVariables(names.len()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(ExactError::Parse(format!("invalid variable name {n:?}")));
            }
            if !seen.insert(n.to_string()) {
                return Err(ExactError::DuplicateVariable(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(VarRegistry { names: out }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order.
    #[default]
    GrevLex,
    /// Pure lexicographic order; earlier registry variables dominate.
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

/// Exponent vector over at most [`MAX_VARS`] variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(idx: usize, exp: u8) -> Self {
        let mut m = Self::one();
        m.exps[idx] = exp;
        m.deg = exp as u16;
        m
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = e;
        }
        m.deg = exps.iter().map(|&e| e as u16).sum();
        m
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exp(&self, idx: usize) -> u8 {
        self.exps[idx]
    }

    pub fn exponents(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` is set when variable `i` occurs.
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Self::one();
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            let e = self.exps[i].max(other.exps[i]);
            m.exps[i] = e;
            deg += e as u16;
        }
        m.deg = deg;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Self::one();
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            let e = self.exps[i].min(other.exps[i]);
            m.exps[i] = e;
            deg += e as u16;
        }
        m.deg = deg;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i]
                .checked_add(other.exps[i])
                .expect("monomial exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m.deg -= other.deg;
        Some(m)
    }

    fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let used: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| format!("v{i}^{e}"))
            .collect();
        write!(f, "[{}]", used.join(" "))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in strictly decreasing monomial order and never
/// carry a zero coefficient.
#[derive(Clone)]
pub struct Poly {
    registry: Arc<VarRegistry>,
    order: MonomialOrder,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked add/sub/mul that reports a registry or order mismatch.
pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, ExactError> {
    a.check_compatible(b)?;
    Ok(match op {
        ArithOp::Add => a.add_unchecked(b, false),
        ArithOp::Sub => a.add_unchecked(b, true),
        ArithOp::Mul => a.mul_unchecked(b),
    })
}

/// Multivariate normal form of `f` with respect to `divisors`.
pub fn poly_reduce(f: &Poly, divisors: &[Poly]) -> Result<Poly, ExactError> {
    f.reduce(divisors)
}

impl Poly {
    pub fn zero(registry: &Arc<VarRegistry>, order: MonomialOrder) -> Self {
        Poly {
            registry: registry.clone(),
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(registry: &Arc<VarRegistry>, order: MonomialOrder, c: Rational) -> Self {
        let mut p = Self::zero(registry, order);
        if !c.is_zero() {
            p.terms.push((Monomial::one(), c));
        }
        p
    }

    pub fn one(registry: &Arc<VarRegistry>, order: MonomialOrder) -> Self {
        Self::constant(registry, order, Rational::one())
    }

    pub fn var(
        registry: &Arc<VarRegistry>,
        order: MonomialOrder,
        name: &str,
    ) -> Result<Self, ExactError> {
        let idx = registry
            .index(name)
            .ok_or_else(|| ExactError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_index(registry, order, idx))
    }

    pub fn var_index(registry: &Arc<VarRegistry>, order: MonomialOrder, idx: usize) -> Self {
        assert!(idx < registry.len(), "variable index out of range");
        Poly {
            registry: registry.clone(),
            order,
            terms: vec![(Monomial::var(idx, 1), Rational::one())],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(
        registry: &Arc<VarRegistry>,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut acc: BTreeMap<[u8; MAX_VARS], (Monomial, Rational)> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.exps[registry.len()..].iter().all(|&e| e == 0));
            acc.entry(m.exps)
                .and_modify(|(_, x)| x.add_assign_ref(&c))
                .or_insert((m, c));
        }
        let mut terms: Vec<_> = acc.into_values().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly {
            registry: registry.clone(),
            order,
            terms,
        }
    }

    /// Trusts that `terms` are sorted decreasingly under `order` and nonzero.
    pub(crate) fn from_sorted_terms(
        registry: &Arc<VarRegistry>,
        order: MonomialOrder,
        terms: Vec<(Monomial, Rational)>,
    ) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| order.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly {
            registry: registry.clone(),
            order,
            terms,
        }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var) as u32).max().unwrap_or(0)
    }

    /// Indices of variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mask = self.support_mask();
        (0..self.registry.len()).filter(|i| mask & (1 << i) != 0).collect()
    }

    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn is_compatible(&self, other: &Poly) -> bool {
        self.order == other.order
            && (Arc::ptr_eq(&self.registry, &other.registry) || self.registry == other.registry)
    }

    fn check_compatible(&self, other: &Poly) -> Result<(), ExactError> {
        if self.is_compatible(other) {
            Ok(())
        } else {
            Err(ExactError::RegistryMismatch)
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly {
            registry: self.registry.clone(),
            order,
            terms,
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, ExactError> {
        poly_arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, ExactError> {
        poly_arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, ExactError> {
        poly_arith(self, other, ArithOp::Mul)
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.compare(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { -c } else { c.clone() })),
        );
        Poly::from_sorted_terms(&self.registry, order, out)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.registry, self.order);
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero(&self.registry, self.order);
        for (m, c) in &small.terms {
            acc = acc.add_unchecked(&large.mul_term(m, c), false);
        }
        acc
    }

    /// Multiplication by a single term; order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.registry, self.order);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect();
        Poly::from_sorted_terms(&self.registry, self.order, terms)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one(&self.registry, self.order);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    /// The scalar multiple with coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(self.terms.iter().map(|(_, c)| c));
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|(_, c)| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints[0].is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(ints)
            .map(|((m, _), x)| (*m, Rational::from_integer(x / &g)))
            .collect();
        Poly::from_sorted_terms(&self.registry, self.order, terms)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Normal form with respect to `divisors`: repeatedly cancels the
    /// largest term divisible by some divisor's leading monomial, trying
    /// divisors in the given order.
    pub fn reduce(&self, divisors: &[Poly]) -> Result<Poly, ExactError> {
        for d in divisors {
            self.check_compatible(d)?;
            if d.is_zero() {
                return Err(ExactError::ZeroDivisor);
            }
        }
        let mut rest = self.clone();
        let mut remainder = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let hit = divisors.iter().find_map(|d| {
                let (lm, lc) = d.leading_term().unwrap();
                m.div(lm).map(|q| (d, q, lc))
            });
            match hit {
                Some((d, q, lc)) => {
                    let factor = -(&c / lc);
                    rest = rest.add_unchecked(&d.mul_term(&q, &factor), false);
                }
                None => {
                    remainder.push((m, c));
                    rest.terms.remove(0);
                }
            }
        }
        Ok(Poly::from_sorted_terms(&self.registry, self.order, remainder))
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if !self.is_compatible(divisor) || divisor.is_zero() {
            return None;
        }
        let (lm, lc) = divisor.leading_term().unwrap().clone();
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            let q = m.div(&lm)?;
            let qc = &c / &lc;
            rest = rest.add_unchecked(&divisor.mul_term(&q, &(-&qc)), false);
            quotient.push((q, qc));
        }
        Some(Poly::from_sorted_terms(&self.registry, self.order, quotient))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((m, _)) => it.fold(*m, |acc, (t, _)| acc.gcd(t)),
        }
    }

    /// Divides every term by `m`; `m` must divide all terms.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, c) in &self.terms {
            terms.push((t.div(m)?, c.clone()));
        }
        Some(Poly::from_sorted_terms(&self.registry, self.order, terms))
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        let mut acc = Poly::zero(&self.registry, self.order);
        let mut powers: Vec<Poly> = vec![Poly::one(&self.registry, self.order)];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul_unchecked(value);
                powers.push(next);
            }
            let mut rest = *m;
            rest.exps[var] = 0;
            rest.deg -= e as u16;
            acc = acc.add_unchecked(&powers[e].mul_term(&rest, c), false);
        }
        acc
    }

    /// Evaluates at `values[i]` for variable `i`, embedding coefficients with
    /// `embed`.
    pub fn evaluate<T, F>(&self, values: &[T], embed: F) -> T
    where
        T: Clone + for<'a> Add<&'a T, Output = T> + for<'a> Mul<&'a T, Output = T>,
        F: Fn(&Rational) -> T,
    {
        let mut acc = embed(&Rational::zero());
        for (m, c) in &self.terms {
            let mut term = embed(c);
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    term = term * &values[i];
                }
            }
            acc = acc + &term;
        }
        acc
    }

    /// Coefficients of a polynomial in the single variable `var`, lowest
    /// degree first. `None` if any other variable occurs.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.exp(var) as u32 {
                return None;
            }
            out[m.exp(var) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(
        registry: &Arc<VarRegistry>,
        order: MonomialOrder,
        var: usize,
        coeffs: &[Rational],
    ) -> Poly {
        Poly::from_terms(
            registry,
            order,
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::var(var, e as u8), c.clone())),
        )
    }

    pub fn parse(
        registry: &Arc<VarRegistry>,
        order: MonomialOrder,
        text: &str,
    ) -> Result<Poly, ExactError> {
        super::parse::parse_poly(registry, order, text)
    }

    /// Equality up to a nonzero scalar factor.
    pub fn is_scalar_multiple_of(&self, other: &Poly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.is_compatible(other) && self.primitive() == other.primitive()
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.is_compatible(other) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.registry.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial registry mismatch")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial registry mismatch")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial registry mismatch")
    }
}

impl Add<&Poly> for Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        &self + rhs
    }
}

impl Sub<&Poly> for Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        &self - rhs
    }
}

impl Mul<&Poly> for Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        &self * rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rational::from(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Checks that a univariate coefficient list is monic with integer entries.
pub fn is_monic_integral(coeffs: &[Rational]) -> bool {
    coeffs.last().is_some_and(|c| c.is_one()) && coeffs.iter().all(|c| c.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg(names: &[&str]) -> Arc<VarRegistry> {
        VarRegistry::new(names).unwrap()
    }

    fn p(r: &Arc<VarRegistry>, s: &str) -> Poly {
        Poly::parse(r, MonomialOrder::GrevLex, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = reg(&["x"]);
        let prod = poly_arith(&p(&r, "x + 1"), &p(&r, "x - 1"), ArithOp::Mul).unwrap();
        assert_eq!(prod, p(&r, "x^2 - 1"));
    }

    #[test]
    fn zero_absorbs() {
        let r = reg(&["x", "y"]);
        let f = p(&r, "3*x*y - y^2 + 7");
        assert!(poly_arith(&f, &Poly::zero(&r, MonomialOrder::GrevLex), ArithOp::Mul)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn hand_expansion() {
        let r = reg(&["d3", "d4", "d5", "p", "Dsq"]);
        let lhs = &(&p(&r, "d3 + d4 + d5") * &p(&r, "p")) * &p(&r, "Dsq");
        assert_eq!(lhs, p(&r, "p*Dsq*d3 + p*Dsq*d4 + p*Dsq*d5"));
    }

    #[test]
    fn registry_mismatch() {
        let a = p(&reg(&["x"]), "x");
        let b = p(&reg(&["y"]), "y");
        assert_eq!(
            poly_arith(&a, &b, ArithOp::Add).unwrap_err(),
            ExactError::RegistryMismatch
        );
        assert_eq!(a.reduce(&[b]).unwrap_err(), ExactError::RegistryMismatch);
    }

    #[test]
    fn reduce_examples() {
        let r = reg(&["x", "y"]);
        assert!(poly_reduce(&p(&r, "x^2 - 1"), &[p(&r, "x - 1")]).unwrap().is_zero());
        assert_eq!(poly_reduce(&p(&r, "x"), &[p(&r, "y")]).unwrap(), p(&r, "x"));
        let rem = poly_reduce(&p(&r, "x^2*y"), &[p(&r, "x^2 - 1"), p(&r, "y^2 - 1")]).unwrap();
        assert_eq!(rem, p(&r, "y"));
    }

    #[test]
    fn grevlex_and_lex_orders() {
        let r = reg(&["x", "y", "z"]);
        let g = p(&r, "x*z + y^2");
        // grevlex: equal degree, the smaller power of z wins
        assert_eq!(g.leading_monomial(), Some(&Monomial::from_exponents(&[0, 2, 0])));
        let l = g.with_order(MonomialOrder::Lex);
        assert_eq!(l.leading_monomial(), Some(&Monomial::from_exponents(&[1, 0, 1])));
    }

    #[test]
    fn exact_division_and_content() {
        let r = reg(&["a", "b", "c"]);
        let f = p(&r, "a^2*b*c - a*b^2*c");
        assert_eq!(f.monomial_content(), Monomial::from_exponents(&[1, 1, 1]));
        let q = f.exact_div(&p(&r, "a - b")).unwrap();
        assert_eq!(q, p(&r, "a*b*c"));
        assert!(f.exact_div(&p(&r, "a + c")).is_none());
    }

    #[test]
    fn primitive_normalization() {
        let r = reg(&["x", "y"]);
        let f = p(&r, "-2/3*x + 4/9*y");
        assert_eq!(f.primitive(), p(&r, "3*x - 2*y"));
        assert!(f.is_scalar_multiple_of(&p(&r, "6*x - 4*y")));
    }

    #[test]
    fn substitution() {
        let r = reg(&["x", "y"]);
        let f = p(&r, "x^2 + x*y");
        let g = f.substitute(0, &p(&r, "y + 1"));
        assert_eq!(g, p(&r, "2*y^2 + 3*y + 1"));
    }
}
