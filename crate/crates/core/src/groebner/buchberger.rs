//! Degree-capped Buchberger algorithm over Q with Gebauer–Möller pair
//! pruning and the normal selection strategy.
//!
//! Over Q polynomials carry primitive integer coefficients. A run may first
//! be carried out modulo a word-sized prime; the rational run then skips the
//! S-pairs that vanished there. Every element produced over Q is still
//! obtained by exact S-polynomial reduction, so ideal membership of the
//! output never depends on the prime.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{Monomial, MonomialOrder, Poly, Rational, VarRegistry};

use super::GroebnerError;

/// Work limits for one Buchberger run. Exceeding any of them is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_terms: usize,
    /// Prime for the guiding modular run; `None` computes over Q only.
    pub guide_prime: Option<u64>,
    pub strategy: Strategy,
}

/// S-pair selection rule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Smallest lcm degree, then creation order.
    #[default]
    Normal,
    /// Smallest sugar degree, then creation order.
    Sugar,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 500_000,
            max_basis: 50_000,
            max_terms: 500_000,
            guide_prime: Some(2_147_483_629),
            strategy: Strategy::Normal,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_deferred: usize,
    pub basis_added: usize,
    /// Pairs skipped over Q because they reduced to zero modulo the guide prime.
    pub pairs_skipped: usize,
    /// The modular guide disagreed with the rational run, which was redone
    /// without it.
    pub guide_abandoned: bool,
}

#[derive(Clone, Debug)]
pub struct CappedBasis {
    /// Inter-reduced, primitive, sorted by leading monomial (ascending).
    pub basis: Vec<Poly>,
    /// True when no S-pair was skipped because of the degree cap.
    pub complete: bool,
    pub stats: BuchbergerStats,
}

impl CappedBasis {
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(Poly::is_unit)
    }
}

type Terms<C> = Vec<(Monomial, C)>;

/// Coefficient domain of the engine.
trait Ring: Clone {
    type C: Clone + PartialEq + Debug;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn is_one(&self, c: &Self::C) -> bool;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn neg(&self, a: &Self::C) -> Self::C;
    /// Scalars `(a, b)` with `a*x == b*y`, `a` as simple as possible.
    fn cancel(&self, x: &Self::C, y: &Self::C) -> (Self::C, Self::C);
    /// Canonical scalar multiple (primitive over Z, monic over Z/p).
    fn normalize(&self, terms: &mut Terms<Self::C>);
    /// Optional common-factor removal during long reductions.
    fn shrink(&self, _done: &mut Terms<Self::C>, _rest: &mut Terms<Self::C>) {}
}

#[derive(Clone)]
struct IntRing;

impl Ring for IntRing {
    type C = BigInt;

    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }

    fn is_one(&self, c: &BigInt) -> bool {
        c.is_one()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn cancel(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        let g = x.gcd(y);
        (y / &g, x / &g)
    }

    fn normalize(&self, terms: &mut Terms<BigInt>) {
        if terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in terms.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in terms.iter_mut() {
                *c = &*c / &g;
            }
        }
    }

    fn shrink(&self, done: &mut Terms<BigInt>, rest: &mut Terms<BigInt>) {
        let mut g = BigInt::zero();
        for (_, c) in done.iter().chain(rest.iter()) {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() {
            return;
        }
        for (_, c) in done.iter_mut().chain(rest.iter_mut()) {
            *c = &*c / &g;
        }
    }
}

#[derive(Clone, Copy)]
struct ModRing {
    p: u64,
}

impl ModRing {
    fn inv(&self, a: u64) -> u64 {
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i128) as u64
    }

    fn from_big(&self, c: &BigInt) -> u64 {
        let m = c.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("reduced below p")
    }
}

impl Ring for ModRing {
    type C = u64;

    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }

    fn is_one(&self, c: &u64) -> bool {
        *c == 1
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn cancel(&self, x: &u64, y: &u64) -> (u64, u64) {
        (1, x * self.inv(*y) % self.p)
    }

    fn normalize(&self, terms: &mut Terms<u64>) {
        if let Some((_, lc)) = terms.first() {
            let inv = self.inv(*lc);
            for (_, c) in terms.iter_mut() {
                *c = *c * inv % self.p;
            }
        }
    }
}

#[derive(Clone, Debug)]
struct RPoly<C> {
    terms: Terms<C>,
}

impl<C> RPoly<C> {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &C {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }
}

fn int_poly(p: &Poly) -> RPoly<BigInt> {
    let prim = p.primitive();
    RPoly {
        terms: prim
            .terms()
            .iter()
            .map(|(m, c)| (*m, c.numer().clone()))
            .collect(),
    }
}

fn mod_poly(p: &Poly, ring: &ModRing) -> RPoly<u64> {
    let mut terms: Terms<u64> = int_poly(p)
        .terms
        .iter()
        .map(|(m, c)| (*m, ring.from_big(c)))
        .filter(|(_, c)| *c != 0)
        .collect();
    ring.normalize(&mut terms);
    RPoly { terms }
}

fn to_poly(p: &RPoly<BigInt>, registry: &Arc<VarRegistry>, order: MonomialOrder) -> Poly {
    Poly::from_terms(
        registry,
        order,
        p.terms
            .iter()
            .map(|(m, c)| (*m, Rational::from_integer(c.clone()))),
    )
}

/// `a*f - b*m*g`, all operands sorted decreasingly.
fn combine<R: Ring>(
    ring: &R,
    order: MonomialOrder,
    a: &R::C,
    f: &[(Monomial, R::C)],
    b: &R::C,
    m: &Monomial,
    g: &[(Monomial, R::C)],
) -> Terms<R::C> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let a_one = ring.is_one(a);
    let scale_f = |c: &R::C| if a_one { c.clone() } else { ring.mul(a, c) };
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), gc)).peekable();
    while i < f.len() {
        let Some((gm, gc)) = gi.peek() else { break };
        match order.compare(&f[i].0, gm) {
            Ordering::Greater => {
                out.push((f[i].0, scale_f(&f[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((*gm, ring.neg(&ring.mul(b, gc))));
                gi.next();
            }
            Ordering::Equal => {
                let c = ring.sub(&scale_f(&f[i].1), &ring.mul(b, gc));
                if !ring.is_zero(&c) {
                    out.push((*gm, c));
                }
                i += 1;
                gi.next();
            }
        }
    }
    for (fm, fc) in &f[i..] {
        out.push((*fm, scale_f(fc)));
    }
    for (gm, gc) in gi {
        out.push((gm, ring.neg(&ring.mul(b, gc))));
    }
    out
}

struct Reducer<'a, R: Ring> {
    ring: &'a R,
    order: MonomialOrder,
    polys: &'a [RPoly<R::C>],
    masks: &'a [u32],
    active: &'a [usize],
}

impl<R: Ring> Reducer<'_, R> {
    /// Sparsest active element whose leading monomial divides `m`.
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.active
            .iter()
            .copied()
            .filter(|&k| self.masks[k] & !mask == 0 && self.polys[k].lm().divides(m))
            .min_by_key(|&k| (self.polys[k].terms.len(), k))
    }

    /// Reduces `rest` (all terms smaller than those of `done`); `done` is
    /// only rescaled. With `top_only`, stops at the first irreducible term.
    fn reduce_from(
        &self,
        mut done: Terms<R::C>,
        mut rest: Terms<R::C>,
        top_only: bool,
        max_terms: usize,
    ) -> Result<RPoly<R::C>, GroebnerError> {
        let mut start = 0usize;
        let mut steps = 0usize;
        while start < rest.len() {
            let m = rest[start].0;
            match self.find(&m) {
                None => {
                    if top_only {
                        break;
                    }
                    done.push(rest[start].clone());
                    start += 1;
                }
                Some(k) => {
                    let g = &self.polys[k];
                    let q = m.div(g.lm()).unwrap();
                    let (a, b) = self.ring.cancel(&rest[start].1, g.lc());
                    if !self.ring.is_one(&a) {
                        for (_, dc) in done.iter_mut() {
                            *dc = self.ring.mul(dc, &a);
                        }
                    }
                    rest = combine(self.ring, self.order, &a, &rest[start..], &b, &q, &g.terms);
                    start = 0;
                    steps += 1;
                    if rest.len() + done.len() > max_terms {
                        return Err(GroebnerError::Budget(format!(
                            "intermediate polynomial exceeded {max_terms} terms"
                        )));
                    }
                    if steps % 8 == 0 {
                        self.ring.shrink(&mut done, &mut rest);
                    }
                }
            }
        }
        done.extend(rest.drain(start..));
        self.ring.normalize(&mut done);
        Ok(RPoly { terms: done })
    }
}

fn s_poly<R: Ring>(ring: &R, order: MonomialOrder, f: &RPoly<R::C>, g: &RPoly<R::C>) -> RPoly<R::C> {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm()).unwrap();
    let mg = l.div(g.lm()).unwrap();
    let (a, b) = ring.cancel(f.lc(), g.lc());
    // a*mf*f - b*mg*g
    let ff: Terms<R::C> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let mut terms = combine(ring, order, &a, &ff, &b, &mg, &g.terms);
    ring.normalize(&mut terms);
    RPoly { terms }
}

/// S-polynomial of `f` and `g` (not reduced), scaled to be primitive.
pub fn s_polynomial(f: &Poly, g: &Poly) -> Result<Poly, GroebnerError> {
    if !f.is_compatible(g) {
        return Err(GroebnerError::RegistryMismatch);
    }
    if f.is_zero() || g.is_zero() {
        return Err(GroebnerError::ZeroInput);
    }
    let s = s_poly(&IntRing, f.order(), &int_poly(f), &int_poly(g));
    Ok(to_poly(&s, f.registry(), f.order()))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    seq: usize,
}

/// What happened to the n-th selected S-pair.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Step {
    i: usize,
    j: usize,
    /// Leading monomial of the new element, `None` for a zero reduction.
    lm: Option<Monomial>,
}

enum Guide<'a> {
    None,
    Record(Vec<Step>),
    Follow(&'a [Step]),
}

struct Diverged;

struct Engine<'g, R: Ring> {
    ring: R,
    order: MonomialOrder,
    polys: Vec<RPoly<R::C>>,
    masks: Vec<u32>,
    sugars: Vec<u32>,
    /// Elements usable as reducers and kept in the output.
    active: Vec<usize>,
    pairs: Vec<Pair>,
    seq: usize,
    budget: Budget,
    stats: BuchbergerStats,
    guide: Guide<'g>,
}

impl<'g, R: Ring> Engine<'g, R> {
    fn new(ring: R, order: MonomialOrder, budget: Budget, guide: Guide<'g>) -> Self {
        Engine {
            ring,
            order,
            polys: Vec::new(),
            masks: Vec::new(),
            sugars: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            seq: 0,
            budget,
            stats: BuchbergerStats::default(),
            guide,
        }
    }

    fn reducer(&self) -> Reducer<'_, R> {
        Reducer {
            ring: &self.ring,
            order: self.order,
            polys: &self.polys,
            masks: &self.masks,
            active: &self.active,
        }
    }

    fn add_generators(&mut self, gens: Vec<RPoly<R::C>>) -> Result<(), GroebnerError> {
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let r = self
                .reducer()
                .reduce_from(Vec::new(), g.terms, false, self.budget.max_terms)?;
            if !r.is_zero() {
                let sugar = r.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
                self.insert(r, sugar)?;
            }
        }
        Ok(())
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, h: RPoly<R::C>, sugar: u32) -> Result<(), GroebnerError> {
        if self.polys.len() >= self.budget.max_basis {
            return Err(GroebnerError::Budget(format!(
                "basis exceeded {} elements",
                self.budget.max_basis
            )));
        }
        let hi = self.polys.len();
        let hlm = *h.lm();
        self.masks.push(hlm.support_mask());
        self.sugars.push(sugar);
        self.polys.push(h);
        self.stats.basis_added += 1;

        let cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let glm = self.polys[g].lm();
                (g, hlm.lcm(glm), hlm.is_coprime(glm))
            })
            .collect();

        // chain criterion among the new pairs; of equal lcms keep the first,
        // preferring a coprime one (which is then dropped)
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cands[a].1, &cands[b].1);
                if lb.divides(la) && (lb != la || cands[b].2 || (!cands[a].2 && b < a)) {
                    keep[a] = false;
                    break;
                }
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lm().lcm(&hlm);
            let lj = polys[p.j].lm().lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });

        for (idx, (g, l, coprime)) in cands.into_iter().enumerate() {
            if keep[idx] && !coprime {
                let sg = self.sugars[g] + l.degree() - self.polys[g].lm().degree();
                let sh = sugar + l.degree() - hlm.degree();
                self.pairs.push(Pair {
                    i: g,
                    j: hi,
                    lcm: l,
                    sugar: sg.max(sh),
                    seq: self.seq,
                });
                self.seq += 1;
            }
        }

        let polys = &self.polys;
        self.active.retain(|&g| !hlm.divides(polys[g].lm()));
        self.active.push(hi);
        Ok(())
    }

    fn has_constant(&self) -> bool {
        self.active.iter().any(|&k| self.polys[k].is_constant())
    }

    /// Returns whether the run finished without deferring pairs, or
    /// `Err(Ok(Diverged))` when following a guide that turned out wrong.
    fn run(&mut self, cap: Option<u32>) -> Result<Result<bool, Diverged>, GroebnerError> {
        let mut step_no = 0usize;
        loop {
            if self.has_constant() {
                return Ok(Ok(true));
            }
            let strategy = self.budget.strategy;
            let best = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| cap.is_none_or(|c| p.lcm.degree() <= c))
                .min_by_key(|(_, p)| match strategy {
                    Strategy::Normal => (p.lcm.degree(), p.seq),
                    Strategy::Sugar => (p.sugar, p.seq),
                })
                .map(|(k, _)| k);
            let Some(k) = best else {
                self.stats.pairs_deferred = self.pairs.len();
                if let Guide::Follow(steps) = &self.guide {
                    if step_no != steps.len() {
                        return Ok(Err(Diverged));
                    }
                }
                return Ok(Ok(self.pairs.is_empty()));
            };
            let pair = self.pairs.swap_remove(k);
            self.stats.pairs_reduced += 1;
            if self.stats.pairs_reduced > self.budget.max_pairs {
                return Err(GroebnerError::Budget(format!(
                    "more than {} S-pairs",
                    self.budget.max_pairs
                )));
            }
            let expected = match &self.guide {
                Guide::Follow(steps) => {
                    let Some(st) = steps.get(step_no) else {
                        return Ok(Err(Diverged));
                    };
                    if (st.i, st.j) != (pair.i, pair.j) {
                        return Ok(Err(Diverged));
                    }
                    Some(st.lm)
                }
                _ => None,
            };
            step_no += 1;
            if expected == Some(None) {
                self.stats.pairs_skipped += 1;
                self.stats.zero_reductions += 1;
                continue;
            }
            let s = s_poly(&self.ring, self.order, &self.polys[pair.i], &self.polys[pair.j]);
            let r = self
                .reducer()
                .reduce_from(Vec::new(), s.terms, true, self.budget.max_terms)?;
            let lm = if r.is_zero() { None } else { Some(*r.lm()) };
            if let Some(want) = expected {
                if want != lm {
                    return Ok(Err(Diverged));
                }
            }
            if let Guide::Record(steps) = &mut self.guide {
                steps.push(Step {
                    i: pair.i,
                    j: pair.j,
                    lm,
                });
            }
            match lm {
                None => self.stats.zero_reductions += 1,
                Some(_) => self.insert(r, pair.sugar)?,
            }
        }
    }

    /// Tail-reduces the active elements against each other, ascending by
    /// leading monomial.
    fn interreduced(&self) -> Result<Vec<RPoly<R::C>>, GroebnerError> {
        let mut active = self.active.clone();
        active.sort_by(|&a, &b| self.order.compare(self.polys[a].lm(), self.polys[b].lm()));
        if let Some(&k) = active.iter().find(|&&k| self.polys[k].is_constant()) {
            return Ok(vec![self.polys[k].clone()]);
        }
        let mut out = Vec::with_capacity(active.len());
        for (pos, &k) in active.iter().enumerate() {
            let others: Vec<usize> = active
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != pos)
                .map(|(_, &o)| o)
                .collect();
            let reducer = Reducer {
                ring: &self.ring,
                order: self.order,
                polys: &self.polys,
                masks: &self.masks,
                active: &others,
            };
            let f = &self.polys[k];
            out.push(reducer.reduce_from(
                vec![f.terms[0].clone()],
                f.terms[1..].to_vec(),
                false,
                self.budget.max_terms,
            )?);
        }
        Ok(out)
    }
}

fn check_inputs(generators: &[Poly]) -> Result<(&Arc<VarRegistry>, MonomialOrder), GroebnerError> {
    let Some(first) = generators.first() else {
        return Err(GroebnerError::ZeroInput);
    };
    if generators.iter().any(|g| !g.is_compatible(first)) {
        return Err(GroebnerError::RegistryMismatch);
    }
    Ok((first.registry(), first.order()))
}

/// The modular trace, or `None` when the prime is unusable for these inputs
/// (it divides a leading coefficient).
fn modular_trace(
    generators: &[Poly],
    cap: Option<u32>,
    budget: &Budget,
    p: u64,
) -> Result<Option<Vec<Step>>, GroebnerError> {
    let ring = ModRing { p };
    let order = generators[0].order();
    let mut gens = Vec::new();
    for g in generators.iter().filter(|g| !g.is_zero()) {
        let m = mod_poly(g, &ring);
        if m.is_zero() || m.lm() != g.leading_monomial().unwrap() {
            return Ok(None);
        }
        gens.push(m);
    }
    let mut engine = Engine::new(ring, order, budget.clone(), Guide::Record(Vec::new()));
    engine.add_generators(gens)?;
    engine.run(cap)?.ok().expect("recording never diverges");
    match engine.guide {
        Guide::Record(steps) => Ok(Some(steps)),
        _ => unreachable!(),
    }
}

/// Computes a basis closed under S-pair reduction for every pair whose lcm
/// has total degree at most `cap` (all pairs when `cap` is `None`). A cap
/// below the largest generator degree is raised to it, since otherwise a
/// generator superseded by a lower-degree one could be lost with its
/// deferred S-pair.
pub fn buchberger_capped(
    generators: &[Poly],
    cap: Option<u32>,
    budget: &Budget,
) -> Result<CappedBasis, GroebnerError> {
    let (registry, order) = check_inputs(generators)?;
    let registry = registry.clone();
    let int_gens: Vec<RPoly<BigInt>> = generators.iter().map(int_poly).collect();
    let cap = effective_cap(generators, cap);

    let trace = match budget.guide_prime {
        Some(p) => modular_trace(generators, cap, budget, p)?,
        None => None,
    };
    let mut abandoned = false;
    if let Some(steps) = &trace {
        let mut engine = Engine::new(IntRing, order, budget.clone(), Guide::Follow(steps));
        engine.add_generators(int_gens.clone())?;
        match engine.run(cap)? {
            Ok(complete) => return finish(&engine, complete, &registry, order),
            Err(Diverged) => abandoned = true,
        }
    }
    let mut engine = Engine::new(IntRing, order, budget.clone(), Guide::None);
    engine.add_generators(int_gens)?;
    let complete = engine.run(cap)?.ok().expect("unguided runs never diverge");
    engine.stats.guide_abandoned = abandoned;
    finish(&engine, complete, &registry, order)
}

fn finish(
    engine: &Engine<'_, IntRing>,
    complete: bool,
    registry: &Arc<VarRegistry>,
    order: MonomialOrder,
) -> Result<CappedBasis, GroebnerError> {
    let basis = engine
        .interreduced()?
        .iter()
        .map(|p| to_poly(p, registry, order))
        .collect();
    Ok(CappedBasis {
        basis,
        complete,
        stats: engine.stats.clone(),
    })
}

pub(crate) fn effective_cap(generators: &[Poly], cap: Option<u32>) -> Option<u32> {
    let top = generators.iter().map(Poly::total_degree).max().unwrap_or(0);
    cap.map(|c| c.max(top))
}

/// Uncapped Gröbner basis.
pub fn groebner_basis(generators: &[Poly], budget: &Budget) -> Result<Vec<Poly>, GroebnerError> {
    Ok(buchberger_capped(generators, None, budget)?.basis)
}

/// Remainder of `f` on division by `divisors`, scaled to be primitive. Zero
/// exactly when the division algorithm cancels `f`.
pub fn normal_form(f: &Poly, divisors: &[Poly], budget: &Budget) -> Result<Poly, GroebnerError> {
    if divisors.iter().any(|d| !d.is_compatible(f)) {
        return Err(GroebnerError::RegistryMismatch);
    }
    let polys: Vec<RPoly<BigInt>> = divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(int_poly)
        .collect();
    let masks: Vec<u32> = polys.iter().map(|p| p.lm().support_mask()).collect();
    let active: Vec<usize> = (0..polys.len()).collect();
    let reducer = Reducer {
        ring: &IntRing,
        order: f.order(),
        polys: &polys,
        masks: &masks,
        active: &active,
    };
    let r = reducer.reduce_from(Vec::new(), int_poly(f).terms, false, budget.max_terms)?;
    Ok(to_poly(&r, f.registry(), f.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(names: &[&str], order: MonomialOrder) -> Arc<VarRegistry> {
        let _ = order;
        VarRegistry::new(names).unwrap()
    }

    fn p(r: &Arc<VarRegistry>, o: MonomialOrder, s: &str) -> Poly {
        Poly::parse(r, o, s).unwrap()
    }

    #[test]
    fn hand_computed_lex_basis() {
        let o = MonomialOrder::Lex;
        let r = setup(&["x", "y"], o);
        let gens = [p(&r, o, "x^2 - 1"), p(&r, o, "x*y - 1")];
        let b = buchberger_capped(&gens, Some(10), &Budget::default()).unwrap();
        assert!(b.complete);
        assert_eq!(b.basis, vec![p(&r, o, "y^2 - 1"), p(&r, o, "x - y")]);
    }

    #[test]
    fn s_polynomial_examples() {
        let o = MonomialOrder::Lex;
        let r = setup(&["x", "y"], o);
        let f = p(&r, o, "x^2 - 1");
        let g = p(&r, o, "x*y - 1");
        let s = s_polynomial(&f, &g).unwrap();
        // y*(x^2-1) - x*(x*y-1) = x - y
        assert_eq!(s, p(&r, o, "x - y"));
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        let sx = s_polynomial(&p(&r, o, "x"), &p(&r, o, "y")).unwrap();
        let red = sx.reduce(&[p(&r, o, "x"), p(&r, o, "y")]).unwrap();
        assert!(red.is_zero());
    }

    #[test]
    fn single_generator() {
        let o = MonomialOrder::GrevLex;
        let r = setup(&["x"], o);
        let b = groebner_basis(&[p(&r, o, "x")], &Budget::default()).unwrap();
        assert_eq!(b, vec![p(&r, o, "x")]);
    }

    #[test]
    fn unit_ideal_detected() {
        let o = MonomialOrder::GrevLex;
        let r = setup(&["x", "y"], o);
        let b = groebner_basis(
            &[p(&r, o, "x*y - 1"), p(&r, o, "x"), p(&r, o, "y^3 + x")],
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].is_unit());
    }

    #[test]
    fn cyclic3_grevlex() {
        let o = MonomialOrder::GrevLex;
        let r = setup(&["a", "b", "c"], o);
        let gens = [
            p(&r, o, "a + b + c"),
            p(&r, o, "a*b + b*c + c*a"),
            p(&r, o, "a*b*c - 1"),
        ];
        let b = groebner_basis(&gens, &Budget::default()).unwrap();
        // known reduced basis: a+b+c, b^2+bc+c^2, c^3-1
        assert_eq!(
            b,
            vec![
                p(&r, o, "a + b + c"),
                p(&r, o, "b^2 + b*c + c^2"),
                p(&r, o, "c^3 - 1"),
            ]
        );
    }

    #[test]
    fn cap_defers_pairs() {
        let o = MonomialOrder::GrevLex;
        let r = setup(&["x", "y", "z"], o);
        let gens = [p(&r, o, "x^2*y - z^3"), p(&r, o, "x*y^2 - z^3")];
        let capped = buchberger_capped(&gens, Some(3), &Budget::default()).unwrap();
        assert!(!capped.complete);
        assert!(capped.stats.pairs_deferred > 0);
        let full = buchberger_capped(&gens, None, &Budget::default()).unwrap();
        assert!(full.complete);
    }

    #[test]
    fn budget_is_reported() {
        let o = MonomialOrder::GrevLex;
        let r = setup(&["x", "y", "z"], o);
        let gens = [
            p(&r, o, "x^3 - y*z^2 + 1"),
            p(&r, o, "y^3 - x*z^2 + 2"),
            p(&r, o, "z^3 - x*y^2 + 3"),
        ];
        let tiny = Budget {
            max_pairs: 2,
            ..Budget::default()
        };
        assert!(matches!(
            buchberger_capped(&gens, None, &tiny),
            Err(GroebnerError::Budget(_))
        ));
    }
}
