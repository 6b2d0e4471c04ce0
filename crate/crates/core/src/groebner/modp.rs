//! Buchberger's algorithm over a word-sized prime field.
//!
//! Monomials are packed one exponent per byte into three machine words so
//! that products, divisibility tests and order comparisons are a handful of
//! integer operations. Reduction accumulates into a hash map and walks the
//! pending monomials through a max-heap, so one reduction step costs time
//! proportional to the reducer rather than to the running remainder.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact::{Monomial, MonomialOrder, Poly, Rational, VarRegistry, MAX_VARS};

use super::buchberger::{effective_cap, BuchbergerStats, Budget, Strategy};
use super::GroebnerError;

const HIGH: u64 = 0x8080_8080_8080_8080;
const LOW: u64 = 0x0101_0101_0101_0101;
const WORDS: usize = MAX_VARS / 8;

#[derive(Default)]
struct WordHasher(u64);

impl Hasher for WordHasher {
    fn finish(&self) -> u64 {
        let mut x = self.0;
        x ^= x >> 33;
        x = x.wrapping_mul(0xff51_afd7_ed55_8ccd);
        x ^ (x >> 33)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, x: u64) {
        self.0 = (self.0.rotate_left(5) ^ x).wrapping_mul(0x517c_c1b7_2722_0a95);
    }

    fn write_u16(&mut self, x: u16) {
        self.write_u64(x as u64);
    }
}

type WordMap<K, V> = HashMap<K, V, BuildHasherDefault<WordHasher>>;

/// Exponent vector with one byte per variable; every byte stays below 128.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Packed {
    w: [u64; WORDS],
    deg: u16,
}

impl std::hash::Hash for Packed {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.w[0] ^ self.w[1].rotate_left(21) ^ self.w[2].rotate_left(42));
    }
}

/// Places variable `i` so that plain word comparison realizes the order:
/// for lex the first variable sits in the top byte, for grevlex the last
/// one does and a smaller word means a larger monomial.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    order: MonomialOrder,
    nvars: usize,
}

impl Layout {
    pub(crate) fn new(order: MonomialOrder, nvars: usize) -> Self {
        Layout { order, nvars }
    }

    fn lane(&self, i: usize) -> usize {
        match self.order {
            MonomialOrder::Lex => i,
            MonomialOrder::GrevLex => self.nvars - 1 - i,
        }
    }

    pub(crate) fn pack(&self, m: &Monomial) -> Result<Packed, GroebnerError> {
        let mut w = [0u64; WORDS];
        for i in 0..self.nvars {
            let e = m.exp(i);
            if e >= 128 {
                return Err(GroebnerError::Budget(format!("exponent {e} too large")));
            }
            let lane = self.lane(i);
            w[lane / 8] |= (e as u64) << (8 * (7 - lane % 8));
        }
        Ok(Packed {
            w,
            deg: m.degree() as u16,
        })
    }

    pub(crate) fn unpack(&self, p: &Packed) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for (i, e) in exps.iter_mut().enumerate().take(self.nvars) {
            let lane = self.lane(i);
            *e = (p.w[lane / 8] >> (8 * (7 - lane % 8))) as u8;
        }
        Monomial::from_exponents(&exps)
    }

    #[inline]
    fn cmp(&self, a: &Packed, b: &Packed) -> Ordering {
        match self.order {
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| b.w.cmp(&a.w)),
            MonomialOrder::Lex => a.w.cmp(&b.w),
        }
    }

    /// Heap key whose natural order is the monomial order.
    #[inline]
    fn key(&self, a: &Packed) -> Key {
        match self.order {
            MonomialOrder::GrevLex => Key(a.deg, [!a.w[0], !a.w[1], !a.w[2]]),
            MonomialOrder::Lex => Key(a.deg, a.w),
        }
    }

    #[inline]
    fn from_key(&self, k: &Key) -> Packed {
        match self.order {
            MonomialOrder::GrevLex => Packed {
                w: [!k.1[0], !k.1[1], !k.1[2]],
                deg: k.0,
            },
            MonomialOrder::Lex => Packed { w: k.1, deg: k.0 },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Key(u16, [u64; WORDS]);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        // lex keys carry the degree too, but it never decides there because
        // equal words imply equal degrees
        self.0.cmp(&other.0).then_with(|| self.1.cmp(&other.1))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Packed {
    #[inline]
    fn mul(&self, o: &Packed) -> Packed {
        Packed {
            w: [self.w[0] + o.w[0], self.w[1] + o.w[1], self.w[2] + o.w[2]],
            deg: self.deg + o.deg,
        }
    }

    #[inline]
    fn overflowed(&self) -> bool {
        (self.w[0] | self.w[1] | self.w[2]) & HIGH != 0
    }

    /// `self` divides `o`.
    #[inline]
    fn divides(&self, o: &Packed) -> bool {
        self.deg <= o.deg
            && (0..WORDS).all(|k| ((o.w[k] | HIGH).wrapping_sub(self.w[k])) & HIGH == HIGH)
    }

    #[inline]
    fn div(&self, o: &Packed) -> Packed {
        Packed {
            w: [self.w[0] - o.w[0], self.w[1] - o.w[1], self.w[2] - o.w[2]],
            deg: self.deg - o.deg,
        }
    }

    fn lcm(&self, o: &Packed) -> Packed {
        let mut w = [0u64; WORDS];
        let mut deg = 0u16;
        for k in 0..WORDS {
            // lanes where o >= self get a full byte mask
            let ge = ((o.w[k] | HIGH).wrapping_sub(self.w[k]) & HIGH) >> 7;
            let mask = ge.wrapping_mul(0xff);
            w[k] = (o.w[k] & mask) | (self.w[k] & !mask);
            deg += w[k].to_le_bytes().iter().map(|&b| b as u16).sum::<u16>();
        }
        Packed { w, deg }
    }

    fn support(&self) -> u32 {
        let mut mask = 0u32;
        for k in 0..WORDS {
            let nz = ((self.w[k] | HIGH).wrapping_sub(LOW) | self.w[k]) & HIGH;
            for b in 0..8 {
                if nz & (0x80u64 << (8 * b)) != 0 {
                    mask |= 1 << (k * 8 + b);
                }
            }
        }
        mask
    }
}

/// Monic polynomial mod p, terms strictly decreasing.
#[derive(Clone, Debug)]
pub(crate) struct MPoly {
    pub(crate) terms: Vec<(Packed, u32)>,
}

impl MPoly {
    fn lm(&self) -> &Packed {
        &self.terms[0].0
    }
}

#[inline]
fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn invmod(a: u32, p: u32) -> u32 {
    let (mut t, mut nt) = (0i64, 1i64);
    let (mut r, mut nr) = (p as i64, a as i64);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    debug_assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i64) as u32
}

pub(crate) fn rational_mod(c: &Rational, p: u32) -> Option<u32> {
    let pm = BigInt::from(p);
    let n = (c.numer() % &pm + &pm) % &pm;
    let d = (c.denom() % &pm + &pm) % &pm;
    let d = d.to_u32()?;
    if d == 0 {
        return None;
    }
    Some(mulmod(n.to_u32()?, invmod(d, p), p))
}

/// Smallest-height rational congruent to `a` mod `p`, when both numerator
/// and denominator are below √(p/2).
pub(crate) fn rational_reconstruct(a: u32, p: u32) -> Option<Rational> {
    let bound = ((p / 2) as f64).sqrt() as i64;
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Rational::new(n, d).ok()
}

/// A polynomial with coefficients reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    pub terms: Vec<(Monomial, u32)>,
}

impl ModPoly {
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Lifts each coefficient to the rational of least height in its
    /// residue class; `None` when some coefficient has no small lift.
    pub fn lift(&self, registry: &Arc<VarRegistry>, order: MonomialOrder, p: u32) -> Option<Poly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Some((*m, rational_reconstruct(*c, p)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_terms(registry, order, terms))
    }
}

/// A list of monic reducers mod p with the normal-form routine.
#[derive(Clone, Debug)]
pub(crate) struct ModReducer {
    p: u32,
    layout: Layout,
    polys: Vec<MPoly>,
    masks: Vec<u32>,
    /// Elements used as reducers.
    active: Vec<usize>,
    max_terms: usize,
    /// Earlier divisor lookups: the reducer found, or the number of
    /// elements that existed when none was.
    memo: RefCell<WordMap<Packed, Lookup>>,
    live: Vec<bool>,
}

#[derive(Clone, Copy, Debug)]
enum Lookup {
    Found(usize),
    NoneBefore(usize),
}

impl ModReducer {
    fn new(p: u32, layout: Layout, max_terms: usize) -> Self {
        ModReducer {
            p,
            layout,
            polys: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
            max_terms,
            memo: RefCell::new(WordMap::default()),
            live: Vec::new(),
        }
    }

    fn convert(&self, f: &Poly) -> Result<Vec<(Packed, u32)>, GroebnerError> {
        let mut out = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let c = rational_mod(c, self.p).ok_or_else(|| {
                GroebnerError::Budget(format!("prime {} divides a denominator", self.p))
            })?;
            if c != 0 {
                out.push((self.layout.pack(m)?, c));
            }
        }
        Ok(out)
    }

    /// An active element whose leading monomial divides `m`, preferring
    /// the shortest among those not already remembered for `m`.
    fn find_reducer(&self, m: &Packed, exclude: Option<usize>) -> Option<usize> {
        if exclude.is_some() {
            return self.scan(m, exclude, 0);
        }
        let mut memo = self.memo.borrow_mut();
        let from = match memo.get(m) {
            Some(&Lookup::Found(k)) if self.live[k] => return Some(k),
            Some(&Lookup::NoneBefore(n)) => n,
            _ => 0,
        };
        let found = self.scan(m, None, from);
        memo.insert(
            *m,
            match found {
                Some(k) => Lookup::Found(k),
                None => Lookup::NoneBefore(self.polys.len()),
            },
        );
        found
    }

    fn scan(&self, m: &Packed, exclude: Option<usize>, from: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mm = m.support();
        for &k in &self.active {
            if k < from || self.masks[k] & !mm != 0 || Some(k) == exclude || !self.polys[k].lm().divides(m) {
                continue;
            }
            if best.is_none_or(|b| self.polys[k].terms.len() < self.polys[b].terms.len()) {
                best = Some(k);
            }
        }
        best
    }

    /// Full normal form of `f`, whose terms may be unsorted and repeated.
    fn reduce(
        &self,
        f: Vec<(Packed, u32)>,
        exclude: Option<usize>,
        monic: bool,
    ) -> Result<MPoly, GroebnerError> {
        let p = self.p;
        let mut acc: WordMap<Packed, u32> = WordMap::default();
        let mut heap: BinaryHeap<Key> = BinaryHeap::with_capacity(f.len());
        let add = |acc: &mut WordMap<Packed, u32>, heap: &mut BinaryHeap<Key>, m: Packed, c: u32| {
            match acc.entry(m) {
                Entry::Vacant(v) => {
                    v.insert(c);
                    heap.push(self.layout.key(&m));
                }
                Entry::Occupied(mut o) => {
                    let s = *o.get() + c;
                    let s = if s >= p { s - p } else { s };
                    if s == 0 {
                        o.remove();
                    } else {
                        *o.get_mut() = s;
                    }
                }
            }
        };
        for (m, c) in f {
            add(&mut acc, &mut heap, m, c % p);
        }
        let mut out: Vec<(Packed, u32)> = Vec::new();
        while let Some(k) = heap.pop() {
            let m = self.layout.from_key(&k);
            let Some(c) = acc.remove(&m) else { continue };
            let Some(g) = self.find_reducer(&m, exclude) else {
                out.push((m, c));
                continue;
            };
            if acc.len() > self.max_terms {
                return Err(GroebnerError::Budget(format!(
                    "intermediate polynomial exceeded {} terms",
                    self.max_terms
                )));
            }
            let g = &self.polys[g];
            let q = m.div(g.lm());
            let neg = p - c;
            for &(t, gc) in &g.terms[1..] {
                add(&mut acc, &mut heap, q.mul(&t), mulmod(neg, gc, p));
            }
        }
        if let (true, Some(&(_, lc))) = (monic, out.first()) {
            let inv = invmod(lc, p);
            for t in out.iter_mut() {
                t.1 = mulmod(t.1, inv, p);
            }
        }
        Ok(MPoly { terms: out })
    }

    fn push(&mut self, f: MPoly) -> usize {
        let k = self.polys.len();
        self.masks.push(f.lm().support());
        self.polys.push(f);
        self.active.push(k);
        self.live.push(true);
        k
    }

    /// Reduces `f` and, when the remainder is nonzero, keeps it as a further
    /// reducer. Returns whether `f` reduced to zero.
    pub(crate) fn absorb(&mut self, f: &Poly) -> Result<bool, GroebnerError> {
        let r = self.reduce(self.convert(f)?, None, true)?;
        if r.terms.is_empty() {
            return Ok(true);
        }
        self.push(r);
        Ok(false)
    }

    pub(crate) fn reduces_to_zero(&self, f: &Poly) -> Result<bool, GroebnerError> {
        Ok(self.reduce(self.convert(f)?, None, false)?.terms.is_empty())
    }
}

#[derive(Clone, Debug)]
pub struct ModBasis {
    pub prime: u32,
    /// Inter-reduced and monic, ascending by leading monomial.
    pub basis: Vec<ModPoly>,
    pub complete: bool,
    pub stats: BuchbergerStats,
    reducer: ModReducer,
}

impl ModBasis {
    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(ModPoly::is_unit)
    }

    /// Whether `f` reduces to zero modulo the prime against the basis.
    pub fn reduces_to_zero(&self, f: &Poly) -> Result<bool, GroebnerError> {
        self.reducer.reduces_to_zero(f)
    }

    pub(crate) fn into_reducer(self) -> ModReducer {
        self.reducer
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Packed,
    sugar: u32,
    seq: usize,
}

struct ModEngine {
    red: ModReducer,
    sugars: Vec<u32>,
    pairs: Vec<Pair>,
    seq: usize,
    budget: Budget,
    stats: BuchbergerStats,
}

impl ModEngine {
    fn new(p: u32, layout: Layout, budget: Budget) -> Self {
        ModEngine {
            red: ModReducer::new(p, layout, budget.max_terms),
            sugars: Vec::new(),
            pairs: Vec::new(),
            seq: 0,
            budget,
            stats: BuchbergerStats::default(),
        }
    }

    fn add_generators(&mut self, gens: &[Poly]) -> Result<(), GroebnerError> {
        for g in gens {
            let r = self.red.reduce(self.red.convert(g)?, None, true)?;
            if !r.terms.is_empty() {
                let sugar = r.terms.iter().map(|t| t.0.deg as u32).max().unwrap_or(0);
                self.insert(r, sugar)?;
            }
        }
        Ok(())
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, h: MPoly, sugar: u32) -> Result<(), GroebnerError> {
        if self.red.polys.len() >= self.budget.max_basis {
            return Err(GroebnerError::Budget(format!(
                "basis exceeded {} elements",
                self.budget.max_basis
            )));
        }
        let hlm = *h.lm();
        let hmask = hlm.support();
        let red = &self.red;
        let cands: Vec<(usize, Packed, bool)> = red
            .active
            .iter()
            .map(|&g| (g, hlm.lcm(red.polys[g].lm()), red.masks[g] & hmask == 0))
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
        let polys = &red.polys;
        self.pairs.retain(|pr| {
            if !hlm.divides(&pr.lcm) {
                return true;
            }
            polys[pr.i].lm().lcm(&hlm) == pr.lcm || polys[pr.j].lm().lcm(&hlm) == pr.lcm
        });
        let hi = polys.len();
        for (idx, (g, l, coprime)) in cands.into_iter().enumerate() {
            if keep[idx] && !coprime {
                let sg = self.sugars[g] + l.deg as u32 - polys[g].lm().deg as u32;
                let sh = sugar + l.deg as u32 - hlm.deg as u32;
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
        let ModReducer { active, polys, live, .. } = &mut self.red;
        active.retain(|&g| {
            let keep = !hlm.divides(polys[g].lm());
            live[g] = keep;
            keep
        });
        self.sugars.push(sugar);
        self.red.push(h);
        self.stats.basis_added += 1;
        Ok(())
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Packed) -> Vec<(Packed, u32)> {
        let p = self.red.p;
        let (f, g) = (&self.red.polys[i], &self.red.polys[j]);
        let qf = lcm.div(f.lm());
        let qg = lcm.div(g.lm());
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        out.extend(f.terms[1..].iter().map(|&(m, c)| (qf.mul(&m), c)));
        out.extend(g.terms[1..].iter().map(|&(m, c)| (qg.mul(&m), p - c)));
        out
    }

    fn has_constant(&self) -> bool {
        self.red.active.iter().any(|&k| self.red.polys[k].lm().deg == 0)
    }

    /// Returns whether no pair was left over because of the cap.
    fn run(&mut self, cap: Option<u32>) -> Result<bool, GroebnerError> {
        loop {
            if self.has_constant() {
                return Ok(true);
            }
            let strategy = self.budget.strategy;
            let best = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, pr)| cap.is_none_or(|c| pr.lcm.deg as u32 <= c))
                .min_by_key(|(_, pr)| match strategy {
                    Strategy::Normal => (pr.lcm.deg as u32, pr.seq),
                    Strategy::Sugar => (pr.sugar, pr.seq),
                })
                .map(|(k, _)| k);
            let Some(k) = best else {
                self.stats.pairs_deferred = self.pairs.len();
                return Ok(self.pairs.is_empty());
            };
            let pair = self.pairs.swap_remove(k);
            self.stats.pairs_reduced += 1;
            if self.stats.pairs_reduced > self.budget.max_pairs {
                return Err(GroebnerError::Budget(format!(
                    "more than {} S-pairs",
                    self.budget.max_pairs
                )));
            }
            let s = self.spoly(pair.i, pair.j, &pair.lcm);
            if s.iter().any(|(m, _)| m.overflowed()) {
                return Err(GroebnerError::Budget("exponent overflow".into()));
            }
            let r = self.red.reduce(s, None, true)?;
            if r.terms.is_empty() {
                self.stats.zero_reductions += 1;
            } else {
                self.insert(r, pair.sugar)?;
            }
        }
    }

    /// Tail-reduced active elements, ascending by leading monomial.
    fn finish(&self) -> Result<Vec<MPoly>, GroebnerError> {
        let red = &self.red;
        let mut active = red.active.clone();
        active.sort_by(|&a, &b| red.layout.cmp(red.polys[a].lm(), red.polys[b].lm()));
        if let Some(&k) = active.iter().find(|&&k| red.polys[k].lm().deg == 0) {
            return Ok(vec![MPoly {
                terms: vec![(red.polys[k].terms[0].0, 1)],
            }]);
        }
        let mut out = Vec::with_capacity(active.len());
        for &k in &active {
            let f = &red.polys[k];
            let mut terms = vec![f.terms[0]];
            terms.extend(red.reduce(f.terms[1..].to_vec(), Some(k), false)?.terms);
            out.push(MPoly { terms });
        }
        Ok(out)
    }
}

/// Degree-capped Gröbner basis of the ideal generated by `generators`,
/// computed modulo the prime `p` (which must exceed 2 and stay below 2³¹).
/// A cap below the largest generator degree is raised to it.
pub fn buchberger_mod_p(
    generators: &[Poly],
    p: u32,
    cap: Option<u32>,
    budget: &Budget,
) -> Result<ModBasis, GroebnerError> {
    let Some(first) = generators.first() else {
        return Err(GroebnerError::ZeroInput);
    };
    if generators.iter().any(|g| !g.is_compatible(first)) {
        return Err(GroebnerError::RegistryMismatch);
    }
    assert!(p > 2 && p < 1 << 31, "prime out of range");
    let layout = Layout::new(first.order(), first.registry().len());
    let mut eng = ModEngine::new(p, layout, budget.clone());
    eng.add_generators(generators)?;
    let complete = eng.run(effective_cap(generators, cap))?;
    let finished = eng.finish()?;
    let basis = finished
        .iter()
        .map(|f| ModPoly {
            terms: f.terms.iter().map(|(m, c)| (layout.unpack(m), *c)).collect(),
        })
        .collect();
    let mut reducer = ModReducer::new(p, layout, budget.max_terms);
    for f in finished {
        reducer.push(f);
    }
    Ok(ModBasis {
        prime: p,
        basis,
        complete,
        stats: eng.stats,
        reducer,
    })
}
