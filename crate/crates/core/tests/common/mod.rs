//! Reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rank6::exact::{Monomial, MonomialOrder, Poly, Rational, VarRegistry};

pub fn xyz() -> Arc<VarRegistry> {
    VarRegistry::new(&["x", "y", "z"]).unwrap()
}

/// Textbook Buchberger over Q: every pair, no criteria, full division.
pub fn naive_gb(gens: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(Poly::monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let s = spoly(&g[i], &g[j]);
        let r = s.reduce(&g).unwrap();
        if !r.is_zero() {
            g.push(r.monic());
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    reduce_basis(g)
}

pub fn spoly(f: &Poly, g: &Poly) -> Poly {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.recip().unwrap());
    let b = g.mul_term(&l.div(mg).unwrap(), &cg.recip().unwrap());
    a.try_sub(&b).unwrap()
}

/// Minimal, inter-reduced, monic, sorted ascending by leading monomial.
pub fn reduce_basis(mut g: Vec<Poly>) -> Vec<Poly> {
    let mut i = 0;
    while i < g.len() {
        let lm = *g[i].leading_monomial().unwrap();
        let redundant = g
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && h.leading_monomial().unwrap().divides(&lm) && (j < i || *h.leading_monomial().unwrap() != lm));
        if redundant {
            g.remove(i);
        } else {
            i += 1;
        }
    }
    let mut out = Vec::new();
    for k in 0..g.len() {
        let others: Vec<Poly> = g.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p.clone()).collect();
        let lt = g[k].leading_term().unwrap().clone();
        let tail = Poly::from_terms(g[k].registry(), g[k].order(), g[k].terms()[1..].to_vec());
        let tail = if others.is_empty() { tail } else { tail.reduce(&others).unwrap() };
        let head = Poly::from_terms(g[k].registry(), g[k].order(), vec![lt]);
        out.push(head.try_add(&tail).unwrap().monic());
    }
    sort_basis(out)
}

pub fn sort_basis(mut g: Vec<Poly>) -> Vec<Poly> {
    g.sort_by(|a, b| {
        a.order()
            .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    g
}

pub fn monic_all(g: &[Poly]) -> Vec<Poly> {
    sort_basis(g.iter().map(Poly::monic).collect())
}

/// A random ideal in at most three variables: one to three generators of
/// total degree at most three with small integer coefficients.
pub fn random_ideal<R: Rng>(rng: &mut R, reg: &Arc<VarRegistry>, order: MonomialOrder) -> Vec<Poly> {
    loop {
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Poly> = (0..ngens)
            .map(|_| {
                let nterms = rng.gen_range(1..=4);
                let terms: Vec<_> = (0..nterms)
                    .filter_map(|_| {
                        let e = [rng.gen_range(0..3u8), rng.gen_range(0..3u8), rng.gen_range(0..2u8)];
                        let k = rng.gen_range(-3i64..=3);
                        (e.iter().sum::<u8>() <= 3).then(|| (Monomial::from_exponents(&e), Rational::from(k)))
                    })
                    .collect();
                Poly::from_terms(reg, order, terms)
            })
            .filter(|p| !p.is_zero())
            .collect();
        if !gens.is_empty() {
            return gens;
        }
    }
}
