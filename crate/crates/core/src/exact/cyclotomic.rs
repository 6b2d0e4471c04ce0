use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{MonomialOrder, Poly, VarRegistry};
use super::rational::Rational;
use super::ExactError;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(n: u32) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Units modulo `n`, ascending. For `n = 1` this is `[0]`, the lone residue.
pub fn units_mod(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial,
/// via the Möbius product of `x^d - 1` over divisors `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // numerator: product of (x^d - 1) with mu(n/d) = 1, denominator: mu = -1
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => num = mul_xd_minus_one(&num, d as usize),
            -1 => den = mul_xd_minus_one(&den, d as usize),
            _ => {}
        }
    }
    // exact division num / den, den monic up to sign
    let mut rem = num;
    let dl = den.len() - 1;
    let lead = den[dl];
    let ql = rem.len() - dl;
    let mut q = vec![0i64; ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl] / lead;
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    debug_assert_eq!(q.len(), euler_phi(n) as usize + 1);
    q
}

fn mul_xd_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// Element of the cyclotomic field Q(zeta_N), stored in the power basis
/// `1, z, ..., z^(phi(N)-1)` modulo the N-th cyclotomic polynomial.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `zeta_conductor ^ exponent`.
pub fn cyc_make(conductor: u32, exponent: i64) -> Cyclotomic {
    Cyclotomic::zeta_pow(conductor, exponent)
}

pub fn cyc_arith(a: &Cyclotomic, b: &Cyclotomic, op: CycOp) -> Result<Cyclotomic, ExactError> {
    Ok(match op {
        CycOp::Add => a + b,
        CycOp::Sub => a - b,
        CycOp::Mul => a * b,
        CycOp::Div => a.checked_div(b)?,
    })
}

pub fn cyc_galois(a: &Cyclotomic, k: i64) -> Result<Cyclotomic, ExactError> {
    a.galois(k)
}

pub fn cyc_conj(a: &Cyclotomic) -> Cyclotomic {
    a.conj()
}

pub fn cyc_embed(a: &Cyclotomic) -> Complex64 {
    a.embed()
}

/// Minimal polynomial over Q as a polynomial in `x`.
pub fn cyc_min_poly(a: &Cyclotomic) -> Poly {
    let reg = VarRegistry::new(&["x"]).expect("static registry");
    a.min_poly_in(&reg, 0)
}

/// Floating complex value, used only for numerical cross-checks.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Complex64 {
    pub re: f64,
    pub im: f64,
}

impl Complex64 {
    pub fn new(re: f64, im: f64) -> Self {
        Complex64 { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn dist(self, other: Complex64) -> f64 {
        (self.re - other.re).hypot(self.im - other.im)
    }
}

impl Add for Complex64 {
    type Output = Complex64;
    fn add(self, o: Complex64) -> Complex64 {
        Complex64::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Complex64 {
    type Output = Complex64;
    fn sub(self, o: Complex64) -> Complex64 {
        Complex64::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Complex64 {
    type Output = Complex64;
    fn mul(self, o: Complex64) -> Complex64 {
        Complex64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Reduces a dense coefficient vector (any length) modulo Phi_n.
fn reduce_mod_phi(mut coeffs: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if coeffs.len() > deg {
        for i in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[i]);
            if c.is_zero() {
                continue;
            }
            // x^i = x^(i-deg) * (x^deg) and x^deg = -(phi - x^deg)
            for (j, &pj) in phi[..deg].iter().enumerate() {
                if pj != 0 {
                    let delta = &c * &Rational::from(pj);
                    coeffs[i - deg + j] = &coeffs[i - deg + j] - &delta;
                }
            }
        }
        coeffs.truncate(deg);
    }
    coeffs.resize(deg, Rational::zero());
    coeffs
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(Rational::from(n))
    }

    /// Builds `sum c * zeta_n^e` over the given (exponent, coefficient) pairs.
    pub fn from_powers(n: u32, terms: &[(i64, Rational)]) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![Rational::zero(); n as usize];
        for (e, c) in terms {
            let idx = e.rem_euclid(n as i64) as usize;
            dense[idx] = &dense[idx] + c;
        }
        Cyclotomic {
            conductor: n,
            coeffs: reduce_mod_phi(dense, n),
        }
    }

    pub fn zeta_pow(n: u32, e: i64) -> Self {
        Self::from_powers(n, &[(e, Rational::one())])
    }

    /// Validated constructor from power-basis coefficients.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if n == 0 {
            return Err(ExactError::InvalidConductor(0));
        }
        let phi = euler_phi(n) as usize;
        if coeffs.len() != phi {
            return Err(ExactError::CoeffLength {
                conductor: n,
                expected: phi,
                found: coeffs.len(),
            });
        }
        Ok(Cyclotomic {
            conductor: n,
            coeffs,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        // the power basis starts with 1, so rational elements have no
        // higher coordinates
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(zeta_m); `m` must be a multiple of the
    /// conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m % self.conductor == 0,
            "lift target {m} is not a multiple of {}",
            self.conductor
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as i64;
        let terms: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 * step, c.clone()))
            .collect();
        Self::from_powers(m, &terms)
    }

    fn align(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = lcm(a.conductor, b.conductor);
        (a.lift(m), b.lift(m))
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn add_impl(&self, other: &Cyclotomic, negate: bool) -> Self {
        let (a, b) = Self::align(self, other);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| if negate { x - y } else { x + y })
            .collect();
        Cyclotomic {
            conductor: a.conductor,
            coeffs,
        }
    }

    fn mul_impl(&self, other: &Cyclotomic) -> Self {
        let (a, b) = Self::align(self, other);
        let n = a.conductor;
        let len = a.coeffs.len();
        let mut dense = vec![Rational::zero(); 2 * len - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                dense[i + j] = &dense[i + j] + &(x * y);
            }
        }
        Cyclotomic {
            conductor: n,
            coeffs: reduce_mod_phi(dense, n),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Cyclotomic::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Image under `zeta -> zeta^k`.
    pub fn galois(&self, k: i64) -> Result<Self, ExactError> {
        let n = self.conductor as i64;
        if n > 1 && k.gcd(&n) != 1 {
            return Err(ExactError::NotCoprime {
                k,
                conductor: self.conductor,
            });
        }
        Ok(self.galois_unchecked(k))
    }

    fn galois_unchecked(&self, k: i64) -> Self {
        let terms: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 * k, c.clone()))
            .collect();
        Self::from_powers(self.conductor, &terms)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// All Galois conjugates over Q (one per unit mod the conductor,
    /// duplicates kept).
    pub fn conjugates(&self) -> Vec<Cyclotomic> {
        units_mod(self.conductor)
            .into_iter()
            .map(|k| self.galois_unchecked(k as i64))
            .collect()
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let mut acc = Cyclotomic::one();
        for c in self.conjugates() {
            acc = &acc * &c;
        }
        acc.to_rational().expect("norm is rational")
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let mut others = Cyclotomic::one();
        for k in units_mod(self.conductor) {
            if k > 1 {
                others = &others * &self.galois_unchecked(k as i64);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(others.scale(&norm.recip()?))
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Self, ExactError> {
        Ok(self * &other.inverse()?)
    }

    /// Numerical value under `zeta_N -> exp(2 pi i / N)`.
    pub fn embed(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::default();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / n;
            let v = c.to_f64();
            acc.re += v * angle.cos();
            acc.im += v * angle.sin();
        }
        acc
    }

    /// If the element is a root of unity, returns `(order, k)` with the
    /// element equal to `exp(2 pi i k / order)` and `gcd(k, order) = 1`.
    pub fn root_of_unity_order(&self) -> Option<(u32, u32)> {
        // roots of unity in Q(zeta_n) have order dividing lcm(2, n)
        let m = lcm(2, self.conductor);
        let lifted = self.lift(m);
        for j in 0..m {
            if lifted == Cyclotomic::zeta_pow(m, j as i64) {
                let g = j.gcd(&m);
                return Some((m / g, j / g));
            }
        }
        None
    }

    /// Minimal polynomial over Q, expressed in variable `var` of `registry`.
    pub fn min_poly_in(&self, registry: &Arc<VarRegistry>, var: usize) -> Poly {
        let coeffs = self.min_poly_coeffs();
        Poly::from_univariate(registry, MonomialOrder::GrevLex, var, &coeffs)
    }

    /// Monic minimal polynomial coefficients, lowest degree first.
    pub fn min_poly_coeffs(&self) -> Vec<Rational> {
        let mut orbit: Vec<Cyclotomic> = Vec::new();
        for c in self.conjugates() {
            if !orbit.contains(&c) {
                orbit.push(c);
            }
        }
        // product of (x - c) with cyclotomic coefficients
        let mut poly = vec![Cyclotomic::one()];
        for root in &orbit {
            let mut next = vec![Cyclotomic::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                next[i] = &next[i] - &(c * root);
            }
            poly = next;
        }
        poly.into_iter()
            .map(|c| {
                c.to_rational()
                    .expect("Galois-stable product has rational coefficients")
            })
            .collect()
    }

    /// Smallest conductor `d` dividing the current one such that the
    /// element lies in Q(zeta_d), together with the element expressed there.
    pub fn minimal_form(&self) -> Cyclotomic {
        let n = self.conductor;
        let units = units_mod(n);
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            // fixed by every k = 1 mod d
            let fixed = units
                .iter()
                .filter(|&&k| k % d == 1 % d)
                .all(|&k| self.galois_unchecked(k as i64) == *self);
            if !fixed {
                continue;
            }
            if let Some(small) = self.descend(d) {
                return small;
            }
        }
        self.clone()
    }

    /// Solves for coordinates in Q(zeta_d) by matching against lifted basis
    /// elements.
    fn descend(&self, d: u32) -> Option<Cyclotomic> {
        if d == self.conductor {
            return Some(self.clone());
        }
        let phi_d = euler_phi(d) as usize;
        let rows = self.coeffs.len();
        // columns: lifted basis z_d^j, j < phi_d; augmented with self
        let basis: Vec<Cyclotomic> = (0..phi_d)
            .map(|j| Cyclotomic::zeta_pow(d, j as i64).lift(self.conductor))
            .collect();
        let mut m: Vec<Vec<Rational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Rational> = basis.iter().map(|b| b.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let solution = solve_consistent(&mut m, phi_d)?;
        let candidate = Cyclotomic::from_coeffs(d, solution).ok()?;
        (candidate.lift(self.conductor) == *self).then_some(candidate)
    }
}

/// Gaussian elimination on an augmented matrix with `cols` unknowns.
fn solve_consistent(m: &mut [Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let rows = m.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].recip().ok()?;
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r2 in 0..rows {
            if r2 != pivot_row && !m[r2][col].is_zero() {
                let f = m[r2][col].clone();
                let prow = m[pivot_row].clone();
                for (x, p) in m[r2].iter_mut().zip(prow.iter()) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = m[r][cols].clone();
    }
    Some(sol)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::align(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, false)
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, true)
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Add<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, false)
    }
}

impl Sub<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, true)
    }
}

impl Mul<&Cyclotomic> for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(&self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "z{}", self.conductor)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

/// Total order on canonical representations; only meaningful between
/// elements stored at the same conductor. Used for deterministic sorting.
pub fn canonical_cmp(a: &Cyclotomic, b: &Cyclotomic) -> Ordering {
    a.conductor
        .cmp(&b.conductor)
        .then_with(|| a.coeffs.cmp(&b.coeffs))
}

#[derive(Serialize, Deserialize)]
struct CyclotomicJson {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CyclotomicJson {
            conductor: self.conductor,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CyclotomicJson::deserialize(deserializer)?;
        Cyclotomic::from_coeffs(raw.conductor, raw.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_and_cyclotomic_polys() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(18), 6);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(18), vec![1, 0, 0, -1, 0, 0, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).iter().any(|&c| c == -2));
    }

    #[test]
    fn basic_construction() {
        assert_eq!(cyc_make(1, 0), Cyclotomic::one());
        let i = cyc_make(4, 1);
        assert_eq!(i.coeffs(), &[Rational::zero(), Rational::one()]);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        assert_eq!(cyc_make(9, 1) * &cyc_make(9, 8), Cyclotomic::one());
    }

    #[test]
    fn mixed_conductor_equality() {
        // zeta_6 = -zeta_3^2
        assert_eq!(cyc_make(6, 1), -cyc_make(3, 2));
        assert_eq!(cyc_make(12, 3), cyc_make(4, 1));
        assert_ne!(cyc_make(12, 1), cyc_make(4, 1));
    }

    #[test]
    fn galois_and_conjugation() {
        let i = cyc_make(4, 1);
        assert_eq!(cyc_galois(&i, 3).unwrap(), -&i);
        assert_eq!(cyc_galois(&i, 1).unwrap(), i);
        assert!(cyc_galois(&i, 2).is_err());
        assert_eq!(cyc_conj(&cyc_make(7, 1)), cyc_make(7, 6));
    }

    #[test]
    fn division_and_inverse() {
        let a = &cyc_make(7, 1) + &Cyclotomic::from_int(2);
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, Cyclotomic::one());
        assert!(Cyclotomic::zero().inverse().is_err());
        assert!(cyc_arith(&a, &Cyclotomic::zero(), CycOp::Div).is_err());
    }

    #[test]
    fn min_polys() {
        assert_eq!(Cyclotomic::one().min_poly_coeffs(), vec![Rational::from(-1), Rational::one()]);
        let i = cyc_make(4, 1);
        assert_eq!(
            i.min_poly_coeffs(),
            vec![Rational::one(), Rational::zero(), Rational::one()]
        );
    }

    #[test]
    fn roots_of_unity_detection() {
        assert_eq!(cyc_make(9, 3).root_of_unity_order(), Some((3, 1)));
        assert_eq!((-cyc_make(3, 1)).root_of_unity_order(), Some((6, 5)));
        assert_eq!(Cyclotomic::from_int(2).root_of_unity_order(), None);
        assert_eq!(Cyclotomic::one().root_of_unity_order(), Some((1, 0)));
    }

    #[test]
    fn minimal_form_descends() {
        let x = cyc_make(4, 1).lift(36);
        let m = x.minimal_form();
        assert_eq!(m.conductor(), 4);
        assert_eq!(m, x);
        assert_eq!(Cyclotomic::from_int(5).lift(18).minimal_form().conductor(), 1);
    }

    #[test]
    fn json_shape() {
        let z = cyc_make(3, 1);
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"conductor":3,"coeffs":["0","1"]}"#);
        let back: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<Cyclotomic>(r#"{"conductor":3,"coeffs":["1"]}"#).is_err());
    }
}
