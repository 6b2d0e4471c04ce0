use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::data::{derive_scalars, ModularData};
use super::ModularError;
use crate::exact::{Cyclotomic, MonomialOrder, Poly, Rational, VarRegistry};

/// Fusion coefficients; `matrices[i][k][j]` is N_{i,j}^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionRules {
    pub rank: usize,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

impl FusionRules {
    pub fn new(matrices: Vec<Vec<Vec<i64>>>) -> Self {
        FusionRules {
            rank: matrices.len(),
            matrices,
        }
    }

    /// N_{i,j}^k.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> i64 {
        self.matrices[i][k][j]
    }

    pub fn matrix(&self, i: usize) -> &[Vec<i64>] {
        &self.matrices[i]
    }

    /// Fusion rules of the product labeling used by `kronecker_product`.
    pub fn kronecker(&self, other: &FusionRules) -> FusionRules {
        let rb = other.rank;
        let r = self.rank * rb;
        let mut m = vec![vec![vec![0i64; r]; r]; r];
        for (x, mx) in m.iter_mut().enumerate() {
            for (k, row) in mx.iter_mut().enumerate() {
                for (j, v) in row.iter_mut().enumerate() {
                    *v = self.coeff(x / rb, j / rb, k / rb) * other.coeff(x % rb, j % rb, k % rb);
                }
            }
        }
        FusionRules::new(m)
    }

    /// Relabels so that old label `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> FusionRules {
        let r = self.rank;
        let mut m = vec![vec![vec![0i64; r]; r]; r];
        for i in 0..r {
            for k in 0..r {
                for j in 0..r {
                    m[perm[i]][perm[k]][perm[j]] = self.matrices[i][k][j];
                }
            }
        }
        FusionRules::new(m)
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.rank;
        (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| self.coeff(i, j, k) == self.coeff(j, i, k))))
    }

    pub fn commute(&self) -> bool {
        let r = self.rank;
        for a in 0..r {
            for b in a + 1..r {
                if int_matmul(&self.matrices[a], &self.matrices[b])
                    != int_matmul(&self.matrices[b], &self.matrices[a])
                {
                    return false;
                }
            }
        }
        true
    }
}

pub fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, brow) in b.iter().enumerate() {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * brow[j];
            }
        }
    }
    out
}

/// N_{i,j}^k = (1/D²) Σ_a S_ia S_ja conj(S_ka) / S_0a.
pub fn verlinde(md: &ModularData) -> Result<FusionRules, ModularError> {
    let r = md.rank();
    let dsq_inv = derive_scalars(md).dsq.inverse().map_err(|_| ModularError::ZeroDsq)?;
    let mut scale = Vec::with_capacity(r);
    for a in 0..r {
        let inv = md.dim(a).inverse().map_err(|_| ModularError::ZeroDimension(a))?;
        scale.push(&inv * &dsq_inv);
    }
    let conj: Vec<Vec<Cyclotomic>> = md.s().iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect();
    let mut m = vec![vec![vec![0i64; r]; r]; r];
    for i in 0..r {
        for j in 0..r {
            let pre: Vec<Cyclotomic> = (0..r)
                .map(|a| &(md.s_entry(i, a) * md.s_entry(j, a)) * &scale[a])
                .collect();
            for k in 0..r {
                let mut acc = Cyclotomic::zero();
                for a in 0..r {
                    acc = acc + &(&pre[a] * &conj[k][a]);
                }
                let v = acc
                    .to_rational()
                    .filter(|q| q.is_integer() && !q.is_negative())
                    .and_then(|q| q.to_i64());
                match v {
                    Some(n) => m[i][k][j] = n,
                    None => return Err(ModularError::NonIntegralFusion { i, j, k, value: acc }),
                }
            }
        }
    }
    Ok(FusionRules::new(m))
}

fn x_registry() -> &'static Arc<VarRegistry> {
    static REG: OnceLock<Arc<VarRegistry>> = OnceLock::new();
    REG.get_or_init(|| VarRegistry::new(&["x"]).expect("static registry"))
}

/// Univariate polynomial in `x` from integer coefficients, lowest first.
pub fn int_poly(coeffs: &[BigInt]) -> Poly {
    let c: Vec<Rational> = coeffs.iter().map(|v| Rational::from_integer(v.clone())).collect();
    Poly::from_univariate(x_registry(), MonomialOrder::GrevLex, 0, &c)
}

/// Parses a polynomial in `x` (e.g. `(x-1)^3*(x^3-3*x+1)`).
pub fn parse_x_poly(text: &str) -> Result<Poly, ModularError> {
    Poly::parse(x_registry(), MonomialOrder::GrevLex, text).map_err(ModularError::from)
}

/// det(xI − A), lowest-degree coefficient first, by the division-free
/// Berkowitz recursion.
pub fn char_poly_coeffs(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let big = |v: i64| BigInt::from(v);
    let mut poly = vec![BigInt::one()];
    for r in 0..n {
        let mut col = vec![BigInt::one(), -big(a[r][r])];
        let mut w: Vec<BigInt> = (0..r).map(|i| big(a[i][r])).collect();
        for _ in 0..r {
            let dot: BigInt = (0..r).map(|c| big(a[r][c]) * &w[c]).sum();
            col.push(-dot);
            w = (0..r)
                .map(|i| (0..r).map(|c| big(a[i][c]) * &w[c]).sum())
                .collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate().take(i + 1) {
                *slot += &col[i - j] * p;
            }
        }
        poly = next;
    }
    poly.reverse();
    poly
}

pub fn char_polys(fr: &FusionRules) -> Vec<Poly> {
    fr.matrices.iter().map(|m| int_poly(&char_poly_coeffs(m))).collect()
}

/// i ↦ i*, the unique label with N_{i,i*}^0 = 1.
pub fn dual_map(fr: &FusionRules) -> Result<Vec<usize>, ModularError> {
    let r = fr.rank;
    let mut dual = Vec::with_capacity(r);
    for i in 0..r {
        let cands: Vec<usize> = (0..r).filter(|&j| fr.coeff(i, j, 0) != 0).collect();
        match cands.as_slice() {
            [j] if fr.coeff(i, *j, 0) == 1 => dual.push(*j),
            _ => return Err(ModularError::NoDual(i)),
        }
    }
    if (0..r).any(|i| dual[dual[i]] != i) || dual[0] != 0 {
        return Err(ModularError::NoDual(0));
    }
    Ok(dual)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn from_witnesses(witnesses: Vec<String>) -> Check {
        Check {
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// θ_iθ_jS_ij = Σ_k N_{i*j}^k d_k θ_k for all i, j.
pub fn balancing_check(md: &ModularData, fr: &FusionRules) -> Check {
    let r = md.rank();
    let dual = match dual_map(fr) {
        Ok(d) => d,
        Err(e) => return Check::from_witnesses(vec![e.to_string()]),
    };
    let dtheta: Vec<Cyclotomic> = (0..r).map(|k| md.dim(k) * md.theta(k)).collect();
    let mut bad = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let lhs = &(md.theta(i) * md.theta(j)) * md.s_entry(i, j);
            let mut rhs = Cyclotomic::zero();
            for (k, dt) in dtheta.iter().enumerate() {
                let n = fr.coeff(dual[i], j, k);
                if n != 0 {
                    rhs = rhs + &dt.scale(&Rational::from(n));
                }
            }
            if lhs != rhs {
                bad.push(format!("(i,j)=({i},{j}): theta_i theta_j S_ij = {lhs} but sum = {rhs}"));
            }
        }
    }
    Check::from_witnesses(bad)
}

/// ν_n(k) = (1/D²) Σ_{i,j} N_{i,j}^k d_i d_j (θ_i/θ_j)^n.
pub fn fs_indicator(md: &ModularData, fr: &FusionRules, n: u32, k: usize) -> Cyclotomic {
    let r = md.rank();
    let pw: Vec<Cyclotomic> = (0..r).map(|i| md.theta(i).pow(n)).collect();
    let pw_inv: Vec<Cyclotomic> = pw.iter().map(|x| x.inverse().unwrap_or_else(|_| x.conj())).collect();
    let mut acc = Cyclotomic::zero();
    for i in 0..r {
        let left = md.dim(i) * &pw[i];
        for j in 0..r {
            let c = fr.coeff(i, j, k);
            if c == 0 {
                continue;
            }
            let term = &(&left * md.dim(j)) * &pw_inv[j];
            acc = acc + &term.scale(&Rational::from(c));
        }
    }
    let dsq = derive_scalars(md).dsq;
    match dsq.inverse() {
        Ok(inv) => &acc * &inv,
        Err(_) => acc,
    }
}

/// Columns of S̃ are common eigenvectors of the N_i with eigenvalues
/// S̃[i][c], and distinct columns are orthogonal with squared norm D²/d_c².
pub fn stilde_diagonalizes(md: &ModularData, fr: &FusionRules) -> Check {
    let r = md.rank();
    let st = match md.s_tilde() {
        Ok(s) => s,
        Err(e) => return Check::from_witnesses(vec![e.to_string()]),
    };
    let mut bad = Vec::new();
    for i in 0..r {
        for c in 0..r {
            for row in 0..r {
                let mut lhs = Cyclotomic::zero();
                for col in 0..r {
                    let n = fr.matrices[i][row][col];
                    if n != 0 {
                        lhs = lhs + &st[col][c].scale(&Rational::from(n));
                    }
                }
                let rhs = &st[i][c] * &st[row][c];
                if lhs != rhs {
                    bad.push(format!("N_{i} column {c} of S-tilde: row {row} gives {lhs}, expected {rhs}"));
                }
            }
        }
    }
    let dsq = derive_scalars(md).dsq;
    for a in 0..r {
        for b in 0..r {
            let mut acc = Cyclotomic::zero();
            for row in st.iter() {
                acc = acc + &(&row[a] * &row[b].conj());
            }
            let expect = if a == b {
                let d2 = md.dim(a) * &md.dim(a).conj();
                match dsq.checked_div(&d2) {
                    Ok(v) => v,
                    Err(e) => {
                        bad.push(e.to_string());
                        continue;
                    }
                }
            } else {
                Cyclotomic::zero()
            };
            if acc != expect {
                bad.push(format!("columns {a},{b} of S-tilde: inner product {acc}, expected {expect}"));
            }
        }
    }
    Check::from_witnesses(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn berkowitz_small() {
        assert_eq!(char_poly_coeffs(&[vec![1, 2], vec![3, 4]]), big(&[-2, -5, 1]));
        let id: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| (i == j) as i64).collect()).collect();
        assert_eq!(int_poly(&char_poly_coeffs(&id)), parse_x_poly("(x-1)^6").unwrap());
        // companion matrix of x^3 - 3x + 1
        let comp = vec![vec![0, 0, -1], vec![1, 0, 3], vec![0, 1, 0]];
        assert_eq!(char_poly_coeffs(&comp), big(&[1, -3, 0, 1]));
    }

    #[test]
    fn semion_fusion() {
        let fr = verlinde(&ModularData::semion()).unwrap();
        assert_eq!(fr.matrices[1], vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(dual_map(&fr).unwrap(), vec![0, 1]);
        assert!(balancing_check(&ModularData::semion(), &fr).pass);
        assert!(stilde_diagonalizes(&ModularData::semion(), &fr).pass);
        // the semion has indicator -1
        assert_eq!(fs_indicator(&ModularData::semion(), &fr, 2, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn non_integral_fusion_is_reported() {
        let one = Cyclotomic::one();
        let two = Cyclotomic::from_int(2);
        let md = ModularData::new(2, vec![vec![one.clone(), two.clone()], vec![two, -&one]], vec![one.clone(), one]).unwrap();
        assert!(matches!(verlinde(&md), Err(ModularError::NonIntegralFusion { .. })));
    }
}
