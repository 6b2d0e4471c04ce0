use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModularError;
use crate::exact::{units_mod, Complex64, Cyclotomic};

/// A candidate pair (S, T). Labels run over `0..rank` with 0 the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularData {
    rank: usize,
    s: Vec<Vec<Cyclotomic>>,
    t: Vec<Cyclotomic>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedScalars {
    #[serde(rename = "Dsq")]
    pub dsq: Cyclotomic,
    pub p_plus: Cyclotomic,
    pub p_minus: Cyclotomic,
}

#[derive(Serialize, Deserialize)]
struct ModularDataJson {
    rank: usize,
    s: Vec<Vec<Cyclotomic>>,
    t: Vec<Cyclotomic>,
}

impl Serialize for ModularData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ModularDataJson {
            rank: self.rank,
            s: self.s.clone(),
            t: self.t.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModularData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ModularDataJson::deserialize(deserializer)?;
        ModularData::new(raw.rank, raw.s, raw.t).map_err(serde::de::Error::custom)
    }
}

impl ModularData {
    /// Checks only the shape; the mathematical conditions are the
    /// verifier's job.
    pub fn new(rank: usize, s: Vec<Vec<Cyclotomic>>, t: Vec<Cyclotomic>) -> Result<Self, ModularError> {
        if rank == 0 {
            return Err(ModularError::Shape("rank must be positive".into()));
        }
        if s.len() != rank || s.iter().any(|row| row.len() != rank) {
            return Err(ModularError::Shape(format!("S must be {rank}x{rank}")));
        }
        if t.len() != rank {
            return Err(ModularError::Shape(format!(
                "T must have {rank} diagonal entries, found {}",
                t.len()
            )));
        }
        Ok(ModularData { rank, s, t })
    }

    /// Rank-1 data S = [1], T = [1].
    pub fn trivial() -> Self {
        ModularData::new(1, vec![vec![Cyclotomic::one()]], vec![Cyclotomic::one()]).unwrap()
    }

    /// Semion: S = [[1,1],[1,-1]], T = diag(1, i).
    pub fn semion() -> Self {
        let one = Cyclotomic::one();
        ModularData::new(
            2,
            vec![vec![one.clone(), one.clone()], vec![one.clone(), -&one]],
            vec![one, Cyclotomic::zeta_pow(4, 1)],
        )
        .unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn s(&self) -> &[Vec<Cyclotomic>] {
        &self.s
    }

    pub fn t(&self) -> &[Cyclotomic] {
        &self.t
    }

    pub fn s_entry(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.s[i][j]
    }

    pub fn theta(&self, j: usize) -> &Cyclotomic {
        &self.t[j]
    }

    /// d_j = S_{0j}.
    pub fn dim(&self, j: usize) -> &Cyclotomic {
        &self.s[0][j]
    }

    /// Order of T, or None if some diagonal entry is not a root of unity.
    pub fn t_order(&self) -> Option<u32> {
        let mut n = 1u32;
        for th in &self.t {
            let (ord, _) = th.root_of_unity_order()?;
            n = n.lcm(&ord);
        }
        Some(n)
    }

    /// Conductor of a cyclotomic field containing every S entry.
    pub fn s_ambient_conductor(&self) -> u32 {
        self.s
            .iter()
            .flatten()
            .fold(1u32, |acc, x| acc.lcm(&x.conductor()))
    }

    /// Conductor of a cyclotomic field containing every S and T entry.
    pub fn ambient_conductor(&self) -> u32 {
        self.t
            .iter()
            .fold(self.s_ambient_conductor(), |acc, x| acc.lcm(&x.conductor()))
    }

    /// Smallest m such that every S entry lies in Q(zeta_m).
    pub fn s_field_conductor(&self) -> u32 {
        let m = self.s_ambient_conductor();
        let fixers = self.s_fixing_units(m);
        let units = units_mod(m);
        for d in (1..=m).filter(|d| m % d == 0) {
            if units.iter().filter(|&&k| k % d == 1 % d).all(|k| fixers.contains(k)) {
                return d;
            }
        }
        m
    }

    /// Units k mod `m` (a multiple of every S conductor) with
    /// zeta -> zeta^k fixing all of S.
    pub fn s_fixing_units(&self, m: u32) -> Vec<u32> {
        units_mod(m)
            .into_iter()
            .filter(|&k| {
                self.s
                    .iter()
                    .flatten()
                    .all(|x| x.galois(k as i64).map(|y| y == *x).unwrap_or(false))
            })
            .collect()
    }

    /// S with column j divided by d_j.
    pub fn s_tilde(&self) -> Result<Vec<Vec<Cyclotomic>>, ModularError> {
        let inv: Vec<Cyclotomic> = (0..self.rank)
            .map(|j| self.dim(j).inverse().map_err(|_| ModularError::ZeroDimension(j)))
            .collect::<Result<_, _>>()?;
        Ok(self
            .s
            .iter()
            .map(|row| row.iter().zip(&inv).map(|(x, y)| x * y).collect())
            .collect())
    }

    /// Entry-wise image under zeta -> zeta^k; `k` must be a unit modulo
    /// every conductor involved.
    pub fn galois_conjugate(&self, k: i64) -> Result<Self, ModularError> {
        let g = |x: &Cyclotomic| x.galois(k).map_err(ModularError::from);
        let s = self
            .s
            .iter()
            .map(|row| row.iter().map(g).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let t = self.t.iter().map(g).collect::<Result<Vec<_>, _>>()?;
        ModularData::new(self.rank, s, t)
    }

    /// Relabels so that old label `i` becomes `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let r = self.rank;
        let mut s = vec![vec![Cyclotomic::zero(); r]; r];
        let mut t = vec![Cyclotomic::zero(); r];
        for i in 0..r {
            t[perm[i]] = self.t[i].clone();
            for j in 0..r {
                s[perm[i]][perm[j]] = self.s[i][j].clone();
            }
        }
        ModularData { rank: r, s, t }
    }

    /// Every entry rewritten in its smallest cyclotomic field, so that
    /// equal data serializes identically.
    pub fn canonical(&self) -> Self {
        ModularData {
            rank: self.rank,
            s: self
                .s
                .iter()
                .map(|row| row.iter().map(Cyclotomic::minimal_form).collect())
                .collect(),
            t: self.t.iter().map(Cyclotomic::minimal_form).collect(),
        }
    }

    pub fn embed_s(&self) -> Vec<Vec<Complex64>> {
        self.s.iter().map(|row| row.iter().map(Cyclotomic::embed).collect()).collect()
    }

    pub fn embed_t(&self) -> Vec<Complex64> {
        self.t.iter().map(Cyclotomic::embed).collect()
    }
}

pub fn derive_scalars(md: &ModularData) -> DerivedScalars {
    let mut dsq = Cyclotomic::zero();
    let mut p_plus = Cyclotomic::zero();
    let mut p_minus = Cyclotomic::zero();
    for k in 0..md.rank() {
        let d2 = md.dim(k) * md.dim(k);
        dsq = dsq + &d2;
        p_plus = p_plus + &(&d2 * md.theta(k));
        // thetas are roots of unity whenever p_- is meaningful; fall back
        // to the conjugate, which agrees on roots of unity
        let inv = md.theta(k).inverse().unwrap_or_else(|_| md.theta(k).conj());
        p_minus = p_minus + &(&d2 * &inv);
    }
    DerivedScalars { dsq, p_plus, p_minus }
}

/// S = S_a ⊗ S_b, T = T_a ⊗ T_b; label (x, y) becomes x * rank_b + y.
pub fn kronecker_product(a: &ModularData, b: &ModularData) -> ModularData {
    let (ra, rb) = (a.rank(), b.rank());
    let r = ra * rb;
    let mut s = vec![vec![Cyclotomic::zero(); r]; r];
    let mut t = vec![Cyclotomic::zero(); r];
    for x in 0..ra {
        for y in 0..rb {
            let i = x * rb + y;
            t[i] = a.theta(x) * b.theta(y);
            for u in 0..ra {
                for v in 0..rb {
                    s[i][u * rb + v] = a.s_entry(x, u) * b.s_entry(y, v);
                }
            }
        }
    }
    ModularData::new(r, s, t).expect("product shape")
}

/// Complex matrix product, used by the numerical cross-checks.
pub fn complex_matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Complex64::default(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Complex64::default();
            for (k, row) in b.iter().enumerate() {
                acc = acc + a[i][k] * row[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_scalars() {
        let sc = derive_scalars(&ModularData::trivial());
        assert!(sc.dsq.is_one() && sc.p_plus.is_one() && sc.p_minus.is_one());
    }

    #[test]
    fn semion_scalars() {
        let sc = derive_scalars(&ModularData::semion());
        assert_eq!(sc.dsq, Cyclotomic::from_int(2));
        assert_eq!(sc.p_plus, &Cyclotomic::one() + &Cyclotomic::zeta_pow(4, 1));
        assert_eq!(ModularData::semion().t_order(), Some(4));
    }

    #[test]
    fn unit_is_kronecker_identity() {
        let s = ModularData::semion();
        assert_eq!(kronecker_product(&ModularData::trivial(), &s), s);
        assert_eq!(kronecker_product(&s, &ModularData::trivial()), s);
    }

    #[test]
    fn json_round_trip() {
        let s = ModularData::semion();
        let text = serde_json::to_string(&s).unwrap();
        let back: ModularData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn shape_errors() {
        let bad = r#"{"rank": 2, "s": [[{"conductor":1,"coeffs":["1"]}]], "t": []}"#;
        assert!(serde_json::from_str::<ModularData>(bad).is_err());
        assert!(ModularData::new(0, vec![], vec![]).is_err());
    }
}
